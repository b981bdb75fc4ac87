#include "packbound/scales.hpp"

#include <stdexcept>

#include "packbound/oracle.hpp"

namespace packbound {

ConservativeScale ConservativeScale::from_dffs(std::vector<Dff> dffs,
                                               std::string provenance,
                                               std::vector<Rational> params) {
  ConservativeScale s;
  s.params_ = std::move(params);
  if (provenance.empty()) provenance = tuple_str(dffs);
  s.dffs_ = std::move(dffs);
  s.provenance_ = std::move(provenance);
  return s;
}

ConservativeScale ConservativeScale::identity(std::size_t dim) {
  return from_dffs(std::vector<Dff>(dim, Dff::identity()));
}

ConservativeScale ConservativeScale::from_table(
    std::map<std::string, Sizes> table, std::string provenance,
    std::optional<ScaleRecipe> recipe) {
  ConservativeScale s;
  for (const auto& [id, sizes] : table) {
    for (const Rational& v : sizes) {
      if (v > Rational(1)) {
        throw std::invalid_argument("scale table entry for '" + id +
                                    "' exceeds 1");
      }
    }
  }
  s.table_ = std::move(table);
  s.provenance_ = std::move(provenance);
  s.recipe_ = std::move(recipe);
  return s;
}

std::optional<ScaleRecipe> ConservativeScale::recipe() const {
  if (dffs_) return ScaleRecipe{*dffs_, {}};
  return recipe_;
}

std::string tuple_str(const std::vector<Dff>& dffs) {
  std::string out = "(";
  for (std::size_t i = 0; i < dffs.size(); ++i) {
    if (i) out += ",";
    out += dffs[i].str();
  }
  return out + ")";
}

NormalizedInstance apply_scale(const NormalizedInstance& inst,
                               const ConservativeScale& s) {
  NormalizedInstance out = inst;
  if (!s.is_table()) {
    const auto& dffs = s.dffs();
    if (dffs.size() != inst.dim) {
      throw std::invalid_argument("scale arity " + std::to_string(dffs.size()) +
                                  " does not match dimension " +
                                  std::to_string(inst.dim));
    }
    for (Box& b : out.boxes) {
      for (std::size_t i = 0; i < inst.dim; ++i) b.size[i] = dffs[i](b.size[i]);
    }
    return out;
  }
  for (Box& b : out.boxes) {
    const auto it = s.table().find(b.id);
    if (it == s.table().end()) {
      throw std::invalid_argument("scale table has no entry for box '" + b.id +
                                  "'");
    }
    if (it->second.size() != inst.dim) {
      throw std::invalid_argument("scale table entry for '" + b.id +
                                  "' has wrong arity");
    }
    b.size = it->second;
  }
  return out;
}

void validate_presets(const NormalizedInstance& inst,
                      const EdgePresets& presets) {
  if (presets.per_dim.size() > inst.dim) {
    throw std::invalid_argument("edge presets for more dimensions than " +
                                std::to_string(inst.dim));
  }
  for (const auto& edges : presets.per_dim) {
    for (const auto& [a, b] : edges) {
      if (a == b) throw std::invalid_argument("self-loop edge on '" + a + "'");
      inst.index_of(a);
      inst.index_of(b);
    }
  }
}

std::vector<std::string> feasible_companions(const NormalizedInstance& inst,
                                             const EdgePresets& presets,
                                             std::string_view box,
                                             std::size_t dim) {
  inst.index_of(box);
  std::vector<std::string> out;
  for (const Box& c : inst.boxes) {
    if (c.id == box || presets.contains(dim, box, c.id)) continue;
    out.push_back(c.id);
  }
  return out;
}

StretchResult stretch(const NormalizedInstance& inst,
                      const EdgePresets& presets, std::string_view box,
                      std::size_t dim) {
  if (dim >= inst.dim) throw std::invalid_argument("dimension out of range");
  validate_presets(inst, presets);
  const Box& target = inst.box(box);

  std::vector<oracle::WeightedItem> items;
  for (const std::string& id : feasible_companions(inst, presets, box, dim)) {
    items.push_back({id, inst.box(id).size[dim]});
  }
  std::vector<Edge> conflicts;
  if (dim < presets.per_dim.size()) conflicts = presets.per_dim[dim];

  const auto best = oracle::knapsack_max_weight(
      items, conflicts, {target.id, target.size[dim]}, Rational(1));
  const Rational lambda = max(best.value, target.size[dim]);

  std::map<std::string, Sizes> table;
  for (const Box& b : inst.boxes) table[b.id] = b.size;
  table[target.id][dim] += Rational(1) - lambda;

  const std::string step = "stretch(" + target.id + "," +
                           std::to_string(dim + 1) +
                           ",lambda=" + lambda.str() + ")";
  ScaleRecipe recipe{std::vector<Dff>(inst.dim, Dff::identity()),
                     {StretchStep{target.id, dim}}};
  return {ConservativeScale::from_table(std::move(table), step,
                                        std::move(recipe)),
          lambda, best.exact};
}

StretchResult stretch(const NormalizedInstance& plain,
                      const ConservativeScale& current,
                      const EdgePresets& presets, std::string_view box,
                      std::size_t dim) {
  auto recipe = current.recipe();
  if (!recipe) {
    throw std::invalid_argument("cannot stretch a scale without a recipe");
  }
  StretchResult r = stretch(apply_scale(plain, current), presets, box, dim);
  recipe->stretches.push_back({std::string(box), dim});
  r.scale = ConservativeScale::from_table(
      r.scale.table(), current.provenance() + " + " + r.scale.provenance(),
      std::move(recipe));
  return r;
}

ConservativeScale build_from_recipe(const NormalizedInstance& plain,
                                    const EdgePresets& presets,
                                    const ScaleRecipe& recipe) {
  ConservativeScale s = ConservativeScale::from_dffs(recipe.base);
  for (const StretchStep& step : recipe.stretches) {
    s = stretch(plain, s, presets, step.box, step.dim).scale;
  }
  return s;
}

}  // namespace packbound
