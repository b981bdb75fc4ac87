#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "packbound/dff.hpp"
#include "packbound/model.hpp"

namespace packbound {

// One stretching step: box `box` in dimension `dim`
// (0-based) grows by the slack 1 - lambda.
struct StretchStep {
  std::string box;
  std::size_t dim = 0;

  friend bool operator==(const StretchStep&, const StretchStep&) = default;
};

// How a table scale was derived, so a certificate can rebuild it from scratch.
struct ScaleRecipe {
  std::vector<Dff> base;
  std::vector<StretchStep> stretches;
};

// A conservative scale w' for an instance: either a d-tuple of dual feasible
// functions applied coordinate-wise, or an explicit table of transformed
// sizes per box id. The provenance names the scale in reports.
class ConservativeScale {
 public:
  static ConservativeScale from_dffs(std::vector<Dff> dffs,
                                     std::string provenance = {},
                                     std::vector<Rational> params = {});
  static ConservativeScale identity(std::size_t dim);
  static ConservativeScale from_table(std::map<std::string, Sizes> table,
                                      std::string provenance,
                                      std::optional<ScaleRecipe> recipe = {});

  bool is_table() const { return !dffs_.has_value(); }
  const std::vector<Dff>& dffs() const { return *dffs_; }
  const std::map<std::string, Sizes>& table() const { return table_; }
  const std::string& provenance() const { return provenance_; }
  // Family parameters (p) or (p,q) when the scale came from a family.
  const std::vector<Rational>& params() const { return params_; }

  // DFF tuples are their own recipe; tables carry the recipe they were built
  // from, if any.
  std::optional<ScaleRecipe> recipe() const;

 private:
  std::optional<std::vector<Dff>> dffs_;
  std::map<std::string, Sizes> table_;
  std::optional<ScaleRecipe> recipe_;
  std::string provenance_;
  std::vector<Rational> params_;
};

// Text form of a DFF tuple, e.g. "(phi(1/2),phi(1/2))".
std::string tuple_str(const std::vector<Dff>& dffs);

// Replaces each box's sizes by the scale's transformed sizes. Throws
// std::invalid_argument on arity mismatch or a table that misses a box.
NormalizedInstance apply_scale(const NormalizedInstance& inst,
                               const ConservativeScale& s);

// Boxes c != b whose pair bc is not preset in dimension `dim`, in instance
// order. Throws std::invalid_argument for an unknown id.
std::vector<std::string> feasible_companions(const NormalizedInstance& inst,
                                             const EdgePresets& presets,
                                             std::string_view box,
                                             std::size_t dim);

// Companion count up to which lambda is computed exactly.
inline constexpr std::size_t kExactStretchLimit = 24;

struct StretchResult {
  ConservativeScale scale;
  Rational lambda;
  bool lambda_exact = true;
};

// Stretching. `inst` holds the sizes of the current scale (plain
// normalized sizes for a fresh start). lambda bounds the widest
// preset-conflict-free i-feasible set containing the box; the box's size in
// `dim` becomes w + (1 - lambda).
StretchResult stretch(const NormalizedInstance& inst,
                      const EdgePresets& presets, std::string_view box,
                      std::size_t dim);

// Same, starting from `current` applied to the plain instance; the result's
// recipe extends `current`'s recipe by one step.
StretchResult stretch(const NormalizedInstance& plain,
                      const ConservativeScale& current,
                      const EdgePresets& presets, std::string_view box,
                      std::size_t dim);

// Rebuilds a scale from its recipe (DFF base followed by stretch steps).
ConservativeScale build_from_recipe(const NormalizedInstance& plain,
                                    const EdgePresets& presets,
                                    const ScaleRecipe& recipe);

// Checks endpoints are distinct ids of the instance.
void validate_presets(const NormalizedInstance& inst,
                      const EdgePresets& presets);

}  // namespace packbound
