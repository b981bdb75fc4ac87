#include "packbound/bounds.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "packbound/oracle.hpp"

namespace packbound {

namespace {

std::int64_t ceil_int(const Rational& x) { return ceil(x).to_int64(); }
std::int64_t floor_int(const Rational& x) { return floor(x).to_int64(); }

// Integer ceiling of a/b for b > 0 and any sign of a.
std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

void require_dim(const NormalizedInstance& inst, std::size_t d,
                 const char* what) {
  if (inst.dim != d) {
    throw std::invalid_argument(std::string(what) + " needs dimension " +
                                std::to_string(d) + ", got " +
                                std::to_string(inst.dim));
  }
}

void require_param(const Rational& p) {
  if (p.is_zero() || p > Rational(1, 2)) {
    throw std::invalid_argument("parameter " + p.str() +
                                " outside (0,1/2]");
  }
}

void require_scales(std::span<const ConservativeScale> scales) {
  if (scales.empty()) throw std::invalid_argument("empty scale set");
}

Rational scaled_volume(const NormalizedInstance& inst,
                       const ConservativeScale& s) {
  return total_volume(apply_scale(inst, s).boxes);
}

std::string param_list(const std::vector<Rational>& params) {
  std::string out;
  for (const Rational& p : params) out += (out.empty() ? "" : ",") + p.str();
  return out;
}

Dff U(const Rational& eps) { return Dff::threshold(eps); }
Dff phi(const Rational& eps) { return Dff::phi(eps); }
Dff u1() { return Dff::ustep(1); }
Dff id() { return Dff::identity(); }

BoundReport composite(const NormalizedInstance& inst,
                      std::span<const ScaleFamily> families,
                      const CompositeOptions& options) {
  std::vector<ConservativeScale> scales = family_scales(inst, families);
  if (options.extra_ustep >= 2) {
    for (auto& s : uniform_ustep_scales(inst.dim, 2, options.extra_ustep)) {
      scales.push_back(std::move(s));
    }
  }
  return bound_obpp(inst, scales);
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kSpp: return "spp";
    case BoundKind::kObpp: return "obpp";
    case BoundKind::kOkp: return "okp";
    case BoundKind::kOppInfeasibility: return "opp-infeasibility";
    case BoundKind::kClique: return "clique";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view text) {
  for (BoundKind k : {BoundKind::kSpp, BoundKind::kObpp, BoundKind::kOkp,
                      BoundKind::kOppInfeasibility, BoundKind::kClique}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown bound kind '" + std::string(text) + "'");
}

VolumeVerdict volume_criterion(const NormalizedInstance& inst,
                               const ConservativeScale& s) {
  const Rational v = scaled_volume(inst, s);
  return {v > Rational(1), v};
}

BoundReport bound_spp(const NormalizedInstance& inst,
                      std::span<const ConservativeScale> scales) {
  require_scales(scales);
  if (inst.dim == 0) throw std::invalid_argument("dimension 0");
  const std::size_t axis = inst.dim - 1;
  BoundReport best{BoundKind::kSpp, Rational(0), scales.front(), {}, 0};
  bool first = true;
  for (const ConservativeScale& s : scales) {
    const NormalizedInstance t = apply_scale(inst, s);
    for (std::size_t b = 0; b < inst.size(); ++b) {
      if (t.boxes[b].size[axis] != inst.boxes[b].size[axis]) {
        throw std::invalid_argument("scale " + s.provenance() +
                                    " changes the strip axis");
      }
    }
    const Rational v = total_volume(t.boxes);
    if (first || v > best.value) {
      best.value = v;
      best.scale = s;
      first = false;
    }
  }
  return best;
}

BoundReport bound_obpp(const NormalizedInstance& inst,
                       std::span<const ConservativeScale> scales) {
  require_scales(scales);
  BoundReport best{BoundKind::kObpp, Rational(0), scales.front(), {}, 0};
  bool first = true;
  for (const ConservativeScale& s : scales) {
    const Rational v = ceil(scaled_volume(inst, s));
    if (first || v > best.value) {
      best.value = v;
      best.scale = s;
      first = false;
    }
  }
  return best;
}

std::int64_t mv_partial_2d(const NormalizedInstance& inst, const Rational& p,
                           const Rational& q) {
  require_dim(inst, 2, "mv_partial_2d");
  require_param(p);
  require_param(q);
  const Rational one(1), half(1, 2);
  const std::int64_t P = floor_int(one / p), Q = floor_int(one / q);
  std::int64_t big = 0, small = 0, m_sum = 0;
  for (const Box& b : inst.boxes) {
    const Rational& w1 = b.size[0];
    const Rational& w2 = b.size[1];
    const bool in1 = w1 > one - p && w2 > one - q;
    const bool in2 = !in1 && w1 > half && w2 > half;
    const bool in3 = w1 <= half && w1 >= p && w2 <= half && w2 >= q;
    if (in1) ++big;
    if (in2) {
      ++big;
      const std::int64_t a = floor_int((one - w1) / p);
      const std::int64_t c = floor_int((one - w2) / q);
      m_sum += P * c + Q * a - a * c;
    }
    if (in3) ++small;
  }
  return big + ceil_div(small - m_sum, P * Q);
}

std::int64_t improved_2d(const NormalizedInstance& inst, const Rational& p,
                         const Rational& q) {
  require_dim(inst, 2, "improved_2d");
  require_param(p);
  require_param(q);
  return ceil_int(
      scaled_volume(inst, ConservativeScale::from_dffs({phi(p), phi(q)})));
}

std::int64_t mv_partial_3d(const NormalizedInstance& inst, const Rational& p,
                           const Rational& q) {
  require_dim(inst, 3, "mv_partial_3d");
  require_param(p);
  require_param(q);
  const Rational one(1);
  Rational total;
  for (const Box& b : inst.boxes) {
    const Rational& w1 = b.size[0];
    const Rational& w2 = b.size[1];
    if (w1 > one - p && w2 > one - q) {
      total += b.size[2];
    } else if (w1 > p && w2 > q) {
      total += volume(b.size);
    }
  }
  return ceil_int(total);
}

std::int64_t improved_3d(const NormalizedInstance& inst, const Rational& p,
                         const Rational& q) {
  require_dim(inst, 3, "improved_3d");
  require_param(p);
  require_param(q);
  return ceil_int(
      scaled_volume(inst, ConservativeScale::from_dffs({U(p), U(q), id()})));
}

ConservativeScale ScaleFamily::at(const std::vector<Rational>& params) const {
  return ConservativeScale::from_dffs(
      make(params), name + "(" + param_list(params) + ")", params);
}

const std::vector<ScaleFamily>& l2d_families() {
  static const std::vector<ScaleFamily> families = {
      {"w^(1)", {1}, [](const auto& a) { return std::vector{u1(), U(a[0])}; }},
      {"w^(2)", {0}, [](const auto& a) { return std::vector{U(a[0]), u1()}; }},
      {"w^(3)", {1}, [](const auto& a) { return std::vector{u1(), phi(a[0])}; }},
      {"w^(4)", {0}, [](const auto& a) { return std::vector{phi(a[0]), u1()}; }},
      {"w^(5)", {1}, [](const auto& a) { return std::vector{id(), U(a[0])}; }},
      {"w^(6)", {0}, [](const auto& a) { return std::vector{U(a[0]), id()}; }},
      {"w^(7)", {0, 1},
       [](const auto& a) { return std::vector{phi(a[0]), phi(a[1])}; }},
  };
  return families;
}

const std::vector<ScaleFamily>& l3d_families() {
  static const std::vector<ScaleFamily> families = {
      {"w^(1)", {2},
       [](const auto& a) { return std::vector{u1(), u1(), U(a[0])}; }},
      {"w^(2)", {1},
       [](const auto& a) { return std::vector{u1(), U(a[0]), u1()}; }},
      {"w^(3)", {0},
       [](const auto& a) { return std::vector{U(a[0]), u1(), u1()}; }},
      {"w^(4)", {2},
       [](const auto& a) { return std::vector{u1(), u1(), phi(a[0])}; }},
      {"w^(5)", {1},
       [](const auto& a) { return std::vector{u1(), phi(a[0]), u1()}; }},
      {"w^(6)", {0},
       [](const auto& a) { return std::vector{phi(a[0]), u1(), u1()}; }},
      {"w^(7)", {0, 1},
       [](const auto& a) { return std::vector{U(a[0]), U(a[1]), id()}; }},
      {"w^(8)", {0, 2},
       [](const auto& a) { return std::vector{U(a[0]), id(), U(a[1])}; }},
      {"w^(9)", {1, 2},
       [](const auto& a) { return std::vector{id(), U(a[0]), U(a[1])}; }},
  };
  return families;
}

std::vector<ConservativeScale> family_scales(
    const NormalizedInstance& inst, std::span<const ScaleFamily> families) {
  std::vector<std::vector<Rational>> cand(inst.dim);
  for (std::size_t i = 0; i < inst.dim; ++i) {
    cand[i] = candidate_params(inst, i);
  }
  std::vector<ConservativeScale> out;
  for (const ScaleFamily& f : families) {
    for (std::size_t i : f.param_dims) {
      if (i >= inst.dim) {
        throw std::invalid_argument("family " + f.name +
                                    " does not fit the dimension");
      }
    }
    std::vector<std::size_t> idx(f.param_dims.size(), 0);
    std::vector<Rational> params(f.param_dims.size());
    bool more = true;
    while (more) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        params[k] = cand[f.param_dims[k]][idx[k]];
      }
      out.push_back(f.at(params));
      more = false;
      for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < cand[f.param_dims[k]].size()) {
          more = true;
          break;
        }
        idx[k] = 0;
      }
    }
  }
  return out;
}

std::vector<ConservativeScale> uniform_ustep_scales(std::size_t dim,
                                                    std::int64_t from,
                                                    std::int64_t to) {
  std::vector<ConservativeScale> out;
  for (std::int64_t k = from; k <= to; ++k) {
    out.push_back(
        ConservativeScale::from_dffs(std::vector<Dff>(dim, Dff::ustep(k))));
  }
  return out;
}

BoundReport bound_L2d(const NormalizedInstance& inst,
                      const CompositeOptions& options) {
  require_dim(inst, 2, "L2d");
  return composite(inst, l2d_families(), options);
}

BoundReport bound_L3d(const NormalizedInstance& inst,
                      const CompositeOptions& options) {
  require_dim(inst, 3, "L3d");
  return composite(inst, l3d_families(), options);
}

Rational okp_relaxation_bound(const NormalizedInstance& inst,
                              const ConservativeScale& s) {
  for (const Box& b : inst.boxes) {
    if (!b.value) throw std::invalid_argument("box '" + b.id + "' has no value");
  }
  const NormalizedInstance t = apply_scale(inst, s);
  std::vector<oracle::KnapsackItem> items;
  for (const Box& b : t.boxes) items.push_back({volume(b.size), *b.value});
  return oracle::knapsack(items, Rational(1));
}

BoundReport bound_okp(const NormalizedInstance& inst,
                      std::span<const ConservativeScale> scales) {
  require_scales(scales);
  BoundReport best{BoundKind::kOkp, Rational(0), scales.front(), {}, 0};
  bool first = true;
  for (const ConservativeScale& s : scales) {
    const Rational v = okp_relaxation_bound(inst, s);
    if (first || v < best.value) {
      best.value = v;
      best.scale = s;
      first = false;
    }
  }
  return best;
}

std::int64_t clique_requirement(const NormalizedInstance& inst,
                                std::span<const std::string> subset,
                                const ConservativeScale& s, std::size_t dim) {
  if (dim >= inst.dim) throw std::invalid_argument("dimension out of range");
  const NormalizedInstance t = apply_scale(inst, s);
  Rational sum;
  for (const std::string& id : subset) sum += t.box(id).size[dim];
  return ceil_int(sum);
}

std::vector<ConservativeScale> default_battery(const NormalizedInstance& inst) {
  std::vector<ConservativeScale> out{ConservativeScale::identity(inst.dim)};
  for (auto& s : uniform_ustep_scales(inst.dim, 1, 4)) out.push_back(std::move(s));
  std::vector<ConservativeScale> fam;
  if (inst.dim == 2) fam = family_scales(inst, l2d_families());
  if (inst.dim == 3) fam = family_scales(inst, l3d_families());
  for (auto& s : fam) out.push_back(std::move(s));
  return out;
}

std::vector<ConservativeScale> spp_battery(const NormalizedInstance& inst) {
  std::vector<ConservativeScale> out{ConservativeScale::identity(inst.dim)};
  if (inst.dim < 2) return out;
  const std::size_t axis = inst.dim - 1;
  for (std::int64_t k = 1; k <= 4; ++k) {
    std::vector<Dff> dffs(inst.dim, Dff::ustep(k));
    dffs[axis] = id();
    out.push_back(ConservativeScale::from_dffs(std::move(dffs)));
  }
  for (std::size_t j = 0; j < axis; ++j) {
    for (const Rational& p : candidate_params(inst, j)) {
      for (const Dff& f : {U(p), phi(p)}) {
        std::vector<Dff> dffs(inst.dim, id());
        dffs[j] = f;
        out.push_back(ConservativeScale::from_dffs(std::move(dffs)));
      }
    }
  }
  return out;
}

std::string write_certificate(const BoundReport& report) {
  const auto recipe = report.scale.recipe();
  if (!recipe) {
    throw std::invalid_argument("scale " + report.scale.provenance() +
                                " has no recipe");
  }
  std::ostringstream out;
  out << "kind " << to_string(report.kind) << "\n";
  out << "value " << report.value << "\n";
  out << "provenance " << report.scale.provenance() << "\n";
  if (!report.scale.params().empty()) {
    out << "params";
    for (const Rational& p : report.scale.params()) out << " " << p;
    out << "\n";
  }
  out << "dffs";
  for (const Dff& f : recipe->base) out << " " << f.str();
  out << "\n";
  for (const StretchStep& s : recipe->stretches) {
    out << "stretch " << s.box << " " << s.dim + 1 << "\n";
  }
  if (report.kind == BoundKind::kClique) {
    out << "subset";
    for (const std::string& id : report.subset) out << " " << id;
    out << "\n";
    out << "dim " << report.dim + 1 << "\n";
  }
  return out.str();
}

namespace {

struct Certificate {
  std::optional<BoundKind> kind;
  std::optional<Rational> value;
  std::optional<std::vector<Dff>> dffs;
  std::vector<StretchStep> stretches;
  std::optional<std::vector<std::string>> subset;
  std::optional<std::size_t> dim;
};

std::size_t parse_dim(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "bad dimension '" + tok + "'");
  }
  if (pos != tok.size() || v < 1) {
    throw ParseError(line, "bad dimension '" + tok + "'");
  }
  return static_cast<std::size_t>(v - 1);
}

Certificate parse_certificate(std::string_view text) {
  Certificate c;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    try {
      if (key == "kind") {
        if (toks.size() != 1) throw ParseError(line, "kind takes one word");
        c.kind = parse_bound_kind(toks[0]);
      } else if (key == "value") {
        if (toks.size() != 1) throw ParseError(line, "value takes one rational");
        c.value = Rational::parse(toks[0]);
      } else if (key == "provenance" || key == "params") {
        // Informational; the recipe determines the scale.
      } else if (key == "dffs") {
        std::vector<Dff> dffs;
        for (const auto& t : toks) dffs.push_back(Dff::parse(t));
        c.dffs = std::move(dffs);
      } else if (key == "stretch") {
        if (toks.size() != 2) throw ParseError(line, "stretch takes <box> <dim>");
        c.stretches.push_back({toks[0], parse_dim(toks[1], line)});
      } else if (key == "subset") {
        c.subset = toks;
      } else if (key == "dim") {
        if (toks.size() != 1) throw ParseError(line, "dim takes one integer");
        c.dim = parse_dim(toks[0], line);
      } else {
        throw ParseError(line, "unknown certificate field '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  if (!c.kind) throw ParseError(line, "certificate has no kind");
  if (!c.value) throw ParseError(line, "certificate has no value");
  if (!c.dffs) throw ParseError(line, "certificate has no dffs");
  if (*c.kind == BoundKind::kClique && (!c.subset || !c.dim)) {
    throw ParseError(line, "clique certificate needs subset and dim");
  }
  return c;
}

bool has_presets(const Instance& inst) {
  for (const auto& e : inst.edges.per_dim) {
    if (!e.empty()) return true;
  }
  return false;
}

}  // namespace

CertificateCheck verify_certificate(std::string_view text,
                                    const Instance& inst) {
  const Certificate c = parse_certificate(text);
  const NormalizedInstance plain = normalize(inst);
  CertificateCheck r;
  if (c.dffs->size() != plain.dim) {
    r.message = "dffs arity does not match the dimension";
    return r;
  }
  const bool preset_scale = !c.stretches.empty() && has_presets(inst);
  if (preset_scale && *c.kind != BoundKind::kOppInfeasibility &&
      *c.kind != BoundKind::kClique) {
    r.message = "stretches under edge presets only certify OPP infeasibility "
                "and clique requirements";
    return r;
  }
  ConservativeScale s;
  try {
    s = build_from_recipe(plain, inst.edges, {*c.dffs, c.stretches});
  } catch (const std::invalid_argument& e) {
    r.message = std::string("cannot rebuild scale: ") + e.what();
    return r;
  }
  const std::vector<ConservativeScale> one{s};
  try {
    switch (*c.kind) {
      case BoundKind::kSpp:
        r.recomputed = bound_spp(plain, one).value;
        break;
      case BoundKind::kObpp:
        r.recomputed = bound_obpp(plain, one).value;
        break;
      case BoundKind::kOkp:
        r.recomputed = okp_relaxation_bound(plain, s);
        break;
      case BoundKind::kOppInfeasibility: {
        const VolumeVerdict v = volume_criterion(plain, s);
        r.recomputed = v.volume;
        if (!v.infeasible) {
          r.message = "transformed volume " + v.volume.str() + " does not exceed 1";
          return r;
        }
        break;
      }
      case BoundKind::kClique:
        r.recomputed = Rational(clique_requirement(plain, *c.subset, s, *c.dim));
        break;
    }
  } catch (const std::invalid_argument& e) {
    r.message = e.what();
    return r;
  }
  r.ok = r.recomputed == *c.value;
  r.message = r.ok ? "certificate verified"
                   : "recomputed value " + r.recomputed.str() +
                         " differs from claimed " + c.value->str();
  return r;
}

}  // namespace packbound
