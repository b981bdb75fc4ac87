#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "packbound/dff.hpp"
#include "packbound/model.hpp"
#include "packbound/scales.hpp"

namespace packbound {

enum class BoundKind { kSpp, kObpp, kOkp, kOppInfeasibility, kClique };

std::string_view to_string(BoundKind kind);
// Accepts "spp", "obpp", "okp", "opp-infeasibility", "clique".
BoundKind parse_bound_kind(std::string_view text);

// A bound value together with the scale that produced it. For kClique,
// `subset` and `dim` name the box set and dimension.
struct BoundReport {
  BoundKind kind = BoundKind::kObpp;
  Rational value;
  ConservativeScale scale;
  std::vector<std::string> subset;
  std::size_t dim = 0;
};

struct VolumeVerdict {
  bool infeasible = false;
  Rational volume;
};

// Infeasible iff the transformed total volume exceeds 1.
VolumeVerdict volume_criterion(const NormalizedInstance& inst,
                               const ConservativeScale& s);

// Max transformed volume over `scales`. The last dimension is the strip axis
// and every scale must leave it unchanged; throws std::invalid_argument
// otherwise or when `scales` is empty.
BoundReport bound_spp(const NormalizedInstance& inst,
                      std::span<const ConservativeScale> scales);

// Max of ceil(transformed volume) over `scales`.
BoundReport bound_obpp(const NormalizedInstance& inst,
                       std::span<const ConservativeScale> scales);

// Two-dimensional partial bound over the sets I1, I2, I3.
std::int64_t mv_partial_2d(const NormalizedInstance& inst, const Rational& p,
                           const Rational& q);
// ceil(volume under (phi(p), phi(q))).
std::int64_t improved_2d(const NormalizedInstance& inst, const Rational& p,
                         const Rational& q);
// Three-dimensional partial bound over J1, J2.
std::int64_t mv_partial_3d(const NormalizedInstance& inst, const Rational& p,
                           const Rational& q);
// ceil(volume under (U(p), U(q), id)).
std::int64_t improved_3d(const NormalizedInstance& inst, const Rational& p,
                         const Rational& q);

// A parametrised scale family. `param_dims` holds, for each parameter, the
// dimension whose candidate set it ranges over.
struct ScaleFamily {
  std::string name;
  std::vector<std::size_t> param_dims;
  std::function<std::vector<Dff>(const std::vector<Rational>&)> make;

  ConservativeScale at(const std::vector<Rational>& params) const;
};

const std::vector<ScaleFamily>& l2d_families();
const std::vector<ScaleFamily>& l3d_families();

// Every family member at every combination of candidate parameters.
std::vector<ConservativeScale> family_scales(
    const NormalizedInstance& inst, std::span<const ScaleFamily> families);

// Uniform scales (u(k),...,u(k)) for k in [from, to].
std::vector<ConservativeScale> uniform_ustep_scales(std::size_t dim,
                                                    std::int64_t from,
                                                    std::int64_t to);

struct CompositeOptions {
  // Adds (u(k),...,u(k)) for k = 2..extra_ustep when >= 2.
  std::int64_t extra_ustep = 0;
};

// Composite bounds: max ceil(volume) over the seven (2D) or nine (3D)
// families. Throw std::invalid_argument on the wrong dimension.
BoundReport bound_L2d(const NormalizedInstance& inst,
                      const CompositeOptions& options = {});
BoundReport bound_L3d(const NormalizedInstance& inst,
                      const CompositeOptions& options = {});

// Knapsack over transformed volumes with capacity 1 and profits v(b).
// Throws std::invalid_argument if a box has no value.
Rational okp_relaxation_bound(const NormalizedInstance& inst,
                              const ConservativeScale& s);

// Min of okp_relaxation_bound over `scales`.
BoundReport bound_okp(const NormalizedInstance& inst,
                      std::span<const ConservativeScale> scales);

// ceil of the transformed widths of `subset` in dimension `dim`.
std::int64_t clique_requirement(const NormalizedInstance& inst,
                                std::span<const std::string> subset,
                                const ConservativeScale& s, std::size_t dim);

// identity, (u(k))^d for k = 1..4, and the L2d/L3d families when d is 2 or 3.
std::vector<ConservativeScale> default_battery(const NormalizedInstance& inst);

// Scales that keep the strip axis: identity, u(k) on the base dimensions for
// k = 1..4, and U/phi on one base dimension at its candidate parameters.
std::vector<ConservativeScale> spp_battery(const NormalizedInstance& inst);

// Text certificate:
//   kind <kind>
//   value <r>
//   provenance <text>
//   [params <r>...]
//   dffs <f1> ... <fd>
//   [stretch <box> <dim>]...      (1-based dim)
//   [subset <id>...] [dim <i>]     (clique only)
// Throws std::invalid_argument for a scale without a recipe.
std::string write_certificate(const BoundReport& report);

struct CertificateCheck {
  bool ok = false;
  Rational recomputed;
  std::string message;
};

// Rebuilds the scale from the certificate's recipe against `inst` (including
// its edge presets) and recomputes the value for the certificate's kind.
// Malformed certificates throw ParseError.
CertificateCheck verify_certificate(std::string_view text,
                                    const Instance& inst);

}  // namespace packbound
