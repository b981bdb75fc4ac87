#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "packbound/model.hpp"
#include "packbound/rational.hpp"

namespace packbound {

// A dual feasible function u: [0,1] -> [0,1], i.e. any finite multiset of
// sizes summing to at most 1 still sums to at most 1 after applying u.
//
// Instances are closed descriptions built from three parametric families and
// the two closure operations (composition, convex combination), so every Dff
// that can be constructed is dual feasible. Values are immutable and cheap to
// copy.
//
// Canonical text form: `id`, `u(k)`, `U(eps)`, `phi(eps)`, `compose(f,g)`
// (f applied after g), `convex(w1*f1+w2*f2+...)`.
class Dff {
 public:
  enum class Kind { kIdentity, kUStep, kThreshold, kPhiStep, kCompose, kConvex };

  struct Term;

  static Dff identity();
  // u^(k): x if x(k+1) is integral, floor((k+1)x)/k otherwise. k >= 1.
  static Dff ustep(std::int64_t k);
  // U^(eps): 0 below eps, x on [eps, 1-eps], 1 above 1-eps. eps in [0,1/2].
  static Dff threshold(const Rational& eps);
  // phi^(eps): 0 below eps, 1/floor(1/eps) on [eps,1/2], and
  // 1 - floor((1-x)/eps)/floor(1/eps) above 1/2. eps in (0,1/2].
  static Dff phi(const Rational& eps);
  static Dff compose(Dff outer, Dff inner);
  // Weights must be nonnegative and sum to exactly 1.
  static Dff convex(std::vector<Term> terms);

  // Throws std::invalid_argument on malformed text or parameters.
  static Dff parse(std::string_view text);

  Kind kind() const;
  bool is_identity() const { return kind() == Kind::kIdentity; }

  // x must lie in [0,1]; throws std::domain_error otherwise.
  Rational operator()(const Rational& x) const;

  std::string str() const;

  friend bool operator==(const Dff& a, const Dff& b) {
    return a.str() == b.str();
  }

 private:
  struct Node;
  explicit Dff(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  Rational eval_unchecked(const Rational& x) const;

  std::shared_ptr<const Node> node_;
};

struct Dff::Term {
  Rational weight;
  Dff f;
};

// Finite parameter set for p/eps in dimension `dim` (0-based) that suffices
// when maximising the bound families over (0,1/2]: sizes <= 1/2, complements
// 1-w of sizes > 1/2 that land in (0,1/2], reciprocals 1/t for 2 <= t <= |V|,
// and 1/2. Sorted ascending, deduplicated.
std::vector<Rational> candidate_params(const NormalizedInstance& inst,
                                       std::size_t dim);

}  // namespace packbound
