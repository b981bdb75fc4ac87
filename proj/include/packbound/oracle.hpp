#pragma once

// Brute-force ground truth used to certify the bound computations: exhaustive
// dual-feasibility checking, exact packability of tiny instances, exact
// knapsack, packing-class validation and maximum clique. Everything here is
// exponential and guarded by explicit size limits; a guard violation throws
// OracleLimitError rather than returning an unverified answer.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "packbound/dff.hpp"
#include "packbound/model.hpp"
#include "packbound/rational.hpp"

namespace packbound::oracle {

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Dual feasibility

struct DffVerdict {
  bool holds = true;
  // First violating multiset found (sizes, nonincreasing), empty if none.
  std::vector<Rational> counterexample;
  Rational image_sum;
  std::size_t multisets_checked = 0;
};

using UnitFunction = std::function<Rational(const Rational&)>;

// Enumerates every multiset of rationals in [0,1] with denominators at most
// `max_denominator` and sum at most 1, and reports the first one whose image
// sum exceeds 1. A positive value at 0 is reported as a multiset of zeros.
DffVerdict check_dff(const UnitFunction& f, int max_denominator = 12);
DffVerdict check_dff(const Dff& f, int max_denominator = 12);

// ---------------------------------------------------------------------------
// Exact packing

inline constexpr std::size_t kDefaultPackingLimit = 8;

// Lower corner of every box, in instance order.
using Placement = std::vector<Sizes>;

// Decides whether the boxes pack into the unit container and returns a
// packing if so. Box coordinates are searched over the canonical positions:
// sums of subsets of the other boxes' sizes in that dimension.
std::optional<Placement> find_packing(
    const NormalizedInstance& inst,
    std::size_t max_boxes = kDefaultPackingLimit);

bool exact_packable(const NormalizedInstance& inst,
                    std::size_t max_boxes = kDefaultPackingLimit);

// True iff the placement is a packing: boxes inside the unit container and
// pairwise interior-disjoint.
bool is_valid_packing(const NormalizedInstance& inst, const Placement& p);

// Minimum number of unit containers needed.
std::size_t exact_bin_count(const NormalizedInstance& inst,
                            std::size_t max_boxes = kDefaultPackingLimit);

// Minimum strip height with the last dimension as the strip axis; the
// instance's last-dimension sizes are measured in strip units.
Rational exact_strip_height(const NormalizedInstance& inst,
                            std::size_t max_boxes = kDefaultPackingLimit);

// Best total value over packable subsets. Every box must carry a value.
Rational exact_okp_value(const NormalizedInstance& inst,
                         std::size_t max_boxes = kDefaultPackingLimit);

// ---------------------------------------------------------------------------
// Knapsack

struct WeightedItem {
  std::string id;
  Rational weight;
};

struct MaxWeightResult {
  Rational value;
  // False when the item count forced the conflict-free relaxation; value is
  // then an upper bound on the true maximum.
  bool exact = true;
};

inline constexpr std::size_t kExactSubsetLimit = 24;

// Largest total weight of a subset that contains `forced`, has no pair in
// `conflicts`, and fits `capacity`. Items in conflict with `forced` are
// dropped. Throws std::invalid_argument if `forced` alone exceeds capacity.
MaxWeightResult knapsack_max_weight(std::span<const WeightedItem> items,
                                    std::span<const Edge> conflicts,
                                    const WeightedItem& forced,
                                    const Rational& capacity);

struct KnapsackItem {
  Rational weight;
  Rational profit;
};

// Largest common-denominator capacity solved by dynamic programming; larger
// grids fall back to branch and bound.
inline constexpr std::int64_t kDpGridLimit = 1'000'000;

// Exact 0/1 knapsack optimum.
Rational knapsack(std::span<const KnapsackItem> items,
                  const Rational& capacity);

// ---------------------------------------------------------------------------
// Graphs, packing classes, cliques

// Small undirected graph on vertices 0..n-1 with bitmask adjacency.
class Graph {
 public:
  static constexpr std::size_t kMaxVertices = 20;

  explicit Graph(std::size_t n = 0);

  std::size_t size() const { return adj_.size(); }
  void add_edge(std::size_t a, std::size_t b);
  bool has_edge(std::size_t a, std::size_t b) const;
  std::uint32_t neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t edge_count() const;
  Graph induced(std::uint32_t subset) const;
  Graph complement() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::uint32_t> adj_;
};

inline constexpr std::size_t kCliqueLimit = 12;

// Exact maximum clique size by subset enumeration (1 for a nonempty edgeless
// graph, 0 for the empty graph).
std::size_t max_clique(const Graph& g, std::size_t max_vertices = kCliqueLimit);

// Exact maximum stable set size by recursive branching.
std::size_t max_stable_set(const Graph& g,
                           std::size_t max_vertices = kCliqueLimit);

// Brute-force interval graph recognition: searches vertex orders for one that
// admits an interval model and verifies the model it builds.
bool is_interval_graph(const Graph& g);

// Component graphs G_1..G_d over the instance's boxes (vertex i = box i).
struct PackingClass {
  std::vector<Graph> components;
};

enum class ClassCondition { kNone, kP1Interval, kP2Stable, kP3Intersection };

struct ClassVerdict {
  bool valid = true;
  ClassCondition violated = ClassCondition::kNone;
  std::size_t dim = 0;
  std::string detail;
};

// Checks (P1) every G_i is an interval graph, (P2) every stable set of G_i
// fits into the container in dimension i, (P3) no edge lies in all G_i.
ClassVerdict validate_packing_class(const PackingClass& pc,
                                    const NormalizedInstance& inst,
                                    std::size_t max_boxes = kDefaultPackingLimit);

// Overlap graphs of the open projections of an explicit packing.
PackingClass induced_packing_class(const NormalizedInstance& inst,
                                   const Placement& p);

}  // namespace packbound::oracle
