#include <algorithm>
#include <numeric>

#include "packbound/oracle.hpp"

namespace packbound::oracle {

namespace {

// Common denominator of the given rationals, or nullopt when the scaled
// capacity exceeds the DP grid limit.
std::optional<std::pair<mpz_class, std::int64_t>> grid_for(
    const std::vector<Rational>& weights, const Rational& capacity) {
  mpz_class l = capacity.raw().get_den();
  for (const Rational& w : weights) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.raw().get_den_mpz_t());
  }
  const mpz_class cap = capacity.raw().get_num() * (l / capacity.raw().get_den());
  if (cap > kDpGridLimit) return std::nullopt;
  return std::make_pair(l, cap.get_si());
}

std::int64_t scaled(const Rational& w, const mpz_class& l) {
  return mpz_class(w.raw().get_num() * (l / w.raw().get_den())).get_si();
}

class BranchAndBound {
 public:
  BranchAndBound(std::vector<KnapsackItem> items, Rational capacity)
      : items_(std::move(items)), capacity_(std::move(capacity)) {
    // Zero weights first, then by decreasing profit density.
    std::sort(items_.begin(), items_.end(),
              [](const KnapsackItem& a, const KnapsackItem& b) {
                if (a.weight.is_zero() != b.weight.is_zero()) {
                  return a.weight.is_zero();
                }
                if (a.weight.is_zero()) return false;
                return a.profit * b.weight > b.profit * a.weight;
              });
  }

  Rational solve() {
    dfs(0, capacity_, Rational(0));
    return best_;
  }

 private:
  // Dantzig bound: greedy fill with a fractional last item.
  Rational upper_bound(std::size_t k, Rational room) const {
    Rational ub;
    for (; k < items_.size(); ++k) {
      const auto& it = items_[k];
      if (it.weight <= room) {
        room -= it.weight;
        ub += it.profit;
      } else {
        ub += it.profit * room / it.weight;
        break;
      }
    }
    return ub;
  }

  void dfs(std::size_t k, const Rational& room, const Rational& profit) {
    best_ = max(best_, profit);
    if (k == items_.size()) return;
    if (profit + upper_bound(k, room) <= best_) return;
    const auto& it = items_[k];
    if (it.weight <= room) dfs(k + 1, room - it.weight, profit + it.profit);
    dfs(k + 1, room, profit);
  }

  std::vector<KnapsackItem> items_;
  Rational capacity_;
  Rational best_;
};

}  // namespace

Rational knapsack(std::span<const KnapsackItem> items,
                  const Rational& capacity) {
  std::vector<KnapsackItem> usable;
  for (const auto& it : items) {
    if (it.weight <= capacity && !it.profit.is_zero()) usable.push_back(it);
  }
  std::vector<Rational> weights;
  for (const auto& it : usable) weights.push_back(it.weight);
  const auto grid = grid_for(weights, capacity);
  if (!grid) return BranchAndBound(std::move(usable), capacity).solve();

  const auto& [l, cap] = *grid;
  std::vector<Rational> best(static_cast<std::size_t>(cap) + 1);
  for (const auto& it : usable) {
    const std::int64_t w = scaled(it.weight, l);
    for (std::int64_t c = cap; c >= w; --c) {
      Rational take = best[static_cast<std::size_t>(c - w)] + it.profit;
      if (take > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = std::move(take);
      }
    }
  }
  return best.back();
}

MaxWeightResult knapsack_max_weight(std::span<const WeightedItem> items,
                                    std::span<const Edge> conflicts,
                                    const WeightedItem& forced,
                                    const Rational& capacity) {
  if (forced.weight > capacity) {
    throw std::invalid_argument("forced item '" + forced.id +
                                "' alone exceeds the capacity");
  }
  auto conflicting = [&](const std::string& a, const std::string& b) {
    for (const auto& [x, y] : conflicts) {
      if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
  };
  const Rational room = capacity - forced.weight;
  std::vector<const WeightedItem*> free;
  for (const auto& it : items) {
    if (it.id == forced.id || it.weight > room) continue;
    if (conflicting(it.id, forced.id)) continue;
    free.push_back(&it);
  }

  if (free.size() > kExactSubsetLimit) {
    // Relaxation: drop the conflicts and solve subset sum.
    std::vector<KnapsackItem> relaxed;
    for (const auto* it : free) relaxed.push_back({it->weight, it->weight});
    std::vector<Rational> weights;
    for (const auto* it : free) weights.push_back(it->weight);
    Rational best = grid_for(weights, room) ? knapsack(relaxed, room) : room;
    return {forced.weight + best, false};
  }

  const std::size_t n = free.size();
  std::vector<std::uint32_t> clash(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (conflicting(free[a]->id, free[b]->id)) {
        clash[a] |= 1U << b;
        clash[b] |= 1U << a;
      }
    }
  }
  std::vector<Rational> suffix(n + 1);
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + free[k]->weight;

  Rational best;
  // Depth-first over include/exclude decisions; `banned` holds items that
  // conflict with something already chosen.
  auto dfs = [&](auto&& self, std::size_t k, std::uint32_t banned,
                 const Rational& used) -> void {
    best = max(best, used);
    if (best == room || k == n) return;
    if (used + suffix[k] <= best) return;
    if (!(banned >> k & 1U) && free[k]->weight + used <= room) {
      self(self, k + 1, banned | clash[k], used + free[k]->weight);
    }
    self(self, k + 1, banned, used);
  };
  dfs(dfs, 0, 0, Rational(0));
  return {forced.weight + best, true};
}

}  // namespace packbound::oracle
