#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>

#include "packbound/oracle.hpp"

namespace packbound::oracle {

namespace {

void check_limit(std::size_t n, std::size_t max_boxes) {
  if (n > max_boxes) {
    throw OracleLimitError("instance with " + std::to_string(n) +
                           " boxes is too large for the packing oracle "
                           "(limit " +
                           std::to_string(max_boxes) + ")");
  }
}

std::int64_t checked_int(const mpz_class& z) {
  if (!z.fits_slong_p()) {
    throw OracleLimitError("common denominator too large for packing oracle");
  }
  return z.get_si();
}

// Sizes scaled to integers by the per-dimension common denominator, so the
// search runs on exact integer coordinates.
struct IntegerInstance {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<std::int64_t> unit;          // per dim
  std::vector<std::vector<std::int64_t>> size;  // [box][dim]
};

IntegerInstance to_integers(const NormalizedInstance& inst) {
  IntegerInstance out;
  out.n = inst.size();
  out.dim = inst.dim;
  out.unit.resize(inst.dim);
  out.size.assign(out.n, std::vector<std::int64_t>(inst.dim));
  for (std::size_t i = 0; i < inst.dim; ++i) {
    mpz_class l = 1;
    for (const Box& b : inst.boxes) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
              b.size[i].raw().get_den_mpz_t());
    }
    // Subset sums stay below n * unit; keep them far from overflow.
    if (l > mpz_class(std::numeric_limits<std::int64_t>::max() / 64)) {
      throw OracleLimitError("common denominator too large for packing oracle");
    }
    out.unit[i] = checked_int(l);
    for (std::size_t b = 0; b < out.n; ++b) {
      const mpq_class& q = inst.boxes[b].size[i].raw();
      out.size[b][i] = checked_int(q.get_num() * (l / q.get_den()));
    }
  }
  return out;
}

class PackingSearch {
 public:
  explicit PackingSearch(const IntegerInstance& ii) : ii_(ii) {
    order_.resize(ii.n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    auto vol = [&](std::size_t b) {
      long double v = 1;
      for (std::size_t i = 0; i < ii.dim; ++i) {
        v *= static_cast<long double>(ii.size[b][i]) / ii.unit[i];
      }
      return v;
    };
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       const auto va = vol(a), vb = vol(b);
                       if (va != vb) return va > vb;
                       return ii.size[a] < ii.size[b];
                     });
    same_as_prev_.assign(ii.n, false);
    for (std::size_t k = 1; k < ii.n; ++k) {
      same_as_prev_[k] = ii.size[order_[k]] == ii.size[order_[k - 1]];
    }
    positions_.assign(ii.n, std::vector<std::vector<std::int64_t>>(ii.dim));
    for (std::size_t b = 0; b < ii.n; ++b) {
      for (std::size_t i = 0; i < ii.dim; ++i) {
        positions_[b][i] = canonical_positions(b, i);
      }
    }
    coord_.assign(ii.n, std::vector<std::int64_t>(ii.dim, 0));
  }

  bool run() { return place(0); }

  const std::vector<std::vector<std::int64_t>>& coordinates() const {
    return coord_;
  }

 private:
  // Sums of subsets of the other boxes' sizes that leave room for box b.
  std::vector<std::int64_t> canonical_positions(std::size_t b,
                                                std::size_t i) const {
    const std::int64_t limit = ii_.unit[i] - ii_.size[b][i];
    std::set<std::int64_t> sums{0};
    if (limit < 0) return {};
    for (std::size_t c = 0; c < ii_.n; ++c) {
      if (c == b) continue;
      std::vector<std::int64_t> next;
      for (std::int64_t s : sums) {
        const std::int64_t t = s + ii_.size[c][i];
        if (t <= limit) next.push_back(t);
      }
      sums.insert(next.begin(), next.end());
    }
    return {sums.begin(), sums.end()};
  }

  bool overlaps(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < ii_.dim; ++i) {
      const std::int64_t sa = ii_.size[a][i], sb = ii_.size[b][i];
      if (sa == 0 || sb == 0) return false;
      if (!(coord_[a][i] < coord_[b][i] + sb && coord_[b][i] < coord_[a][i] + sa)) {
        return false;
      }
    }
    return true;
  }

  bool place(std::size_t k) {
    if (k == ii_.n) return true;
    const std::size_t b = order_[k];
    const auto& cand = positions_[b];
    for (const auto& c : cand) {
      if (c.empty()) return false;
    }
    std::vector<std::size_t> idx(ii_.dim, 0);
    while (true) {
      for (std::size_t i = 0; i < ii_.dim; ++i) coord_[b][i] = cand[i][idx[i]];
      // Identical boxes are interchangeable: take their positions in
      // nondecreasing lexicographic order.
      const bool ordered =
          !same_as_prev_[k] || !(coord_[b] < coord_[order_[k - 1]]);
      if (ordered) {
        bool clash = false;
        for (std::size_t j = 0; j < k && !clash; ++j) {
          clash = overlaps(order_[j], b);
        }
        if (!clash && place(k + 1)) return true;
      }
      // Odometer with dimension 0 most significant (lexicographic order).
      std::size_t i = ii_.dim;
      while (i > 0) {
        --i;
        if (++idx[i] < cand[i].size()) break;
        idx[i] = 0;
        if (i == 0) return false;
      }
    }
  }

  const IntegerInstance& ii_;
  std::vector<std::size_t> order_;
  std::vector<bool> same_as_prev_;
  std::vector<std::vector<std::vector<std::int64_t>>> positions_;
  std::vector<std::vector<std::int64_t>> coord_;
};

NormalizedInstance subset(const NormalizedInstance& inst, std::uint32_t mask) {
  NormalizedInstance out;
  out.dim = inst.dim;
  for (std::size_t b = 0; b < inst.size(); ++b) {
    if (mask >> b & 1U) out.boxes.push_back(inst.boxes[b]);
  }
  return out;
}

// packable[mask] for every subset, using that subsets of packable sets are
// packable.
std::vector<bool> packable_subsets(const NormalizedInstance& inst,
                                   std::size_t max_boxes) {
  const std::size_t n = inst.size();
  check_limit(n, max_boxes);
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> masks(full + 1);
  std::iota(masks.begin(), masks.end(), 0U);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<bool> ok(full + 1, false);
  for (std::uint32_t m : masks) {
    bool all_sub = true;
    for (std::size_t b = 0; b < n && all_sub; ++b) {
      if (m >> b & 1U) all_sub = ok[m & ~(1U << b)];
    }
    ok[m] = all_sub && (std::popcount(m) <= 1 ? true
                                              : exact_packable(subset(inst, m),
                                                               max_boxes));
  }
  return ok;
}

}  // namespace

std::optional<Placement> find_packing(const NormalizedInstance& inst,
                                      std::size_t max_boxes) {
  check_limit(inst.size(), max_boxes);
  for (const Box& b : inst.boxes) {
    if (b.size.size() != inst.dim) {
      throw std::invalid_argument("box '" + b.id + "' has wrong arity");
    }
    for (const Rational& s : b.size) {
      if (s > Rational(1)) return std::nullopt;
    }
  }
  const IntegerInstance ii = to_integers(inst);
  PackingSearch search(ii);
  if (!search.run()) return std::nullopt;
  Placement p(ii.n, Sizes(ii.dim));
  for (std::size_t b = 0; b < ii.n; ++b) {
    for (std::size_t i = 0; i < ii.dim; ++i) {
      p[b][i] = Rational(search.coordinates()[b][i], ii.unit[i]);
    }
  }
  return p;
}

bool exact_packable(const NormalizedInstance& inst, std::size_t max_boxes) {
  return find_packing(inst, max_boxes).has_value();
}

bool is_valid_packing(const NormalizedInstance& inst, const Placement& p) {
  if (p.size() != inst.size()) return false;
  for (std::size_t b = 0; b < inst.size(); ++b) {
    if (p[b].size() != inst.dim) return false;
    for (std::size_t i = 0; i < inst.dim; ++i) {
      if (p[b][i] + inst.boxes[b].size[i] > Rational(1)) return false;
    }
  }
  for (std::size_t a = 0; a < inst.size(); ++a) {
    for (std::size_t b = a + 1; b < inst.size(); ++b) {
      bool all_overlap = true;
      for (std::size_t i = 0; i < inst.dim && all_overlap; ++i) {
        const Rational& wa = inst.boxes[a].size[i];
        const Rational& wb = inst.boxes[b].size[i];
        all_overlap = !wa.is_zero() && !wb.is_zero() &&
                      p[a][i] < p[b][i] + wb && p[b][i] < p[a][i] + wa;
      }
      if (all_overlap) return false;
    }
  }
  return true;
}

std::size_t exact_bin_count(const NormalizedInstance& inst,
                            std::size_t max_boxes) {
  const std::size_t n = inst.size();
  if (n == 0) return 0;
  const auto ok = packable_subsets(inst, max_boxes);
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::size_t> bins(full + 1, n + 1);
  bins[0] = 0;
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    // Enumerate submasks containing the lowest box.
    for (std::uint32_t s = m; s; s = (s - 1) & m) {
      if ((s & low) && ok[s]) bins[m] = std::min(bins[m], 1 + bins[m & ~s]);
    }
  }
  return bins[full];
}

Rational exact_strip_height(const NormalizedInstance& inst,
                            std::size_t max_boxes) {
  check_limit(inst.size(), max_boxes);
  if (inst.size() == 0) return Rational(0);
  const std::size_t axis = inst.dim - 1;
  std::set<Rational> sums{Rational(0)};
  Rational tallest;
  for (const Box& b : inst.boxes) {
    tallest = max(tallest, b.size[axis]);
    std::vector<Rational> next;
    for (const Rational& s : sums) next.push_back(s + b.size[axis]);
    sums.insert(next.begin(), next.end());
  }
  std::vector<Rational> heights;
  for (const Rational& s : sums) {
    if (s >= tallest) heights.push_back(s);
  }
  auto fits = [&](const Rational& h) {
    NormalizedInstance scaled = inst;
    for (Box& b : scaled.boxes) b.size[axis] /= h;
    return exact_packable(scaled, max_boxes);
  };
  // The full stack always fits; find the first height that does.
  std::size_t lo = 0, hi = heights.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (fits(heights[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return heights[lo];
}

Rational exact_okp_value(const NormalizedInstance& inst,
                         std::size_t max_boxes) {
  for (const Box& b : inst.boxes) {
    if (!b.value) throw std::invalid_argument("box '" + b.id + "' has no value");
  }
  const auto ok = packable_subsets(inst, max_boxes);
  Rational best;
  for (std::uint32_t m = 0; m < ok.size(); ++m) {
    if (!ok[m]) continue;
    Rational v;
    for (std::size_t b = 0; b < inst.size(); ++b) {
      if (m >> b & 1U) v += *inst.boxes[b].value;
    }
    best = max(best, v);
  }
  return best;
}

}  // namespace packbound::oracle
