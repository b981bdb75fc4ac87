#include <algorithm>
#include <numeric>

#include "packbound/oracle.hpp"

namespace packbound::oracle {

namespace {

struct Enumerator {
  std::vector<std::int64_t> scaled;  // values times lcm, nonincreasing
  std::vector<Rational> values;
  std::vector<Rational> images;
  std::vector<std::size_t> stack;
  DffVerdict verdict;

  // Returns true once a violation is recorded.
  bool visit(std::size_t start, std::int64_t remaining, const Rational& sum) {
    ++verdict.multisets_checked;
    if (sum > Rational(1)) {
      verdict.holds = false;
      verdict.image_sum = sum;
      for (std::size_t j : stack) verdict.counterexample.push_back(values[j]);
      return true;
    }
    for (std::size_t j = start; j < scaled.size(); ++j) {
      if (scaled[j] > remaining) continue;
      stack.push_back(j);
      if (visit(j, remaining - scaled[j], sum + images[j])) return true;
      stack.pop_back();
    }
    return false;
  }
};

}  // namespace

DffVerdict check_dff(const UnitFunction& f, int max_denominator) {
  if (max_denominator < 2 || max_denominator > 40) {
    throw std::invalid_argument("max_denominator must lie in [2,40]");
  }
  DffVerdict verdict;

  // Zero can be repeated without bound, so any positive image of 0 violates.
  const Rational at_zero = f(Rational(0));
  if (!at_zero.is_zero()) {
    const auto copies = (floor(Rational(1) / at_zero) + Rational(1)).to_int64();
    verdict.holds = false;
    verdict.counterexample.assign(static_cast<std::size_t>(copies), Rational(0));
    verdict.image_sum = at_zero * Rational(copies);
    verdict.multisets_checked = 1;
    return verdict;
  }

  std::int64_t lcm = 1;
  for (int q = 2; q <= max_denominator; ++q) lcm = std::lcm(lcm, q);

  std::vector<std::pair<std::int64_t, Rational>> points;
  for (int q = 1; q <= max_denominator; ++q) {
    for (int p = 1; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      points.emplace_back(lcm / q * p, Rational(p, q));
    }
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  Enumerator e;
  for (auto& [s, v] : points) {
    e.scaled.push_back(s);
    e.images.push_back(f(v));
    e.values.push_back(std::move(v));
  }
  e.visit(0, lcm, Rational(0));
  return e.verdict;
}

DffVerdict check_dff(const Dff& f, int max_denominator) {
  return check_dff([&f](const Rational& x) { return f(x); }, max_denominator);
}

}  // namespace packbound::oracle
