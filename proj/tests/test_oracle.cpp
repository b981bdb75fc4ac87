#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "packbound/oracle.hpp"
#include "support.hpp"

using namespace packbound;
using namespace packbound::oracle;

namespace {

const Rational kTwoFifths(2, 5);

NormalizedInstance cubes(std::size_t n) {
  return testing::uniform_boxes(n, {kTwoFifths, kTwoFifths, kTwoFifths});
}

NormalizedInstance permute_dims(const NormalizedInstance& inst,
                                const std::vector<std::size_t>& perm) {
  NormalizedInstance out = inst;
  for (Box& b : out.boxes) {
    Sizes s(inst.dim);
    for (std::size_t i = 0; i < inst.dim; ++i) s[i] = b.size[perm[i]];
    b.size = s;
  }
  return out;
}

// Every tuple of d graphs on n vertices, returning whether one is a valid
// packing class.
bool some_packing_class(const NormalizedInstance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  const std::uint64_t per = 1ULL << pairs.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < inst.dim; ++i) total *= per;
  for (std::uint64_t code = 0; code < total; ++code) {
    PackingClass pc;
    std::uint64_t rest = code;
    std::vector<std::uint64_t> masks;
    for (std::size_t i = 0; i < inst.dim; ++i) {
      masks.push_back(rest % per);
      rest /= per;
    }
    std::uint64_t all = per - 1;
    for (auto m : masks) all &= m;
    if (all != 0) continue;  // P3 fails
    for (std::size_t i = 0; i < inst.dim; ++i) {
      Graph g(n);
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (masks[i] >> e & 1U) g.add_edge(pairs[e].first, pairs[e].second);
      }
      pc.components.push_back(g);
    }
    if (validate_packing_class(pc, inst).valid) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("check_dff on known functions") {
  CHECK(check_dff(Dff::ustep(2)).holds);
  CHECK(check_dff(Dff::identity()).holds);
  const DffVerdict bad = check_dff(
      [](const Rational& x) { return min(Rational(1), Rational(2) * x); });
  REQUIRE_FALSE(bad.holds);
  CHECK(bad.image_sum > Rational(1));
  Rational sum;
  for (const Rational& x : bad.counterexample) sum += x;
  CHECK(sum <= Rational(1));
  // {1/2, 1/2} is the canonical violation.
  const DffVerdict two =
      check_dff([](const Rational& x) { return x >= Rational(1, 2) ? Rational(1) : Rational(0); });
  CHECK_FALSE(two.holds);
  CHECK(two.counterexample == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK_FALSE(check_dff([](const Rational&) { return Rational(1, 3); }).holds);
  CHECK_THROWS_AS(check_dff(Dff::identity(), 1), std::invalid_argument);
}

TEST_CASE("exact packability of the cube examples") {
  CHECK_FALSE(exact_packable(cubes(9), 9));
  const auto eight = find_packing(cubes(8));
  REQUIRE(eight.has_value());
  CHECK(is_valid_packing(cubes(8), *eight));
  CHECK(exact_packable(testing::uniform_boxes(1, {1, 1})));
  CHECK(exact_packable(NormalizedInstance{2, {}}));
  CHECK_THROWS_AS(exact_packable(cubes(9)), OracleLimitError);
}

TEST_CASE("exact packability on small cases with known answers") {
  const Rational h(1, 2);
  // Four quarters tile the square; a fifth of any size cannot join.
  CHECK(exact_packable(testing::uniform_boxes(4, {h, h})));
  CHECK_FALSE(exact_packable(testing::uniform_boxes(5, {h, h})));
  // Two 3/5 squares overlap in both coordinates wherever they go.
  CHECK_FALSE(exact_packable(testing::uniform_boxes(2, {Rational(3, 5), Rational(3, 5)})));
  // An L-shape: big square plus two strips along its sides.
  NormalizedInstance l{2,
                       {{"big", {Rational(2, 3), Rational(2, 3)}, std::nullopt},
                        {"right", {Rational(1, 3), Rational(1)}, std::nullopt},
                        {"top", {Rational(2, 3), Rational(1, 3)}, std::nullopt}}};
  CHECK(exact_packable(l));
  l.boxes[2].size[0] = Rational(3, 4);
  CHECK_FALSE(exact_packable(l));
}

TEST_CASE("exact packability is symmetric under permutations") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto inst = testing::random_instance(rng, 3, 5, 4);
    const bool base = exact_packable(inst);
    std::vector<std::size_t> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
      CHECK(exact_packable(permute_dims(inst, perm)) == base);
    }
    auto shuffled = inst;
    std::shuffle(shuffled.boxes.begin(), shuffled.boxes.end(), rng);
    CHECK(exact_packable(shuffled) == base);
  }
}

TEST_CASE("found packings are valid and induce valid packing classes") {
  std::mt19937_64 rng(17);
  int found = 0;
  for (int t = 0; t < 60; ++t) {
    const auto inst = testing::halved(testing::random_instance(rng, 2 + t % 2, 5, 5), 0);
    const auto p = find_packing(inst);
    if (!p) continue;
    ++found;
    CHECK(is_valid_packing(inst, *p));
    const ClassVerdict v = validate_packing_class(induced_packing_class(inst, *p), inst);
    CHECK(v.valid);
  }
  CHECK(found > 5);
}

TEST_CASE("packing classes: small verdicts") {
  PackingClass single{{Graph(1), Graph(1)}};
  CHECK(validate_packing_class(single, testing::uniform_boxes(1, {Rational(1, 2), Rational(1)})).valid);

  const auto pair = testing::uniform_boxes(2, {Rational(3, 5)});
  const ClassVerdict v = validate_packing_class(PackingClass{{Graph(2)}}, pair);
  CHECK_FALSE(v.valid);
  CHECK(v.violated == ClassCondition::kP2Stable);

  Graph c4(4);  // the 4-cycle is not an interval graph
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 0);
  CHECK_FALSE(is_interval_graph(c4));
  const auto four = testing::uniform_boxes(4, {Rational(1, 4), Rational(1, 4)});
  const ClassVerdict p1 = validate_packing_class(PackingClass{{c4, Graph(4)}}, four);
  CHECK(p1.violated == ClassCondition::kP1Interval);

  Graph e(2);
  e.add_edge(0, 1);
  const auto tiny = testing::uniform_boxes(2, {Rational(1, 4), Rational(1, 4)});
  CHECK(validate_packing_class(PackingClass{{e, e}}, tiny).violated ==
        ClassCondition::kP3Intersection);
}

TEST_CASE("a packing class exists iff the instance is packable") {
  std::mt19937_64 rng(99);
  int yes = 0, no = 0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto inst = testing::random_instance(rng, 2, n, 4);
    const bool packable = exact_packable(inst);
    (packable ? yes : no)++;
    CHECK(some_packing_class(inst) == packable);
  }
  for (int t = 0; t < 10; ++t) {
    const auto inst = testing::random_instance(rng, 3, 3, 3);
    CHECK(some_packing_class(inst) == exact_packable(inst));
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("bin count, strip height and OKP value") {
  CHECK(exact_bin_count(cubes(9), 9) == 2);
  CHECK(exact_bin_count(NormalizedInstance{2, {}}) == 0);
  const auto three = testing::uniform_boxes(3, {Rational(3, 5), Rational(3, 5)});
  CHECK(exact_bin_count(three) == 3);

  NormalizedInstance strip{2,
                           {{"a", {Rational(1), Rational(1, 2)}, std::nullopt},
                            {"b", {Rational(1), Rational(7, 10)}, std::nullopt}}};
  CHECK(exact_strip_height(strip) == Rational(6, 5));
  NormalizedInstance side{2,
                          {{"a", {Rational(1, 2), Rational(1, 2)}, std::nullopt},
                           {"b", {Rational(1, 2), Rational(7, 10)}, std::nullopt}}};
  CHECK(exact_strip_height(side) == Rational(7, 10));

  NormalizedInstance valued{2,
                            {{"a", {Rational(3, 5), Rational(3, 5)}, Rational(4)},
                             {"b", {Rational(3, 5), Rational(3, 5)}, Rational(5)},
                             {"c", {Rational(2, 5), Rational(1)}, Rational(2)}}};
  CHECK(exact_okp_value(valued) == Rational(7));
  valued.boxes[0].value.reset();
  CHECK_THROWS_AS(exact_okp_value(valued), std::invalid_argument);
}

TEST_CASE("knapsack_max_weight on the 20x13 example") {
  const std::vector<WeightedItem> items{{"2", Rational(8, 20)},
                                        {"4", Rational(6, 20)},
                                        {"5", Rational(6, 20)},
                                        {"6", Rational(8, 20)}};
  const std::vector<Edge> conflicts{{"4", "5"}};
  const auto r = knapsack_max_weight(items, conflicts, {"1", Rational(8, 20)}, Rational(1));
  CHECK(r.value == Rational(16, 20));
  CHECK(r.exact);

  const auto alone = knapsack_max_weight({}, {}, {"1", Rational(3, 7)}, Rational(1));
  CHECK(alone.value == Rational(3, 7));
  CHECK_THROWS_AS(knapsack_max_weight({}, {}, {"1", Rational(3, 2)}, Rational(1)),
                  std::invalid_argument);
}

TEST_CASE("knapsack_max_weight without conflicts is subset sum") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    std::vector<WeightedItem> items;
    const int n = 1 + t % 10;
    for (int k = 0; k < n; ++k) {
      items.push_back({"i" + std::to_string(k), testing::random_size(rng, 15)});
    }
    const Rational forced = testing::random_size(rng, 15);
    Rational best;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
      Rational s = forced;
      for (int k = 0; k < n; ++k) {
        if (m >> k & 1U) s += items[static_cast<std::size_t>(k)].weight;
      }
      if (s <= Rational(1)) best = max(best, s);
    }
    CHECK(knapsack_max_weight(items, {}, {"f", forced}, Rational(1)).value == best);
  }
}

TEST_CASE("knapsack_max_weight with conflicts matches enumeration") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 8;
    std::vector<WeightedItem> items;
    for (int k = 0; k < n; ++k) {
      items.push_back({"i" + std::to_string(k), testing::random_size(rng, 12)});
    }
    std::vector<Edge> conflicts;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 3 == 0) conflicts.push_back({items[a].id, items[b].id});
      }
      if (rng() % 4 == 0) conflicts.push_back({items[a].id, "f"});
    }
    auto clash = [&](const std::string& x, const std::string& y) {
      return std::any_of(conflicts.begin(), conflicts.end(), [&](const Edge& e) {
        return (e.first == x && e.second == y) || (e.first == y && e.second == x);
      });
    };
    const Rational forced(1, 4);
    Rational best = forced;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
      bool ok = true;
      Rational s = forced;
      for (int a = 0; a < n && ok; ++a) {
        if (!(m >> a & 1U)) continue;
        s += items[a].weight;
        ok = !clash(items[a].id, "f");
        for (int b = a + 1; b < n && ok; ++b) {
          if (m >> b & 1U) ok = !clash(items[a].id, items[b].id);
        }
      }
      if (ok && s <= Rational(1)) best = max(best, s);
    }
    CHECK(knapsack_max_weight(items, conflicts, {"f", forced}, Rational(1)).value == best);
  }
}

TEST_CASE("knapsack_max_weight falls back to a flagged relaxation") {
  std::vector<WeightedItem> items;
  for (int k = 0; k < 30; ++k) items.push_back({"i" + std::to_string(k), Rational(1, 40)});
  std::vector<Edge> conflicts{{"i0", "i1"}};
  const auto r = knapsack_max_weight(items, conflicts, {"f", Rational(1, 2)}, Rational(1));
  CHECK_FALSE(r.exact);
  CHECK(r.value == Rational(1));
}

TEST_CASE("knapsack") {
  CHECK(knapsack(std::vector<KnapsackItem>{{Rational(1, 2), Rational(5)}}, Rational(1)) ==
        Rational(5));
  CHECK(knapsack(std::vector<KnapsackItem>{{Rational(3, 2), Rational(5)},
                                           {Rational(2), Rational(1)}},
                 Rational(1)) == Rational(0));
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    std::vector<KnapsackItem> items;
    for (int k = 0; k < 12; ++k) {
      items.push_back({testing::random_size(rng, 20), testing::random_size(rng, 9) * Rational(10)});
    }
    Rational best;
    for (std::uint32_t m = 0; m < (1U << 12); ++m) {
      Rational w, p;
      for (int k = 0; k < 12; ++k) {
        if (m >> k & 1U) {
          w += items[k].weight;
          p += items[k].profit;
        }
      }
      if (w <= Rational(1)) best = max(best, p);
    }
    CHECK(knapsack(items, Rational(1)) == best);
  }
}

TEST_CASE("knapsack branch and bound on a coarse grid") {
  // Denominators whose lcm exceeds the DP grid force the search path.
  std::vector<KnapsackItem> items{{Rational(1, 1009), Rational(1)},
                                  {Rational(500, 1013), Rational(3)},
                                  {Rational(500, 1019), Rational(3)},
                                  {Rational(2, 1021), Rational(2)},
                                  {Rational(1, 2), Rational(4)}};
  Rational best;
  for (std::uint32_t m = 0; m < 32; ++m) {
    Rational w, p;
    for (int k = 0; k < 5; ++k) {
      if (m >> k & 1U) {
        w += items[k].weight;
        p += items[k].profit;
      }
    }
    if (w <= Rational(1)) best = max(best, p);
  }
  CHECK(knapsack(items, Rational(1)) == best);
}

TEST_CASE("max clique") {
  CHECK(max_clique(Graph(4)) == 1);
  Graph k4(4);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  }
  CHECK(max_clique(k4) == 4);
  CHECK(max_clique(Graph(0)) == 0);
  CHECK_THROWS_AS(max_clique(Graph(13)), OracleLimitError);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 12;
    Graph g(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng() % 2) g.add_edge(a, b);
      }
    }
    CHECK(max_clique(g) == max_stable_set(g.complement()));
  }
}

TEST_CASE("interval graph recognition") {
  Graph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(is_interval_graph(path));
  // The claw is an interval graph; the subdivided claw is not.
  Graph claw(4);
  claw.add_edge(0, 1);
  claw.add_edge(0, 2);
  claw.add_edge(0, 3);
  CHECK(is_interval_graph(claw));
  Graph sub(7);
  for (std::size_t leaf = 1; leaf <= 3; ++leaf) {
    sub.add_edge(0, leaf);
    sub.add_edge(leaf, leaf + 3);
  }
  CHECK_FALSE(is_interval_graph(sub));
  CHECK(is_interval_graph(Graph(5)));
}
