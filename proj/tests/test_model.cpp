#include <doctest.h>

#include <random>

#include "packbound/model.hpp"
#include "support.hpp"

using namespace packbound;
using packbound::testing::data_path;
using packbound::testing::read_text;

TEST_CASE("rational arithmetic stays exact and canonical") {
  const Rational a(6, 8);
  CHECK(a.str() == "3/4");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(a + Rational(1, 4) == Rational(1));
  CHECK(a * Rational(4, 3) == Rational(1));
  CHECK(floor(Rational(7, 3)) == Rational(2));
  CHECK(ceil(Rational(7, 3)) == Rational(3));
  CHECK(ceil(Rational(2)) == Rational(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 3) - Rational(1, 2), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("normalize divides by the container") {
  Instance inst{2, {20, 13}, {{"1", {8, 7}, std::nullopt}}, EdgePresets::empty(2)};
  const NormalizedInstance n = normalize(inst);
  CHECK(n.boxes[0].size == Sizes{Rational(2, 5), Rational(7, 13)});

  Instance unit{3, {1, 1, 1},
                {{"a", {Rational(2, 5), Rational(2, 5), Rational(2, 5)}, Rational(3)}},
                EdgePresets::empty(3)};
  const NormalizedInstance u = normalize(unit);
  CHECK(u.boxes == unit.boxes);
  CHECK(normalize(to_instance(u)) == u);

  Instance too_big{2, {10, 10}, {{"x", {11, 1}, std::nullopt}}, EdgePresets::empty(2)};
  CHECK_THROWS_AS(normalize(too_big), std::invalid_argument);
}

TEST_CASE("volumes") {
  const auto cubes = testing::uniform_boxes(9, {Rational(2, 5), Rational(2, 5), Rational(2, 5)});
  CHECK(total_volume(cubes.boxes) == Rational(72, 125));
  CHECK(total_volume({}) == Rational(0));
  CHECK(volume({1, 1, 1, 1}) == Rational(1));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto inst = testing::random_instance(rng, 3, 6, 9);
    const std::vector<Box> left(inst.boxes.begin(), inst.boxes.begin() + 2);
    const std::vector<Box> right(inst.boxes.begin() + 2, inst.boxes.end());
    CHECK(total_volume(inst.boxes) == total_volume(left) + total_volume(right));
  }
}

TEST_CASE("parse the 20x13 instance with edge presets") {
  const Instance inst = parse_instance(read_text(data_path("stretch_20x13.txt")));
  CHECK(inst.dim == 2);
  CHECK(inst.container == Sizes{20, 13});
  REQUIRE(inst.boxes.size() == 6);
  CHECK(inst.boxes[2].size == Sizes{12, 4});
  CHECK(inst.edges.contains(0, "3", "1"));
  CHECK(inst.edges.contains(0, "4", "5"));
  CHECK_FALSE(inst.edges.contains(1, "1", "3"));
  CHECK_FALSE(inst.edges.contains(0, "1", "2"));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_instance("d 2\ncontainer 1 1\n").boxes.empty());

  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("d 2\ncontainer 10 10\nbox 1 8\n") == 3);
  CHECK(line_of("d 2\ncontainer 10 10\nbox a 1 1\nbox a 2 2\n") == 4);
  CHECK(line_of("d 2\n# comment\ncontainer 1 1\nshelf 3\n") == 4);
  CHECK(line_of("d 2\ncontainer 1 1/x\n") == 2);
  CHECK(line_of("container 1 1\n") == 1);
  CHECK(line_of("d 1\ncontainer 1\nbox a 1\nedges 1 a-z\n") == 4);
  CHECK(line_of("d 1\ncontainer 1\nbox a 1 value\n") == 3);
}

TEST_CASE("serialize and parse round trip") {
  const Instance inst = parse_instance(read_text(data_path("stretch_20x13.txt")));
  CHECK(parse_instance(serialize_instance(inst)) == inst);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto n = testing::random_instance(rng, 1 + t % 4, t % 7, 12, t % 2 == 0);
    Instance x = to_instance(n);
    x.container.assign(x.dim, Rational(1));
    x.edges = EdgePresets::empty(x.dim);
    if (n.size() >= 2) x.edges.per_dim[0].push_back({"1", "2"});
    CHECK(parse_instance(serialize_instance(x)) == x);
  }
}
