#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "packbound/rational.hpp"

namespace packbound {

using Sizes = std::vector<Rational>;

struct Box {
  std::string id;
  Sizes size;
  std::optional<Rational> value;

  friend bool operator==(const Box&, const Box&) = default;
};

// An unordered pair of box ids.
using Edge = std::pair<std::string, std::string>;

// Edge sets fixed into the component graphs during a packing-class search,
// one list per dimension. Stored as written; duplicates are harmless.
struct EdgePresets {
  std::vector<std::vector<Edge>> per_dim;

  static EdgePresets empty(std::size_t dim) {
    return EdgePresets{std::vector<std::vector<Edge>>(dim)};
  }
  bool contains(std::size_t dim, std::string_view a, std::string_view b) const;

  friend bool operator==(const EdgePresets&, const EdgePresets&) = default;
};

struct Instance {
  std::size_t dim = 0;
  Sizes container;
  std::vector<Box> boxes;
  EdgePresets edges;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Instance scaled to the unit container. Sizes produced by `normalize` lie in
// (0,1]; sizes produced by applying a conservative scale lie in [0,1].
struct NormalizedInstance {
  std::size_t dim = 0;
  std::vector<Box> boxes;

  const Box& box(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;
  std::size_t size() const { return boxes.size(); }

  friend bool operator==(const NormalizedInstance&,
                         const NormalizedInstance&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Divides every size component by the matching container component.
// Throws std::invalid_argument if a box does not fit into the container.
NormalizedInstance normalize(const Instance& inst);

// Unit-container Instance view of a normalized instance (no edge presets).
Instance to_instance(const NormalizedInstance& inst);

Rational volume(const Sizes& size);
Rational total_volume(const std::vector<Box>& boxes);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

}  // namespace packbound
