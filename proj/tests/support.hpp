#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "packbound/model.hpp"
#include "packbound/rational.hpp"

namespace packbound::testing {

inline std::string data_path(const std::string& name) {
  return std::string(PACKBOUND_TEST_DATA) + "/" + name;
}

std::string read_text(const std::string& path);

inline Rational random_size(std::mt19937_64& rng, std::int64_t max_den) {
  const std::int64_t den =
      std::uniform_int_distribution<std::int64_t>(1, max_den)(rng);
  const std::int64_t num =
      std::uniform_int_distribution<std::int64_t>(1, den)(rng);
  return Rational(num, den);
}

// Sizes in (0,1] with denominators <= max_den; integer values in [1,20] when
// `values` is set. Box ids are "1", "2", ...
inline NormalizedInstance random_instance(std::mt19937_64& rng, std::size_t dim,
                                          std::size_t n, std::int64_t max_den,
                                          bool values = false) {
  NormalizedInstance inst;
  inst.dim = dim;
  for (std::size_t k = 0; k < n; ++k) {
    Box b{std::to_string(k + 1), {}, std::nullopt};
    for (std::size_t i = 0; i < dim; ++i) b.size.push_back(random_size(rng, max_den));
    if (values) {
      b.value = Rational(std::uniform_int_distribution<std::int64_t>(1, 20)(rng));
    }
    inst.boxes.push_back(std::move(b));
  }
  return inst;
}

// Halves every size in dimension `dim`, which makes packable instances common.
inline NormalizedInstance halved(NormalizedInstance inst, std::size_t dim) {
  for (Box& b : inst.boxes) b.size[dim] /= Rational(2);
  return inst;
}

inline NormalizedInstance uniform_boxes(std::size_t count, const Sizes& size) {
  NormalizedInstance inst;
  inst.dim = size.size();
  for (std::size_t k = 0; k < count; ++k) {
    inst.boxes.push_back({"b" + std::to_string(k + 1), size, std::nullopt});
  }
  return inst;
}

}  // namespace packbound::testing
