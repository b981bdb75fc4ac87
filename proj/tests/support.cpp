#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace packbound::testing {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace packbound::testing
