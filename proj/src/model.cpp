#include "packbound/model.hpp"

#include <set>
#include <sstream>

namespace packbound {

bool EdgePresets::contains(std::size_t dim, std::string_view a,
                           std::string_view b) const {
  if (dim >= per_dim.size()) return false;
  for (const auto& [x, y] : per_dim[dim]) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

const Box& NormalizedInstance::box(std::string_view id) const {
  return boxes[index_of(id)];
}

std::size_t NormalizedInstance::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].id == id) return i;
  }
  throw std::invalid_argument("unknown box id '" + std::string(id) + "'");
}

NormalizedInstance normalize(const Instance& inst) {
  if (inst.container.size() != inst.dim) {
    throw std::invalid_argument("container arity does not match dimension");
  }
  NormalizedInstance out;
  out.dim = inst.dim;
  out.boxes.reserve(inst.boxes.size());
  for (const Box& b : inst.boxes) {
    if (b.size.size() != inst.dim) {
      throw std::invalid_argument("box '" + b.id + "' has wrong arity");
    }
    Box nb{b.id, {}, b.value};
    nb.size.reserve(inst.dim);
    for (std::size_t i = 0; i < inst.dim; ++i) {
      if (b.size[i].is_zero()) {
        throw std::invalid_argument("box '" + b.id + "' has a zero size");
      }
      if (b.size[i] > inst.container[i]) {
        throw std::invalid_argument("box '" + b.id +
                                    "' does not fit into the container in "
                                    "dimension " +
                                    std::to_string(i + 1));
      }
      nb.size.push_back(b.size[i] / inst.container[i]);
    }
    out.boxes.push_back(std::move(nb));
  }
  return out;
}

Instance to_instance(const NormalizedInstance& inst) {
  Instance out;
  out.dim = inst.dim;
  out.container.assign(inst.dim, Rational(1));
  out.boxes = inst.boxes;
  out.edges = EdgePresets::empty(inst.dim);
  return out;
}

Rational volume(const Sizes& size) {
  Rational v(1);
  for (const Rational& s : size) v *= s;
  return v;
}

Rational total_volume(const std::vector<Box>& boxes) {
  Rational total;
  for (const Box& b : boxes) total += volume(b.size);
  return total;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

Rational parse_rational_at(std::size_t line, const std::string& tok) {
  try {
    return Rational::parse(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

std::size_t parse_count(std::size_t line, const std::string& tok,
                        const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos ||
      tok.size() > 6) {
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  }
  return static_cast<std::size_t>(std::stoul(tok));
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  bool have_dim = false;
  bool have_container = false;
  std::set<std::string> ids;
  // Edge endpoints are checked after all boxes are known.
  std::vector<std::pair<std::size_t, std::pair<std::size_t, Edge>>> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const auto tok = split_ws(raw);
    if (tok.empty()) continue;
    const std::string& directive = tok[0];

    if (directive == "d") {
      if (have_dim) throw ParseError(lineno, "duplicate 'd' directive");
      if (tok.size() != 2) throw ParseError(lineno, "'d' takes one integer");
      inst.dim = parse_count(lineno, tok[1], "dimension");
      if (inst.dim == 0) throw ParseError(lineno, "dimension must be >= 1");
      inst.edges = EdgePresets::empty(inst.dim);
      have_dim = true;
      continue;
    }
    if (!have_dim) {
      throw ParseError(lineno, "'" + directive + "' before 'd' directive");
    }
    if (directive == "container") {
      if (have_container) {
        throw ParseError(lineno, "duplicate 'container' directive");
      }
      if (tok.size() != inst.dim + 1) {
        throw ParseError(lineno, "container needs " + std::to_string(inst.dim) +
                                     " sizes, got " +
                                     std::to_string(tok.size() - 1));
      }
      for (std::size_t i = 1; i < tok.size(); ++i) {
        Rational r = parse_rational_at(lineno, tok[i]);
        if (r.is_zero()) throw ParseError(lineno, "container size must be > 0");
        inst.container.push_back(r);
      }
      have_container = true;
    } else if (directive == "box") {
      if (tok.size() < 2) throw ParseError(lineno, "box without id");
      Box b;
      b.id = tok[1];
      if (b.id.find('-') != std::string::npos) {
        throw ParseError(lineno, "box id '" + b.id + "' must not contain '-'");
      }
      if (!ids.insert(b.id).second) {
        throw ParseError(lineno, "duplicate box id '" + b.id + "'");
      }
      std::size_t k = 2;
      while (k < tok.size() && tok[k] != "value") {
        b.size.push_back(parse_rational_at(lineno, tok[k]));
        ++k;
      }
      if (b.size.size() != inst.dim) {
        throw ParseError(lineno, "box '" + b.id + "' needs " +
                                     std::to_string(inst.dim) +
                                     " sizes, got " +
                                     std::to_string(b.size.size()));
      }
      for (const Rational& s : b.size) {
        if (s.is_zero()) {
          throw ParseError(lineno, "box '" + b.id + "' has a zero size");
        }
      }
      if (k < tok.size()) {
        if (k + 2 != tok.size()) {
          throw ParseError(lineno, "'value' takes exactly one rational");
        }
        b.value = parse_rational_at(lineno, tok[k + 1]);
      }
      inst.boxes.push_back(std::move(b));
    } else if (directive == "edges") {
      if (tok.size() < 2) throw ParseError(lineno, "edges without dimension");
      const std::size_t i = parse_count(lineno, tok[1], "dimension");
      if (i < 1 || i > inst.dim) {
        throw ParseError(lineno, "edge dimension " + tok[1] + " out of range");
      }
      for (std::size_t k = 2; k < tok.size(); ++k) {
        const auto dash = tok[k].find('-');
        if (dash == std::string::npos || dash == 0 ||
            dash + 1 == tok[k].size()) {
          throw ParseError(lineno, "malformed edge '" + tok[k] + "'");
        }
        Edge e{tok[k].substr(0, dash), tok[k].substr(dash + 1)};
        if (e.first == e.second) {
          throw ParseError(lineno, "self-loop edge '" + tok[k] + "'");
        }
        pending.push_back({lineno, {i - 1, std::move(e)}});
      }
    } else {
      throw ParseError(lineno, "unknown directive '" + directive + "'");
    }
  }
  if (!have_dim) throw ParseError(lineno, "missing 'd' directive");
  if (!have_container) throw ParseError(lineno, "missing 'container' directive");
  for (auto& [line, de] : pending) {
    auto& [i, e] = de;
    for (const auto& end : {e.first, e.second}) {
      if (!ids.count(end)) {
        throw ParseError(line, "edge endpoint '" + end + "' is not a box id");
      }
    }
    inst.edges.per_dim[i].push_back(std::move(e));
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "d " << inst.dim << "\n";
  os << "container";
  for (const Rational& r : inst.container) os << ' ' << r;
  os << "\n";
  for (const Box& b : inst.boxes) {
    os << "box " << b.id;
    for (const Rational& r : b.size) os << ' ' << r;
    if (b.value) os << " value " << *b.value;
    os << "\n";
  }
  for (std::size_t i = 0; i < inst.edges.per_dim.size(); ++i) {
    if (inst.edges.per_dim[i].empty()) continue;
    os << "edges " << (i + 1);
    for (const auto& [a, b] : inst.edges.per_dim[i]) os << ' ' << a << '-' << b;
    os << "\n";
  }
  return os.str();
}

}  // namespace packbound
