#include <algorithm>
#include <bit>
#include <numeric>

#include "packbound/oracle.hpp"

namespace packbound::oracle {

Graph::Graph(std::size_t n) : adj_(n, 0) {
  if (n > kMaxVertices) {
    throw OracleLimitError("graph with " + std::to_string(n) +
                           " vertices exceeds the oracle limit");
  }
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a == b || a >= size() || b >= size()) {
    throw std::invalid_argument("invalid edge");
  }
  adj_[a] |= 1U << b;
  adj_[b] |= 1U << a;
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  return adj_[a] >> b & 1U;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (auto m : adj_) twice += static_cast<std::size_t>(std::popcount(m));
  return twice / 2;
}

Graph Graph::induced(std::uint32_t subset) const {
  Graph g(size());
  for (std::size_t a = 0; a < size(); ++a) {
    if (subset >> a & 1U) g.adj_[a] = adj_[a] & subset;
  }
  return g;
}

Graph Graph::complement() const {
  Graph g(size());
  const std::uint32_t all = size() == 32 ? ~0U : (1U << size()) - 1;
  for (std::size_t a = 0; a < size(); ++a) {
    g.adj_[a] = ~adj_[a] & all & ~(1U << a);
  }
  return g;
}

std::size_t max_clique(const Graph& g, std::size_t max_vertices) {
  const std::size_t n = g.size();
  if (n > max_vertices) {
    throw OracleLimitError("graph too large for the clique oracle");
  }
  std::size_t best = 0;
  for (std::uint32_t s = 1; s < (1U << n); ++s) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k <= best) continue;
    bool clique = true;
    for (std::size_t v = 0; v < n && clique; ++v) {
      if (s >> v & 1U) clique = ((g.neighbors(v) | 1U << v) & s) == s;
    }
    if (clique) best = k;
  }
  return best;
}

namespace {

std::size_t stable_rec(const Graph& g, std::uint32_t candidates) {
  if (!candidates) return 0;
  const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
  const std::uint32_t rest = candidates & ~(1U << v);
  const std::size_t without = stable_rec(g, rest);
  const std::size_t with = 1 + stable_rec(g, rest & ~g.neighbors(v));
  return std::max(with, without);
}

}  // namespace

std::size_t max_stable_set(const Graph& g, std::size_t max_vertices) {
  if (g.size() > max_vertices) {
    throw OracleLimitError("graph too large for the stable set oracle");
  }
  return stable_rec(g, (1U << g.size()) - 1);
}

bool is_interval_graph(const Graph& g) {
  const std::size_t n = g.size();
  if (n > 9) throw OracleLimitError("graph too large for interval recognition");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> pos(n);
  do {
    // An order admits an interval model iff for a < b < c, ac in E implies
    // ab in E. Check it, then build and verify the model.
    bool good = true;
    for (std::size_t a = 0; a < n && good; ++a) {
      for (std::size_t c = a + 2; c < n && good; ++c) {
        if (!g.has_edge(order[a], order[c])) continue;
        for (std::size_t b = a + 1; b < c && good; ++b) {
          good = g.has_edge(order[a], order[b]);
        }
      }
    }
    if (!good) continue;
    for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
    // Interval of v: [pos(v), furthest later neighbour].
    std::vector<std::size_t> right(n);
    for (std::size_t v = 0; v < n; ++v) {
      right[v] = pos[v];
      for (std::size_t w = 0; w < n; ++w) {
        if (g.has_edge(v, w)) right[v] = std::max(right[v], pos[w]);
      }
    }
    bool model = true;
    for (std::size_t u = 0; u < n && model; ++u) {
      for (std::size_t v = u + 1; v < n && model; ++v) {
        const bool meet = pos[u] <= right[v] && pos[v] <= right[u];
        model = meet == g.has_edge(u, v);
      }
    }
    if (model) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

ClassVerdict validate_packing_class(const PackingClass& pc,
                                    const NormalizedInstance& inst,
                                    std::size_t max_boxes) {
  const std::size_t n = inst.size();
  if (n > max_boxes) {
    throw OracleLimitError("instance too large for packing-class validation");
  }
  if (pc.components.size() != inst.dim) {
    throw std::invalid_argument("packing class needs one graph per dimension");
  }
  for (const Graph& g : pc.components) {
    if (g.size() != n) {
      throw std::invalid_argument("component graph size differs from |V|");
    }
  }

  for (std::size_t i = 0; i < inst.dim; ++i) {
    if (!is_interval_graph(pc.components[i])) {
      return {false, ClassCondition::kP1Interval, i,
              "G_" + std::to_string(i + 1) + " is not an interval graph"};
    }
  }

  const std::uint32_t all = (1U << n) - 1;
  for (std::size_t i = 0; i < inst.dim; ++i) {
    const Graph& g = pc.components[i];
    for (std::uint32_t s = 1; s <= all; ++s) {
      bool stable = true;
      for (std::size_t v = 0; v < n && stable; ++v) {
        if (s >> v & 1U) stable = (g.neighbors(v) & s) == 0;
      }
      if (!stable) continue;
      bool maximal = true;
      for (std::size_t v = 0; v < n && maximal; ++v) {
        if (!(s >> v & 1U)) maximal = (g.neighbors(v) & s) != 0;
      }
      if (!maximal) continue;
      Rational width;
      std::string ids;
      for (std::size_t v = 0; v < n; ++v) {
        if (!(s >> v & 1U)) continue;
        width += inst.boxes[v].size[i];
        ids += (ids.empty() ? "" : ",") + inst.boxes[v].id;
      }
      if (width > Rational(1)) {
        return {false, ClassCondition::kP2Stable, i,
                "stable set {" + ids + "} of G_" + std::to_string(i + 1) +
                    " has width " + width.str()};
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      bool everywhere = true;
      for (const Graph& g : pc.components) everywhere = everywhere && g.has_edge(a, b);
      if (everywhere) {
        return {false, ClassCondition::kP3Intersection, 0,
                "edge " + inst.boxes[a].id + "-" + inst.boxes[b].id +
                    " lies in every component graph"};
      }
    }
  }
  return {};
}

PackingClass induced_packing_class(const NormalizedInstance& inst,
                                   const Placement& p) {
  PackingClass pc;
  for (std::size_t i = 0; i < inst.dim; ++i) {
    Graph g(inst.size());
    for (std::size_t a = 0; a < inst.size(); ++a) {
      for (std::size_t b = a + 1; b < inst.size(); ++b) {
        const Rational& wa = inst.boxes[a].size[i];
        const Rational& wb = inst.boxes[b].size[i];
        if (!wa.is_zero() && !wb.is_zero() && p[a][i] < p[b][i] + wb &&
            p[b][i] < p[a][i] + wa) {
          g.add_edge(a, b);
        }
      }
    }
    pc.components.push_back(std::move(g));
  }
  return pc;
}

}  // namespace packbound::oracle
