#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitstring.hpp"
#include "rng.hpp"

namespace ftlab {

// Disjoint-set union with path halving and union by size.
struct UnionFind {
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> size;
  std::int32_t components;

  explicit UnionFind(std::size_t n)
      : parent(n), size(n, 1), components(static_cast<std::int32_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::int32_t find(std::int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    --components;
    return true;
  }
};

// Connected undirected graph with positive integer edge weights. Bit i of a
// selection string corresponds to edges[i].
struct WeightedGraph {
  struct Edge {
    std::uint32_t u, v;
    std::uint64_t w;
  };

  std::size_t n_vertices = 0;
  std::vector<Edge> edges;

  std::size_t n_edges() const { return edges.size(); }

  std::uint64_t max_weight() const {
    std::uint64_t m = 0;
    for (const auto& e : edges) m = std::max(m, e.w);
    return m;
  }

  void validate() const {
    if (n_vertices < 2) throw std::invalid_argument("graph: need at least two vertices");
    if (edges.empty()) throw std::invalid_argument("graph: need at least one edge");
    UnionFind uf(n_vertices);
    for (const auto& e : edges) {
      if (e.u >= n_vertices || e.v >= n_vertices)
        throw std::invalid_argument("graph: vertex index out of range");
      if (e.u == e.v) throw std::invalid_argument("graph: self-loops are not allowed");
      if (e.w == 0) throw std::invalid_argument("graph: weights must be >= 1");
      uf.unite(static_cast<std::int32_t>(e.u), static_cast<std::int32_t>(e.v));
    }
    if (uf.components != 1) throw std::invalid_argument("graph: must be connected");
  }

  // Plain-text format: first line "n_vertices n_edges", then one line
  // "u v w" per edge with 0-indexed endpoints.
  static WeightedGraph parse(std::istream& in) {
    WeightedGraph g;
    std::size_t m = 0;
    if (!(in >> g.n_vertices >> m))
      throw std::invalid_argument("graph: malformed header, expected 'n_vertices n_edges'");
    g.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Edge e{};
      if (!(in >> e.u >> e.v >> e.w))
        throw std::invalid_argument("graph: malformed edge line " + std::to_string(i + 1));
      g.edges.push_back(e);
    }
    g.validate();
    return g;
  }

  static WeightedGraph load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("graph: cannot open " + path);
    return parse(in);
  }

  std::string serialize() const {
    std::ostringstream out;
    out << n_vertices << ' ' << edges.size() << '\n';
    for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
    return out.str();
  }
};

// Number of connected components induced by the selected edge set (isolated
// vertices count).
inline std::size_t component_count(const WeightedGraph& g, const BitString& selection) {
  if (selection.size() != g.n_edges())
    throw std::invalid_argument("component_count: selection size mismatch");
  UnionFind uf(g.n_vertices);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (selection.test(i))
      uf.unite(static_cast<std::int32_t>(g.edges[i].u), static_cast<std::int32_t>(g.edges[i].v));
  return static_cast<std::size_t>(uf.components);
}

inline std::uint64_t selection_weight(const WeightedGraph& g, const BitString& selection) {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (selection.test(i)) w += g.edges[i].w;
  return w;
}

// Minimum spanning tree weight by Kruskal's algorithm.
inline std::uint64_t mst_weight_oracle(const WeightedGraph& g) {
  g.validate();
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.edges[a].w < g.edges[b].w; });
  UnionFind uf(g.n_vertices);
  std::uint64_t total = 0;
  for (std::size_t i : order)
    if (uf.unite(static_cast<std::int32_t>(g.edges[i].u),
                 static_cast<std::int32_t>(g.edges[i].v)))
      total += g.edges[i].w;
  return total;
}

// A spanning tree of maximum total weight (worst elitist starting point that
// is still a tree), as an edge selection.
inline BitString maximum_spanning_tree(const WeightedGraph& g) {
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.edges[a].w > g.edges[b].w; });
  UnionFind uf(g.n_vertices);
  BitString sel(g.n_edges());
  for (std::size_t i : order)
    if (uf.unite(static_cast<std::int32_t>(g.edges[i].u),
                 static_cast<std::int32_t>(g.edges[i].v)))
      sel.set(i, true);
  return sel;
}

// Spanning-subgraph fitness: (components - 1) * penalty + selected weight,
// minimized. With the default penalty n_vertices^2 * w_max the ordering is
// strictly lexicographic in (components, weight) for any simple graph, since
// a selection's weight never reaches the penalty. Optimum is the MST weight.
struct MstProblem {
  WeightedGraph graph;
  std::uint64_t penalty = 0;
  std::uint64_t optimum_weight = 0;

  using Fitness = std::int64_t;
  static constexpr bool maximizing = false;

  explicit MstProblem(WeightedGraph g, std::uint64_t penalty_override = 0)
      : graph(std::move(g)) {
    graph.validate();
    std::uint64_t wmax = graph.max_weight();
    penalty = penalty_override ? penalty_override
                               : static_cast<std::uint64_t>(graph.n_vertices) *
                                     static_cast<std::uint64_t>(graph.n_vertices) * wmax;
    if (penalty <= static_cast<std::uint64_t>(graph.n_edges()) * wmax)
      throw std::invalid_argument("MstProblem: penalty must dominate any selection weight");
    optimum_weight = mst_weight_oracle(graph);
  }

  std::size_t dimension() const { return graph.n_edges(); }

  Fitness evaluate(const BitString& x) const {
    std::size_t c = component_count(graph, x);
    return static_cast<Fitness>((static_cast<std::uint64_t>(c) - 1) * penalty +
                                selection_weight(graph, x));
  }

  Fitness optimum() const { return static_cast<Fitness>(optimum_weight); }

  std::size_t components_of(Fitness f) const {
    return static_cast<std::size_t>(f / static_cast<Fitness>(penalty)) + 1;
  }
  std::uint64_t weight_of(Fitness f) const {
    return static_cast<std::uint64_t>(f % static_cast<Fitness>(penalty));
  }

  static std::string fitness_label(const Fitness& f) { return std::to_string(f); }
  static double fitness_value(const Fitness& f) { return static_cast<double>(f); }
};

// Uniform random connected graph for experiments: a random spanning tree plus
// extra random edges, weights uniform in [1, w_max].
inline WeightedGraph random_connected_graph(std::size_t n_vertices, std::size_t n_edges,
                                            std::uint64_t w_max, Rng& rng) {
  if (n_vertices < 2) throw std::invalid_argument("random_connected_graph: n_vertices >= 2");
  std::size_t full = n_vertices * (n_vertices - 1) / 2;
  if (n_edges < n_vertices - 1 || n_edges > full)
    throw std::invalid_argument("random_connected_graph: edge count out of range");
  WeightedGraph g;
  g.n_vertices = n_vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> used;
  auto has = [&](std::uint32_t a, std::uint32_t b) {
    for (auto& e : used)
      if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) return true;
    return false;
  };
  // random tree: attach each new vertex to a uniformly chosen earlier one
  for (std::uint32_t v = 1; v < n_vertices; ++v) {
    std::uint32_t u = static_cast<std::uint32_t>(rng.next_below(v));
    used.emplace_back(u, v);
  }
  while (used.size() < n_edges) {
    std::uint32_t a = static_cast<std::uint32_t>(rng.next_below(n_vertices));
    std::uint32_t b = static_cast<std::uint32_t>(rng.next_below(n_vertices));
    if (a == b || has(a, b)) continue;
    used.emplace_back(a, b);
  }
  for (auto& e : used)
    g.edges.push_back({e.first, e.second, 1 + rng.next_below(w_max)});
  g.validate();
  return g;
}

}  // namespace ftlab
