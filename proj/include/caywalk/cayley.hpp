#pragma once

#include <deque>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "caywalk/caps.hpp"
#include "caywalk/perm.hpp"

#include "json.hpp"

namespace caywalk {

// Ordered generator list; the order fixes the chirality index of every
// coin-space basis vector.
struct GeneratingSet {
  int n = 0;
  std::vector<Permutation> gens;
  std::vector<std::string> labels;

  GeneratingSet() = default;
  GeneratingSet(int degree, std::vector<Permutation> generators,
                std::vector<std::string> names = {})
      : n(degree), gens(std::move(generators)), labels(std::move(names)) {
    if (gens.empty()) throw std::invalid_argument("generating set: empty");
    std::set<Permutation> distinct;
    for (const auto& g : gens) {
      if (g.degree() != n) throw std::invalid_argument("generating set: degree mismatch");
      if (g.is_identity())
        throw std::invalid_argument("generating set: identity not allowed (self-loop)");
      if (!distinct.insert(g).second)
        throw std::invalid_argument("generating set: duplicate generator");
    }
    if (labels.empty())
      for (const auto& g : gens) labels.push_back(cycle_string(g));
    if (labels.size() != gens.size())
      throw std::invalid_argument("generating set: label count mismatch");
  }

  int size() const { return static_cast<int>(gens.size()); }
};

// Dense Cayley graph of (S_n, S): succ[s][rank(g)] = rank(g*s). Immutable
// after construction and safe to share across threads.
struct CayleyGraph {
  int n = 0;
  std::size_t order = 0;
  GeneratingSet gens;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::vector<std::size_t>> pred; // pred[s] inverts succ[s]

  int coin_dim() const { return gens.size(); }
};

inline CayleyGraph build_cayley(int n, GeneratingSet generators, const Caps& caps = {}) {
  if (n < 1) throw std::invalid_argument("build_cayley: n must be >= 1");
  if (generators.n != n) throw std::invalid_argument("build_cayley: generator degree mismatch");
  if (n > caps.group_degree)
    throw CapExceeded("build_cayley: " + std::to_string(n) + "! exceeds the group cap (" +
                      std::to_string(caps.group_degree) + "); raise CAYWALK_CAPS group=");

  CayleyGraph graph;
  graph.n = n;
  graph.order = 1;
  for (int i = 2; i <= n; ++i) graph.order *= static_cast<std::size_t>(i);
  graph.gens = std::move(generators);

  const int d = graph.coin_dim();
  graph.succ.assign(d, std::vector<std::size_t>(graph.order));
  graph.pred.assign(d, std::vector<std::size_t>(graph.order));
  for (std::size_t r = 0; r < graph.order; ++r) {
    const Permutation g = unrank(n, r);
    for (int s = 0; s < d; ++s) {
      const std::size_t h = rank(compose(g, graph.gens.gens[s]));
      graph.succ[s][r] = h;
      graph.pred[s][h] = r;
    }
  }
  return graph;
}

inline std::vector<int> bfs_distances(const CayleyGraph& graph, std::size_t source,
                                      bool reverse = false) {
  const auto& tables = reverse ? graph.pred : graph.succ;
  std::vector<int> dist(graph.order, -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& table : tables) {
      const std::size_t w = table[v];
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline bool is_strongly_connected(const CayleyGraph& graph) {
  for (int d : bfs_distances(graph, 0, false))
    if (d < 0) return false;
  for (int d : bfs_distances(graph, 0, true))
    if (d < 0) return false;
  return true;
}

// Maximum directed BFS distance over all ordered vertex pairs.
inline int diameter(const CayleyGraph& graph) {
  if (!is_strongly_connected(graph))
    throw std::invalid_argument("diameter: graph is not strongly connected "
                                "(generators do not generate the group)");
  int diam = 0;
  for (std::size_t v = 0; v < graph.order; ++v)
    for (int d : bfs_distances(graph, v))
      diam = std::max(diam, d);
  return diam;
}

// True iff the generator set is a union of full conjugacy classes.
inline bool is_conjugate_invariant(int n, const GeneratingSet& gens) {
  std::set<Permutation> gen_set(gens.gens.begin(), gens.gens.end());
  std::set<Partition> types;
  for (const auto& g : gens.gens) types.insert(cycle_type(g));

  std::size_t order = 1;
  for (int i = 2; i <= n; ++i) order *= static_cast<std::size_t>(i);
  for (std::size_t r = 0; r < order; ++r) {
    const Permutation g = unrank(n, r);
    if (types.count(cycle_type(g)) && !gen_set.count(g)) return false;
  }
  return true;
}

inline GeneratingSet gamma_generators(int n) {
  if (n < 3) throw std::invalid_argument("gamma generators need n >= 3");
  std::vector<int> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = (i + 1) % n;
  return GeneratingSet(n, {perm_from_cycles(n, {{0, 1}}), Permutation(std::move(shift))});
}

inline GeneratingSet transposition_generators(int n) {
  if (n < 2) throw std::invalid_argument("transposition generators need n >= 2");
  std::vector<Permutation> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gens.push_back(perm_from_cycles(n, {{i, j}}));
  return GeneratingSet(n, std::move(gens));
}

// DOT export, one color per generator; edges carry a gen=<label> attribute.
inline void write_dot(const CayleyGraph& graph, std::ostream& out) {
  static const char* palette[] = {"green", "blue",  "red",  "orange",
                                  "purple", "brown", "cyan", "magenta"};
  out << "digraph cayley {\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (std::size_t r = 0; r < graph.order; ++r)
    out << "  " << r << " [label=\"" << cycle_string(unrank(graph.n, r)) << "\"];\n";
  for (int s = 0; s < graph.coin_dim(); ++s) {
    const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
    for (std::size_t r = 0; r < graph.order; ++r)
      out << "  " << r << " -> " << graph.succ[s][r] << " [gen=\"" << graph.gens.labels[s]
          << "\", color=\"" << color << "\"];\n";
  }
  out << "}\n";
}

inline void write_succ_json(const CayleyGraph& graph, std::ostream& out) {
  nlohmann::json j;
  j["degree"] = graph.n;
  j["order"] = graph.order;
  j["generators"] = nlohmann::json::array();
  for (int s = 0; s < graph.coin_dim(); ++s)
    j["generators"].push_back(
        {{"label", graph.gens.labels[s]}, {"images", graph.gens.gens[s].img}});
  j["succ"] = graph.succ;
  out << j.dump(2) << '\n';
}

} // namespace caywalk
