#include "qrange/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "qrange/error.hpp"

namespace qrange {

std::size_t AdjGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != i && has_edge(i, j)) ++d;
  return d;
}

namespace {

AdjGraph make_graph(const QMatrix& a, bool with_loops) {
  AdjGraph g;
  g.n = a.size();
  g.adj.assign(g.n * g.n, 0);
  const double zero = a.zero_threshold();
  for (std::size_t i = 0; i < g.n; ++i) {
    if (with_loops && a(i, i).norm() > zero) {
      g.adj[i * g.n + i] = 1;
      g.loops.push_back(i);
    }
    for (std::size_t j = i + 1; j < g.n; ++j) {
      if (std::max(a(i, j).norm(), a(j, i).norm()) > zero) {
        g.adj[i * g.n + j] = g.adj[j * g.n + i] = 1;
        ++g.edge_count;
      }
    }
  }
  std::vector<bool> seen(g.n, false);
  for (std::size_t start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (std::size_t w = 0; w < g.n; ++w) {
        if (w != v && !seen[w] && g.has_edge(v, w)) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    g.components.push_back(std::move(comp));
  }
  return g;
}

std::size_t edges_within(const AdjGraph& g, const std::vector<std::size_t>& comp) {
  std::size_t e = 0;
  for (std::size_t a = 0; a < comp.size(); ++a)
    for (std::size_t b = a + 1; b < comp.size(); ++b)
      if (g.has_edge(comp[a], comp[b])) ++e;
  return e;
}

}  // namespace

AdjGraph build_graph(const QMatrix& a) { return make_graph(a, true); }

AdjGraph build_off_diagonal_graph(const QMatrix& a) { return make_graph(a, false); }

bool is_connected(const AdjGraph& g) { return g.components.size() <= 1; }

bool is_cycle_free(const AdjGraph& g) {
  if (!g.loops.empty()) return false;
  for (const auto& comp : g.components)
    if (edges_within(g, comp) + 1 != comp.size()) return false;
  return true;
}

bool is_tree(const AdjGraph& g) {
  return g.n > 0 && g.loops.empty() && g.components.size() == 1 && g.edge_count + 1 == g.n;
}

Permutation component_permutation(const AdjGraph& g) {
  Permutation p;
  p.reserve(g.n);
  for (const auto& comp : g.components) p.insert(p.end(), comp.begin(), comp.end());
  return p;
}

Permutation tree_triangularizing_permutation(const QMatrix& a, const AdjGraph& g, double tol) {
  if (g.n != a.size()) throw InputError("tree_triangularizing_permutation: graph and matrix sizes differ");
  if (!is_tree(g)) throw PreconditionError("is_tree", "the graph of A is not a tree");
  if (!is_nilpotent(a, tol)) throw PreconditionError("is_nilpotent", "A is not nilpotent");

  const std::size_t n = g.n;
  std::vector<std::size_t> front, back;
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(v);

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    std::size_t leaf = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!removed[v] && degree[v] == 1) {
        leaf = v;
        break;
      }
    }
    if (leaf == n) throw InternalError("tree_triangularizing_permutation: no leaf in a tree");
    std::size_t parent = n;
    for (std::size_t w = 0; w < n; ++w) {
      if (!removed[w] && w != leaf && g.has_edge(leaf, w)) {
        parent = w;
        break;
      }
    }
    const bool outgoing = !a.is_zero_entry(leaf, parent);
    const bool incoming = !a.is_zero_entry(parent, leaf);
    if (outgoing && incoming) {
      throw InternalError("tree_triangularizing_permutation: edge {" + std::to_string(leaf + 1) + "," +
                          std::to_string(parent + 1) + "} has entries in both directions");
    }
    if (outgoing) {
      front.push_back(leaf);
    } else {
      back.push_back(leaf);
    }
    removed[leaf] = true;
    --degree[leaf];
    --degree[parent];
  }

  Permutation p = front;
  for (std::size_t v = 0; v < n; ++v)
    if (!removed[v]) p.push_back(v);
  p.insert(p.end(), back.rbegin(), back.rend());
  return p;
}

Permutation triangularizing_permutation(const QMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!a.is_zero_entry(i, i)) throw PreconditionError("is_nilpotent", "nonzero diagonal entry " + std::to_string(i + 1));
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !a.is_zero_entry(i, j)) ++indegree[j];
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.insert(v);
  Permutation order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (std::size_t j = 0; j < n; ++j)
      if (j != v && !a.is_zero_entry(v, j) && --indegree[j] == 0) ready.insert(j);
  }
  if (order.size() != n) {
    throw PreconditionError("triangularizable", "the sparsity pattern has a directed cycle; no permutation makes A upper triangular");
  }
  return order;
}

}  // namespace qrange
