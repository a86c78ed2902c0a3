#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrange/qmatrix.hpp"

namespace qrange {

/// Undirected graph G_A with adjacency matrix A_delta.
struct AdjGraph {
  std::size_t n = 0;
  /// Row-major n x n, symmetric; adj[i][i] = 1 marks a loop (nonzero a_ii).
  std::vector<std::uint8_t> adj;
  /// Connected components; each sorted ascending, ordered by smallest vertex.
  std::vector<std::vector<std::size_t>> components;
  /// Edges {i, j} with i != j.
  std::size_t edge_count = 0;
  /// Vertices carrying a loop.
  std::vector<std::size_t> loops;

  bool has_edge(std::size_t i, std::size_t j) const { return adj[i * n + j] != 0; }
  /// Neighbours other than i itself.
  std::size_t degree(std::size_t i) const;
};

/// Edge {i, j} whenever |a_ij| or |a_ji| exceeds A.zero_threshold(); nonzero diagonal entries are loops.
AdjGraph build_graph(const QMatrix& a);
/// Graph of the off-diagonal part (the nilpotent part N of A = D + N); never has loops.
AdjGraph build_off_diagonal_graph(const QMatrix& a);

bool is_connected(const AdjGraph& g);
/// No loops and every component with v vertices has v - 1 edges.
bool is_cycle_free(const AdjGraph& g);
/// Connected, loop-free and exactly n - 1 edges.
bool is_tree(const AdjGraph& g);

/// Groups each component contiguously, components ordered by smallest original vertex.
Permutation component_permutation(const AdjGraph& g);

/// Permutation p with permute(A, p) strictly upper triangular, built by
/// repeatedly removing the smallest-index leaf: a leaf whose only edge points
/// out of it goes to the front, one whose edge points into it goes to the back.
/// Throws PreconditionError naming is_tree / is_nilpotent when those fail and
/// InternalError if a leaf has entries in both directions.
Permutation tree_triangularizing_permutation(const QMatrix& a, const AdjGraph& g, double tol = 1e-10);

/// Topological order of the directed pattern i -> j (a_ij != 0, i != j),
/// smallest available vertex first. Works for any pattern without directed
/// cycles or loops; throws PreconditionError otherwise.
Permutation triangularizing_permutation(const QMatrix& a);

}  // namespace qrange
