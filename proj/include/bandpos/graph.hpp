#pragma once

#include "bandpos/power_set.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

namespace bandpos {

using Eigen::Index;

/// Undirected simple graph on vertices 0..n-1 (printed 1-based).
class SimpleGraph {
 public:
  explicit SimpleGraph(Index n = 0);

  Index order() const { return n_; }
  Index edge_count() const { return edges_; }

  /// Adds {u, v}; re-adding an edge is a no-op. Throws on loops or out-of-range vertices.
  void add_edge(Index u, Index v);
  void remove_edge(Index u, Index v);
  bool has_edge(Index u, Index v) const;

  /// Neighbours of v in increasing order.
  std::vector<Index> neighbors(Index v) const;
  std::vector<std::pair<Index, Index>> edges() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  void check_vertex(Index v) const;
  std::size_t slot(Index u, Index v) const { return static_cast<std::size_t>(u * n_ + v); }

  Index n_ = 0;
  Index edges_ = 0;
  std::vector<bool> adj_;
};

SimpleGraph path_graph(Index n);
SimpleGraph complete_graph(Index n);
/// Edges exactly {i, j} with 0 < |i - j| <= d.
SimpleGraph band_graph(Index n, Index d);
/// Edges exactly {i, i+2}: the zero pattern of the split pentadiagonal family.
SimpleGraph penta_support_graph(Index n);

bool is_connected(const SimpleGraph& g);

/// Induced subgraph on `vertices` (any order; duplicates rejected), relabelled
/// 0..|S|-1 in increasing vertex order.
SimpleGraph induced_subgraph(const SimpleGraph& g, std::vector<Index> vertices);

struct ChordalCertificate {
  bool is_chordal = false;
  /// Perfect elimination ordering (each vertex's later neighbours form a clique).
  std::vector<Index> ordering;
  /// Chordless cycle of length >= 4, in cycle order.
  std::vector<Index> witness_cycle;
};

/// Lexicographic BFS (lowest-label tie-break), verified as a perfect
/// elimination ordering; on failure a chordless cycle is extracted.
ChordalCertificate is_chordal(const SimpleGraph& g);

bool is_perfect_elimination_ordering(const SimpleGraph& g, const std::vector<Index>& ordering);
bool is_chordless_cycle(const SimpleGraph& g, const std::vector<Index>& cycle);

struct NearClique {
  Index size = 0;
  std::vector<Index> vertices;
  bool exact = true;
};

inline constexpr Index kExhaustiveVertexLimit = 64;

/// Largest vertex set inducing at most `missing_budget` non-edges, by branch
/// and bound. Above kExhaustiveVertexLimit vertices returns a greedy lower
/// bound with exact = false.
NearClique max_defective_clique(const SimpleGraph& g, Index missing_budget);

/// Largest r such that K_r or K_r minus one edge is a subgraph of G.
NearClique max_near_clique(const SimpleGraph& g);

/// Largest r such that K_r is a subgraph of G.
NearClique max_clique(const SimpleGraph& g);

/// N ∪ [r - 2, inf) with r = max_near_clique(G), for chordal G with >= 3
/// vertices. Throws std::invalid_argument for non-chordal or smaller graphs,
/// and std::runtime_error when the near-clique search could not be exact.
PowerSet chordal_critical_exponent(const SimpleGraph& g);

}  // namespace bandpos
