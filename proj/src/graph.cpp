#include "bandpos/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>

namespace bandpos {

SimpleGraph::SimpleGraph(Index n) : n_(n) {
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  adj_.assign(static_cast<std::size_t>(n * n), false);
}

void SimpleGraph::check_vertex(Index v) const {
  if (v < 0 || v >= n_)
    throw std::out_of_range("vertex " + std::to_string(v + 1) + " outside 1.." + std::to_string(n_));
}

void SimpleGraph::add_edge(Index u, Index v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u + 1));
  if (adj_[slot(u, v)]) return;
  adj_[slot(u, v)] = adj_[slot(v, u)] = true;
  ++edges_;
}

void SimpleGraph::remove_edge(Index u, Index v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v || !adj_[slot(u, v)]) return;
  adj_[slot(u, v)] = adj_[slot(v, u)] = false;
  --edges_;
}

bool SimpleGraph::has_edge(Index u, Index v) const {
  check_vertex(u);
  check_vertex(v);
  return adj_[slot(u, v)];
}

std::vector<Index> SimpleGraph::neighbors(Index v) const {
  check_vertex(v);
  std::vector<Index> out;
  for (Index u = 0; u < n_; ++u)
    if (adj_[slot(v, u)]) out.push_back(u);
  return out;
}

std::vector<std::pair<Index, Index>> SimpleGraph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index u = 0; u < n_; ++u)
    for (Index v = u + 1; v < n_; ++v)
      if (adj_[slot(u, v)]) out.emplace_back(u, v);
  return out;
}

SimpleGraph band_graph(Index n, Index d) {
  if (n < 1 || d < 1) throw std::invalid_argument("band_graph needs n >= 1 and d >= 1");
  SimpleGraph g(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n && j - i <= d; ++j) g.add_edge(i, j);
  return g;
}

SimpleGraph path_graph(Index n) { return band_graph(n, 1); }

SimpleGraph complete_graph(Index n) {
  if (n < 1) throw std::invalid_argument("complete_graph needs n >= 1");
  return band_graph(n, std::max<Index>(n - 1, 1));
}

SimpleGraph penta_support_graph(Index n) {
  if (n < 3) throw std::invalid_argument("penta_support_graph needs n >= 3");
  SimpleGraph g(n);
  for (Index i = 0; i + 2 < n; ++i) g.add_edge(i, i + 2);
  return g;
}

bool is_connected(const SimpleGraph& g) {
  if (g.order() == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  std::vector<Index> stack{0};
  seen[0] = true;
  Index reached = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index u : g.neighbors(v))
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == g.order();
}

SimpleGraph induced_subgraph(const SimpleGraph& g, std::vector<Index> vertices) {
  if (vertices.empty()) throw std::invalid_argument("induced_subgraph needs a nonempty vertex set");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw std::invalid_argument("induced_subgraph vertex set has duplicates");
  if (vertices.front() < 0 || vertices.back() >= g.order())
    throw std::out_of_range("induced_subgraph vertex out of range");
  const auto m = static_cast<Index>(vertices.size());
  SimpleGraph h(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j)
      if (g.has_edge(vertices[static_cast<std::size_t>(i)], vertices[static_cast<std::size_t>(j)]))
        h.add_edge(i, j);
  return h;
}

namespace {

// Lexicographic BFS visit order; ties broken by lowest vertex label.
std::vector<Index> lex_bfs(const SimpleGraph& g) {
  const Index n = g.order();
  std::vector<std::vector<Index>> label(static_cast<std::size_t>(n));
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  for (Index step = n; step > 0; --step) {
    Index pick = -1;
    for (Index v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)]) continue;
      if (pick < 0 || label[static_cast<std::size_t>(v)] > label[static_cast<std::size_t>(pick)]) pick = v;
    }
    done[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
    for (Index u : g.neighbors(pick))
      if (!done[static_cast<std::size_t>(u)]) label[static_cast<std::size_t>(u)].push_back(step);
  }
  return order;
}

// Shortest path from `from` to `to` avoiding `blocked`, neighbours explored in label order.
std::vector<Index> shortest_path(const SimpleGraph& g, Index from, Index to, const std::vector<bool>& blocked) {
  std::vector<Index> parent(static_cast<std::size_t>(g.order()), -1);
  std::deque<Index> queue{from};
  parent[static_cast<std::size_t>(from)] = from;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (Index u : g.neighbors(v)) {
      if (blocked[static_cast<std::size_t>(u)] || parent[static_cast<std::size_t>(u)] >= 0) continue;
      parent[static_cast<std::size_t>(u)] = v;
      queue.push_back(u);
    }
  }
  if (parent[static_cast<std::size_t>(to)] < 0) return {};
  std::vector<Index> path{to};
  while (path.back() != from) path.push_back(parent[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

// A chordless cycle through v uses two non-adjacent neighbours u, w of v and
// an induced u-w path that avoids the rest of N[v].
std::vector<Index> find_chordless_cycle(const SimpleGraph& g) {
  const Index n = g.order();
  for (Index v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const Index u = nb[i], w = nb[j];
        if (g.has_edge(u, w)) continue;
        std::vector<bool> blocked(static_cast<std::size_t>(n), false);
        blocked[static_cast<std::size_t>(v)] = true;
        for (Index x : nb)
          if (x != u && x != w) blocked[static_cast<std::size_t>(x)] = true;
        auto path = shortest_path(g, u, w, blocked);
        if (path.empty()) continue;
        std::vector<Index> cycle{v};
        cycle.insert(cycle.end(), path.begin(), path.end());
        return cycle;
      }
  }
  return {};
}

}  // namespace

bool is_perfect_elimination_ordering(const SimpleGraph& g, const std::vector<Index>& ordering) {
  const Index n = g.order();
  if (static_cast<Index>(ordering.size()) != n) return false;
  std::vector<Index> position(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < ordering.size(); ++p) {
    const Index v = ordering[p];
    if (v < 0 || v >= n || position[static_cast<std::size_t>(v)] >= 0) return false;
    position[static_cast<std::size_t>(v)] = static_cast<Index>(p);
  }
  for (Index v = 0; v < n; ++v) {
    std::vector<Index> later;
    for (Index u : g.neighbors(v))
      if (position[static_cast<std::size_t>(u)] > position[static_cast<std::size_t>(v)]) later.push_back(u);
    for (std::size_t i = 0; i < later.size(); ++i)
      for (std::size_t j = i + 1; j < later.size(); ++j)
        if (!g.has_edge(later[i], later[j])) return false;
  }
  return true;
}

bool is_chordless_cycle(const SimpleGraph& g, const std::vector<Index>& cycle) {
  const std::size_t k = cycle.size();
  if (k < 4) return false;
  std::vector<Index> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (g.has_edge(cycle[i], cycle[j]) != consecutive) return false;
    }
  return true;
}

ChordalCertificate is_chordal(const SimpleGraph& g) {
  ChordalCertificate cert;
  auto order = lex_bfs(g);
  std::reverse(order.begin(), order.end());
  if (is_perfect_elimination_ordering(g, order)) {
    cert.is_chordal = true;
    cert.ordering = std::move(order);
    return cert;
  }
  cert.witness_cycle = find_chordless_cycle(g);
  if (cert.witness_cycle.empty())
    throw std::logic_error("LexBFS ordering failed but no chordless cycle was found");
  return cert;
}

namespace {

using Mask = std::uint64_t;

Mask bit(Index v) { return Mask{1} << static_cast<unsigned>(v); }
Index popcount(Mask m) { return static_cast<Index>(std::popcount(m)); }

std::vector<Index> mask_vertices(Mask m) {
  std::vector<Index> out;
  while (m) {
    out.push_back(static_cast<Index>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

NearClique greedy_defective_clique(const SimpleGraph& g, Index budget) {
  NearClique best;
  best.exact = false;
  const Index n = g.order();
  for (Index start = 0; start < n; ++start) {
    std::vector<Index> set{start};
    Index missing = 0;
    for (Index v = 0; v < n; ++v) {
      if (v == start) continue;
      Index extra = 0;
      for (Index s : set)
        if (!g.has_edge(s, v)) ++extra;
      if (missing + extra <= budget) {
        missing += extra;
        set.push_back(v);
      }
    }
    if (static_cast<Index>(set.size()) > best.size) {
      std::sort(set.begin(), set.end());
      best.size = static_cast<Index>(set.size());
      best.vertices = std::move(set);
    }
  }
  return best;
}

}  // namespace

NearClique max_defective_clique(const SimpleGraph& g, Index missing_budget) {
  if (missing_budget < 0) throw std::invalid_argument("missing_budget must be nonnegative");
  const Index n = g.order();
  if (n == 0) return {};
  if (n > kExhaustiveVertexLimit) return greedy_defective_clique(g, missing_budget);

  std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)] |= bit(v);
    adj[static_cast<std::size_t>(v)] |= bit(u);
  }
  auto non_edges = [&](Mask set, Index v) { return popcount(set & ~adj[static_cast<std::size_t>(v)]); };

  NearClique seed = greedy_defective_clique(g, missing_budget);
  Index best_size = seed.size;
  Mask best_set = 0;
  for (Index v : seed.vertices) best_set |= bit(v);

  std::function<void(Mask, Index, Index, Mask)> expand = [&](Mask set, Index size, Index missing, Mask cand) {
    if (size > best_size) {
      best_size = size;
      best_set = set;
    }
    while (cand) {
      if (size + popcount(cand) <= best_size) return;
      const Index c = static_cast<Index>(std::countr_zero(cand));
      cand &= cand - 1;
      const Index m = missing + non_edges(set, c);
      if (m > missing_budget) continue;
      const Mask grown = set | bit(c);
      Mask next = 0;
      for (Mask rest = cand; rest; rest &= rest - 1) {
        const auto x = static_cast<Index>(std::countr_zero(rest));
        if (m + non_edges(grown, x) <= missing_budget) next |= bit(x);
      }
      expand(grown, size + 1, m, next);
    }
  };
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  expand(0, 0, 0, all);
  return {best_size, mask_vertices(best_set), true};
}

NearClique max_near_clique(const SimpleGraph& g) { return max_defective_clique(g, 1); }
NearClique max_clique(const SimpleGraph& g) { return max_defective_clique(g, 0); }

PowerSet chordal_critical_exponent(const SimpleGraph& g) {
  if (g.order() < 3) throw std::invalid_argument("critical exponent formula needs at least 3 vertices");
  const auto cert = is_chordal(g);
  if (!cert.is_chordal) throw std::invalid_argument("graph is not chordal; the critical exponent formula does not apply");
  const auto near = max_near_clique(g);
  if (!near.exact) throw std::runtime_error("graph too large for an exact near-clique search");
  return PowerSet::naturals_and_tail(static_cast<double>(near.size - 2));
}

}  // namespace bandpos
