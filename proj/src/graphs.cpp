#include "pcgraph/graphs.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace pcgraph {

namespace {

std::pair<int, int> ordered(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::string set_to_string(const std::vector<int>& s) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << "}";
  return out.str();
}

void check_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw std::invalid_argument("vertex sets must be disjoint");
    }
  }
}

}  // namespace

UndirectedGraph::UndirectedGraph(int n_vertices) : n_(n_vertices) {
  if (n_ <= 0) throw std::invalid_argument("graph needs at least one vertex");
}

void UndirectedGraph::check_vertex(int v) const {
  if (v < 1 || v > n_) {
    throw std::invalid_argument("vertex out of range: " + std::to_string(v));
  }
}

void UndirectedGraph::add_edge(int a, int b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("self loops are not allowed");
  edges_.insert(ordered(a, b));
}

bool UndirectedGraph::has_edge(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  return edges_.count(ordered(a, b)) > 0;
}

std::vector<int> UndirectedGraph::neighbours(int a) const {
  check_vertex(a);
  std::vector<int> out;
  for (const auto& [x, y] : edges_) {
    if (x == a) out.push_back(y);
    if (y == a) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MixedGraph::MixedGraph(int n_vertices) : n_(n_vertices) {
  if (n_ <= 0) throw std::invalid_argument("graph needs at least one vertex");
}

void MixedGraph::check_vertex(int v) const {
  if (v < 1 || v > n_) {
    throw std::invalid_argument("vertex out of range: " + std::to_string(v));
  }
}

void MixedGraph::add_directed(int a, int b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("self loops are not allowed");
  directed_.insert({a, b});
}

void MixedGraph::add_dashed(int a, int b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("self loops are not allowed");
  dashed_.insert(ordered(a, b));
}

bool MixedGraph::has_directed(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  return directed_.count({a, b}) > 0;
}

bool MixedGraph::has_dashed(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  return dashed_.count(ordered(a, b)) > 0;
}

std::vector<int> MixedGraph::children(int a) const {
  check_vertex(a);
  std::vector<int> out;
  for (const auto& [x, y] : directed_) {
    if (x == a) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> MixedGraph::district(const std::vector<int>& vertices) const {
  std::vector<char> seen(n_ + 1, 0);
  std::deque<int> frontier;
  for (int v : vertices) {
    check_vertex(v);
    if (!seen[v]) {
      seen[v] = 1;
      frontier.push_back(v);
    }
  }
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop_front();
    for (const auto& [x, y] : dashed_) {
      int other = -1;
      if (x == v) other = y;
      if (y == v) other = x;
      if (other > 0 && !seen[other]) {
        seen[other] = 1;
        frontier.push_back(other);
      }
    }
  }
  std::vector<int> out;
  for (int v = 1; v <= n_; ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

bool separates(const UndirectedGraph& g, const std::vector<int>& a,
               const std::vector<int>& b, const std::vector<int>& c) {
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);

  const int n = g.n_vertices();
  std::vector<char> blocked(n + 1, 0), target(n + 1, 0), seen(n + 1, 0);
  for (int v : c) blocked[v] = 1;
  for (int v : b) target[v] = 1;

  std::deque<int> frontier;
  for (int v : a) {
    if (v < 1 || v > n) throw std::invalid_argument("vertex out of range");
    seen[v] = 1;
    frontier.push_back(v);
  }
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop_front();
    if (target[v]) return false;
    for (int w : g.neighbours(v)) {
      if (!seen[w] && !blocked[w]) {
        seen[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  return true;
}

namespace {

struct IncidentEdge {
  int other;
  bool mark_here;   // arrowhead or dashed tail at this vertex
  bool mark_other;  // same at the far end
};

// Adjacency with collider marks: a directed edge marks its head, a dashed
// edge marks both ends.
std::vector<std::vector<IncidentEdge>> mark_adjacency(const MixedGraph& g) {
  std::vector<std::vector<IncidentEdge>> adj(g.n_vertices() + 1);
  for (const auto& [x, y] : g.directed()) {
    adj[x].push_back({y, false, true});
    adj[y].push_back({x, true, false});
  }
  for (const auto& [x, y] : g.dashed()) {
    adj[x].push_back({y, true, true});
    adj[y].push_back({x, true, true});
  }
  return adj;
}

}  // namespace

bool m_separated(const MixedGraph& g, int a, int b, const std::vector<int>& c) {
  if (a == b) throw std::invalid_argument("m_separated: endpoints must differ");
  const int n = g.n_vertices();
  std::vector<char> in_c(n + 1, 0);
  for (int v : c) {
    if (v < 1 || v > n) throw std::invalid_argument("vertex out of range");
    in_c[v] = 1;
  }
  if (in_c[a] || in_c[b]) {
    throw std::invalid_argument("m_separated: endpoints may not be conditioned on");
  }

  const auto adj = mark_adjacency(g);

  // States (vertex, entered-with-mark); a walk may continue through vertex v
  // entered with mark m along an edge marked m' at v iff v is a legal
  // intermediate: collider (m && m') requires v in C, non-collider requires
  // v not in C.
  std::vector<std::array<char, 2>> seen(n + 1, {0, 0});
  std::deque<std::pair<int, bool>> frontier;
  for (const IncidentEdge& e : adj[a]) {
    if (e.other == b) return false;  // single edges always connect
    if (!seen[e.other][e.mark_other]) {
      seen[e.other][e.mark_other] = 1;
      frontier.emplace_back(e.other, e.mark_other);
    }
  }
  while (!frontier.empty()) {
    auto [v, entered_marked] = frontier.front();
    frontier.pop_front();
    for (const IncidentEdge& e : adj[v]) {
      const bool collider = entered_marked && e.mark_here;
      const bool legal = collider ? in_c[v] : !in_c[v];
      if (!legal) continue;
      if (e.other == b) return false;
      if (!seen[e.other][e.mark_other]) {
        seen[e.other][e.mark_other] = 1;
        frontier.emplace_back(e.other, e.mark_other);
      }
    }
  }
  return true;
}

bool collider_connected(const MixedGraph& g, int a, int b) {
  if (a == b) throw std::invalid_argument("collider_connected: vertices must differ");
  std::vector<int> side_a = g.children(a);
  side_a.push_back(a);
  std::vector<int> side_b = g.children(b);
  side_b.push_back(b);
  std::vector<int> dis_a = g.district(side_a);
  std::vector<int> dis_b = g.district(side_b);
  std::vector<int> common;
  std::set_intersection(dis_a.begin(), dis_a.end(), dis_b.begin(), dis_b.end(),
                        std::back_inserter(common));
  return !common.empty();
}

UndirectedGraph augment(const MixedGraph& g) {
  UndirectedGraph out(g.n_vertices());
  for (int a = 1; a <= g.n_vertices(); ++a) {
    for (int b = a + 1; b <= g.n_vertices(); ++b) {
      if (collider_connected(g, a, b)) out.add_edge(a, b);
    }
  }
  return out;
}

namespace {

// Enumerates the subsets of `pool` with 1..max_size elements.
void for_each_subset(const std::vector<int>& pool, int max_size,
                     const std::function<void(const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(pool.size());
  std::vector<int> current;
  std::function<void(int)> rec = [&](int start) {
    if (!current.empty()) fn(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (int i = start; i < n; ++i) {
      current.push_back(pool[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

}  // namespace

MarkovReport markov_check(const UndirectedGraph& g,
                          const PartialUncorrelationOracle& oracle,
                          int max_set_size) {
  const int n = g.n_vertices();
  if (max_set_size <= 0) max_set_size = n <= 6 ? n : 2;
  MarkovReport report;

  // Pairwise: every non-edge must be uncorrelated given the rest.
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (g.has_edge(a, b)) continue;
      std::vector<int> rest;
      for (int v = 1; v <= n; ++v) {
        if (v != a && v != b) rest.push_back(v);
      }
      ++report.checks_run;
      if (!oracle({a}, {b}, rest)) {
        report.violations.push_back("pairwise: " + std::to_string(a) + " -- " +
                                    std::to_string(b));
      }
    }
  }

  // Local: each vertex against the non-neighbourhood given the neighbours.
  for (int a = 1; a <= n; ++a) {
    std::vector<int> ne = g.neighbours(a);
    std::vector<int> others;
    for (int v = 1; v <= n; ++v) {
      if (v != a && std::find(ne.begin(), ne.end(), v) == ne.end()) {
        others.push_back(v);
      }
    }
    if (others.empty()) continue;
    ++report.checks_run;
    if (!oracle(others, {a}, ne)) {
      report.violations.push_back("local: vertex " + std::to_string(a));
    }
  }

  // Global: every separation must imply uncorrelatedness.
  std::vector<int> all;
  for (int v = 1; v <= n; ++v) all.push_back(v);
  for_each_subset(all, max_set_size, [&](const std::vector<int>& a) {
    std::vector<int> rest_a;
    std::set_difference(all.begin(), all.end(), a.begin(), a.end(),
                        std::back_inserter(rest_a));
    for_each_subset(rest_a, max_set_size, [&](const std::vector<int>& b) {
      if (b.front() < a.front()) return;  // unordered pairs once (symmetry)
      std::vector<int> rest_ab;
      std::set_difference(rest_a.begin(), rest_a.end(), b.begin(), b.end(),
                          std::back_inserter(rest_ab));
      std::vector<int> empty;
      auto run = [&](const std::vector<int>& c) {
        // the pairwise phase already covers singleton pairs given the rest
        if (a.size() == 1 && b.size() == 1 && c.size() == rest_ab.size()) return;
        if (!separates(g, a, b, c)) return;
        ++report.checks_run;
        if (!oracle(a, b, c)) {
          report.violations.push_back("global: A=" + set_to_string(a) +
                                      " B=" + set_to_string(b) +
                                      " C=" + set_to_string(c));
        }
      };
      run(empty);
      for_each_subset(rest_ab, static_cast<int>(rest_ab.size()), run);
    });
  });

  return report;
}

}  // namespace pcgraph
