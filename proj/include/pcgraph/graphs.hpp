#ifndef PCGRAPH_GRAPHS_HPP
#define PCGRAPH_GRAPHS_HPP

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcgraph {

// Simple undirected graph on vertices 1..n, no self loops.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(int n_vertices);

  int n_vertices() const { return n_; }
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  std::vector<int> neighbours(int a) const;

  bool operator==(const UndirectedGraph& other) const = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::set<std::pair<int, int>> edges_;  // stored with first < second
};

// Mixed graph with directed edges a->b and dashed undirected edges a--b.
// a->b and b->a may coexist; no self loops.
class MixedGraph {
 public:
  MixedGraph() = default;
  explicit MixedGraph(int n_vertices);

  int n_vertices() const { return n_; }
  void add_directed(int a, int b);  // a -> b
  void add_dashed(int a, int b);
  bool has_directed(int a, int b) const;
  bool has_dashed(int a, int b) const;
  const std::set<std::pair<int, int>>& directed() const { return directed_; }
  const std::set<std::pair<int, int>>& dashed() const { return dashed_; }

  // ch(a): direct successors of a.
  std::vector<int> children(int a) const;

  // dis(A): union over a in A of the dashed-edge connected component of a
  // (every a is in its own component).
  std::vector<int> district(const std::vector<int>& vertices) const;

  bool operator==(const MixedGraph& other) const = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::set<std::pair<int, int>> directed_;
  std::set<std::pair<int, int>> dashed_;  // stored with first < second
};

// True iff every path from A to B passes through C. Sets must be disjoint.
bool separates(const UndirectedGraph& g, const std::vector<int>& a,
               const std::vector<int>& b, const std::vector<int>& c);

// m-separation of a and b given C under walk semantics: a walk is
// m-connecting when every non-collider on it avoids C and every collider on
// it lies in C. Implemented as reachability over (vertex, entering-mark)
// states, which is exact for walks with repeated vertices.
bool m_separated(const MixedGraph& g, int a, int b, const std::vector<int>& c);

// a and b are collider connected iff some path joins them on which every
// intermediate vertex is a collider; single edges count. Equivalent to
// dis(a u ch(a)) and dis(b u ch(b)) intersecting.
bool collider_connected(const MixedGraph& g, int a, int b);

// Undirected augmented graph: edge a--b iff a, b collider connected.
UndirectedGraph augment(const MixedGraph& g);

// Pairwise/local/global Markov property check of a graph against an oracle
// for "A and B are partially uncorrelated given C".
using PartialUncorrelationOracle = std::function<bool(
    const std::vector<int>&, const std::vector<int>&, const std::vector<int>&)>;

struct MarkovReport {
  long checks_run = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// max_set_size bounds |A| and |B| in the global property enumeration;
// pass 0 to use the default (full enumeration up to k = 6, pairs beyond).
MarkovReport markov_check(const UndirectedGraph& g,
                          const PartialUncorrelationOracle& oracle,
                          int max_set_size = 0);

}  // namespace pcgraph

#endif
