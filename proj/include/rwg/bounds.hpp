#pragma once
#include <string>
#include <utility>
#include <vector>

namespace rwg {

// A CPDAG-style graph: disjoint directed and undirected edge sets over
// vertices 0..n-1. The directed part must be acyclic.
struct PartiallyDirectedGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> directed_edges;
  std::vector<std::pair<int, int>> undirected_edges;
};

// Throws ConfigError on self-loops, duplicated pairs across the two edge
// sets, or a directed cycle.
void validate_pdg(const PartiallyDirectedGraph& g);

struct UndirectedComponent {
  std::vector<int> vertices;                  // original ids
  std::vector<std::pair<int, int>> edges;     // local indices into vertices
};

// Connected components of the undirected-edge subgraph; isolated vertices
// (including endpoints of directed edges) form singleton components.
std::vector<UndirectedComponent> chain_components(const PartiallyDirectedGraph& g);

// Exact maximal-clique count via Bron-Kerbosch with pivoting. Singleton
// vertices count as maximal cliques of size 1.
int maximal_clique_count(int num_vertices, const std::vector<std::pair<int, int>>& edges);

// Sum of maximal_clique_count over the chain components.
int total_chain_component_cliques(const PartiallyDirectedGraph& g);

struct BoundInput {
  double union_size = 0;     // |union of G_i| graph-element count
  double lambda = 1.0;       // average occurrence multiplicity, >= 1
  double label_count = 0;    // |Y|
  double sigma = 0;          // refinement: label-independent multiplicity
  double independent_size = 0;  // refinement: |union of D_i|
};

// Atomic intervention lower bound: max(0, ceil((union/lambda + |Y|
// - independent/sigma - r) / 2)). The refinement term only applies when
// sigma > 0.
long long atomic_bound(const BoundInput& in, long long r);

// Atomic bound computed from a CPDAG: r is the chain-component clique total
// and union/lambda is the non-label vertex count.
long long atomic_bound_from_graph(const PartiallyDirectedGraph& g, int label_count);

struct NonatomicBound {
  double value = 0;
  int argmin_k = 0;
};

// min over integer k in [4, n] of (n/k) * log2(log2(k)); smallest k wins
// ties. Throws ConfigError for n < 4 (the base-2 domain floor).
NonatomicBound nonatomic_bound(int n);

// Parses an edge-list file with lines "a -> b" (directed) and "a -- b"
// (undirected); bare tokens declare isolated vertices. Names are assigned
// ids in order of first appearance.
PartiallyDirectedGraph parse_pdg_file(const std::string& path);

}  // namespace rwg
