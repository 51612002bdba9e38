#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwg/errors.hpp"

namespace rwg {

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A single graph with per-node features and optional categorical tags.
// Undirected graphs store each edge once with u <= v; directed graphs store
// ordered (citer, cited) pairs.
struct AttributedGraph {
  int num_nodes = 0;
  int feature_dim = 0;
  bool directed = false;
  std::vector<Edge> edges;
  std::vector<double> features;        // row-major num_nodes x feature_dim
  std::vector<std::string> node_tags;  // empty, or one tag per node

  double feat(int node, int k) const { return features[static_cast<std::size_t>(node) * feature_dim + k]; }
  double& feat(int node, int k) { return features[static_cast<std::size_t>(node) * feature_dim + k]; }

  // Canonicalizes (u <= v) for undirected graphs; rejects duplicates and
  // self-loops.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  friend bool operator==(const AttributedGraph&, const AttributedGraph&) = default;
};

// Structural invariant check: endpoint ranges, feature row count, canonical
// undirected storage, no duplicates, no self-loops. Throws ConfigError.
void validate_graph(const AttributedGraph& g);

bool is_connected(const AttributedGraph& g);

// Edges whose removal keeps the graph connected (non-bridge edges).
std::vector<int> removable_edge_indices(const AttributedGraph& g);

enum class Split { Train, Val, Test };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

// Where a sample came from: which elements built it and what has been done
// to it since. The node/edge bookkeeping is what makes interventions exact.
struct Provenance {
  std::vector<std::string> causal_element_ids;
  std::vector<std::string> confounder_element_ids;
  std::vector<std::string> filler_element_ids;  // fillers, connectors, link rules
  bool intervention_applied = false;
  std::uint64_t sample_seed = 0;

  std::vector<int> causal_nodes;       // node ids of the causal occurrence
  std::vector<int> confounder_nodes;   // node ids of attached confounder blocks
  std::vector<Edge> confounder_edges;  // rule-injected confounder edges
  int confounder_channel = -1;         // overwritten feature channel, or -1
  int confounder_anchor = -1;          // host-side anchor of the block bridge
  double causal_stat = 0.0;            // recorded causal summary statistic

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct GraphSample {
  AttributedGraph graph;
  int label = 0;
  Split split = Split::Train;
  Provenance provenance;

  friend bool operator==(const GraphSample&, const GraphSample&) = default;
};

struct Manifest {
  int num_classes = 0;
  int feature_dim = 0;
  int train_count = 0;
  int val_count = 0;
  int test_count = 0;
  std::uint64_t master_seed = 0;
  std::string config_digest;
  std::string generator_version = "rwg-1";

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

struct Dataset {
  Manifest manifest;
  std::vector<GraphSample> samples;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Recounts splits, checks labels against num_classes and every graph's
// structural invariants. Throws on the first violation.
void validate_dataset(const Dataset& ds);

struct AnchorPolicy {
  int host_anchor = -1;  // -1: uniform random from the seed
  int part_anchor = -1;
};

struct AttachResult {
  AttributedGraph graph;
  int host_anchor = 0;
  int part_anchor = 0;  // index in the combined graph
  int part_offset = 0;  // part node i maps to part_offset + i
};

// Disjoint union of host and part plus exactly one bridging edge between the
// two anchor nodes. Part node indices are shifted by host.num_nodes.
AttachResult attach_subgraph(const AttributedGraph& host, const AttributedGraph& part,
                             const AnchorPolicy& policy, std::uint64_t seed);

}  // namespace rwg
