#include "rwg/graph.hpp"

#include <algorithm>
#include <set>

#include "rwg/seed.hpp"

namespace rwg {

void AttributedGraph::add_edge(int u, int v) {
  if (u == v) throw ConfigError("add_edge: self-loop " + std::to_string(u));
  if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
    throw ConfigError("add_edge: endpoint out of range");
  if (!directed && u > v) std::swap(u, v);
  if (has_edge(u, v)) throw ConfigError("add_edge: duplicate edge");
  edges.push_back({u, v});
}

bool AttributedGraph::has_edge(int u, int v) const {
  if (!directed && u > v) std::swap(u, v);
  for (const Edge& e : edges)
    if (e.u == u && e.v == v) return true;
  return false;
}

void validate_graph(const AttributedGraph& g) {
  if (g.num_nodes < 0) throw ConfigError("graph: negative node count");
  if (g.feature_dim < 0) throw ConfigError("graph: negative feature dim");
  if (g.features.size() != static_cast<std::size_t>(g.num_nodes) * g.feature_dim)
    throw ConfigError("graph: feature matrix is not num_nodes x feature_dim");
  if (!g.node_tags.empty() && g.node_tags.size() != static_cast<std::size_t>(g.num_nodes))
    throw ConfigError("graph: node_tags size mismatch");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= g.num_nodes || e.v >= g.num_nodes)
      throw ConfigError("graph: edge endpoint out of range");
    if (e.u == e.v) throw ConfigError("graph: self-loop");
    if (!g.directed && e.u > e.v) throw ConfigError("graph: undirected edge not canonical (u <= v)");
    if (!seen.insert({e.u, e.v}).second) throw ConfigError("graph: duplicate edge");
  }
}

namespace {

std::vector<std::vector<int>> neighbor_lists(const AttributedGraph& g) {
  std::vector<std::vector<int>> adj(g.num_nodes);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);  // connectivity ignores direction
  }
  return adj;
}

int count_reachable(const std::vector<std::vector<int>>& adj, int start, int skip_u = -1,
                    int skip_v = -1) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      bool skipped = (u == skip_u && v == skip_v) || (u == skip_v && v == skip_u);
      if (skipped || seen[v]) continue;
      seen[v] = 1;
      ++count;
      stack.push_back(v);
    }
  }
  return count;
}

}  // namespace

bool is_connected(const AttributedGraph& g) {
  if (g.num_nodes <= 1) return true;
  return count_reachable(neighbor_lists(g), 0) == g.num_nodes;
}

std::vector<int> removable_edge_indices(const AttributedGraph& g) {
  std::vector<int> out;
  auto adj = neighbor_lists(g);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (count_reachable(adj, e.u, e.u, e.v) == g.num_nodes) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "train";
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  throw ParseError("unknown split name: " + name);
}

void validate_dataset(const Dataset& ds) {
  int counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const GraphSample& s = ds.samples[i];
    if (s.label < 0 || s.label >= ds.manifest.num_classes)
      throw ConfigError("dataset: sample " + std::to_string(i) + " label out of range");
    if (s.graph.feature_dim != ds.manifest.feature_dim)
      throw ConfigError("dataset: sample " + std::to_string(i) + " feature_dim mismatch");
    validate_graph(s.graph);
    counts[static_cast<int>(s.split)]++;
  }
  if (counts[0] != ds.manifest.train_count || counts[1] != ds.manifest.val_count ||
      counts[2] != ds.manifest.test_count)
    throw ConfigError("dataset: manifest split counts do not match realized counts");
}

AttachResult attach_subgraph(const AttributedGraph& host, const AttributedGraph& part,
                             const AnchorPolicy& policy, std::uint64_t seed) {
  if (part.num_nodes == 0) throw ConfigError("attach_subgraph: empty part");
  if (host.num_nodes == 0) throw ConfigError("attach_subgraph: empty host");
  if (host.feature_dim != part.feature_dim)
    throw ShapeError("attach_subgraph: feature_dim mismatch (" + std::to_string(host.feature_dim) +
                     " vs " + std::to_string(part.feature_dim) + ")");
  if (host.directed != part.directed) throw ConfigError("attach_subgraph: directedness mismatch");

  Rng rng(seed);
  int ha = policy.host_anchor >= 0 ? policy.host_anchor : rng.uniform_int(host.num_nodes);
  int pa = policy.part_anchor >= 0 ? policy.part_anchor : rng.uniform_int(part.num_nodes);
  if (ha >= host.num_nodes || pa >= part.num_nodes)
    throw ConfigError("attach_subgraph: anchor out of range");

  AttachResult res;
  res.host_anchor = ha;
  res.part_offset = host.num_nodes;
  res.part_anchor = host.num_nodes + pa;

  AttributedGraph& g = res.graph;
  g.num_nodes = host.num_nodes + part.num_nodes;
  g.feature_dim = host.feature_dim;
  g.directed = host.directed;
  g.edges = host.edges;
  for (const Edge& e : part.edges) g.edges.push_back({e.u + res.part_offset, e.v + res.part_offset});
  g.features = host.features;
  g.features.insert(g.features.end(), part.features.begin(), part.features.end());
  if (!host.node_tags.empty() || !part.node_tags.empty()) {
    g.node_tags = host.node_tags;
    g.node_tags.resize(host.num_nodes, "");
    if (part.node_tags.empty())
      g.node_tags.resize(g.num_nodes, "");
    else
      g.node_tags.insert(g.node_tags.end(), part.node_tags.begin(), part.node_tags.end());
  }
  g.add_edge(ha, res.part_anchor);
  return res;
}

}  // namespace rwg
