#include "rwg/molecular.hpp"

#include <algorithm>

#include "rwg/features.hpp"
#include "rwg/motifs.hpp"

namespace rwg {

namespace {

struct AttemptResult {
  bool ok = false;
  AttributedGraph graph;
  std::vector<int> causal_nodes;
  std::vector<std::string> fillers;
  const char* failure = "";
};

AttemptResult try_assemble(const MoleculeAssemblyConfig& cfg, const std::string& causal_motif,
                           std::uint64_t seed, int node_lo, int node_hi, int edge_lo,
                           int edge_hi) {
  AttemptResult res;
  Rng rng(seed);

  res.graph = instantiate_motif(causal_motif, 0, 0.0);
  res.causal_nodes.resize(res.graph.num_nodes);
  for (int v = 0; v < res.graph.num_nodes; ++v) res.causal_nodes[v] = v;
  if (res.graph.num_nodes > node_hi) {
    res.failure = "causal motif exceeds the node budget";
    return res;
  }

  int part_index = 0;
  auto attach = [&](const AttributedGraph& part, const std::string& id) {
    AttachResult ar = attach_subgraph(res.graph, part, AnchorPolicy{},
                                      derive_seed(seed, 1000 + part_index, "anchor"));
    res.graph = std::move(ar.graph);
    res.fillers.push_back(id);
    ++part_index;
  };

  if (!cfg.connector_pool.empty()) {
    const ConnectorKind& kind = cfg.connector_pool[rng.uniform_int(static_cast<int>(cfg.connector_pool.size()))];
    AttributedGraph conn = build_connector(kind, derive_seed(seed, 1, "conn"));
    if (res.graph.num_nodes + conn.num_nodes > node_hi) {
      res.failure = "connector exceeds the node budget";
      return res;
    }
    attach(conn, "connector:" + connector_id(kind));
  }

  // spread realized sizes over the whole range, not just its floor
  int node_target = node_lo + (node_hi > node_lo ? rng.uniform_int(node_hi - node_lo + 1) : 0);
  while (res.graph.num_nodes < node_target || static_cast<int>(res.graph.edges.size()) < edge_lo) {
    if (cfg.filler_pool.empty()) {
      res.failure = "node range unreachable: empty filler pool";
      return res;
    }
    const std::string& filler = cfg.filler_pool[rng.uniform_int(static_cast<int>(cfg.filler_pool.size()))];
    AttributedGraph part = instantiate_motif(filler, derive_seed(seed, 2000 + part_index, "vary"),
                                             cfg.motif_variation_rate);
    if (res.graph.num_nodes + part.num_nodes > node_hi) {
      res.failure = "node range unsatisfiable: filler exceeds the node budget";
      return res;
    }
    attach(part, "motif:" + filler);
  }

  int edges = static_cast<int>(res.graph.edges.size());
  if (edges < edge_lo) {
    res.failure = "edge count below the edge range";
    return res;
  }
  if (edges > edge_hi) {
    res.failure = "edge count above the edge range";
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace

GraphSample assemble_molecule(const MoleculeAssemblyConfig& cfg, const CausalSpec& causal,
                              int label, std::uint64_t seed, int reserve_nodes,
                              int reserve_edges) {
  if (causal.kind != CausalSpec::Kind::Motif)
    throw ConfigError("assemble_molecule: causal spec must reference motifs");
  validate_causal_spec(causal);
  if (label < 0 || label >= causal.num_classes())
    throw ConfigError("assemble_molecule: label out of range");
  if (cfg.node_min > cfg.node_max || cfg.edge_min > cfg.edge_max)
    throw ConfigError("assemble_molecule: empty node or edge range");

  const std::string& causal_motif = causal.class_elements[label];
  int node_lo = std::max(1, cfg.node_min - reserve_nodes);
  int node_hi = cfg.node_max - reserve_nodes;
  int edge_lo = std::max(0, cfg.edge_min - reserve_edges);
  int edge_hi = cfg.edge_max - reserve_edges;
  if (node_hi < 1 || edge_hi < 0)
    throw GenerationError("assemble_molecule: confounder reserve leaves no room in the range");

  const char* failure = "";
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    AttemptResult res = try_assemble(cfg, causal_motif, derive_seed(seed, attempt, "attempt"),
                                     node_lo, node_hi, edge_lo, edge_hi);
    if (!res.ok) {
      failure = res.failure;
      continue;
    }
    GraphSample sample;
    sample.graph = std::move(res.graph);
    sample.label = label;
    sample.provenance.causal_element_ids = {"motif:" + causal_motif};
    sample.provenance.causal_nodes = std::move(res.causal_nodes);
    sample.provenance.filler_element_ids = std::move(res.fillers);

    AttributedGraph& g = sample.graph;
    g.feature_dim = cfg.feature_dim;
    g.features.assign(static_cast<std::size_t>(g.num_nodes) * cfg.feature_dim, 0.0);
    Rng frng(derive_seed(seed, attempt, "feat"));
    for (int v = 0; v < g.num_nodes; ++v) {
      int hot = atom_index(g.node_tags[v]);
      for (int k = 0; k < cfg.feature_dim; ++k) {
        double x = (k == hot) ? 1.0 : 0.0;
        if (cfg.feature_noise > 0) x += cfg.feature_noise * standard_normal(frng);
        g.feat(v, k) = x;
      }
    }
    return sample;
  }
  throw GenerationError(std::string("assemble_molecule: gave up after ") +
                        std::to_string(cfg.max_attempts) + " attempts; last failure: " + failure);
}

}  // namespace rwg
