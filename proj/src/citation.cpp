#include "rwg/citation.hpp"

#include <algorithm>

#include "rwg/stats.hpp"

namespace rwg {

GraphSample assemble_citation_graph(const CitationAssemblyConfig& cfg, const CausalSpec& causal,
                                    int label, std::uint64_t seed, int reserve_nodes,
                                    int reserve_edges) {
  validate_causal_spec(causal);
  if (causal.kind == CausalSpec::Kind::Motif)
    throw ConfigError("assemble_citation_graph: causal spec must reference feature generators or link rules");
  if (label < 0 || label >= causal.num_classes())
    throw ConfigError("assemble_citation_graph: label out of range");
  if (cfg.node_min > cfg.node_max || cfg.edge_min > cfg.edge_max)
    throw ConfigError("assemble_citation_graph: empty node or edge range");

  int node_lo = std::max(1, cfg.node_min - reserve_nodes);
  int node_hi = cfg.node_max - reserve_nodes;
  int edge_lo = std::max(0, cfg.edge_min - reserve_edges);
  int edge_hi = cfg.edge_max - reserve_edges;
  if (node_hi < 1 || edge_hi < 0)
    throw GenerationError("assemble_citation_graph: confounder reserve leaves no room in the range");

  // Class determinant: a feature generator by default, a link rule otherwise.
  FeatureGenerator feature_gen;
  LinkRule forced_rule = LinkRule::RandomPoisson;
  bool rule_is_causal = causal.kind == CausalSpec::Kind::LinkRule;
  if (rule_is_causal) {
    forced_rule = link_rule_from_name(causal.class_elements[label]);
    feature_gen = cfg.base_feature_generator;
  } else {
    feature_gen = default_feature_generator(feature_kind_from_name(causal.class_elements[label]));
  }

  const char* failure = "edge range never attempted";
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    std::uint64_t aseed = derive_seed(seed, attempt, "attempt");
    Rng rng(aseed);
    int n = node_lo + (node_hi > node_lo ? rng.uniform_int(node_hi - node_lo + 1) : 0);
    NodeMetadata meta = synthesize_metadata(n, derive_seed(aseed, 0, "meta"));

    LinkRule rule = forced_rule;
    if (!rule_is_causal) {
      if (cfg.rule_pool.empty()) throw ConfigError("assemble_citation_graph: empty rule pool");
      rule = cfg.rule_pool[rng.uniform_int(static_cast<int>(cfg.rule_pool.size()))];
    }

    // Structure-reading rules bootstrap from a small Poisson base; the mean
    // ramps across attempts so the edge range stays reachable.
    LinkRuleParams params = cfg.rule_params;
    params.poisson_mean = cfg.rule_params.poisson_mean * (1.0 + 0.25 * (attempt % 8));
    std::vector<Edge> edges;
    if (link_rule_needs_base(rule)) {
      LinkRuleParams base_params = params;
      edges = apply_link_rule(LinkRule::RandomPoisson, meta, base_params, {},
                              derive_seed(aseed, 1, "base"));
    }
    std::vector<Edge> ruled = apply_link_rule(rule, meta, params, edges, derive_seed(aseed, 2, "rule"));
    edges.insert(edges.end(), ruled.begin(), ruled.end());

    // Top up sparse draws toward the range floor.
    if (static_cast<int>(edges.size()) < edge_lo) {
      LinkRuleParams top = params;
      top.poisson_mean = std::max(1.0, static_cast<double>(edge_lo - edges.size()) / std::max(1, n));
      std::vector<Edge> extra =
          apply_link_rule(LinkRule::RandomPoisson, meta, top, edges, derive_seed(aseed, 3, "topup"));
      for (const Edge& e : extra) {
        if (static_cast<int>(edges.size()) >= edge_lo) break;
        edges.push_back(e);
      }
    }

    int m = static_cast<int>(edges.size());
    if (m < edge_lo) {
      failure = "edge count below the edge range";
      continue;
    }
    if (m > edge_hi) {
      failure = "edge count above the edge range";
      continue;
    }

    GraphSample sample;
    sample.label = label;
    sample.graph.directed = true;
    sample.graph.num_nodes = n;
    for (const Edge& e : edges) sample.graph.add_edge(e.u, e.v);
    sample.graph.feature_dim = cfg.feature_dim;
    sample.graph.features = generate_features(feature_gen, n, cfg.feature_dim,
                                              derive_seed(aseed, 4, "feat"));
    for (double& x : sample.graph.features) x *= cfg.feature_scale;
    sample.provenance.causal_element_ids = {
        (rule_is_causal ? "rule:" : "generator:") + causal.class_elements[label]};
    sample.provenance.filler_element_ids = {"rule:" + link_rule_name(rule)};
    sample.provenance.causal_stat = mean(sample.graph.features);
    return sample;
  }
  throw GenerationError(std::string("assemble_citation_graph: gave up after ") +
                        std::to_string(cfg.max_attempts) + " attempts; last failure: " + failure);
}

}  // namespace rwg
