#include "rwg/causal.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rwg/motifs.hpp"

namespace rwg {

void validate_causal_spec(const CausalSpec& spec) {
  if (spec.class_elements.empty()) throw ConfigError("causal spec: no class elements");
  std::set<std::string> seen;
  for (const std::string& id : spec.class_elements) {
    if (!seen.insert(id).second) throw ConfigError("causal spec: duplicate class element " + id);
    switch (spec.kind) {
      case CausalSpec::Kind::Motif: motif_by_id(id); break;
      case CausalSpec::Kind::FeatureGenerator: feature_kind_from_name(id); break;
      case CausalSpec::Kind::LinkRule: link_rule_from_name(id); break;
    }
  }
}

std::string ConfounderElement::id() const {
  switch (kind) {
    case Kind::Block: return "block:" + connector_id(block) + ":" + block_tag;
    case Kind::FeatureChannel:
      return "channel:" + std::to_string(channel) + ":" + feature_kind_name(channel_generator.kind);
    case Kind::ExtraEdges: return "edges:" + link_rule_name(edge_rule);
  }
  return "?";
}

double confounder_eval_rate(const ConfounderSpec& conf, int num_classes) {
  if (conf.eval_rate >= 0) return conf.eval_rate;
  return num_classes > 0 ? conf.bias / num_classes : 0.0;
}

bool confounder_flagged(const ConfounderSpec& conf, Split split, int label, int num_classes,
                        std::uint64_t sample_index, std::uint64_t conf_seed) {
  if (conf.elements.empty()) return false;
  Rng rng(derive_seed(conf_seed, sample_index, "confsel"));
  double u = rng.uniform();
  if (split == Split::Train) return label == conf.biased_class && u < conf.bias;
  return u < confounder_eval_rate(conf, num_classes);
}

std::vector<const ConfounderElement*> confounder_elements_for(const ConfounderSpec& conf,
                                                              std::uint64_t sample_index,
                                                              std::uint64_t conf_seed) {
  std::vector<const ConfounderElement*> out;
  if (conf.elements.empty()) return out;
  if (conf.mode == ConfounderSpec::Mode::PickOne) {
    Rng rng(derive_seed(conf_seed, sample_index, "confpick"));
    out.push_back(&conf.elements[rng.uniform_int(static_cast<int>(conf.elements.size()))]);
  } else {
    for (const ConfounderElement& e : conf.elements) out.push_back(&e);
  }
  return out;
}

SizeReserve confounder_reserve(const std::vector<const ConfounderElement*>& elements) {
  SizeReserve r;
  for (const ConfounderElement* e : elements) {
    switch (e->kind) {
      case ConfounderElement::Kind::Block:
        r.nodes += connector_node_count(e->block);
        r.edges += connector_edge_count(e->block) + 1;  // plus the bridge
        break;
      case ConfounderElement::Kind::ExtraEdges: r.edges += e->edge_budget; break;
      case ConfounderElement::Kind::FeatureChannel: break;
    }
  }
  return r;
}

namespace {

void attach_block(GraphSample& s, const ConfounderElement& e, std::uint64_t seed) {
  AttributedGraph part = build_connector(e.block, derive_seed(seed, 1, "blk"),
                                         s.graph.node_tags.empty() ? "" : e.block_tag);
  part.feature_dim = s.graph.feature_dim;
  part.features.assign(static_cast<std::size_t>(part.num_nodes) * part.feature_dim, 0.0);
  Rng rng(derive_seed(seed, 2, "blkfeat"));
  for (int v = 0; v < part.num_nodes; ++v) {
    for (int k = 0; k < part.feature_dim; ++k) {
      double x;
      if (e.block_one_hot_features) {
        x = (k == atom_index(e.block_tag)) ? 1.0 : 0.0;
        if (e.block_noise > 0) x += e.block_noise * standard_normal(rng);
      } else {
        x = e.block_feature_value;
      }
      part.feat(v, k) = x;
    }
  }
  AnchorPolicy policy;
  policy.part_anchor = 0;
  AttachResult res = attach_subgraph(s.graph, part, policy, derive_seed(seed, 3, "anchor"));
  s.graph = std::move(res.graph);
  for (int v = 0; v < part.num_nodes; ++v) s.provenance.confounder_nodes.push_back(res.part_offset + v);
  if (s.provenance.confounder_anchor < 0) s.provenance.confounder_anchor = res.host_anchor;
}

void overwrite_channel(GraphSample& s, const ConfounderElement& e, std::uint64_t seed) {
  if (e.channel < 0 || e.channel >= s.graph.feature_dim)
    throw ConfigError("confounder channel out of range");
  validate_generator(e.channel_generator);
  Rng rng(derive_seed(seed, 4, "chan"));
  for (int v = 0; v < s.graph.num_nodes; ++v) s.graph.feat(v, e.channel) = draw(e.channel_generator, rng);
  s.provenance.confounder_channel = e.channel;
}

void add_extra_edges(GraphSample& s, const ConfounderElement& e, std::uint64_t seed) {
  if (!s.graph.directed)
    throw ConfigError("extra-edge confounders are only defined for directed graphs");
  NodeMetadata meta = synthesize_metadata(s.graph.num_nodes, derive_seed(seed, 5, "cmeta"));
  LinkRuleParams params;
  params.probability = 0.8;
  std::vector<Edge> extra =
      apply_link_rule(e.edge_rule, meta, params, s.graph.edges, derive_seed(seed, 6, "cedge"));
  int added = 0;
  for (const Edge& ne : extra) {
    if (added >= e.edge_budget) break;
    if (s.graph.has_edge(ne.u, ne.v)) continue;
    s.graph.add_edge(ne.u, ne.v);
    s.provenance.confounder_edges.push_back(ne);
    ++added;
  }
}

}  // namespace

Dataset inject_confounder(const Dataset& ds, const ConfounderSpec& conf, std::uint64_t seed) {
  Dataset out = ds;
  if (conf.elements.empty()) return out;
  for (std::uint64_t i = 0; i < out.samples.size(); ++i) {
    GraphSample& s = out.samples[i];
    if (!confounder_flagged(conf, s.split, s.label, out.manifest.num_classes, i, seed)) continue;
    std::uint64_t sample_conf_seed = derive_seed(seed, i, "confattach");
    int idx = 0;
    for (const ConfounderElement* e : confounder_elements_for(conf, i, seed)) {
      for (const std::string& causal_id : s.provenance.causal_element_ids)
        if (causal_id == e->id())
          throw ConfigError("confounder spec error: element " + e->id() +
                            " collides with the causal determinant");
      std::uint64_t eseed = derive_seed(sample_conf_seed, idx++, "elem");
      switch (e->kind) {
        case ConfounderElement::Kind::Block: attach_block(s, *e, eseed); break;
        case ConfounderElement::Kind::FeatureChannel: overwrite_channel(s, *e, eseed); break;
        case ConfounderElement::Kind::ExtraEdges: add_extra_edges(s, *e, eseed); break;
      }
      s.provenance.confounder_element_ids.push_back(e->id());
    }
  }
  return out;
}

AttributedGraph canonical_molecular_element(int feature_dim) {
  AttributedGraph g = build_connector({Connector::Path, 3, 0}, 0, "C");
  g.feature_dim = feature_dim;
  g.features.assign(static_cast<std::size_t>(g.num_nodes) * feature_dim, 0.0);
  int c = atom_index("C");
  for (int v = 0; v < g.num_nodes; ++v)
    if (c < feature_dim) g.feat(v, c) = 1.0;
  return g;
}

AttributedGraph canonical_citation_element(int feature_dim) {
  AttributedGraph g = build_connector({Connector::Path, 3, 0}, 0, "");
  g.directed = true;
  g.feature_dim = feature_dim;
  g.features.assign(static_cast<std::size_t>(g.num_nodes) * feature_dim, 0.0);
  return g;
}

namespace {

GraphSample remove_nodes(const GraphSample& sample, const std::vector<int>& nodes) {
  std::vector<char> removed(sample.graph.num_nodes, 0);
  for (int v : nodes) removed[v] = 1;
  std::vector<int> newid(sample.graph.num_nodes, -1);
  int next = 0;
  for (int v = 0; v < sample.graph.num_nodes; ++v)
    if (!removed[v]) newid[v] = next++;

  GraphSample out = sample;
  AttributedGraph& g = out.graph;
  g.num_nodes = next;
  g.edges.clear();
  for (const Edge& e : sample.graph.edges)
    if (!removed[e.u] && !removed[e.v]) g.edges.push_back({newid[e.u], newid[e.v]});
  g.features.clear();
  g.features.reserve(static_cast<std::size_t>(next) * g.feature_dim);
  for (int v = 0; v < sample.graph.num_nodes; ++v)
    if (!removed[v])
      for (int k = 0; k < g.feature_dim; ++k) g.features.push_back(sample.graph.feat(v, k));
  if (!sample.graph.node_tags.empty()) {
    g.node_tags.clear();
    for (int v = 0; v < sample.graph.num_nodes; ++v)
      if (!removed[v]) g.node_tags.push_back(sample.graph.node_tags[v]);
  }
  for (int& v : out.provenance.causal_nodes) v = newid[v];
  if (out.provenance.confounder_anchor >= 0)
    out.provenance.confounder_anchor = newid[out.provenance.confounder_anchor];
  out.provenance.confounder_nodes.clear();
  return out;
}

}  // namespace

GraphSample intervene(const GraphSample& sample, const ConfounderSpec& conf,
                      const AttributedGraph& canonical) {
  (void)conf;
  GraphSample out = sample;
  Provenance& p = out.provenance;

  if (!p.confounder_element_ids.empty() && p.confounder_nodes.empty() &&
      p.confounder_channel < 0 && p.confounder_edges.empty() && !p.intervention_applied)
    throw ConfigError(
        "intervention error: provenance lists confounder elements but records no "
        "occurrence (nodes, channel or edges)");

  if (p.confounder_channel >= 0 && p.confounder_channel < out.graph.feature_dim)
    for (int v = 0; v < out.graph.num_nodes; ++v) out.graph.feat(v, p.confounder_channel) = 0.0;

  if (!p.confounder_edges.empty()) {
    for (const Edge& ce : p.confounder_edges)
      std::erase_if(out.graph.edges, [&](const Edge& e) { return e == ce; });
    p.confounder_edges.clear();
  }

  if (!p.confounder_nodes.empty()) {
    int anchor = p.confounder_anchor;
    out = remove_nodes(out, p.confounder_nodes);
    AttributedGraph part = canonical;
    part.directed = out.graph.directed;
    AnchorPolicy policy;
    policy.host_anchor = anchor >= 0 ? anchor : 0;
    policy.part_anchor = 0;
    AttachResult res = attach_subgraph(out.graph, part, policy, 0);
    out.graph = std::move(res.graph);
    for (int v = 0; v < part.num_nodes; ++v)
      out.provenance.confounder_nodes.push_back(res.part_offset + v);
    out.provenance.confounder_anchor = res.host_anchor;
  }

  out.provenance.intervention_applied = true;
  return out;
}

std::vector<int> violate_merge(const Dataset& ds, const ConfounderSpec& conf, double p) {
  (void)conf;
  if (p < 0 || p > 1) throw ConfigError("violate_merge: p must lie in [0, 1]");
  std::vector<int> occurrences;
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const Provenance& pr = ds.samples[i].provenance;
    if (!pr.confounder_nodes.empty() || pr.confounder_channel >= 0 || !pr.confounder_edges.empty())
      occurrences.push_back(static_cast<int>(i));
  }
  int k = static_cast<int>(std::floor(p * static_cast<double>(occurrences.size()) + 0.5));
  Rng rng(derive_seed(ds.manifest.master_seed, 0, "violate"));
  rng.shuffle(occurrences);
  occurrences.resize(k);
  std::sort(occurrences.begin(), occurrences.end());
  return occurrences;
}

Dataset apply_intervention(const Dataset& ds, const ConfounderSpec& conf,
                           const AttributedGraph& canonical, const std::vector<int>& exempt) {
  std::set<int> skip(exempt.begin(), exempt.end());
  Dataset out = ds;
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    if (!skip.count(static_cast<int>(i))) out.samples[i] = intervene(out.samples[i], conf, canonical);
  return out;
}

}  // namespace rwg
