#include "rwg/generator.hpp"

#include <cstdio>

#include "rwg/dataset_io.hpp"

namespace rwg {

std::string family_name(Family f) { return f == Family::Molecular ? "molecular" : "citation"; }

Family family_from_name(const std::string& name) {
  if (name == "molecular") return Family::Molecular;
  if (name == "citation") return Family::Citation;
  throw ConfigError("unknown dataset family: " + name);
}

int config_num_classes(const GenerationConfig& cfg) {
  return cfg.family == Family::Molecular ? cfg.molecular.num_classes : cfg.citation.num_classes;
}

int config_feature_dim(const GenerationConfig& cfg) {
  return cfg.family == Family::Molecular ? cfg.molecular.feature_dim : cfg.citation.feature_dim;
}

AttributedGraph canonical_element_for(const GenerationConfig& cfg) {
  return cfg.family == Family::Molecular ? canonical_molecular_element(config_feature_dim(cfg))
                                         : canonical_citation_element(config_feature_dim(cfg));
}

namespace {

void digest_field(std::string& s, const std::string& key, const std::string& value) {
  s += key;
  s += '=';
  s += value;
  s += ';';
}

std::string confounder_digest(const ConfounderSpec& c) {
  std::string s;
  for (const ConfounderElement& e : c.elements) {
    s += e.id();
    s += ',';
    s += format_double(e.block_feature_value) + ',' + format_double(e.block_noise) + ',';
    s += std::to_string(e.block_one_hot_features) + ',';
    s += format_double(e.channel_generator.a) + ',' + format_double(e.channel_generator.b) + ',';
    s += std::to_string(e.edge_budget) + '|';
  }
  s += "mode=" + std::to_string(static_cast<int>(c.mode));
  s += ";bias=" + format_double(c.bias);
  s += ";biased_class=" + std::to_string(c.biased_class);
  s += ";eval_rate=" + format_double(c.eval_rate);
  return s;
}

}  // namespace

std::string config_digest(const GenerationConfig& cfg) {
  std::string s;
  digest_field(s, "family", family_name(cfg.family));
  digest_field(s, "counts", std::to_string(cfg.train_count) + "/" + std::to_string(cfg.val_count) +
                                "/" + std::to_string(cfg.test_count));
  if (cfg.family == Family::Molecular) {
    const MoleculeAssemblyConfig& m = cfg.molecular;
    std::string fillers;
    for (const std::string& f : m.filler_pool) fillers += f + ',';
    std::string conns;
    for (const ConnectorKind& k : m.connector_pool) conns += connector_id(k) + ',';
    digest_field(s, "fillers", fillers);
    digest_field(s, "connectors", conns);
    digest_field(s, "nodes", std::to_string(m.node_min) + "-" + std::to_string(m.node_max));
    digest_field(s, "edges", std::to_string(m.edge_min) + "-" + std::to_string(m.edge_max));
    digest_field(s, "feature_dim", std::to_string(m.feature_dim));
    digest_field(s, "classes", std::to_string(m.num_classes));
    digest_field(s, "variation", format_double(m.motif_variation_rate));
    digest_field(s, "noise", format_double(m.feature_noise));
  } else {
    const CitationAssemblyConfig& c = cfg.citation;
    std::string rules;
    for (LinkRule r : c.rule_pool) rules += link_rule_name(r) + ',';
    digest_field(s, "rules", rules);
    digest_field(s, "nodes", std::to_string(c.node_min) + "-" + std::to_string(c.node_max));
    digest_field(s, "edges", std::to_string(c.edge_min) + "-" + std::to_string(c.edge_max));
    digest_field(s, "feature_dim", std::to_string(c.feature_dim));
    digest_field(s, "classes", std::to_string(c.num_classes));
    digest_field(s, "scale", format_double(c.feature_scale));
    digest_field(s, "poisson", format_double(c.rule_params.poisson_mean));
    digest_field(s, "out_degree", std::to_string(c.rule_params.out_degree));
  }
  std::string causal;
  for (const std::string& e : cfg.causal.class_elements) causal += e + ',';
  digest_field(s, "causal_kind", std::to_string(static_cast<int>(cfg.causal.kind)));
  digest_field(s, "causal", causal);
  digest_field(s, "confounder", confounder_digest(cfg.confounder));

  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

Dataset generate_dataset(const GenerationConfig& cfg, std::uint64_t master_seed) {
  validate_causal_spec(cfg.causal);
  int num_classes = config_num_classes(cfg);
  if (cfg.causal.num_classes() != num_classes)
    throw ConfigError("generate_dataset: causal spec classes do not match the assembly config");

  SeedStream stream{master_seed};
  std::uint64_t conf_seed = stream.derive(0, "confounder");
  int total = cfg.train_count + cfg.val_count + cfg.test_count;

  Dataset ds;
  ds.manifest.num_classes = num_classes;
  ds.manifest.feature_dim = config_feature_dim(cfg);
  ds.manifest.train_count = cfg.train_count;
  ds.manifest.val_count = cfg.val_count;
  ds.manifest.test_count = cfg.test_count;
  ds.manifest.master_seed = master_seed;
  ds.manifest.config_digest = config_digest(cfg);
  ds.samples.reserve(total);

  bool conf_on = cfg.confounder.enabled();
  for (int i = 0; i < total; ++i) {
    Split split = i < cfg.train_count                  ? Split::Train
                  : i < cfg.train_count + cfg.val_count ? Split::Val
                                                        : Split::Test;
    int label = i % num_classes;

    SizeReserve reserve;
    if (conf_on && confounder_flagged(cfg.confounder, split, label, num_classes, i, conf_seed))
      reserve = confounder_reserve(confounder_elements_for(cfg.confounder, i, conf_seed));

    std::uint64_t sample_seed = stream.derive(i, family_name(cfg.family));
    GraphSample s = cfg.family == Family::Molecular
                        ? assemble_molecule(cfg.molecular, cfg.causal, label, sample_seed,
                                            reserve.nodes, reserve.edges)
                        : assemble_citation_graph(cfg.citation, cfg.causal, label, sample_seed,
                                                  reserve.nodes, reserve.edges);
    s.split = split;
    s.provenance.sample_seed = sample_seed;
    ds.samples.push_back(std::move(s));
  }

  if (conf_on) ds = inject_confounder(ds, cfg.confounder, conf_seed);
  validate_dataset(ds);
  return ds;
}

namespace {

ConfounderElement chain_block(int size, const std::string& tag, double noise) {
  ConfounderElement e;
  e.kind = ConfounderElement::Kind::Block;
  e.block = {Connector::Path, size, 0};
  e.block_tag = tag;
  e.block_one_hot_features = true;
  e.block_noise = noise;
  return e;
}

}  // namespace

GenerationConfig molecular_default(double bias) {
  GenerationConfig cfg;
  cfg.family = Family::Molecular;
  // Fillers avoid sulfur so the S-tagged confounder chain owns that channel.
  cfg.molecular.filler_pool = {"adrenaline", "imidazole", "pyrimidine", "benzoic_acid", "ethanol"};
  cfg.molecular.connector_pool = {{Connector::Cycle, 6, 0},
                                  {Connector::Star, 5, 2},
                                  {Connector::CuspedPolygon, 5, 3},
                                  {Connector::CompleteGraph, 5, 0},
                                  {Connector::Triangle, 2, 0}};
  cfg.causal.kind = CausalSpec::Kind::Motif;
  cfg.causal.class_elements = {"benzene_ring", "pyridine", "nitrobenzene", "nitrophenol",
                               "simplified_dopamine"};
  cfg.confounder.elements = {chain_block(12, "S", 0.0)};
  cfg.confounder.bias = bias;
  return cfg;
}

GenerationConfig molecular_reduced(double bias) {
  GenerationConfig cfg;
  cfg.family = Family::Molecular;
  cfg.train_count = 400;
  cfg.val_count = 100;
  cfg.test_count = 100;
  cfg.molecular.node_min = 20;
  cfg.molecular.node_max = 30;
  cfg.molecular.edge_min = 15;
  cfg.molecular.edge_max = 60;
  cfg.molecular.num_classes = 2;
  cfg.molecular.motif_variation_rate = 0.1;
  cfg.molecular.feature_noise = 0.05;
  cfg.molecular.filler_pool = {"ethane", "ethanol", "acetic_acid"};
  cfg.molecular.connector_pool = {{Connector::Path, 3, 0}, {Connector::Star, 3, 0}};
  cfg.causal.kind = CausalSpec::Kind::Motif;
  cfg.causal.class_elements = {"benzene_ring", "pyridine"};
  cfg.confounder.elements = {chain_block(10, "S", 0.0)};
  cfg.confounder.bias = bias;
  cfg.confounder.biased_class = 1;
  return cfg;
}

GenerationConfig citation_default(double bias) {
  GenerationConfig cfg;
  cfg.family = Family::Citation;
  cfg.citation.rule_pool = {LinkRule::RandomPoisson,   LinkRule::HighCitationCount,
                            LinkRule::TopicSimilarity, LinkRule::Temporal,
                            LinkRule::VenueReputation, LinkRule::NetworkTopology};
  cfg.citation.rule_params.poisson_mean = 1.6;
  cfg.citation.rule_params.out_degree = 2;
  cfg.causal.kind = CausalSpec::Kind::FeatureGenerator;
  cfg.causal.class_elements = {"fibonacci", "arithmetic", "geometric", "square", "prime"};
  ConfounderElement e;
  e.kind = ConfounderElement::Kind::FeatureChannel;
  e.channel = 4;
  e.channel_generator = {FeatureKind::Uniform, 2.5, 3.5};
  cfg.confounder.elements = {e};
  cfg.confounder.bias = bias;
  return cfg;
}

GenerationConfig citation_reduced(double bias) {
  GenerationConfig cfg = citation_default(bias);
  cfg.train_count = 400;
  cfg.val_count = 100;
  cfg.test_count = 100;
  return cfg;
}

}  // namespace rwg
