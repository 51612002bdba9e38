#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/connectors.hpp"
#include "rwg/features.hpp"
#include "rwg/graph.hpp"
#include "rwg/link_rules.hpp"

namespace rwg {

// Which graph elements determine the label: one element per class.
struct CausalSpec {
  enum class Kind { Motif, FeatureGenerator, LinkRule };
  Kind kind = Kind::Motif;
  std::vector<std::string> class_elements;

  int num_classes() const { return static_cast<int>(class_elements.size()); }
};

// Throws ConfigError unless class_elements is a duplicate-free list of
// registered element ids of the right kind.
void validate_causal_spec(const CausalSpec& spec);

// One attachable confounder unit.
struct ConfounderElement {
  enum class Kind { Block, FeatureChannel, ExtraEdges };
  Kind kind = Kind::Block;

  // Block: a connector-module subgraph bridged onto the sample.
  ConnectorKind block{Connector::Path, 12, 0};
  std::string block_tag = "S";
  bool block_one_hot_features = true;  // atom one-hot rows; else constant fill
  double block_feature_value = 3.0;
  double block_noise = 0.0;

  // FeatureChannel: an overwritten feature column.
  int channel = -1;
  FeatureGenerator channel_generator{FeatureKind::Uniform, 2.5, 3.5};

  // ExtraEdges: rule-generated edges among existing nodes.
  LinkRule edge_rule = LinkRule::TriangleStructure;
  int edge_budget = 8;

  std::string id() const;
};

struct ConfounderSpec {
  std::vector<ConfounderElement> elements;
  enum class Mode { All, PickOne } mode = Mode::All;
  double bias = 0.7;      // train-split co-occurrence with biased_class
  int biased_class = 0;
  // Attachment probability on val/test; negative means "match the train
  // marginal", i.e. bias / num_classes.
  double eval_rate = -1.0;

  bool enabled() const { return !elements.empty() && (bias > 0 || eval_rate > 0); }
};

double confounder_eval_rate(const ConfounderSpec& conf, int num_classes);

// Pure per-sample decision used by both the generator (for size budgeting)
// and inject_confounder, so the two always agree.
bool confounder_flagged(const ConfounderSpec& conf, Split split, int label, int num_classes,
                        std::uint64_t sample_index, std::uint64_t conf_seed);

// Elements a flagged sample receives (all of them, or the seeded pick).
std::vector<const ConfounderElement*> confounder_elements_for(const ConfounderSpec& conf,
                                                              std::uint64_t sample_index,
                                                              std::uint64_t conf_seed);

// Node/edge headroom the generator must reserve for a flagged sample.
struct SizeReserve {
  int nodes = 0;
  int edges = 0;
};
SizeReserve confounder_reserve(const std::vector<const ConfounderElement*>& elements);

// Biased attachment on the train split, uniformly random class pairing at
// the matching marginal rate on val/test. Labels, causal elements and
// sample counts are never touched.
Dataset inject_confounder(const Dataset& ds, const ConfounderSpec& conf, std::uint64_t seed);

// Canonical invariant elements used by interventions.
AttributedGraph canonical_molecular_element(int feature_dim);
AttributedGraph canonical_citation_element(int feature_dim);

// Replaces the sample's confounder occurrence (blocks, channel, extra edges)
// by the canonical element and sets intervention_applied. Idempotent; a
// sample without a confounder only gets the flag.
GraphSample intervene(const GraphSample& sample, const ConfounderSpec& conf,
                      const AttributedGraph& canonical);

// Indices of confounded samples exempt from intervention: a seeded choice of
// round(p * occurrences) samples, derived from the dataset master seed.
std::vector<int> violate_merge(const Dataset& ds, const ConfounderSpec& conf, double p);

// intervene() on every confounded sample not listed in `exempt`.
Dataset apply_intervention(const Dataset& ds, const ConfounderSpec& conf,
                           const AttributedGraph& canonical, const std::vector<int>& exempt);

}  // namespace rwg
