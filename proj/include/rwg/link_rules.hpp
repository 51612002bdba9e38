#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwg/graph.hpp"
#include "rwg/seed.hpp"

namespace rwg {

enum class LinkRule {
  RandomPoisson,
  HighCitationCount,
  CoAuthor,
  Propagation,
  TopicSimilarity,
  Temporal,
  AuthorInfluence,
  CoCitationFrequency,
  CitationDensity,
  NetworkTopology,
  AuthorExpertise,
  Centrality,
  GeographicProximity,
  TeamSize,
  Credibility,
  AcademicLineage,
  TriangleStructure,
  CitationDistance,
  KnowledgeFlow,
  ChainLength,
  Diversity,
  ReferenceCount,
  ResearchObject,
  VenueReputation,
  OpenAccess,
};

constexpr int kLinkRuleCount = 25;

std::string link_rule_name(LinkRule r);
LinkRule link_rule_from_name(const std::string& name);
std::string link_rule_registry_json();

// Per-paper synthetic metadata consumed by the rules. Fields are optional so
// a caller supplying partial metadata gets a schema error naming the missing
// field rather than garbage edges.
struct NodeMetadata {
  int num_nodes = 0;
  std::optional<std::vector<double>> citation_count;
  std::optional<std::vector<std::vector<int>>> author_ids;
  std::optional<std::vector<std::vector<double>>> topic_vector;
  std::optional<std::vector<int>> year;
  std::optional<std::vector<double>> venue_score;
  std::optional<std::vector<int>> geography;
  std::optional<std::vector<int>> team_size;
  std::optional<std::vector<double>> influence;
  std::optional<std::vector<double>> credibility;
  std::optional<std::vector<int>> domain;
  std::optional<std::vector<int>> mentor;  // index of the mentor node or -1
  std::optional<std::vector<int>> research_object;
  std::optional<std::vector<bool>> open_access;
  std::optional<std::vector<double>> reference_count;
};

// All fields populated from documented priors; the base for every generated
// citation sample.
NodeMetadata synthesize_metadata(int num_nodes, std::uint64_t seed);

struct LinkRuleParams {
  double poisson_mean = 2.0;  // RandomPoisson
  int out_degree = 2;         // selection budget per citing paper
  double probability = 0.4;   // activation/closure probability where used
};

// Directed citer -> cited edges for one rule. `base` carries already-built
// edges for the rules that read graph structure; pass an empty list
// otherwise. No self-citations; duplicates (also against base) are skipped.
std::vector<Edge> apply_link_rule(LinkRule rule, const NodeMetadata& meta,
                                  const LinkRuleParams& params, const std::vector<Edge>& base,
                                  std::uint64_t seed);

// True when the rule consumes the existing edge structure and needs a
// non-empty base graph to produce anything.
bool link_rule_needs_base(LinkRule rule);

}  // namespace rwg
