#pragma once
#include <string>
#include <vector>

#include "rwg/graph.hpp"

namespace rwg {

struct MotifTemplate {
  std::string motif_id;        // stable snake_case identifier
  std::string name;            // display name from the source table
  int declared_node_count = 0; // table value; always equals the template's
  int declared_edge_count = 0; // table value; kept as metadata, see docs
  AttributedGraph graph;       // connected simple graph with atom tags
};

// The 26-entry molecular motif registry. Deterministic order (sorted by id).
const std::vector<MotifTemplate>& motif_registry();

const MotifTemplate& motif_by_id(const std::string& motif_id);

// Motifs whose realizable simple-graph edge count differs from the declared
// table value. For everything else the template matches both counts.
const std::vector<std::string>& motif_edge_count_discrepancies();

// JSON document of the registry (ids, names, declared and actual counts),
// used by tests and the validate CLI to diff against the source table.
std::string motif_registry_json();

// Returns the template, or with probability variation_rate a copy with one
// edge added between a non-adjacent pair or one non-bridge edge removed.
// The result is always connected and keeps the atom tags.
AttributedGraph instantiate_motif(const std::string& motif_id, std::uint64_t variation_seed,
                                  double variation_rate);

// Atom vocabulary shared by the molecular feature scheme: C, H, O, N, S.
constexpr int kAtomVocabSize = 5;
int atom_index(const std::string& tag);

}  // namespace rwg
