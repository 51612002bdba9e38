#pragma once
#include <string>
#include <vector>

namespace rwg {

enum class ScmRole { Exogenous, GraphVar, Label };

struct ScmVertex {
  std::string id;
  ScmRole role = ScmRole::GraphVar;
  bool no_exogenous = false;  // GraphVar without an exogenous parent
};

// A vertex-level structural causal model: exogenous variables, graph
// micro-variables X and label variables Y joined by a DAG.
struct MicroScm {
  std::vector<ScmVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // directed parent -> child
};

// Acyclicity, role sanity (labels have no outgoing edges into X, exogenous
// vertices have no parents) and the exogenous-parent requirement on X.
void validate_scm(const MicroScm& scm);

// Derived sub-roles of the X vertices.
enum class XRole { Causal, Associated, Confounder };

// Role per GraphVar vertex id: Causal if a parent of some label, Associated
// if it has a directed path to a label, Confounder otherwise.
std::vector<std::pair<int, XRole>> x_roles(const MicroScm& scm);

struct PartitionSpec {
  std::vector<std::string> block_ids;
  std::vector<std::vector<int>> blocks;  // disjoint GraphVar vertex indices covering X
};

// Throws ConfigError unless the blocks exactly partition the X vertices.
void validate_partition(const MicroScm& scm, const PartitionSpec& part);

struct MergeViolation {
  int condition = 0;        // 1 or 2
  std::string block_id;
  int vertex = -1;          // condition 1: the straddled v; condition 2: a non-causal member
  friend bool operator==(const MergeViolation&, const MergeViolation&) = default;
};

struct MergeCheckResult {
  bool valid = false;
  std::vector<MergeViolation> violations;
};

// Condition 1: a block that acts as a merged parent of Y may not contain
// both a parent and a child of any X vertex outside the block. Condition 2:
// causal X vertices may not share a block with non-causal ones.
MergeCheckResult check_merge_validity(const MicroScm& scm, const PartitionSpec& part);

// Identity partition: every X vertex in its own singleton block.
PartitionSpec singleton_partition(const MicroScm& scm);

}  // namespace rwg
