#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/graph.hpp"

namespace rwg {

enum class Connector {
  Star,
  Path,
  Fan,
  CuspedPolygon,
  RandomBipartite,
  Tree,
  Trident,
  ConicalConnection,
  ChainBypass,
  PartialPolygon,
  CompleteGraph,
  Grid,
  Cycle,
  DualRing,
  Triangle,
};

constexpr int kConnectorCount = 15;

struct ConnectorKind {
  Connector kind = Connector::Path;
  int size = 1;
  int branch = 0;
};

std::string connector_name(Connector c);
Connector connector_from_name(const std::string& name);

// Table-order index (1-based) matching the source registry ordering.
Connector connector_by_index(int index);

int connector_min_size(Connector c);

// Closed-form node/edge counts as a function of (size, branch). The
// construction in build_connector realizes exactly these counts; the test
// suite sweeps every kind over size in [min, 12] and branch in [0, 5].
int connector_node_count(const ConnectorKind& k);
int connector_edge_count(const ConnectorKind& k);

// Builds the connector graph. All kinds are connected simple graphs; the
// seed only permutes random wiring (RandomBipartite), never the counts.
// Every node carries `tag`.
AttributedGraph build_connector(const ConnectorKind& k, std::uint64_t seed,
                                const std::string& tag = "C");

// Stable id such as "star:5x2" used in provenance records.
std::string connector_id(const ConnectorKind& k);

std::string connector_registry_json();

}  // namespace rwg
