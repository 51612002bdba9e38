#include "rwg/connectors.hpp"

#include <algorithm>

#include "rwg/seed.hpp"

namespace rwg {

namespace {

struct KindInfo {
  Connector kind;
  const char* name;
  int min_size;
  const char* construction;
};

// Table order; index is 1-based in configs that reference connectors by
// position.
const KindInfo kKinds[kConnectorCount] = {
    {Connector::Star, "star", 1, "hub joined to size leaves; branch braces consecutive leaves"},
    {Connector::Path, "path", 1, "size nodes joined in sequence; branch twig nodes attached round-robin"},
    {Connector::Fan, "fan", 2, "hub with size webbed branches plus a branch-node chain on the last leaf"},
    {Connector::CuspedPolygon, "cusped_polygon", 3, "size-gon with branch cusp spikes placed round-robin"},
    {Connector::RandomBipartite, "random_bipartite", 1, "size left nodes randomly wired to min(branch+1,size) right nodes"},
    {Connector::Tree, "tree", 1, "size-node heap-shaped tree with arity branch+1"},
    {Connector::Trident, "trident", 1, "size chained tridents of 2 prongs each; branch handle nodes on the first"},
    {Connector::ConicalConnection, "conical_connection", 2, "size-node backbone closed through an apex carrying branch pendants"},
    {Connector::ChainBypass, "chain_bypass", 2, "size-node chain with branch bypass nodes parallel to chain edges"},
    {Connector::PartialPolygon, "partial_polygon", 3, "size-gon minus one edge with a branch-node extension"},
    {Connector::CompleteGraph, "complete_graph", 1, "all size nodes pairwise joined"},
    {Connector::Grid, "grid", 1, "(branch+1) x size grid with 4-neighbor links"},
    {Connector::Cycle, "cycle", 3, "size nodes in a ring"},
    {Connector::DualRing, "dual_ring", 3, "two size-rings joined by one edge"},
    {Connector::Triangle, "triangle", 1, "size triangles chained by single edges"},
};

const KindInfo& info(Connector c) { return kKinds[static_cast<int>(c)]; }

void check_params(const ConnectorKind& k) {
  if (k.size < connector_min_size(k.kind))
    throw ConfigError("connector " + connector_name(k.kind) + ": size " + std::to_string(k.size) +
                      " below minimum " + std::to_string(connector_min_size(k.kind)));
  if (k.branch < 0) throw ConfigError("connector: negative branch");
}

}  // namespace

std::string connector_name(Connector c) { return info(c).name; }

Connector connector_from_name(const std::string& name) {
  for (const KindInfo& ki : kKinds)
    if (name == ki.name) return ki.kind;
  throw ConfigError("unknown connector kind: " + name);
}

Connector connector_by_index(int index) {
  if (index < 1 || index > kConnectorCount)
    throw ConfigError("connector index out of range: " + std::to_string(index));
  return kKinds[index - 1].kind;
}

int connector_min_size(Connector c) { return info(c).min_size; }

int connector_node_count(const ConnectorKind& k) {
  check_params(k);
  int s = k.size, b = k.branch;
  switch (k.kind) {
    case Connector::Star: return s + 1;
    case Connector::Path: return s + b;
    case Connector::Fan: return 1 + s + b;
    case Connector::CuspedPolygon: return s + b;
    case Connector::RandomBipartite: return s + std::min(b + 1, s);
    case Connector::Tree: return s;
    case Connector::Trident: return 3 * s + b;
    case Connector::ConicalConnection: return s + 1 + b;
    case Connector::ChainBypass: return s + b;
    case Connector::PartialPolygon: return s + b;
    case Connector::CompleteGraph: return s;
    case Connector::Grid: return s * (b + 1);
    case Connector::Cycle: return s;
    case Connector::DualRing: return 2 * s;
    case Connector::Triangle: return 3 * s;
  }
  throw ConfigError("connector: bad kind");
}

int connector_edge_count(const ConnectorKind& k) {
  check_params(k);
  int s = k.size, b = k.branch;
  switch (k.kind) {
    case Connector::Star: return s + std::min(b, s - 1);
    case Connector::Path: return s - 1 + b;
    case Connector::Fan: return s + (s - 1) + b;
    case Connector::CuspedPolygon: return s + b;
    case Connector::RandomBipartite: return s * std::min(2, std::min(b + 1, s));
    case Connector::Tree: return s - 1;
    case Connector::Trident: return 3 * s - 1 + b;
    case Connector::ConicalConnection: return s + 1 + b;
    case Connector::ChainBypass: return s - 1 + 2 * b;
    case Connector::PartialPolygon: return s - 1 + b;
    case Connector::CompleteGraph: return s * (s - 1) / 2;
    case Connector::Grid: return (b + 1) * (s - 1) + s * b;
    case Connector::Cycle: return s;
    case Connector::DualRing: return 2 * s + 1;
    case Connector::Triangle: return 3 * s + (s - 1);
  }
  throw ConfigError("connector: bad kind");
}

AttributedGraph build_connector(const ConnectorKind& k, std::uint64_t seed, const std::string& tag) {
  check_params(k);
  int s = k.size, b = k.branch;
  AttributedGraph g;
  g.num_nodes = connector_node_count(k);
  if (!tag.empty()) g.node_tags.assign(g.num_nodes, tag);
  Rng rng(seed);

  switch (k.kind) {
    case Connector::Star: {
      for (int i = 1; i <= s; ++i) g.add_edge(0, i);
      for (int i = 0; i < std::min(b, s - 1); ++i) g.add_edge(1 + i, 2 + i);
      break;
    }
    case Connector::Path: {
      for (int i = 0; i + 1 < s; ++i) g.add_edge(i, i + 1);
      for (int j = 0; j < b; ++j) g.add_edge(j % s, s + j);
      break;
    }
    case Connector::Fan: {
      for (int i = 1; i <= s; ++i) g.add_edge(0, i);
      for (int i = 1; i < s; ++i) g.add_edge(i, i + 1);
      int prev = s;
      for (int j = 0; j < b; ++j) {
        g.add_edge(prev, s + 1 + j);
        prev = s + 1 + j;
      }
      break;
    }
    case Connector::CuspedPolygon: {
      for (int i = 0; i < s; ++i) g.add_edge(i, (i + 1) % s);
      for (int j = 0; j < b; ++j) g.add_edge(j % s, s + j);
      break;
    }
    case Connector::RandomBipartite: {
      int r = std::min(b + 1, s);
      // Random permutation fixes the wiring pattern; counts stay closed-form
      // and the graph stays connected.
      std::vector<int> perm(r);
      for (int i = 0; i < r; ++i) perm[i] = i;
      rng.shuffle(perm);
      for (int i = 0; i < s; ++i) {
        g.add_edge(i, s + perm[i % r]);
        if (r >= 2) g.add_edge(i, s + perm[(i + 1) % r]);
      }
      break;
    }
    case Connector::Tree: {
      for (int i = 1; i < s; ++i) g.add_edge((i - 1) / (b + 1), i);
      break;
    }
    case Connector::Trident: {
      // centers at 3t, prongs at 3t+1, 3t+2
      for (int t = 0; t < s; ++t) {
        g.add_edge(3 * t, 3 * t + 1);
        g.add_edge(3 * t, 3 * t + 2);
        if (t + 1 < s) g.add_edge(3 * t, 3 * (t + 1));
      }
      for (int j = 0; j < b; ++j) g.add_edge(0, 3 * s + j);
      break;
    }
    case Connector::ConicalConnection: {
      for (int i = 0; i + 1 < s; ++i) g.add_edge(i, i + 1);
      g.add_edge(0, s);
      g.add_edge(s - 1, s);
      for (int j = 0; j < b; ++j) g.add_edge(s, s + 1 + j);
      break;
    }
    case Connector::ChainBypass: {
      for (int i = 0; i + 1 < s; ++i) g.add_edge(i, i + 1);
      for (int j = 0; j < b; ++j) {
        int seg = j % (s - 1);
        g.add_edge(seg, s + j);
        g.add_edge(seg + 1, s + j);
      }
      break;
    }
    case Connector::PartialPolygon: {
      for (int i = 0; i + 1 < s; ++i) g.add_edge(i, i + 1);  // polygon minus closing edge
      int prev = s - 1;
      for (int j = 0; j < b; ++j) {
        g.add_edge(prev, s + j);
        prev = s + j;
      }
      break;
    }
    case Connector::CompleteGraph: {
      for (int u = 0; u < s; ++u)
        for (int v = u + 1; v < s; ++v) g.add_edge(u, v);
      break;
    }
    case Connector::Grid: {
      int rows = b + 1;
      auto at = [&](int r2, int c) { return r2 * s + c; };
      for (int r2 = 0; r2 < rows; ++r2)
        for (int c = 0; c < s; ++c) {
          if (c + 1 < s) g.add_edge(at(r2, c), at(r2, c + 1));
          if (r2 + 1 < rows) g.add_edge(at(r2, c), at(r2 + 1, c));
        }
      break;
    }
    case Connector::Cycle: {
      for (int i = 0; i < s; ++i) g.add_edge(i, (i + 1) % s);
      break;
    }
    case Connector::DualRing: {
      for (int i = 0; i < s; ++i) g.add_edge(i, (i + 1) % s);
      for (int i = 0; i < s; ++i) g.add_edge(s + i, s + (i + 1) % s);
      g.add_edge(0, s);
      break;
    }
    case Connector::Triangle: {
      for (int t = 0; t < s; ++t) {
        g.add_edge(3 * t, 3 * t + 1);
        g.add_edge(3 * t + 1, 3 * t + 2);
        g.add_edge(3 * t, 3 * t + 2);
        if (t + 1 < s) g.add_edge(3 * t + 2, 3 * (t + 1));
      }
      break;
    }
  }
  return g;
}

std::string connector_id(const ConnectorKind& k) {
  return connector_name(k.kind) + ":" + std::to_string(k.size) + "x" + std::to_string(k.branch);
}

std::string connector_registry_json() {
  std::string o = "[\n";
  for (int i = 0; i < kConnectorCount; ++i) {
    const KindInfo& ki = kKinds[i];
    o += "  {\"index\": " + std::to_string(i + 1) + ", \"id\": \"" + ki.name +
         "\", \"min_size\": " + std::to_string(ki.min_size) + ", \"construction\": \"" +
         ki.construction + "\"}";
    o += (i + 1 < kConnectorCount) ? ",\n" : "\n";
  }
  o += "]\n";
  return o;
}

}  // namespace rwg
