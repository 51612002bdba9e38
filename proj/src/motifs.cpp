#include "rwg/motifs.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "rwg/seed.hpp"

namespace rwg {

namespace {

AttributedGraph make_graph(std::vector<std::string> tags, std::vector<Edge> edges) {
  AttributedGraph g;
  g.num_nodes = static_cast<int>(tags.size());
  g.node_tags = std::move(tags);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

std::vector<std::string> tags(std::initializer_list<std::pair<const char*, int>> groups) {
  std::vector<std::string> out;
  for (auto& [t, n] : groups)
    for (int i = 0; i < n; ++i) out.emplace_back(t);
  return out;
}

// Ring of size k over nodes [first, first+k).
void add_ring(std::vector<Edge>& e, int first, int k) {
  for (int i = 0; i < k; ++i) e.push_back({first + i, first + (i + 1) % k});
}

// Truncated icosahedron: each icosahedron vertex becomes a pentagon, each
// icosahedron edge one inter-pentagon edge. 60 nodes, 90 edges, 3-regular.
AttributedGraph make_fullerene() {
  // Cyclic neighbor order around each icosahedron vertex (consecutive
  // entries are adjacent, i.e. they bound a triangular face).
  static const std::array<std::array<int, 5>, 12> order = {{
      {1, 2, 3, 4, 5},     // 0
      {0, 2, 7, 6, 5},     // 1
      {0, 3, 8, 7, 1},     // 2
      {0, 4, 9, 8, 2},     // 3
      {0, 5, 10, 9, 3},    // 4
      {0, 1, 6, 10, 4},    // 5
      {11, 10, 5, 1, 7},   // 6
      {11, 6, 1, 2, 8},    // 7
      {11, 7, 2, 3, 9},    // 8
      {11, 8, 3, 4, 10},   // 9
      {11, 9, 4, 5, 6},    // 10
      {6, 7, 8, 9, 10},    // 11
  }};
  auto corner = [&](int v, int u) {  // pentagon-vertex id for incidence (v, u)
    for (int i = 0; i < 5; ++i)
      if (order[v][i] == u) return 5 * v + i;
    return -1;
  };
  std::vector<Edge> edges;
  for (int v = 0; v < 12; ++v) {
    for (int i = 0; i < 5; ++i) {
      edges.push_back({5 * v + i, 5 * v + (i + 1) % 5});  // pentagon edge
      int u = order[v][i];
      if (u > v) edges.push_back({corner(v, u), corner(u, v)});  // truncated edge
    }
  }
  return make_graph(tags({{"C", 60}}), edges);
}

AttributedGraph make_anthracene() {
  // Three linearly fused hexagons (14 carbons, fusion atoms 3,4 and 7,8)
  // plus one hydrogen on each non-fusion carbon.
  std::vector<Edge> e;
  add_ring(e, 0, 6);
  e.insert(e.end(), {{3, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 4}});
  e.insert(e.end(), {{7, 10}, {10, 11}, {11, 12}, {12, 13}, {13, 8}});
  int h = 14;
  for (int c : {0, 1, 2, 5, 6, 9, 10, 11, 12, 13}) e.push_back({c, h++});
  return make_graph(tags({{"C", 14}, {"H", 10}}), e);
}

AttributedGraph make_glucose() {
  // Pyranose-style ring (5 C + ring O), exocyclic C6, five hydroxyls,
  // seven carbon-bound hydrogens. 24 atoms, 24 bonds.
  std::vector<Edge> e;
  // ring: C0..C4 and O5
  e.insert(e.end(), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  e.push_back({4, 6});  // C4-C6 exocyclic carbon
  // hydroxyl oxygens 7..11 on C0..C3 and C6, each with a hydrogen 12..16
  for (int i = 0; i < 5; ++i) {
    int carbon = (i < 4) ? i : 6;
    e.push_back({carbon, 7 + i});
    e.push_back({7 + i, 12 + i});
  }
  // hydrogens 17..23 on carbons
  int h = 17;
  for (int c : {0, 1, 2, 3, 4, 6, 6}) e.push_back({c, h++});
  return make_graph(tags({{"C", 5}, {"O", 1}, {"C", 1}, {"O", 5}, {"H", 12}}), e);
}

AttributedGraph make_vitamin_c() {
  // Lactone-like 5-ring (C0..C3 + O4), chain C5, C6, carbonyl O7,
  // hydroxyls O8..O11 with hydrogens, and four carbon hydrogens.
  std::vector<Edge> e;
  e.insert(e.end(), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  e.insert(e.end(), {{3, 5}, {5, 6}});
  e.push_back({0, 7});                          // C0=O carbonyl
  e.insert(e.end(), {{1, 8}, {2, 9}, {5, 10}, {6, 11}});  // C-OH
  for (int i = 0; i < 4; ++i) e.push_back({8 + i, 12 + i});  // O-H
  e.insert(e.end(), {{3, 16}, {5, 17}, {6, 18}, {6, 19}});   // C-H
  return make_graph(tags({{"C", 4}, {"O", 1}, {"C", 2}, {"O", 5}, {"H", 8}}), e);
}

AttributedGraph make_porphyrin() {
  // Heavy-atom tree: four meso carbons in a chain, each carrying a
  // five-atom pyrrole-like branch (N + 4 C). 24 nodes, 23 edges.
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  std::vector<std::string> t = tags({{"C", 4}});
  int next = 4;
  for (int m = 0; m < 4; ++m) {
    int n = next++;
    t.emplace_back("N");
    e.push_back({m, n});
    int prev = n;
    for (int k = 0; k < 4; ++k) {
      t.emplace_back("C");
      e.push_back({prev, next});
      prev = next++;
    }
  }
  return make_graph(t, e);
}

struct MotifDef {
  const char* id;
  const char* name;
  int declared_nodes;
  int declared_edges;
  AttributedGraph (*build)();
};

const std::vector<MotifTemplate>& build_registry() {
  static const std::vector<MotifTemplate> registry = [] {
    std::vector<MotifTemplate> out;
    auto add = [&](const char* id, const char* name, int dn, int de, AttributedGraph g) {
      validate_graph(g);
      out.push_back({id, name, dn, de, std::move(g)});
    };

    add("acetic_acid", "Acetic Acid", 3, 2,
        make_graph(tags({{"C", 2}, {"O", 1}}), {{0, 1}, {1, 2}}));
    add("adrenaline", "Adrenaline", 5, 6,
        make_graph(tags({{"C", 4}, {"N", 1}}), {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {3, 4}}));
    add("ammonia", "Ammonia", 2, 3, make_graph(tags({{"N", 1}, {"H", 1}}), {{0, 1}}));
    add("anthracene", "Anthracene", 24, 12, make_anthracene());
    {
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      add("benzene_ring", "Benzene Ring", 6, 6, make_graph(tags({{"C", 6}}), e));
    }
    add("benzoic_acid", "Benzoic Acid", 9, 8,
        make_graph(tags({{"C", 7}, {"O", 2}}),
                   {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {6, 8}}));
    add("ethane", "Ethane", 2, 1, make_graph(tags({{"C", 2}}), {{0, 1}}));
    add("ethanol", "Ethanol", 3, 2, make_graph(tags({{"C", 2}, {"O", 1}}), {{0, 1}, {1, 2}}));
    add("fullerenes", "Fullerenes", 60, 90, make_fullerene());
    add("glucose", "Glucose", 24, 12, make_glucose());
    {
      // benzene ring, six methyl carbons, nine hydrogens spread over them
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      for (int i = 0; i < 6; ++i) e.push_back({i, 6 + i});
      for (int i = 0; i < 9; ++i) e.push_back({6 + i % 6, 12 + i});
      add("hexamethylbenzene", "Hexamethylbenzene", 21, 15,
          make_graph(tags({{"C", 12}, {"H", 9}}), e));
    }
    add("hydrated_sulfuric_acid", "Hydrated Sulfuric Acid", 4, 5,
        make_graph(tags({{"S", 1}, {"O", 3}}), {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}));
    {
      std::vector<Edge> e;
      add_ring(e, 0, 5);
      for (int i = 0; i < 4; ++i) e.push_back({i + 1, 5 + i});
      add("imidazole", "Imidazole", 9, 6,
          make_graph(tags({{"N", 1}, {"C", 1}, {"N", 1}, {"C", 2}, {"H", 4}}), e));
    }
    {
      // fused 6-ring + 5-ring (8 C + N) with six hydrogens
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      e.insert(e.end(), {{5, 6}, {6, 7}, {7, 8}, {8, 4}});
      for (int i = 0; i < 6; ++i) e.push_back({i < 4 ? i : i + 2, 9 + i});
      add("indole", "Indole", 15, 9,
          make_graph(tags({{"C", 8}, {"N", 1}, {"H", 6}}), e));
    }
    add("methane", "Methane", 1, 1, make_graph(tags({{"C", 1}}), {}));
    {
      // ring + amine N + ester group + methyl, seven hydrogens
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      e.insert(e.end(), {{1, 6}, {0, 7}, {7, 8}, {7, 9}, {9, 10}});
      int h = 11;
      for (int x : {2, 3, 4, 5, 6, 6, 10}) e.push_back({x, h++});
      add("methyl_anthranilate", "Methyl Anthranilate", 18, 12,
          make_graph(tags({{"C", 6}, {"N", 1}, {"C", 1}, {"O", 2}, {"C", 1}, {"H", 7}}), e));
    }
    {
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      e.insert(e.end(), {{0, 6}, {6, 7}, {6, 8}});
      add("nitrobenzene", "Nitrobenzene", 9, 9,
          make_graph(tags({{"C", 6}, {"N", 1}, {"O", 2}}), e));
    }
    {
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      e.insert(e.end(), {{0, 6}, {6, 7}, {6, 8}, {3, 9}});
      add("nitrophenol", "Nitrophenol", 10, 10,
          make_graph(tags({{"C", 6}, {"N", 1}, {"O", 3}}), e));
    }
    add("porphyrin", "Porphyrin", 24, 23, make_porphyrin());
    add("pyridine", "Pyridine", 6, 5,
        make_graph(tags({{"C", 5}, {"N", 1}}), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}));
    {
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      e.insert(e.end(), {{2, 6}, {4, 7}});
      add("pyrimidine", "Pyrimidine", 8, 5,
          make_graph(tags({{"N", 1}, {"C", 1}, {"N", 1}, {"C", 3}, {"H", 2}}), e));
    }
    add("pyrrole", "Pyrrole", 6, 5,
        make_graph(tags({{"C", 4}, {"N", 1}, {"H", 1}}), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}));
    {
      std::vector<Edge> e;
      add_ring(e, 0, 6);
      e.insert(e.end(), {{5, 6}, {6, 7}, {7, 8}, {0, 9}, {1, 10}});
      add("simplified_dopamine", "Simplified Dopamine", 11, 11,
          make_graph(tags({{"C", 8}, {"N", 1}, {"O", 2}}), e));
    }
    {
      std::vector<Edge> e;
      add_ring(e, 0, 5);
      e.insert(e.end(), {{3, 5}, {4, 6}});
      add("thiazole", "Thiazole", 7, 5,
          make_graph(tags({{"S", 1}, {"C", 1}, {"N", 1}, {"C", 2}, {"H", 2}}), e));
    }
    {
      // C-C-S-C-C chain with seven hydrogens
      std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
      int h = 5;
      for (int x : {0, 0, 1, 3, 4, 4, 4}) e.push_back({x, h++});
      add("thioether", "Thioether", 12, 7,
          make_graph(tags({{"C", 2}, {"S", 1}, {"C", 2}, {"H", 7}}), e));
    }
    add("vitamin_c", "Vitamin C", 20, 10, make_vitamin_c());

    std::sort(out.begin(), out.end(),
              [](const MotifTemplate& a, const MotifTemplate& b) { return a.motif_id < b.motif_id; });
    return out;
  }();
  return registry;
}

}  // namespace

const std::vector<MotifTemplate>& motif_registry() { return build_registry(); }

const MotifTemplate& motif_by_id(const std::string& motif_id) {
  for (const MotifTemplate& m : motif_registry())
    if (m.motif_id == motif_id) return m;
  throw ConfigError("unknown motif id: " + motif_id);
}

const std::vector<std::string>& motif_edge_count_discrepancies() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> out;
    for (const MotifTemplate& m : motif_registry())
      if (static_cast<int>(m.graph.edges.size()) != m.declared_edge_count) out.push_back(m.motif_id);
    return out;
  }();
  return list;
}

std::string motif_registry_json() {
  std::string o = "[\n";
  const auto& reg = motif_registry();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const MotifTemplate& m = reg[i];
    o += "  {\"id\": \"" + m.motif_id + "\", \"name\": \"" + m.name +
         "\", \"declared_nodes\": " + std::to_string(m.declared_node_count) +
         ", \"declared_edges\": " + std::to_string(m.declared_edge_count) +
         ", \"nodes\": " + std::to_string(m.graph.num_nodes) +
         ", \"edges\": " + std::to_string(m.graph.edges.size()) + "}";
    o += (i + 1 < reg.size()) ? ",\n" : "\n";
  }
  o += "]\n";
  return o;
}

int atom_index(const std::string& tag) {
  static const std::array<const char*, kAtomVocabSize> vocab = {"C", "H", "O", "N", "S"};
  for (int i = 0; i < kAtomVocabSize; ++i)
    if (tag == vocab[i]) return i;
  throw ConfigError("unknown atom tag: " + tag);
}

AttributedGraph instantiate_motif(const std::string& motif_id, std::uint64_t variation_seed,
                                  double variation_rate) {
  const MotifTemplate& m = motif_by_id(motif_id);
  AttributedGraph g = m.graph;
  Rng rng(variation_seed);
  if (variation_rate <= 0 || !rng.bernoulli(variation_rate)) return g;

  std::vector<std::pair<int, int>> addable;
  for (int u = 0; u < g.num_nodes; ++u)
    for (int v = u + 1; v < g.num_nodes; ++v)
      if (!g.has_edge(u, v)) addable.push_back({u, v});
  std::vector<int> removable = removable_edge_indices(g);

  bool do_add;
  if (addable.empty() && removable.empty()) return g;  // single node, nothing to vary
  if (addable.empty())
    do_add = false;
  else if (removable.empty())
    do_add = true;
  else
    do_add = rng.bernoulli(0.5);

  if (do_add) {
    auto [u, v] = addable[rng.uniform_int(static_cast<int>(addable.size()))];
    g.add_edge(u, v);
  } else {
    int idx = removable[rng.uniform_int(static_cast<int>(removable.size()))];
    g.edges.erase(g.edges.begin() + idx);
  }
  return g;
}

}  // namespace rwg
