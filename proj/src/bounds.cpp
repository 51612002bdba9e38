#include "rwg/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "rwg/errors.hpp"

namespace rwg {

void validate_pdg(const PartiallyDirectedGraph& g) {
  std::set<std::pair<int, int>> seen;
  auto check = [&](int u, int v) {
    if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices)
      throw ConfigError("pdg: endpoint out of range");
    if (u == v) throw ConfigError("pdg: self-loop");
    int a = std::min(u, v), b = std::max(u, v);
    if (!seen.insert({a, b}).second) throw ConfigError("pdg: pair appears twice");
  };
  for (auto [u, v] : g.directed_edges) check(u, v);
  for (auto [u, v] : g.undirected_edges) check(u, v);

  // Kahn's algorithm on the directed part.
  std::vector<int> indeg(g.num_vertices, 0);
  std::vector<std::vector<int>> out(g.num_vertices);
  for (auto [u, v] : g.directed_edges) {
    out[u].push_back(v);
    indeg[v]++;
  }
  std::vector<int> queue;
  for (int v = 0; v < g.num_vertices; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t done = 0;
  while (done < queue.size()) {
    int u = queue[done++];
    for (int v : out[u])
      if (--indeg[v] == 0) queue.push_back(v);
  }
  if (static_cast<int>(done) != g.num_vertices)
    throw ConfigError("pdg: directed part contains a cycle");
}

std::vector<UndirectedComponent> chain_components(const PartiallyDirectedGraph& g) {
  validate_pdg(g);
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (auto [u, v] : g.undirected_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(g.num_vertices, -1);
  int ncomp = 0;
  for (int s = 0; s < g.num_vertices; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  std::vector<UndirectedComponent> out(ncomp);
  std::vector<int> local(g.num_vertices, -1);
  for (int v = 0; v < g.num_vertices; ++v) {
    local[v] = static_cast<int>(out[comp[v]].vertices.size());
    out[comp[v]].vertices.push_back(v);
  }
  for (auto [u, v] : g.undirected_edges) out[comp[u]].edges.push_back({local[u], local[v]});
  return out;
}

namespace {

// Bron-Kerbosch with a greedy pivot over bitmasks (components here are
// small; the 64-vertex mask limit is enforced by chunking callers).
void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   const std::vector<std::uint64_t>& adj, int& count) {
  if (p == 0 && x == 0) {
    ++count;
    return;
  }
  std::uint64_t px = p | x;
  int pivot = -1;
  int best = -1;
  for (std::uint64_t m = px; m;) {
    int v = std::countr_zero(m);
    m &= m - 1;
    int deg = std::popcount(p & adj[v]);
    if (deg > best) {
      best = deg;
      pivot = v;
    }
  }
  std::uint64_t candidates = p & ~adj[pivot];
  while (candidates) {
    int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    std::uint64_t bit = 1ULL << v;
    bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, count);
    p &= ~bit;
    x |= bit;
  }
}

int clique_count_mask(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::uint64_t> adj(n, 0);
  for (auto [u, v] : edges) {
    adj[u] |= 1ULL << v;
    adj[v] |= 1ULL << u;
  }
  int count = 0;
  std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  bron_kerbosch(0, all, 0, adj, count);
  return count;
}

// General set-based variant for components beyond the mask width.
void bron_kerbosch_sets(std::vector<int>& p, std::vector<int>& x,
                        const std::vector<std::set<int>>& adj, int& count) {
  if (p.empty() && x.empty()) {
    ++count;
    return;
  }
  int pivot = -1, best = -1;
  for (int v : p)
    if (static_cast<int>(adj[v].size()) > best) {
      best = static_cast<int>(adj[v].size());
      pivot = v;
    }
  for (int v : x)
    if (static_cast<int>(adj[v].size()) > best) {
      best = static_cast<int>(adj[v].size());
      pivot = v;
    }
  std::vector<int> candidates;
  for (int v : p)
    if (!adj[pivot].count(v)) candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> np, nx;
    for (int w : p)
      if (adj[v].count(w)) np.push_back(w);
    for (int w : x)
      if (adj[v].count(w)) nx.push_back(w);
    bron_kerbosch_sets(np, nx, adj, count);
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

int maximal_clique_count(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  if (num_vertices == 0) return 0;
  if (num_vertices <= 64) return clique_count_mask(num_vertices, edges);
  std::vector<std::set<int>> adj(num_vertices);
  for (auto [u, v] : edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<int> p(num_vertices), x;
  for (int v = 0; v < num_vertices; ++v) p[v] = v;
  int count = 0;
  bron_kerbosch_sets(p, x, adj, count);
  return count;
}

int total_chain_component_cliques(const PartiallyDirectedGraph& g) {
  int total = 0;
  for (const UndirectedComponent& c : chain_components(g))
    total += maximal_clique_count(static_cast<int>(c.vertices.size()), c.edges);
  return total;
}

long long atomic_bound(const BoundInput& in, long long r) {
  if (in.lambda <= 0) throw ConfigError("atomic_bound: lambda must be positive");
  if (r < 0) throw ConfigError("atomic_bound: r must be non-negative");
  double numerator = in.union_size / in.lambda + in.label_count - static_cast<double>(r);
  if (in.sigma > 0) numerator -= in.independent_size / in.sigma;
  long long value = static_cast<long long>(std::ceil(numerator / 2.0));
  return std::max(0LL, value);
}

long long atomic_bound_from_graph(const PartiallyDirectedGraph& g, int label_count) {
  validate_pdg(g);
  long long r = total_chain_component_cliques(g);
  BoundInput in;
  in.union_size = static_cast<double>(g.num_vertices - label_count);
  in.lambda = 1.0;
  in.label_count = static_cast<double>(label_count);
  return atomic_bound(in, r);
}

NonatomicBound nonatomic_bound(int n) {
  if (n < 4)
    throw ConfigError("nonatomic_bound: n must be at least 4 (base-2 log-log domain)");
  NonatomicBound best;
  best.value = std::numeric_limits<double>::infinity();
  for (int k = 4; k <= n; ++k) {
    double f = (static_cast<double>(n) / k) * std::log2(std::log2(static_cast<double>(k)));
    if (f < best.value) {
      best.value = f;
      best.argmin_k = k;
    }
  }
  return best;
}

PartiallyDirectedGraph parse_pdg_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open graph file: " + path);
  PartiallyDirectedGraph g;
  std::map<std::string, int> ids;
  auto id_of = [&](const std::string& name) {
    auto [it, fresh] = ids.insert({name, g.num_vertices});
    if (fresh) ++g.num_vertices;
    return it->second;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string a, op, b;
    if (!(ss >> a)) continue;  // blank line
    if (!(ss >> op)) {
      id_of(a);  // isolated vertex declaration
      continue;
    }
    if (!(ss >> b))
      throw ParseError("graph file line " + std::to_string(lineno) + ": missing right operand");
    if (op == "->")
      g.directed_edges.push_back({id_of(a), id_of(b)});
    else if (op == "<-")
      g.directed_edges.push_back({id_of(b), id_of(a)});
    else if (op == "--")
      g.undirected_edges.push_back({id_of(a), id_of(b)});
    else
      throw ParseError("graph file line " + std::to_string(lineno) + ": unknown edge marker " + op);
  }
  validate_pdg(g);
  return g;
}

}  // namespace rwg
