#include "rwg/scm.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <tuple>

#include "rwg/errors.hpp"

namespace rwg {

void validate_scm(const MicroScm& scm) {
  int n = static_cast<int>(scm.vertices.size());
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : scm.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw ConfigError("scm: edge endpoint out of range");
    if (u == v) throw ConfigError("scm: self-loop");
    if (!seen.insert({u, v}).second) throw ConfigError("scm: duplicate edge");
    if (scm.vertices[v].role == ScmRole::Exogenous)
      throw ConfigError("scm: exogenous vertex " + scm.vertices[v].id + " has a parent");
    if (scm.vertices[u].role == ScmRole::Label)
      throw ConfigError("scm: label vertex " + scm.vertices[u].id + " has outgoing edges");
    out[u].push_back(v);
    indeg[v]++;
  }
  // Kahn's algorithm
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t done = 0;
  while (done < queue.size()) {
    int u = queue[done++];
    for (int v : out[u])
      if (--indeg[v] == 0) queue.push_back(v);
  }
  if (static_cast<int>(done) != n) throw ConfigError("scm: graph contains a cycle");

  for (int v = 0; v < n; ++v) {
    if (scm.vertices[v].role != ScmRole::GraphVar || scm.vertices[v].no_exogenous) continue;
    bool has_u = false;
    for (auto [p, c] : scm.edges)
      if (c == v && scm.vertices[p].role == ScmRole::Exogenous) has_u = true;
    if (!has_u)
      throw ConfigError("scm: graph variable " + scm.vertices[v].id +
                        " lacks an exogenous parent and the no-exogenous flag");
  }
}

std::vector<std::pair<int, XRole>> x_roles(const MicroScm& scm) {
  int n = static_cast<int>(scm.vertices.size());
  std::vector<std::vector<int>> out(n);
  for (auto [u, v] : scm.edges) out[u].push_back(v);

  // reaches_label via reverse reachability from labels
  std::vector<char> reaches(n, 0);
  std::vector<std::vector<int>> in(n);
  for (auto [u, v] : scm.edges) in[v].push_back(u);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (scm.vertices[v].role == ScmRole::Label) stack.push_back(v);
  std::vector<char> visited(n, 0);
  for (int s : stack) visited[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : in[v])
      if (!visited[p]) {
        visited[p] = 1;
        reaches[p] = 1;
        stack.push_back(p);
      }
  }
  std::vector<char> parent_of_label(n, 0);
  for (auto [u, v] : scm.edges)
    if (scm.vertices[v].role == ScmRole::Label) parent_of_label[u] = 1;

  std::vector<std::pair<int, XRole>> roles;
  for (int v = 0; v < n; ++v) {
    if (scm.vertices[v].role != ScmRole::GraphVar) continue;
    XRole r = parent_of_label[v] ? XRole::Causal
              : reaches[v]       ? XRole::Associated
                                 : XRole::Confounder;
    roles.push_back({v, r});
  }
  return roles;
}

void validate_partition(const MicroScm& scm, const PartitionSpec& part) {
  std::set<int> x_vertices;
  for (int v = 0; v < static_cast<int>(scm.vertices.size()); ++v)
    if (scm.vertices[v].role == ScmRole::GraphVar) x_vertices.insert(v);
  std::set<int> covered;
  for (const auto& block : part.blocks)
    for (int v : block) {
      if (!x_vertices.count(v))
        throw ConfigError("partition: vertex " + std::to_string(v) + " is not an X vertex");
      if (!covered.insert(v).second)
        throw ConfigError("partition: vertex " + std::to_string(v) + " appears in two blocks");
    }
  if (covered != x_vertices) throw ConfigError("partition: blocks do not cover X exactly");
  if (!part.block_ids.empty() && part.block_ids.size() != part.blocks.size())
    throw ConfigError("partition: block_ids size mismatch");
}

namespace {

std::string block_label(const PartitionSpec& part, std::size_t b) {
  return b < part.block_ids.size() ? part.block_ids[b] : "block" + std::to_string(b);
}

// Bitmask fast path; exhaustive desk-scale sweeps call this millions of
// times, so it stays allocation-light.
MergeCheckResult check_merge_masked(const MicroScm& scm, const PartitionSpec& part) {
  int n = static_cast<int>(scm.vertices.size());
  std::uint64_t x_mask = 0, causal = 0;
  for (int v = 0; v < n; ++v)
    if (scm.vertices[v].role == ScmRole::GraphVar) x_mask |= 1ULL << v;
  std::vector<std::uint64_t> pa(n, 0), ch(n, 0);
  for (auto [u, v] : scm.edges) {
    pa[v] |= 1ULL << u;
    ch[u] |= 1ULL << v;
    if (scm.vertices[v].role == ScmRole::Label && (x_mask >> u & 1)) causal |= 1ULL << u;
  }

  std::uint64_t covered = 0;
  MergeCheckResult res;
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    std::uint64_t bmask = 0;
    for (int v : part.blocks[b]) {
      if (v < 0 || v >= n || !(x_mask >> v & 1))
        throw ConfigError("partition: vertex " + std::to_string(v) + " is not an X vertex");
      if (covered >> v & 1)
        throw ConfigError("partition: vertex " + std::to_string(v) + " appears in two blocks");
      covered |= 1ULL << v;
      bmask |= 1ULL << v;
    }
    if ((bmask & causal) && (bmask & x_mask & ~causal)) {
      int offender = std::countr_zero(bmask & x_mask & ~causal);
      res.violations.push_back({2, block_label(part, b), offender});
    }
    if (!(bmask & causal)) continue;
    std::uint64_t outside = x_mask & ~bmask;
    while (outside) {
      int v = std::countr_zero(outside);
      outside &= outside - 1;
      if ((pa[v] & bmask) && (ch[v] & bmask))
        res.violations.push_back({1, block_label(part, b), v});
    }
  }
  if (covered != x_mask) throw ConfigError("partition: blocks do not cover X exactly");
  if (!part.block_ids.empty() && part.block_ids.size() != part.blocks.size())
    throw ConfigError("partition: block_ids size mismatch");
  return res;
}

MergeCheckResult check_merge_general(const MicroScm& scm, const PartitionSpec& part) {
  validate_partition(scm, part);
  int n = static_cast<int>(scm.vertices.size());
  std::vector<char> causal(n, 0), is_x(n, 0);
  for (auto [v, role] : x_roles(scm)) {
    is_x[v] = 1;
    if (role == XRole::Causal) causal[v] = 1;
  }
  std::vector<std::set<int>> parents(n), children(n);
  for (auto [u, v] : scm.edges) {
    parents[v].insert(u);
    children[u].insert(v);
  }

  MergeCheckResult res;
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    const std::vector<int>& block = part.blocks[b];
    std::set<int> members(block.begin(), block.end());

    bool has_causal = false, has_other = false;
    int offender = -1;
    for (int v : block) {
      if (causal[v])
        has_causal = true;
      else {
        has_other = true;
        if (offender < 0) offender = v;
      }
    }
    if (has_causal && has_other) res.violations.push_back({2, block_label(part, b), offender});

    if (!has_causal) continue;
    for (int v = 0; v < n; ++v) {
      if (!is_x[v] || members.count(v)) continue;
      bool parent_in = false, child_in = false;
      for (int p : parents[v])
        if (members.count(p)) parent_in = true;
      for (int c : children[v])
        if (members.count(c)) child_in = true;
      if (parent_in && child_in) res.violations.push_back({1, block_label(part, b), v});
    }
  }
  return res;
}

}  // namespace

MergeCheckResult check_merge_validity(const MicroScm& scm, const PartitionSpec& part) {
  // The SCM's acyclicity is the caller's precondition (validate_scm); the
  // partition is always checked here.
  MergeCheckResult res = scm.vertices.size() <= 64 ? check_merge_masked(scm, part)
                                                   : check_merge_general(scm, part);
  std::sort(res.violations.begin(), res.violations.end(),
            [](const MergeViolation& a, const MergeViolation& b) {
              return std::tie(a.condition, a.block_id, a.vertex) <
                     std::tie(b.condition, b.block_id, b.vertex);
            });
  res.valid = res.violations.empty();
  return res;
}

PartitionSpec singleton_partition(const MicroScm& scm) {
  PartitionSpec part;
  for (int v = 0; v < static_cast<int>(scm.vertices.size()); ++v)
    if (scm.vertices[v].role == ScmRole::GraphVar) {
      part.block_ids.push_back(scm.vertices[v].id);
      part.blocks.push_back({v});
    }
  return part;
}

}  // namespace rwg
