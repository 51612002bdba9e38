#include <doctest.h>

#include <algorithm>
#include <set>

#include "rwg/link_rules.hpp"

using namespace rwg;

namespace {

NodeMetadata meta_for(int n, std::uint64_t seed = 11) { return synthesize_metadata(n, seed); }

bool endpoints_valid(const std::vector<Edge>& edges, int n) {
  for (const Edge& e : edges)
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) return false;
  return true;
}

std::vector<Edge> base_graph(int n, std::uint64_t seed) {
  LinkRuleParams p;
  p.poisson_mean = 2.0;
  return apply_link_rule(LinkRule::RandomPoisson, meta_for(n, seed), p, {}, seed);
}

}  // namespace

TEST_CASE("poisson mean zero yields no citations") {
  LinkRuleParams p;
  p.poisson_mean = 0.0;
  CHECK(apply_link_rule(LinkRule::RandomPoisson, meta_for(10), p, {}, 3).empty());
}

TEST_CASE("network topology: isolated nodes emit no citation") {
  NodeMetadata m = meta_for(6);
  std::vector<Edge> base{{0, 1}, {1, 2}};  // nodes 3..5 isolated
  auto edges = apply_link_rule(LinkRule::NetworkTopology, m, {}, base, 5);
  for (const Edge& e : edges) {
    CHECK(e.u <= 2);  // only nodes with neighbors cite
    bool neighbor = (e.u == 0 && e.v == 1) || (e.u == 1 && (e.v == 0 || e.v == 2)) ||
                    (e.u == 2 && e.v == 1);
    CHECK(neighbor);
  }
}

TEST_CASE("high citation count: everyone cites the argmax") {
  NodeMetadata m;
  m.num_nodes = 3;
  m.citation_count = std::vector<double>{5, 1, 9};
  LinkRuleParams p;
  p.out_degree = 1;
  auto edges = apply_link_rule(LinkRule::HighCitationCount, m, p, {}, 1);
  REQUIRE(edges.size() == 2);  // node 2 cannot cite itself
  for (const Edge& e : edges) CHECK(e.v == 2);
}

TEST_CASE("missing metadata raises a schema error naming the field") {
  NodeMetadata m;
  m.num_nodes = 4;
  try {
    apply_link_rule(LinkRule::TopicSimilarity, m, {}, {}, 1);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("topic_vector") != std::string::npos);
  }
}

TEST_CASE("every rule produces valid directed edges and meets its clause") {
  const int n = 12;
  NodeMetadata m = meta_for(n);
  std::vector<Edge> base = base_graph(n, 21);
  LinkRuleParams p;

  for (int ri = 0; ri < kLinkRuleCount; ++ri) {
    LinkRule rule = static_cast<LinkRule>(ri);
    INFO(link_rule_name(rule));
    auto edges = apply_link_rule(rule, m, p, base, 77);
    CHECK(endpoints_valid(edges, n));
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) CHECK(seen.insert({e.u, e.v}).second);  // no duplicates
    for (const Edge& e : edges)  // never duplicates a base edge either
      CHECK(std::find(base.begin(), base.end(), e) == base.end());
  }
}

TEST_CASE("temporal rule cites strictly older papers") {
  NodeMetadata m = meta_for(10);
  auto edges = apply_link_rule(LinkRule::Temporal, m, {}, {}, 9);
  CHECK(!edges.empty());
  for (const Edge& e : edges) CHECK((*m.year)[e.v] < (*m.year)[e.u]);
}

TEST_CASE("knowledge flow: only pre-median papers cite, frontier receives") {
  NodeMetadata m = meta_for(10);
  std::vector<int> sorted = *m.year;
  std::sort(sorted.begin(), sorted.end());
  int median = sorted[sorted.size() / 2];
  auto edges = apply_link_rule(LinkRule::KnowledgeFlow, m, {}, {}, 9);
  for (const Edge& e : edges) {
    CHECK((*m.year)[e.u] < median);
    CHECK((*m.year)[e.v] >= median);
  }
}

TEST_CASE("triangle structure closes directed triangles") {
  NodeMetadata m = meta_for(6);
  std::vector<Edge> base{{0, 1}, {1, 2}, {3, 4}};
  LinkRuleParams p;
  p.probability = 1.0;
  auto edges = apply_link_rule(LinkRule::TriangleStructure, m, p, base, 4);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == Edge{2, 0});  // closes 0 -> 1 -> 2 -> 0
}

TEST_CASE("academic lineage follows the mentor chain") {
  NodeMetadata m = meta_for(6);
  m.mentor = std::vector<int>{1, 2, -1, -1, -1, -1};
  LinkRuleParams p;
  p.out_degree = 2;
  auto edges = apply_link_rule(LinkRule::AcademicLineage, m, p, {}, 4);
  CHECK(std::find(edges.begin(), edges.end(), Edge{0, 1}) != edges.end());
  CHECK(std::find(edges.begin(), edges.end(), Edge{0, 2}) != edges.end());
  CHECK(std::find(edges.begin(), edges.end(), Edge{1, 2}) != edges.end());
}

TEST_CASE("co-author rule only cites papers sharing an author") {
  NodeMetadata m = meta_for(8);
  auto edges = apply_link_rule(LinkRule::CoAuthor, m, {}, {}, 2);
  for (const Edge& e : edges) {
    bool shared = false;
    for (int a : (*m.author_ids)[e.u])
      for (int b : (*m.author_ids)[e.v])
        if (a == b) shared = true;
    CHECK(shared);
  }
}

TEST_CASE("citation distance cites nodes at distance >= 2 only") {
  NodeMetadata m = meta_for(6);
  std::vector<Edge> base{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  auto edges = apply_link_rule(LinkRule::CitationDistance, m, {}, base, 8);
  for (const Edge& e : edges) {
    bool adjacent = false;
    for (const Edge& b : base)
      if ((b.u == e.u && b.v == e.v) || (b.u == e.v && b.v == e.u)) adjacent = true;
    CHECK(!adjacent);
  }
}

namespace {

// top-k clause checker: no edge may skip a strictly better eligible target
void check_topk(const std::vector<Edge>& edges, const std::vector<double>& score, int k) {
  int n = static_cast<int>(score.size());
  for (const Edge& e : edges) {
    int strictly_better = 0;
    for (int j = 0; j < n; ++j)
      if (j != e.u && score[j] > score[e.v]) ++strictly_better;
    CHECK(strictly_better < k);
  }
}

}  // namespace

TEST_CASE("propagation builds an activation forest rooted at the most influential paper") {
  NodeMetadata m = meta_for(10);
  LinkRuleParams p;
  p.probability = 0.6;
  auto edges = apply_link_rule(LinkRule::Propagation, m, p, {}, 6);
  const auto& infl = *m.influence;
  int root = static_cast<int>(std::max_element(infl.begin(), infl.end()) - infl.begin());
  std::set<int> citers;
  for (const Edge& e : edges) {
    CHECK(e.u != root);                     // the seed paper cites nothing
    CHECK(citers.insert(e.u).second);       // each paper cites its one activator
  }
}

TEST_CASE("topic similarity cites the most similar papers") {
  NodeMetadata m = meta_for(9);
  LinkRuleParams p;
  auto edges = apply_link_rule(LinkRule::TopicSimilarity, m, p, {}, 3);
  const auto& topics = *m.topic_vector;
  for (const Edge& e : edges) {
    auto sim = [&](int a, int b) {
      double dot = 0;
      for (std::size_t t = 0; t < topics[a].size(); ++t) dot += topics[a][t] * topics[b][t];
      return dot;
    };
    int better = 0;
    for (int j = 0; j < m.num_nodes; ++j)
      if (j != e.u && sim(e.u, j) > sim(e.u, e.v)) ++better;
    CHECK(better < p.out_degree);
  }
}

TEST_CASE("score-ranked rules respect their top-k clauses") {
  NodeMetadata m = meta_for(10);
  LinkRuleParams p;
  check_topk(apply_link_rule(LinkRule::AuthorInfluence, m, p, {}, 3), *m.influence, p.out_degree);
  check_topk(apply_link_rule(LinkRule::Credibility, m, p, {}, 3), *m.credibility, p.out_degree);
  check_topk(apply_link_rule(LinkRule::ReferenceCount, m, p, {}, 3), *m.reference_count,
             p.out_degree);
  check_topk(apply_link_rule(LinkRule::VenueReputation, m, p, {}, 3), *m.venue_score, p.out_degree);

  // degree-ranked rules over a fixed base graph
  std::vector<Edge> base = base_graph(10, 5);
  std::vector<double> degree(10, 0);
  for (const Edge& e : base) {
    degree[e.u] += 1;
    degree[e.v] += 1;
  }
  for (LinkRule rule : {LinkRule::CitationDensity, LinkRule::Centrality})
    check_topk(apply_link_rule(rule, m, p, base, 3), degree, p.out_degree);

  // research-object popularity
  std::vector<double> popularity(10, 0);
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 10; ++i)
      if ((*m.research_object)[i] == (*m.research_object)[j]) popularity[j] += 1;
  check_topk(apply_link_rule(LinkRule::ResearchObject, m, p, {}, 3), popularity, p.out_degree);
}

TEST_CASE("chain length cites heads of the longest year-consistent chains") {
  NodeMetadata m = meta_for(8);
  std::vector<Edge> base = base_graph(8, 31);
  const auto& year = *m.year;
  // independent chain computation: longest strictly-older path through base
  std::vector<int> order(8);
  for (int i = 0; i < 8; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return year[a] < year[b]; });
  std::vector<double> chain(8, 0);
  for (int u : order)
    for (const Edge& e : base)
      if (e.u == u && year[e.v] < year[u]) chain[u] = std::max(chain[u], chain[e.v] + 1);
  check_topk(apply_link_rule(LinkRule::ChainLength, m, {}, base, 3), chain, LinkRuleParams{}.out_degree);
}

TEST_CASE("diversity cites papers with the most distinct reference domains") {
  NodeMetadata m = meta_for(8);
  std::vector<Edge> base = base_graph(8, 13);
  std::vector<double> diversity(8, 0);
  for (int j = 0; j < 8; ++j) {
    std::set<int> domains;
    for (const Edge& e : base)
      if (e.u == j) domains.insert((*m.domain)[e.v]);
    diversity[j] = static_cast<double>(domains.size());
  }
  check_topk(apply_link_rule(LinkRule::Diversity, m, {}, base, 3), diversity,
             LinkRuleParams{}.out_degree);
}

TEST_CASE("proximity-style rules only link compatible papers") {
  NodeMetadata m = meta_for(12);
  for (const Edge& e : apply_link_rule(LinkRule::GeographicProximity, m, {}, {}, 3))
    CHECK(std::abs((*m.geography)[e.u] - (*m.geography)[e.v]) <= 1);
  for (const Edge& e : apply_link_rule(LinkRule::TeamSize, m, {}, {}, 3))
    CHECK(std::abs((*m.team_size)[e.u] - (*m.team_size)[e.v]) <= 1);
  for (const Edge& e : apply_link_rule(LinkRule::AuthorExpertise, m, {}, {}, 3))
    CHECK((*m.domain)[e.u] == (*m.domain)[e.v]);
  for (const Edge& e : apply_link_rule(LinkRule::OpenAccess, m, {}, {}, 3))
    CHECK((*m.open_access)[e.v]);
}

TEST_CASE("co-citation frequency only cites papers co-cited with existing references") {
  NodeMetadata m = meta_for(8);
  // base: 0 cites 1 and 2; 3 cites 1 and 4; so 4 is co-cited with 1
  std::vector<Edge> base{{0, 1}, {0, 2}, {3, 1}, {3, 4}};
  auto edges = apply_link_rule(LinkRule::CoCitationFrequency, m, {}, base, 5);
  for (const Edge& e : edges) {
    // the target must share a co-citing paper with one of e.u's references
    bool cocited = false;
    for (const Edge& ref : base) {
      if (ref.u != e.u) continue;
      for (const Edge& other : base)
        for (const Edge& other2 : base)
          if (other.u == other2.u && other.v == ref.v && other2.v == e.v && other.u != e.u)
            cocited = true;
    }
    CHECK(cocited);
  }
}

TEST_CASE("rule names round-trip for all 25") {
  for (int ri = 0; ri < kLinkRuleCount; ++ri) {
    LinkRule rule = static_cast<LinkRule>(ri);
    CHECK(link_rule_from_name(link_rule_name(rule)) == rule);
  }
  CHECK_THROWS_AS(link_rule_from_name("nonsense"), ConfigError);
}
