#include "rwg/link_rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace rwg {

namespace {

struct RuleInfo {
  LinkRule rule;
  const char* name;
  bool needs_base;
  const char* description;
};

const RuleInfo kRules[kLinkRuleCount] = {
    {LinkRule::RandomPoisson, "random_poisson", false, "Poisson out-degree, uniform targets"},
    {LinkRule::HighCitationCount, "high_citation_count", false, "cite the most-cited papers"},
    {LinkRule::CoAuthor, "co_author", false, "cite papers sharing an author"},
    {LinkRule::Propagation, "propagation", false, "independent-cascade activation tree"},
    {LinkRule::TopicSimilarity, "topic_similarity", false, "cite highest cosine topic similarity"},
    {LinkRule::Temporal, "temporal", false, "cite strictly older papers"},
    {LinkRule::AuthorInfluence, "author_influence", false, "cite most influential authors"},
    {LinkRule::CoCitationFrequency, "co_citation_frequency", true, "cite frequently co-cited papers"},
    {LinkRule::CitationDensity, "citation_density", true, "cite high-degree papers"},
    {LinkRule::NetworkTopology, "network_topology", true, "cite an existing neighbor, none if isolated"},
    {LinkRule::AuthorExpertise, "author_expertise", false, "cite same-domain papers"},
    {LinkRule::Centrality, "centrality", true, "cite most central papers"},
    {LinkRule::GeographicProximity, "geographic_proximity", false, "cite geographically close papers"},
    {LinkRule::TeamSize, "team_size", false, "cite similarly sized teams"},
    {LinkRule::Credibility, "credibility", false, "cite most credible papers"},
    {LinkRule::AcademicLineage, "academic_lineage", false, "cite mentors along the lineage"},
    {LinkRule::TriangleStructure, "triangle_structure", true, "close directed triangles"},
    {LinkRule::CitationDistance, "citation_distance", true, "cite nearest non-neighbors"},
    {LinkRule::KnowledgeFlow, "knowledge_flow", false, "older papers cite the research frontier"},
    {LinkRule::ChainLength, "chain_length", true, "cite heads of long citation chains"},
    {LinkRule::Diversity, "diversity", true, "cite papers with diverse reference domains"},
    {LinkRule::ReferenceCount, "reference_count", false, "cite reference-rich papers"},
    {LinkRule::ResearchObject, "research_object", false, "cite papers on popular objects"},
    {LinkRule::VenueReputation, "venue_reputation", false, "cite high-venue papers"},
    {LinkRule::OpenAccess, "open_access", false, "cite open-access papers"},
};

const RuleInfo& info(LinkRule r) { return kRules[static_cast<int>(r)]; }

template <typename T>
const T& need(const std::optional<T>& field, const char* name) {
  if (!field) throw ConfigError(std::string("link rule: missing metadata field ") + name);
  return *field;
}

int poisson_draw(double mean, Rng& rng) {
  if (mean <= 0) return 0;
  double l = std::exp(-mean);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform();
  } while (p > l);
  return k - 1;
}

// Indices of the k largest scores, excluding `self`; ties resolved toward
// the lowest index.
std::vector<int> top_k(const std::vector<double>& score, int self, int k) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(score.size()); ++i)
    if (i != self) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return score[a] > score[b]; });
  if (static_cast<int>(idx.size()) > k) idx.resize(k);
  return idx;
}

struct EdgeSink {
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  void add(int u, int v) {
    if (u == v) return;
    if (seen.insert({u, v}).second) edges.push_back({u, v});
  }
};

std::vector<std::vector<int>> undirected_adjacency(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

}  // namespace

std::string link_rule_name(LinkRule r) { return info(r).name; }

LinkRule link_rule_from_name(const std::string& name) {
  for (const RuleInfo& ri : kRules)
    if (name == ri.name) return ri.rule;
  throw ConfigError("unknown link rule: " + name);
}

bool link_rule_needs_base(LinkRule rule) { return info(rule).needs_base; }

std::string link_rule_registry_json() {
  std::string o = "[\n";
  for (int i = 0; i < kLinkRuleCount; ++i) {
    o += std::string("  {\"id\": \"") + kRules[i].name + "\", \"needs_base\": " +
         (kRules[i].needs_base ? "true" : "false") + ", \"description\": \"" +
         kRules[i].description + "\"}";
    o += (i + 1 < kLinkRuleCount) ? ",\n" : "\n";
  }
  o += "]\n";
  return o;
}

NodeMetadata synthesize_metadata(int num_nodes, std::uint64_t seed) {
  Rng rng(seed);
  NodeMetadata m;
  m.num_nodes = num_nodes;
  std::vector<double> cit(num_nodes), venue(num_nodes), infl(num_nodes), cred(num_nodes),
      refc(num_nodes);
  std::vector<std::vector<int>> authors(num_nodes);
  std::vector<std::vector<double>> topics(num_nodes);
  std::vector<int> year(num_nodes), geo(num_nodes), team(num_nodes), domain(num_nodes),
      mentor(num_nodes), object(num_nodes);
  std::vector<bool> oa(num_nodes);
  int author_pool = std::max(4, num_nodes / 2);
  for (int i = 0; i < num_nodes; ++i) {
    cit[i] = std::floor(rng.uniform(0.0, 40.0));
    int na = 1 + rng.uniform_int(3);
    for (int a = 0; a < na; ++a) authors[i].push_back(rng.uniform_int(author_pool));
    topics[i].resize(4);
    double norm = 0.0;
    for (double& t : topics[i]) {
      t = rng.uniform();
      norm += t * t;
    }
    norm = std::sqrt(std::max(norm, 1e-12));
    for (double& t : topics[i]) t /= norm;
    year[i] = 1980 + rng.uniform_int(45);
    venue[i] = rng.uniform();
    geo[i] = rng.uniform_int(6);
    team[i] = 1 + rng.uniform_int(8);
    infl[i] = rng.uniform();
    cred[i] = rng.uniform();
    domain[i] = rng.uniform_int(4);
    mentor[i] = rng.bernoulli(0.6) ? rng.uniform_int(num_nodes) : -1;
    if (mentor[i] == i) mentor[i] = -1;
    object[i] = rng.uniform_int(5);
    oa[i] = rng.bernoulli(0.5);
    refc[i] = std::floor(rng.uniform(5.0, 50.0));
  }
  m.citation_count = cit;
  m.author_ids = authors;
  m.topic_vector = topics;
  m.year = year;
  m.venue_score = venue;
  m.geography = geo;
  m.team_size = team;
  m.influence = infl;
  m.credibility = cred;
  m.domain = domain;
  m.mentor = mentor;
  m.research_object = object;
  m.open_access = oa;
  m.reference_count = refc;
  return m;
}

std::vector<Edge> apply_link_rule(LinkRule rule, const NodeMetadata& meta,
                                  const LinkRuleParams& params, const std::vector<Edge>& base,
                                  std::uint64_t seed) {
  const int n = meta.num_nodes;
  Rng rng(seed);
  EdgeSink sink;
  for (const Edge& e : base) sink.seen.insert({e.u, e.v});  // avoid duplicating base edges

  auto cite_top = [&](const std::vector<double>& score) {
    for (int i = 0; i < n; ++i)
      for (int j : top_k(score, i, params.out_degree)) sink.add(i, j);
  };

  switch (rule) {
    case LinkRule::RandomPoisson: {
      for (int i = 0; i < n; ++i) {
        int k = std::min(poisson_draw(params.poisson_mean, rng), n - 1);
        if (k <= 0) continue;
        // draw one extra candidate so dropping i still leaves k targets
        int added = 0;
        for (int j : rng.sample_without_replacement(n, std::min(k + 1, n))) {
          if (j == i) continue;
          sink.add(i, j);
          if (++added == k) break;
        }
      }
      break;
    }
    case LinkRule::HighCitationCount: {
      // strictly higher counts only; the most-cited paper cites nothing
      const auto& counts = need(meta.citation_count, "citation_count");
      for (int i = 0; i < n; ++i) {
        std::vector<double> score(n, -1e300);
        for (int j = 0; j < n; ++j)
          if (j != i && counts[j] > counts[i]) score[j] = counts[j];
        for (int j : top_k(score, i, params.out_degree))
          if (score[j] > -1e300) sink.add(i, j);
      }
      break;
    }
    case LinkRule::CoAuthor: {
      const auto& authors = need(meta.author_ids, "author_ids");
      for (int i = 0; i < n; ++i) {
        int budget = params.out_degree;
        std::vector<int> order = rng.sample_without_replacement(n, n);
        for (int j : order) {
          if (j == i || budget == 0) continue;
          bool shared = false;
          for (int a : authors[i])
            for (int b : authors[j])
              if (a == b) shared = true;
          if (shared) {
            sink.add(i, j);
            --budget;
          }
        }
      }
      break;
    }
    case LinkRule::Propagation: {
      const auto& infl = need(meta.influence, "influence");
      int root = static_cast<int>(std::max_element(infl.begin(), infl.end()) - infl.begin());
      std::vector<char> active(n, 0);
      active[root] = 1;
      std::vector<int> frontier{root};
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier)
          for (int v = 0; v < n; ++v)
            if (!active[v] && rng.bernoulli(params.probability)) {
              active[v] = 1;
              sink.add(v, u);  // the newly reached paper cites its activator
              next.push_back(v);
            }
        frontier = std::move(next);
      }
      break;
    }
    case LinkRule::TopicSimilarity: {
      const auto& topics = need(meta.topic_vector, "topic_vector");
      for (int i = 0; i < n; ++i) {
        std::vector<double> sim(n, -2.0);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          double dot = 0.0;
          for (std::size_t t = 0; t < topics[i].size(); ++t) dot += topics[i][t] * topics[j][t];
          sim[j] = dot;
        }
        for (int j : top_k(sim, i, params.out_degree)) sink.add(i, j);
      }
      break;
    }
    case LinkRule::Temporal: {
      const auto& year = need(meta.year, "year");
      for (int i = 0; i < n; ++i) {
        std::vector<int> older;
        for (int j = 0; j < n; ++j)
          if (year[j] < year[i]) older.push_back(j);
        rng.shuffle(older);
        for (int k = 0; k < std::min<int>(params.out_degree, older.size()); ++k)
          sink.add(i, older[k]);
      }
      break;
    }
    case LinkRule::AuthorInfluence: {
      cite_top(need(meta.influence, "influence"));
      break;
    }
    case LinkRule::CoCitationFrequency: {
      // co-citation count of (a, b): papers citing both in the base graph
      std::vector<std::vector<int>> cited_by(n);
      for (const Edge& e : base) cited_by[e.v].push_back(e.u);
      for (int i = 0; i < n; ++i) {
        std::vector<double> cocite(n, 0.0);
        for (const Edge& e : base) {
          if (e.u != i) continue;
          for (int j = 0; j < n; ++j) {
            if (j == i || j == e.v) continue;
            for (int c : cited_by[j])
              if (c != i && std::find(cited_by[e.v].begin(), cited_by[e.v].end(), c) !=
                                cited_by[e.v].end())
                cocite[j] += 1.0;
          }
        }
        if (*std::max_element(cocite.begin(), cocite.end()) <= 0) continue;
        for (int j : top_k(cocite, i, params.out_degree))
          if (cocite[j] > 0) sink.add(i, j);
      }
      break;
    }
    case LinkRule::CitationDensity: {
      std::vector<double> degree(n, 0.0);
      for (const Edge& e : base) {
        degree[e.u] += 1.0;
        degree[e.v] += 1.0;
      }
      cite_top(degree);
      break;
    }
    case LinkRule::NetworkTopology: {
      auto adj = undirected_adjacency(n, base);
      for (int i = 0; i < n; ++i) {
        if (adj[i].empty()) continue;  // no neighbors: no citation
        sink.add(i, adj[i][rng.uniform_int(static_cast<int>(adj[i].size()))]);
      }
      break;
    }
    case LinkRule::AuthorExpertise: {
      const auto& domain = need(meta.domain, "domain");
      for (int i = 0; i < n; ++i) {
        std::vector<int> same;
        for (int j = 0; j < n; ++j)
          if (j != i && domain[j] == domain[i]) same.push_back(j);
        rng.shuffle(same);
        for (int k = 0; k < std::min<int>(params.out_degree, same.size()); ++k) sink.add(i, same[k]);
      }
      break;
    }
    case LinkRule::Centrality: {
      std::vector<double> degree(n, 0.0);
      for (const Edge& e : base) {
        degree[e.u] += 1.0;
        degree[e.v] += 1.0;
      }
      cite_top(degree);
      break;
    }
    case LinkRule::GeographicProximity: {
      const auto& geo = need(meta.geography, "geography");
      for (int i = 0; i < n; ++i) {
        std::vector<int> near;
        for (int j = 0; j < n; ++j)
          if (j != i && std::abs(geo[j] - geo[i]) <= 1) near.push_back(j);
        rng.shuffle(near);
        for (int k = 0; k < std::min<int>(params.out_degree, near.size()); ++k) sink.add(i, near[k]);
      }
      break;
    }
    case LinkRule::TeamSize: {
      const auto& team = need(meta.team_size, "team_size");
      for (int i = 0; i < n; ++i) {
        std::vector<int> similar;
        for (int j = 0; j < n; ++j)
          if (j != i && std::abs(team[j] - team[i]) <= 1) similar.push_back(j);
        rng.shuffle(similar);
        for (int k = 0; k < std::min<int>(params.out_degree, similar.size()); ++k)
          sink.add(i, similar[k]);
      }
      break;
    }
    case LinkRule::Credibility: {
      cite_top(need(meta.credibility, "credibility"));
      break;
    }
    case LinkRule::AcademicLineage: {
      const auto& mentor = need(meta.mentor, "mentor");
      for (int i = 0; i < n; ++i) {
        int hops = 0;
        for (int m = mentor[i]; m >= 0 && hops < params.out_degree; ++hops) {
          if (m == i) break;
          sink.add(i, m);
          m = mentor[m];
        }
      }
      break;
    }
    case LinkRule::TriangleStructure: {
      // close A -> B -> C into C -> A
      std::vector<std::vector<int>> out(n);
      for (const Edge& e : base) out[e.u].push_back(e.v);
      for (int a = 0; a < n; ++a)
        for (int b : out[a])
          for (int c : out[b])
            if (c != a && rng.bernoulli(params.probability)) sink.add(c, a);
      break;
    }
    case LinkRule::CitationDistance: {
      auto adj = undirected_adjacency(n, base);
      for (int i = 0; i < n; ++i) {
        // BFS distances on the base graph
        std::vector<int> dist(n, -1);
        dist[i] = 0;
        std::vector<int> q{i};
        for (std::size_t h = 0; h < q.size(); ++h)
          for (int v : adj[q[h]])
            if (dist[v] < 0) {
              dist[v] = dist[q[h]] + 1;
              q.push_back(v);
            }
        std::vector<double> score(n, -1e9);
        for (int j = 0; j < n; ++j)
          if (j != i && dist[j] >= 2) score[j] = -dist[j];
        for (int j : top_k(score, i, params.out_degree))
          if (score[j] > -1e9) sink.add(i, j);
      }
      break;
    }
    case LinkRule::KnowledgeFlow: {
      const auto& year = need(meta.year, "year");
      std::vector<int> sorted = year;
      std::sort(sorted.begin(), sorted.end());
      int median = sorted[sorted.size() / 2];
      for (int i = 0; i < n; ++i) {
        if (year[i] >= median) continue;  // only traditional papers absorb the frontier
        std::vector<int> frontier;
        for (int j = 0; j < n; ++j)
          if (j != i && year[j] >= median) frontier.push_back(j);
        rng.shuffle(frontier);
        for (int k = 0; k < std::min<int>(params.out_degree, frontier.size()); ++k)
          sink.add(i, frontier[k]);
      }
      break;
    }
    case LinkRule::ChainLength: {
      // longest citation chain ending at each paper, following base edges
      // backwards in year order to keep it acyclic
      const auto& year = need(meta.year, "year");
      std::vector<double> chain(n, 0.0);
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return year[a] < year[b]; });
      for (int u : order)
        for (const Edge& e : base)
          if (e.u == u && year[e.v] < year[u]) chain[u] = std::max(chain[u], chain[e.v] + 1.0);
      cite_top(chain);
      break;
    }
    case LinkRule::Diversity: {
      const auto& domain = need(meta.domain, "domain");
      std::vector<double> diversity(n, 0.0);
      for (int j = 0; j < n; ++j) {
        std::set<int> domains;
        for (const Edge& e : base)
          if (e.u == j) domains.insert(domain[e.v]);
        diversity[j] = static_cast<double>(domains.size());
      }
      cite_top(diversity);
      break;
    }
    case LinkRule::ReferenceCount: {
      cite_top(need(meta.reference_count, "reference_count"));
      break;
    }
    case LinkRule::ResearchObject: {
      const auto& object = need(meta.research_object, "research_object");
      std::vector<double> popularity(n, 0.0);
      std::vector<int> object_count(16, 0);
      for (int j = 0; j < n; ++j) object_count[object[j]]++;
      for (int j = 0; j < n; ++j) popularity[j] = object_count[object[j]];
      cite_top(popularity);
      break;
    }
    case LinkRule::VenueReputation: {
      cite_top(need(meta.venue_score, "venue_score"));
      break;
    }
    case LinkRule::OpenAccess: {
      const auto& oa = need(meta.open_access, "open_access");
      for (int i = 0; i < n; ++i) {
        std::vector<int> open;
        for (int j = 0; j < n; ++j)
          if (j != i && oa[j]) open.push_back(j);
        rng.shuffle(open);
        for (int k = 0; k < std::min<int>(params.out_degree, open.size()); ++k) sink.add(i, open[k]);
      }
      break;
    }
  }
  return sink.edges;
}

}  // namespace rwg
