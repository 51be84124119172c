#pragma once

// Independent reference implementations and random generators for the
// property and acceptance tests. Nothing here calls the algorithm under test.

#include <affectont/annotations.hpp>
#include <affectont/manifest.hpp>
#include <affectont/ontology.hpp>
#include <affectont/query.hpp>
#include <affectont/taxonomy.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace affectont::testing {

inline std::string data_path(const std::string& relative) {
  return std::string(AFFECTONT_DATA_DIR) + "/" + relative;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[index(v.size())]; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Keyword statistics by brute force.

struct StatsOracle {
  std::size_t stimuli = 0;
  std::size_t keywords = 0;
  std::size_t max = 0;
  std::size_t buckets[5] = {0, 0, 0, 0, 0};  // >=10, 6..9, 4..5, 2..3, 1
  double mean = 0.0;
  double median = 0.0;
  std::size_t mode = 0;
  double stddev = 0.0;
};

inline StatsOracle stats_oracle(const std::vector<std::string>& keywords) {
  StatsOracle o;
  o.stimuli = keywords.size();
  std::map<std::string, std::size_t> per;
  for (const auto& k : keywords) per[k]++;
  o.keywords = per.size();
  if (per.empty()) return o;
  std::vector<std::size_t> counts;
  for (const auto& [k, c] : per) counts.push_back(c);
  std::sort(counts.begin(), counts.end());
  o.max = counts.back();
  for (auto c : counts) {
    if (c >= 10) o.buckets[0]++;
    else if (c >= 6) o.buckets[1]++;
    else if (c >= 4) o.buckets[2]++;
    else if (c >= 2) o.buckets[3]++;
    else o.buckets[4]++;
  }
  double sum = 0.0;
  for (auto c : counts) sum += static_cast<double>(c);
  o.mean = sum / static_cast<double>(counts.size());
  const std::size_t n = counts.size();
  o.median = n % 2 == 1 ? static_cast<double>(counts[n / 2])
                        : (static_cast<double>(counts[n / 2 - 1]) + static_cast<double>(counts[n / 2])) / 2.0;
  // Mode: most frequent count; the smallest count wins a tie.
  std::size_t best_freq = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && counts[j] == counts[i]) ++j;
    if (j - i > best_freq) {
      best_freq = j - i;
      o.mode = counts[i];
    }
    i = j;
  }
  if (n >= 2) {
    double ss = 0.0;
    for (auto c : counts) ss += (static_cast<double>(c) - o.mean) * (static_cast<double>(c) - o.mean);
    o.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return o;
}

// ---------------------------------------------------------------------------
// Graph oracles on dense matrices.

using BoolMatrix = std::vector<std::vector<bool>>;

/// Warshall transitive closure of a directed adjacency matrix.
inline BoolMatrix closure_oracle(BoolMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

/// All-pairs shortest path lengths (Floyd-Warshall) on an undirected graph;
/// SIZE_MAX marks unreachable pairs.
inline std::vector<std::vector<std::size_t>> distance_oracle(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  constexpr std::size_t inf = SIZE_MAX;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    d[a][b] = d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline ConceptId node_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "c%03zu", i);
  return ConceptId(std::string(buf));
}

/// Random DAG over nodes c000..c(n-1); edges only go from a higher to a lower
/// index (child to parent), so the result is acyclic by construction.
inline TaxonomyGraph random_dag(Rng& rng, std::size_t n, double edge_probability) {
  std::vector<ConceptNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    ConceptNode node;
    node.id = node_name(i);
    node.label = node.id.str();
    node.lemmas = {node.id.str()};
    for (std::size_t j = 0; j < i; ++j) {
      if (rng.chance(edge_probability)) node.parents.push_back(node_name(j));
    }
    nodes.push_back(std::move(node));
  }
  std::shuffle(nodes.begin(), nodes.end(), rng.engine());
  return TaxonomyGraph::from_nodes(std::move(nodes));
}

/// Parent-edge adjacency (child row, parent column) indexed by c### number.
inline BoolMatrix parent_matrix(const TaxonomyGraph& g, std::size_t n) {
  BoolMatrix m(n, std::vector<bool>(n, false));
  for (const auto& [id, node] : g.nodes()) {
    const auto i = std::stoul(id.str().substr(1));
    for (const auto& p : node.parents) m[i][std::stoul(p.str().substr(1))] = true;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Query semantics evaluated per stimulus.

struct QueryFixture {
  TaxonomyGraph taxonomy;
  AnnotationStore store;
};

/// Concepts named like "lemma#n#1" so query terms resolve by lemma.
inline QueryFixture random_query_fixture(Rng& rng, std::size_t concepts, std::size_t stimuli) {
  std::vector<ConceptNode> nodes;
  for (std::size_t i = 0; i < concepts; ++i) {
    ConceptNode node;
    node.id = ConceptId("k" + std::to_string(i) + "#n#1");
    node.label = "k" + std::to_string(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (rng.chance(2.0 / static_cast<double>(i + 1))) node.parents.push_back(nodes[j].id);
    }
    nodes.push_back(std::move(node));
  }
  QueryFixture f;
  f.taxonomy = TaxonomyGraph::from_nodes(nodes);
  for (std::size_t s = 0; s < stimuli; ++s) {
    const StimulusId sid("s" + std::to_string(s));
    const ConceptId primary = nodes[rng.index(nodes.size())].id;
    f.store.set_primary(sid, primary);
    const int extra = rng.between(0, 2);
    for (int e = 0; e < extra; ++e) {
      const ConceptId c = nodes[rng.index(nodes.size())].id;
      if (c != primary) f.store.assign_secondary(sid, "u" + std::to_string(e), c, rng.real(0.05, 1.0));
    }
  }
  return f;
}

inline QueryExpr random_query(Rng& rng, std::size_t concepts, int depth) {
  if (depth <= 0 || rng.chance(0.35)) {
    return QueryExpr::make_term("k" + std::to_string(rng.index(concepts)));
  }
  switch (rng.between(0, 2)) {
    case 0:
      return QueryExpr::make_not(random_query(rng, concepts, depth - 1));
    case 1:
      return QueryExpr::make_and({random_query(rng, concepts, depth - 1), random_query(rng, concepts, depth - 1)});
    default:
      return QueryExpr::make_or({random_query(rng, concepts, depth - 1), random_query(rng, concepts, depth - 1)});
  }
}

/// True when `ancestor` is `c` or reachable upward from it; computed by
/// walking parent lists without the graph's own closure helpers.
inline bool subsumes(const TaxonomyGraph& g, const ConceptId& ancestor, const ConceptId& c) {
  std::vector<ConceptId> stack{c};
  std::set<ConceptId> seen;
  while (!stack.empty()) {
    ConceptId cur = stack.back();
    stack.pop_back();
    if (cur == ancestor) return true;
    if (!seen.insert(cur).second) continue;
    for (const auto& p : g.node(cur).parents) stack.push_back(p);
  }
  return false;
}

inline bool query_oracle_matches(const QueryExpr& q, const QueryFixture& f, const StimulusId& s,
                                 bool include_secondary) {
  switch (q.kind) {
    case QueryExpr::Kind::term: {
      const auto& entry = f.store.entry(s);
      std::vector<ConceptId> annotated{entry.primary};
      if (include_secondary)
        for (const auto& [key, w] : entry.contributions) annotated.push_back(key.second);
      const std::string prefix = q.term.lemma + "#";
      for (const auto& [id, node] : f.taxonomy.nodes()) {
        if (id.str().rfind(prefix, 0) != 0 && id.str() != q.term.lemma) continue;
        for (const auto& a : annotated)
          if (subsumes(f.taxonomy, id, a)) return true;
      }
      return false;
    }
    case QueryExpr::Kind::negation:
      return !query_oracle_matches(q.children[0], f, s, include_secondary);
    case QueryExpr::Kind::conjunction:
      for (const auto& c : q.children)
        if (!query_oracle_matches(c, f, s, include_secondary)) return false;
      return true;
    case QueryExpr::Kind::disjunction:
      for (const auto& c : q.children)
        if (query_oracle_matches(c, f, s, include_secondary)) return true;
      return false;
  }
  return false;
}

inline std::set<StimulusId> query_oracle(const QueryExpr& q, const QueryFixture& f, bool include_secondary) {
  std::set<StimulusId> out;
  for (const auto& [id, e] : f.store.entries())
    if (query_oracle_matches(q, f, id, include_secondary)) out.insert(id);
  return out;
}

// ---------------------------------------------------------------------------
// Annotation stores.

inline AnnotationStore random_store(Rng& rng, std::size_t stimuli, std::size_t concepts,
                                    std::size_t contributors) {
  AnnotationStore store;
  for (std::size_t s = 0; s < stimuli; ++s) {
    const StimulusId sid("s" + std::to_string(s));
    // Primary is a function of the stimulus so independently drawn stores merge.
    const ConceptId primary("p" + std::to_string(s % 3) + "#n#1");
    store.set_primary(sid, primary);
    const int n = rng.between(0, 5);
    for (int i = 0; i < n; ++i) {
      store.assign_secondary(sid, "user" + std::to_string(rng.index(contributors)),
                             ConceptId("c" + std::to_string(rng.index(concepts)) + "#n#1"),
                             rng.real(1e-3, 1.0));
    }
  }
  return store;
}

/// Cosine of two sparse vectors written out directly.
inline double cosine_oracle(const std::map<ConceptId, double>& a, const std::map<ConceptId, double>& b) {
  std::set<ConceptId> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  double dot = 0, na = 0, nb = 0;
  for (const auto& k : keys) {
    const double x = a.contains(k) ? a.at(k) : 0.0;
    const double y = b.contains(k) ? b.at(k) : 0.0;
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

// ---------------------------------------------------------------------------
// Ontology models built field by field, without build_model.

/// Valid model: one primary per stimulus, distinct secondaries with weights in
/// (0, 1], affect inside [1, 9] and relations between existing concepts.
/// Identifiers and resources include characters that need escaping.
inline OntologyModel random_model(Rng& rng) {
  OntologyModel m;
  const std::size_t n = static_cast<std::size_t>(rng.between(1, 20));
  std::vector<ConceptNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    ConceptNode node;
    node.id = ConceptId("w" + std::to_string(i) + (rng.chance(0.5) ? "#n#1" : "_x"));
    node.label = "label " + std::to_string(i) + (rng.chance(0.2) ? " & <more>" : "");
    if (rng.chance(0.7)) node.source_synset = SynsetId("0000" + std::to_string(i) + "-n");
    const int lemmas = rng.between(0, 2);
    for (int l = 0; l < lemmas; ++l) node.lemmas.push_back("lemma_" + std::to_string(l));
    for (std::size_t j = 0; j < i; ++j)
      if (rng.chance(0.2)) node.parents.push_back(nodes[j].id);
    nodes.push_back(std::move(node));
  }
  std::vector<ConceptId> ids;
  for (const auto& node : nodes) ids.push_back(node.id);
  m.concepts = TaxonomyGraph::from_nodes(nodes);

  const std::size_t stimuli = static_cast<std::size_t>(rng.between(0, 15));
  for (std::size_t s = 0; s < stimuli; ++s) {
    StimulusIndividual st;
    st.id = StimulusId(std::to_string(1000 + s) + (rng.chance(0.2) ? " a&b" : ""));
    st.pleasure = rng.real(1.0, 9.0);
    st.arousal = rng.chance(0.2) ? 9.0 : rng.real(1.0, 9.0);
    st.resource = "file:///media/" + std::to_string(s) + (rng.chance(0.3) ? "%20<x>&y.jpg" : ".wav");
    st.primaries = {rng.pick(ids)};
    std::set<ConceptId> used{st.primaries[0]};
    const int secondaries = rng.between(0, 3);
    for (int k = 0; k < secondaries; ++k) {
      const ConceptId c = rng.pick(ids);
      if (!used.insert(c).second) continue;
      st.secondaries.push_back({c, rng.chance(0.2) ? 1.0 : rng.real(1e-6, 1.0)});
    }
    std::sort(st.secondaries.begin(), st.secondaries.end(),
              [](const auto& a, const auto& b) { return a.concept_id < b.concept_id; });
    m.stimuli.push_back(std::move(st));
  }

  m.predicates = {"member_of", "can_cause"};
  std::set<RelationAssertion> relations;
  const int count = rng.between(0, 5);
  for (int r = 0; r < count; ++r) {
    relations.insert({rng.pick(ids), rng.chance(0.5) ? "member_of" : "can_cause", rng.pick(ids)});
  }
  m.relations.assign(relations.begin(), relations.end());
  return m;
}

}  // namespace affectont::testing
