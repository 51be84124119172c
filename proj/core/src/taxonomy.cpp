#include <affectont/taxonomy.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>

namespace affectont {

namespace {

void push_unique(std::vector<ConceptId>& v, const ConceptId& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

// Fixed-size bitset over node indices.
class Bits {
 public:
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  Bits& operator|=(const Bits& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

void TaxonomyGraph::add_node(ConceptNode node) {
  if (node.id.empty()) throw TaxonomyError("concept with empty id");
  if (nodes_.contains(node.id)) throw TaxonomyError("duplicate concept " + node.id.str());
  for (const auto& p : node.parents) {
    if (p == node.id) throw TaxonomyError("concept " + node.id.str() + " is its own parent");
    if (!nodes_.contains(p)) {
      throw TaxonomyError("concept " + node.id.str() + " names missing parent " + p.str());
    }
  }
  std::vector<ConceptId> unique;
  for (const auto& p : node.parents) push_unique(unique, p);
  node.parents = std::move(unique);
  if (node.label.empty()) node.label = node.id.str();
  const ConceptId id = node.id;
  nodes_.emplace(id, std::move(node));
}

void TaxonomyGraph::mark_seed(const ConceptId& id) {
  if (!contains(id)) throw TaxonomyError("seed " + id.str() + " is not in the taxonomy");
  seeds_.insert(id);
}

const ConceptNode& TaxonomyGraph::node(const ConceptId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw TaxonomyError("unknown concept " + id.str());
  return it->second;
}

std::set<ConceptId> TaxonomyGraph::roots() const {
  std::set<ConceptId> out;
  for (const auto& [id, n] : nodes_) {
    if (n.parents.empty()) out.insert(id);
  }
  return out;
}

std::size_t TaxonomyGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& [id, n] : nodes_) total += n.parents.size();
  return total;
}

std::map<ConceptId, std::vector<ConceptId>> TaxonomyGraph::children() const {
  std::map<ConceptId, std::vector<ConceptId>> out;
  for (const auto& [id, n] : nodes_) {
    out[id];
    for (const auto& p : n.parents) out[p].push_back(id);
  }
  for (auto& [id, kids] : out) std::sort(kids.begin(), kids.end());
  return out;
}

std::vector<ConceptId> TaxonomyGraph::topological_order() const {
  std::map<ConceptId, std::size_t> pending;
  for (const auto& [id, n] : nodes_) pending[id] = n.parents.size();
  const auto kids = children();
  std::deque<ConceptId> ready;
  for (const auto& [id, count] : pending) {
    if (count == 0) ready.push_back(id);
  }
  std::vector<ConceptId> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    ConceptId id = ready.front();
    ready.pop_front();
    for (const auto& child : kids.at(id)) {
      if (--pending[child] == 0) ready.push_back(child);
    }
    order.push_back(std::move(id));
  }
  if (order.size() != nodes_.size()) throw TaxonomyError("taxonomy contains a cycle");
  return order;
}

std::set<ConceptId> TaxonomyGraph::ancestors(const ConceptId& id) const {
  std::set<ConceptId> out;
  std::vector<ConceptId> stack = node(id).parents;
  while (!stack.empty()) {
    ConceptId next = std::move(stack.back());
    stack.pop_back();
    if (!out.insert(next).second) continue;
    for (const auto& p : node(next).parents) stack.push_back(p);
  }
  return out;
}

std::set<ConceptId> TaxonomyGraph::descendants(const ConceptId& id) const {
  node(id);
  const auto kids = children();
  std::set<ConceptId> out;
  std::vector<ConceptId> stack = kids.at(id);
  while (!stack.empty()) {
    ConceptId next = std::move(stack.back());
    stack.pop_back();
    if (!out.insert(next).second) continue;
    for (const auto& c : kids.at(next)) stack.push_back(c);
  }
  return out;
}

TaxonomyGraph TaxonomyGraph::from_nodes(std::vector<ConceptNode> nodes,
                                        const std::set<ConceptId>& seeds) {
  std::map<ConceptId, ConceptNode> pool;
  for (auto& n : nodes) {
    if (pool.contains(n.id)) throw TaxonomyError("duplicate concept " + n.id.str());
    ConceptId id = n.id;
    pool.emplace(std::move(id), std::move(n));
  }
  // Depth-first insertion so parents always precede children.
  TaxonomyGraph g;
  std::map<ConceptId, int> state;  // 1 = in progress, 2 = done
  std::function<void(const ConceptId&)> visit = [&](const ConceptId& id) {
    auto& st = state[id];
    if (st == 2) return;
    if (st == 1) throw TaxonomyError("taxonomy contains a cycle through " + id.str());
    st = 1;
    auto it = pool.find(id);
    for (const auto& p : it->second.parents) {
      if (!pool.contains(p)) {
        throw TaxonomyError("concept " + id.str() + " names missing parent " + p.str());
      }
      visit(p);
    }
    g.add_node(it->second);
    state[id] = 2;
  };
  for (const auto& [id, n] : pool) visit(id);
  for (const auto& s : seeds) g.mark_seed(s);
  return g;
}

ConceptId concept_id_for(const LexiconGraph& lexicon, const SynsetId& synset) {
  const Synset& s = lexicon.synset(synset);
  const std::string& lemma = s.lemmas.front();
  std::size_t sense = lexicon.sense_number(synset, lemma);
  if (sense == 0) sense = 1;
  return ConceptId(lemma + "#" + pos_code(s.pos) + "#" + std::to_string(sense));
}

TaxonomyGraph build_taxonomy(const LexiconGraph& lexicon, const std::vector<TaxonomySeed>& seeds) {
  std::map<SynsetId, ConceptId> ids;
  std::set<ConceptId> seed_ids;
  std::vector<SynsetId> order;
  const auto include = [&](const SynsetId& s) {
    if (ids.contains(s)) return;
    ids.emplace(s, concept_id_for(lexicon, s));
    order.push_back(s);
  };
  for (const auto& seed : seeds) {
    include(seed.synset);
    seed_ids.insert(ids.at(seed.synset));
    for (const auto& entry : lexicon.hypernym_closure(seed.synset)) include(entry.id);
  }

  std::vector<ConceptNode> nodes;
  std::set<ConceptId> used;
  for (const auto& s : order) {
    const Synset& syn = lexicon.synset(s);
    ConceptNode n;
    n.id = ids.at(s);
    if (!used.insert(n.id).second) {
      throw TaxonomyError("synsets map to the same concept id " + n.id.str());
    }
    n.label = syn.lemmas.front();
    n.source_synset = s;
    n.lemmas = syn.lemmas;
    for (const auto& h : syn.hypernyms) n.parents.push_back(ids.at(h));
    nodes.push_back(std::move(n));
  }
  return TaxonomyGraph::from_nodes(std::move(nodes), seed_ids);
}

PruneConfig PruneConfig::defaults() {
  PruneConfig cfg;
  cfg.cut_lemmas = {"entity", "physical_entity", "abstraction", "object",
                    "whole",  "unit",            "artifact"};
  return cfg;
}

namespace {

bool names_concept(const ConceptNode& n, const std::set<std::string>& names) {
  if (names.contains(n.id.str()) || names.contains(n.label)) return true;
  return std::any_of(n.lemmas.begin(), n.lemmas.end(),
                     [&](const std::string& l) { return names.contains(l); });
}

bool matches_lemma(const ConceptNode& n, const std::set<std::string>& lemmas) {
  if (lemmas.contains(n.label)) return true;
  return std::any_of(n.lemmas.begin(), n.lemmas.end(),
                     [&](const std::string& l) { return lemmas.contains(l); });
}

TaxonomyGraph remove_nodes(const TaxonomyGraph& g, const std::set<ConceptId>& doomed) {
  if (doomed.empty()) return g;
  std::map<ConceptId, std::vector<ConceptId>> memo;
  std::function<const std::vector<ConceptId>&(const ConceptId&)> surviving =
      [&](const ConceptId& id) -> const std::vector<ConceptId>& {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::vector<ConceptId> out;
    for (const auto& p : g.node(id).parents) {
      if (!doomed.contains(p)) {
        push_unique(out, p);
      } else {
        for (const auto& q : surviving(p)) push_unique(out, q);
      }
    }
    return memo.emplace(id, std::move(out)).first->second;
  };

  std::vector<ConceptNode> kept;
  std::set<ConceptId> seeds;
  for (const auto& [id, n] : g.nodes()) {
    if (doomed.contains(id)) continue;
    ConceptNode copy = n;
    copy.parents.clear();
    for (const auto& p : n.parents) {
      if (!doomed.contains(p)) {
        push_unique(copy.parents, p);
      } else {
        for (const auto& q : surviving(p)) push_unique(copy.parents, q);
      }
    }
    if (g.seeds().contains(id)) seeds.insert(id);
    kept.push_back(std::move(copy));
  }
  return TaxonomyGraph::from_nodes(std::move(kept), seeds);
}

}  // namespace

TaxonomyGraph prune(const TaxonomyGraph& taxonomy, const PruneConfig& config,
                    PruneReport* report) {
  for (const auto& seed : taxonomy.seeds()) {
    if (matches_lemma(taxonomy.node(seed), config.cut_lemmas)) {
      throw ConfigError("cut list names seed concept " + seed.str());
    }
  }
  taxonomy.topological_order();

  PruneReport local;
  const auto removable = [&](const TaxonomyGraph& g, auto&& predicate) {
    std::set<ConceptId> out;
    for (const auto& [id, n] : g.nodes()) {
      if (!g.seeds().contains(id) && predicate(n)) out.insert(id);
    }
    local.removed.insert(local.removed.end(), out.begin(), out.end());
    return out;
  };

  TaxonomyGraph g = remove_nodes(
      taxonomy, removable(taxonomy, [&](const ConceptNode& n) {
        return config.cut_lemmas.contains(n.id.str()) || matches_lemma(n, config.cut_lemmas);
      }));

  if (config.min_depth_from_root > 0) {
    std::map<ConceptId, std::size_t> depth;
    for (const auto& id : g.topological_order()) {
      std::size_t d = 0;
      for (const auto& p : g.node(id).parents) d = std::max(d, depth.at(p) + 1);
      depth[id] = d;
    }
    g = remove_nodes(g, removable(g, [&](const ConceptNode& n) {
                       return depth.at(n.id) < config.min_depth_from_root;
                     }));
  }

  g = remove_nodes(g, removable(g, [&](const ConceptNode& n) {
                     return names_concept(n, config.exclusion_list);
                   }));

  if (report != nullptr) *report = std::move(local);
  return g;
}

TaxonomyGraph transitive_reduction(const TaxonomyGraph& taxonomy) {
  const auto order = taxonomy.topological_order();
  std::unordered_map<ConceptId, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index.emplace(order[i], i);

  // reach[i]: strict ancestors of order[i].
  std::vector<Bits> reach(order.size(), Bits(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& p : taxonomy.node(order[i]).parents) {
      const std::size_t pi = index.at(p);
      reach[i].set(pi);
      reach[i] |= reach[pi];
    }
  }

  std::vector<ConceptNode> nodes;
  nodes.reserve(order.size());
  for (const auto& id : order) {
    ConceptNode n = taxonomy.node(id);
    std::vector<ConceptId> kept;
    for (const auto& p : n.parents) {
      const std::size_t pi = index.at(p);
      const bool implied = std::any_of(n.parents.begin(), n.parents.end(), [&](const ConceptId& q) {
        return q != p && reach[index.at(q)].test(pi);
      });
      if (!implied) push_unique(kept, p);
    }
    n.parents = std::move(kept);
    nodes.push_back(std::move(n));
  }
  return TaxonomyGraph::from_nodes(std::move(nodes), taxonomy.seeds());
}

std::vector<DisjointnessViolation> disjointness_audit(
    const TaxonomyGraph& taxonomy, const std::vector<std::pair<ConceptId, ConceptId>>& pairs) {
  std::vector<DisjointnessViolation> out;
  for (const auto& [a, b] : pairs) {
    for (const auto& id : {a, b}) {
      if (!taxonomy.contains(id)) throw TaxonomyError("disjoint pair names unknown concept " + id.str());
    }
    auto under_a = taxonomy.descendants(a);
    under_a.insert(a);
    auto under_b = taxonomy.descendants(b);
    under_b.insert(b);
    for (const auto& id : under_a) {
      if (under_b.contains(id)) out.push_back({id, a, b});
    }
  }
  return out;
}

std::optional<ConceptId> resolve_concept(const TaxonomyGraph& taxonomy, const std::string& ref) {
  const ConceptId exact(ref);
  if (taxonomy.contains(exact)) return exact;
  std::vector<ConceptId> hits;
  for (const auto& [id, n] : taxonomy.nodes()) {
    if (n.label == ref || std::find(n.lemmas.begin(), n.lemmas.end(), ref) != n.lemmas.end()) {
      hits.push_back(id);
    }
  }
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1) {
    std::string names;
    for (const auto& h : hits) names += (names.empty() ? "" : ", ") + h.str();
    throw TaxonomyError("concept reference '" + ref + "' is ambiguous: " + names);
  }
  return hits.front();
}

}  // namespace affectont
