#pragma once

// DescribingConcept taxonomy: a DAG of concepts derived from lexicon
// hypernym closures, plus the pruning and clean-up passes applied to it.

#include <affectont/common.hpp>
#include <affectont/keyword.hpp>
#include <affectont/lexicon.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace affectont {

struct ConceptNode {
  ConceptId id;
  std::string label;
  /// Empty for hand-curated concepts.
  std::optional<SynsetId> source_synset;
  /// All lemmas of the source synset (label first). Used for cut-list matching.
  std::vector<std::string> lemmas;
  std::vector<ConceptId> parents;

  friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

class TaxonomyError : public Error {
 public:
  using Error::Error;
};

/// Concept DAG. Parent edges point from a concept to its generalizations.
class TaxonomyGraph {
 public:
  /// Throws TaxonomyError if the id exists or a parent is missing.
  void add_node(ConceptNode node);
  void mark_seed(const ConceptId& id);

  bool contains(const ConceptId& id) const { return nodes_.contains(id); }
  const ConceptNode& node(const ConceptId& id) const;
  const std::map<ConceptId, ConceptNode>& nodes() const noexcept { return nodes_; }
  const std::set<ConceptId>& seeds() const noexcept { return seeds_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  std::set<ConceptId> roots() const;
  std::size_t edge_count() const;
  /// Children index (inverse of parent edges), each list sorted.
  std::map<ConceptId, std::vector<ConceptId>> children() const;

  /// Topological order, parents before children. Throws TaxonomyError on a cycle.
  std::vector<ConceptId> topological_order() const;

  /// Strict ancestors / descendants.
  std::set<ConceptId> ancestors(const ConceptId& id) const;
  std::set<ConceptId> descendants(const ConceptId& id) const;

  /// Bulk construction in any node order. Throws TaxonomyError on duplicate
  /// ids, missing parents or cycles.
  static TaxonomyGraph from_nodes(std::vector<ConceptNode> nodes, const std::set<ConceptId>& seeds = {});

  friend bool operator==(const TaxonomyGraph&, const TaxonomyGraph&) = default;

 private:
  std::map<ConceptId, ConceptNode> nodes_;
  std::set<ConceptId> seeds_;
};

/// `lemma#pos#sense` for the first lemma of the synset.
ConceptId concept_id_for(const LexiconGraph& lexicon, const SynsetId& synset);

struct TaxonomySeed {
  NormalizedKeyword keyword;
  SynsetId synset;
};

/// Union of the seeds and their hypernym closures; parent edges mirror direct
/// hypernym links. Throws LexiconError for an unknown seed synset.
TaxonomyGraph build_taxonomy(const LexiconGraph& lexicon, const std::vector<TaxonomySeed>& seeds);

struct PruneConfig {
  std::set<std::string> cut_lemmas;
  /// Concepts shallower than this (longest path from a root) are removed.
  std::size_t min_depth_from_root = 0;
  /// Concept ids or lemmas.
  std::set<std::string> exclusion_list;

  /// Cut list {entity, physical_entity, abstraction, object, whole, unit, artifact}.
  static PruneConfig defaults();
};

struct PruneReport {
  std::vector<ConceptId> removed;
};

/// Cut list first, then the depth filter (measured after the cut), then the
/// exclusion list. Children of removed concepts are re-parented to their
/// nearest surviving ancestors. Seeds are never removed; a seed named in the
/// cut list is a ConfigError.
TaxonomyGraph prune(const TaxonomyGraph& taxonomy, const PruneConfig& config,
                    PruneReport* report = nullptr);

/// Drops every parent edge implied by a longer path. Throws TaxonomyError on a cycle.
TaxonomyGraph transitive_reduction(const TaxonomyGraph& taxonomy);

struct DisjointnessViolation {
  ConceptId node;
  ConceptId first;
  ConceptId second;

  friend bool operator==(const DisjointnessViolation&, const DisjointnessViolation&) = default;
};

/// Every concept that is (or descends from) both members of a declared
/// disjoint pair. Throws TaxonomyError for a pair member not in the graph.
std::vector<DisjointnessViolation> disjointness_audit(
    const TaxonomyGraph& taxonomy, const std::vector<std::pair<ConceptId, ConceptId>>& pairs);

/// Resolves a concept reference: an exact concept id, or a label/lemma that
/// names exactly one concept. Empty when nothing matches; throws
/// TaxonomyError when a lemma is ambiguous.
std::optional<ConceptId> resolve_concept(const TaxonomyGraph& taxonomy, const std::string& ref);

}  // namespace affectont
