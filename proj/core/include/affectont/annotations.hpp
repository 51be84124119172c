#pragma once

// Primary/secondary concept assignments per stimulus, folksonomy merging and
// tag clouds.

#include <affectont/common.hpp>

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace affectont {

class TaxonomyGraph;

class AnnotationError : public Error {
 public:
  using Error::Error;
};

struct Contribution {
  std::string contributor;
  ConceptId concept_id;
  double weight = 1.0;

  friend bool operator==(const Contribution&, const Contribution&) = default;
};

struct TagCloud {
  StimulusId stimulus_id;
  /// Descending weight, ties by concept id ascending. Weights sum to 1.
  std::vector<std::pair<ConceptId, double>> entries;
};

/// Per-stimulus annotations. A stimulus is known once it has a primary.
/// Not safe for concurrent mutation.
class AnnotationStore {
 public:
  struct Entry {
    ConceptId primary;
    /// (contributor, concept) -> weight in (0, 1].
    std::map<std::pair<std::string, ConceptId>, double> contributions;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Sets or replaces the primary concept. Throws AnnotationError if the
  /// concept is already a secondary of this stimulus.
  void set_primary(const StimulusId& stimulus, const ConceptId& concept_id);

  /// Records (or replaces) one contributor's weight for a concept. When a
  /// taxonomy is supplied the concept must exist in it.
  void assign_secondary(const StimulusId& stimulus, const std::string& contributor,
                        const ConceptId& concept_id, double weight,
                        const TaxonomyGraph* taxonomy = nullptr);

  bool contains(const StimulusId& stimulus) const { return entries_.contains(stimulus); }
  const Entry& entry(const StimulusId& stimulus) const;
  const std::map<StimulusId, Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::vector<Contribution> contributions(const StimulusId& stimulus) const;

  /// Concept -> summed weight; the primary contributes 1.0 when included.
  std::map<ConceptId, double> raw_weights(const StimulusId& stimulus, bool include_primary) const;

  friend bool operator==(const AnnotationStore&, const AnnotationStore&) = default;

 private:
  std::map<StimulusId, Entry> entries_;
};

inline constexpr double kPrimaryRawWeight = 1.0;

TagCloud tag_cloud(const AnnotationStore& store, const StimulusId& stimulus, bool include_primary);

/// Cosine similarity of the primary-inclusive raw-weight vectors; 0 when
/// either vector is empty.
double stimulus_similarity(const AnnotationStore& store, const StimulusId& a, const StimulusId& b);

/// Union of contributions; a repeated (contributor, stimulus, concept) keeps
/// the maximum weight. Throws AnnotationError on conflicting primaries.
AnnotationStore merge_folksonomies(std::span<const AnnotationStore> stores);

/// JSON persistence: {stimulus_id: {primary, contributions: [{contributor,
/// concept, weight}]}} with sorted keys.
std::string to_json(const AnnotationStore& store);
AnnotationStore annotations_from_json(std::string_view text);
AnnotationStore load_annotations(const std::string& path);

}  // namespace affectont
