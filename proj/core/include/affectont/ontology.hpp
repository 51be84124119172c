#pragma once

// Stimulus/DescribingConcept ontology model, its validator and the OWL
// RDF/XML serializer and parser.

#include <affectont/annotations.hpp>
#include <affectont/common.hpp>
#include <affectont/manifest.hpp>
#include <affectont/taxonomy.hpp>

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affectont {

inline constexpr std::string_view kDefaultBaseIri = "http://example.org/affectont";

struct SecondaryMeaning {
  ConceptId concept_id;
  double weight = 1.0;

  friend bool operator==(const SecondaryMeaning&, const SecondaryMeaning&) = default;
};

/// `primaries` is a list so that invalid models stay representable; a valid
/// model has exactly one entry.
struct StimulusIndividual {
  StimulusId id;
  double pleasure = 5.0;
  double arousal = 5.0;
  std::string resource;
  std::vector<ConceptId> primaries;
  std::vector<SecondaryMeaning> secondaries;

  friend bool operator==(const StimulusIndividual&, const StimulusIndividual&) = default;
};

struct RelationAssertion {
  ConceptId subject;
  std::string predicate;
  ConceptId object;

  friend auto operator<=>(const RelationAssertion&, const RelationAssertion&) = default;
  friend bool operator==(const RelationAssertion&, const RelationAssertion&) = default;
};

struct OntologyModel {
  std::string base_iri{kDefaultBaseIri};
  TaxonomyGraph concepts;
  std::vector<StimulusIndividual> stimuli;
  std::vector<RelationAssertion> relations;
  /// Declared relation predicates.
  std::set<std::string> predicates;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

/// Concept classes are the transitive reduction of `taxonomy`. Each stimulus
/// gets its primary annotation and, as secondaries, the normalized tag cloud
/// with the primary excluded. Stimuli absent from `stimuli` are ignored.
/// Throws ModelError for a stimulus without a primary, an annotation naming
/// a concept not in the taxonomy, or a relation outside `predicates`.
OntologyModel build_model(const TaxonomyGraph& taxonomy, std::span<const Stimulus> stimuli,
                          const AnnotationStore& annotations,
                          const std::vector<RelationAssertion>& relations,
                          const std::set<std::string>& predicates,
                          std::string base_iri = std::string(kDefaultBaseIri));

struct Violation {
  enum class Kind {
    primary_cardinality,
    affect_range,
    concept_cycle,
    unknown_concept,
    inverse_asymmetry,
    weight_range,
    duplicate_secondary,
    primary_as_secondary,
    duplicate_stimulus,
    relation,
    base_iri,
  };
  Kind kind;
  std::string subject;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  /// Informational, e.g. stimuli with no secondary meaning.
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation::Kind kind) const;
};

/// Collects every violation; never throws.
ValidationReport validate_model(const OntologyModel& model);

/// Deterministic RDF/XML. Throws ModelError listing the violations when the
/// model does not validate.
std::string serialize_owl(const OntologyModel& model);

class OwlError : public Error {
 public:
  using Error::Error;
};

/// Inverse of serialize_owl. Throws XmlError for malformed XML and OwlError
/// for constructs outside the emitted vocabulary.
OntologyModel parse_owl(std::string_view document);

/// Sorted copy (stimuli by id, secondaries by concept, parents by id,
/// relations) without seed marks, for structural comparison.
OntologyModel canonical(const OntologyModel& model);
bool structurally_equal(const OntologyModel& a, const OntologyModel& b);

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string iri_encode(std::string_view text);
/// Throws OwlError on a malformed escape.
std::string iri_decode(std::string_view text);

}  // namespace affectont
