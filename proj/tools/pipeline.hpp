#pragma once

// Manifest-to-ontology pipeline shared by the CLI subcommands.

#include <affectont/annotations.hpp>
#include <affectont/config.hpp>
#include <affectont/keyword.hpp>
#include <affectont/lexicon.hpp>
#include <affectont/manifest.hpp>
#include <affectont/ontology.hpp>
#include <affectont/taxonomy.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace affectont::cli {

struct LexiconSource {
  std::filesystem::path path;
  /// Empty: a directory is read as WNDB, a file as the simple format.
  std::optional<LexiconFormat> format;
};

LexiconGraph open_lexicon(const LexiconSource& source);

/// Everything query and scenario evaluation needs.
struct Corpus {
  std::vector<Stimulus> stimuli;
  TaxonomyGraph taxonomy;
  AnnotationStore store;
  std::vector<RelationAssertion> relations;
  std::set<std::string> predicates;
  PruneReport pruned;
};

/// Normalizes every keyword, maps each head to its first noun sense, builds
/// and prunes the taxonomy, and records the first head as the primary
/// meaning. Further heads become secondaries from contributor "manifest".
/// Concepts named by `extra` annotations are added to the taxonomy.
Corpus annotate(std::vector<Stimulus> stimuli, const LexiconGraph& lexicon,
                const PipelineConfig& config, const AnnotationStore* extra = nullptr);

/// Stimuli, taxonomy and annotations recovered from an ontology document.
Corpus corpus_from_model(const OntologyModel& model);

}  // namespace affectont::cli
