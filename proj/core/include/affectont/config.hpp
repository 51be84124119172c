#pragma once

// Pipeline configuration file: prune settings, normalizer tables,
// disjointness pairs and the concept-relation vocabulary.
//
//   min_depth = 2
//   [cut]            one lemma per line; replaces the default cut list
//   [exclude]        concept ids or lemmas
//   [disjoint]       a | b
//   [abbreviations]  abbr = expansion
//   [irregulars]     plural = singular
//   [relation_words] one word per line
//   [predicates]     one relation name per line
//   [relations]      subject predicate object

#include <affectont/common.hpp>
#include <affectont/keyword.hpp>
#include <affectont/taxonomy.hpp>

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace affectont {

/// A relation whose ends are still unresolved concept references.
struct RelationSpec {
  std::string subject;
  std::string predicate;
  std::string object;

  friend bool operator==(const RelationSpec&, const RelationSpec&) = default;
};

struct PipelineConfig {
  PruneConfig prune = PruneConfig::defaults();
  NormalizerTables tables = NormalizerTables::defaults();
  std::vector<std::pair<std::string, std::string>> disjoint;
  std::set<std::string> predicates;
  std::vector<RelationSpec> relations;
};

/// Throws ConfigError naming `source_name` and the line.
PipelineConfig parse_config(std::istream& in, const std::string& source_name);
PipelineConfig load_config(const std::filesystem::path& file);

}  // namespace affectont
