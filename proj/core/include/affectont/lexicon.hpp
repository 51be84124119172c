#pragma once

// WordNet-style lexical graph: synsets joined by hypernym/hyponym edges.

#include <affectont/common.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace affectont {

enum class Pos { noun, verb, adjective, adverb };

/// Single-letter WordNet code: n, v, a, r.
char pos_code(Pos pos);
std::string_view to_string(Pos pos);
/// Accepts WordNet codes (n, v, a, s, r) and full names.
std::optional<Pos> parse_pos(std::string_view text);

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;
  Pos pos = Pos::noun;
  std::string gloss;
  std::vector<SynsetId> hypernyms;
  std::vector<SynsetId> hyponyms;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

struct LoadReport {
  std::size_t synsets = 0;
  /// Inverse edges added because the source listed only one direction.
  std::size_t repaired_edges = 0;
  /// Pointers of types other than hypernym/hyponym that were skipped.
  std::size_t ignored_pointers = 0;
};

struct ClosureEntry {
  SynsetId id;
  std::size_t depth = 0;

  friend bool operator==(const ClosureEntry&, const ClosureEntry&) = default;
};

/// Immutable after construction; safe for concurrent readers.
class LexiconGraph {
 public:
  LexiconGraph() = default;

  /// Builds a graph from synsets whose hyponym lists may be empty; hyponym
  /// edges are completed from hypernyms (and vice versa). Throws LexiconError
  /// on duplicate ids, dangling edges, self-loops or noun hypernym cycles.
  /// `lemma_order`, when given, fixes sense order per (lemma, pos); lemmas
  /// missing from it fall back to synset order.
  static LexiconGraph from_synsets(
      std::vector<Synset> synsets, LoadReport* report = nullptr,
      const std::vector<std::pair<std::pair<std::string, Pos>, std::vector<SynsetId>>>*
          lemma_order = nullptr);

  std::size_t size() const noexcept { return synsets_.size(); }
  bool empty() const noexcept { return synsets_.empty(); }
  bool contains(const SynsetId& id) const;

  /// Throws LexiconError for an unknown id.
  const Synset& synset(const SynsetId& id) const;

  std::span<const Synset> synsets() const noexcept { return synsets_; }

  /// Senses of `lemma` in stored order; all parts of speech (noun, verb,
  /// adjective, adverb order) when `pos` is empty. Spaces in multiword
  /// lemmas are treated as underscores.
  std::vector<SynsetId> lookup(std::string_view lemma, std::optional<Pos> pos = {}) const;
  bool has_lemma(std::string_view lemma, std::optional<Pos> pos = {}) const;

  /// 1-based position of `id` among the senses of `lemma`, or 0.
  std::size_t sense_number(const SynsetId& id, std::string_view lemma) const;

  std::vector<ClosureEntry> hypernym_closure(const SynsetId& id) const;
  std::vector<ClosureEntry> hyponym_closure(const SynsetId& id) const;
  std::set<SynsetId> coordinate_terms(const SynsetId& id) const;

  /// Shortest path length in edges over the undirected hypernym/hyponym
  /// graph; empty when the two synsets are disconnected.
  std::optional<std::size_t> semantic_distance(const SynsetId& a, const SynsetId& b) const;

 private:
  std::size_t index_of(const SynsetId& id) const;
  std::vector<ClosureEntry> closure(const SynsetId& id, bool upward) const;

  std::vector<Synset> synsets_;
  std::unordered_map<SynsetId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  // key: lemma + '\t' + pos code
  std::unordered_map<std::string, std::vector<std::size_t>> lemma_index_;
};

enum class LexiconFormat { wndb, simple };

std::optional<LexiconFormat> parse_lexicon_format(std::string_view text);

/// `wndb`: directory with index.<pos>/data.<pos> files. `simple`: TSV file,
/// one synset per line: id, pos, comma-separated lemmas, gloss,
/// comma-separated hypernym ids.
LexiconGraph load_lexicon(const std::filesystem::path& source, LexiconFormat format,
                          LoadReport* report = nullptr);

LexiconGraph parse_simple_lexicon(std::istream& in, const std::string& source_name = "<input>",
                                  LoadReport* report = nullptr);

}  // namespace affectont
