#pragma once

// Free-text keyword repair: tokenization of compound tags, lemmatization
// against a lexicon and head/modifier decomposition.

#include <affectont/common.hpp>
#include <affectont/lexicon.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace affectont {

enum class PosHint { noun, verb, adjective, adverb, relation, unknown };

std::string_view to_string(PosHint hint);
PosHint to_hint(Pos pos);

struct Token {
  std::string text;
  PosHint pos_hint = PosHint::unknown;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Lemma {
  std::string text;
  PosHint pos = PosHint::unknown;

  friend bool operator==(const Lemma&, const Lemma&) = default;
  friend auto operator<=>(const Lemma&, const Lemma&) = default;
};

struct NormalizedKeyword {
  std::string raw;
  std::vector<Lemma> heads;
  std::vector<Lemma> modifiers;
  std::vector<std::string> relations;

  /// Equality of the decomposition, ignoring `raw`.
  bool same_decomposition(const NormalizedKeyword& other) const {
    return heads == other.heads && modifiers == other.modifiers && relations == other.relations;
  }
};

/// Canonical text form: modifiers, heads joined by " & ", then relations.
/// Normalizing it reproduces the same decomposition.
std::string render(const NormalizedKeyword& keyword);

class KeywordError : public Error {
 public:
  using Error::Error;
};

/// Abbreviation (`short=expansion`) and irregular plural (`plural=singular`)
/// tables. Expansions may contain several space-separated words.
struct NormalizerTables {
  std::map<std::string, std::string> abbreviations;
  std::map<std::string, std::string> irregular_plurals;
  std::set<std::string> relation_words;

  /// Seed tables: the abbreviations fem, neu and neut, common English
  /// irregular plurals and a small set of prepositions.
  static NormalizerTables defaults();
};

/// Reads `key=value` lines; `#` starts a comment. Keys and values are
/// lowercased. Throws ConfigError with the line number on malformed lines.
std::map<std::string, std::string> parse_table(std::istream& in, const std::string& source_name);
std::map<std::string, std::string> load_table(const std::filesystem::path& file);

/// Splits a raw keyword on `&`, `/`, whitespace, `-`, `_`, `,`, CamelCase
/// (lower to upper) and letter/digit boundaries. `W/` after a word or at the
/// start becomes the relation token "with". Throws KeywordError when nothing
/// but delimiters remains.
std::vector<Token> tokenize_raw(std::string_view raw);

/// Lexicon-backed normalizer. Holds a reference to the lexicon, which must
/// outlive it; read-only after construction.
class KeywordNormalizer {
 public:
  explicit KeywordNormalizer(const LexiconGraph& lexicon,
                             NormalizerTables tables = NormalizerTables::defaults());

  /// Abbreviations first, then irregular plurals, exact lexicon entries,
  /// suffix singularization (-ies, -ves, -es, -s) and -ing participles of
  /// known verbs. Noun readings win over verb, adjective and adverb.
  /// Unknown words come back with PosHint::unknown.
  Lemma lemmatize(std::string_view token) const;

  /// Throws KeywordError when no head noun can be derived.
  NormalizedKeyword normalize(std::string_view raw) const;

  const NormalizerTables& tables() const noexcept { return tables_; }

 private:
  struct Piece {
    std::string text;
    bool hard_break_before = false;
  };

  std::optional<Lemma> resolve_word(const std::string& word) const;
  bool is_known_piece(const std::string& piece) const;
  std::optional<std::vector<std::string>> segment(const std::string& chunk) const;

  const LexiconGraph* lexicon_;
  NormalizerTables tables_;
  // Multiword lemmas with the underscores removed, e.g. "cliffdiver".
  std::unordered_map<std::string, std::string> compact_multiwords_;
  std::size_t max_multiword_parts_ = 1;
};

Lemma lemmatize_token(const Token& token, const LexiconGraph& lexicon);
NormalizedKeyword normalize_keyword(std::string_view raw, const LexiconGraph& lexicon);

}  // namespace affectont
