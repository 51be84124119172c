#include <affectont/keyword.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>

namespace affectont {

std::string_view to_string(PosHint hint) {
  switch (hint) {
    case PosHint::noun: return "noun";
    case PosHint::verb: return "verb";
    case PosHint::adjective: return "adjective";
    case PosHint::adverb: return "adverb";
    case PosHint::relation: return "relation";
    case PosHint::unknown: return "unknown";
  }
  return "unknown";
}

PosHint to_hint(Pos pos) {
  switch (pos) {
    case Pos::noun: return PosHint::noun;
    case Pos::verb: return PosHint::verb;
    case Pos::adjective: return PosHint::adjective;
    case Pos::adverb: return PosHint::adverb;
  }
  return PosHint::unknown;
}

NormalizerTables NormalizerTables::defaults() {
  NormalizerTables t;
  t.abbreviations = {{"fem", "female"}, {"neu", "neutral"}, {"neut", "neutral"}};
  t.irregular_plurals = {
      {"women", "woman"}, {"men", "man"},       {"children", "child"}, {"babies", "baby"},
      {"people", "person"}, {"feet", "foot"},   {"teeth", "tooth"},    {"mice", "mouse"},
      {"geese", "goose"}, {"oxen", "ox"},       {"knives", "knife"},   {"wives", "wife"},
      {"wolves", "wolf"}, {"leaves", "leaf"},   {"lives", "life"},
  };
  t.relation_words = {"with", "without", "in", "into", "inside", "on", "at", "of",
                      "under", "over", "near", "by", "for", "from", "to", "behind"};
  return t;
}

std::map<std::string, std::string> parse_table(std::istream& in, const std::string& source_name) {
  std::map<std::string, std::string> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = to_lower(trim(body.substr(0, eq)));
    const std::string value = to_lower(trim(body.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": empty key or value");
    }
    table[key] = value;
  }
  return table;
}

std::map<std::string, std::string> load_table(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open table " + file.string());
  return parse_table(in, file.string());
}

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || static_cast<unsigned char>(c) >= 0x80;
}
bool is_hard_delimiter(char c) {
  return c == '&' || c == '/' || c == ',' || c == '+' || c == ';' || c == '|';
}

// A maximal run of word characters between delimiters.
struct RawChunk {
  std::string text;
  bool hard_before = false;
  bool before_slash = false;
  bool relation = false;  // a `W/` marker, text is "with"
};

std::vector<RawChunk> split_chunks(std::string_view raw) {
  std::vector<RawChunk> chunks;
  RawChunk current;
  bool pending_hard = false;
  const auto flush = [&]() {
    if (!current.text.empty()) {
      current.hard_before = current.hard_before || pending_hard;
      pending_hard = false;
      chunks.push_back(std::move(current));
    }
    current = RawChunk{};
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (is_word_char(c)) {
      current.text.push_back(c);
      continue;
    }
    if (c == '/') {
      const std::string& t = current.text;
      const bool w_alone = t == "w" || t == "W";
      const bool camel_w = t.size() >= 2 && t.back() == 'W' && is_lower(t[t.size() - 2]);
      if (w_alone || camel_w) {
        current.text.pop_back();
        flush();
        RawChunk with;
        with.text = "with";
        with.relation = true;
        with.hard_before = true;
        chunks.push_back(std::move(with));
        pending_hard = true;
        continue;
      }
      current.before_slash = true;
    }
    flush();
    if (is_hard_delimiter(c)) pending_hard = true;
  }
  flush();
  return chunks;
}

// CamelCase and letter/digit boundaries.
std::vector<std::string> camel_parts(std::string_view text) {
  std::vector<std::string> parts;
  std::string part;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!part.empty()) {
      const char prev = text[i - 1];
      const bool lower_upper = is_lower(prev) && is_upper(c);
      const bool acronym_end =
          is_upper(prev) && is_upper(c) && i + 1 < text.size() && is_lower(text[i + 1]);
      const bool digit_edge = is_digit(prev) != is_digit(c);
      if (lower_upper || acronym_end || digit_edge) {
        parts.push_back(std::move(part));
        part.clear();
      }
    }
    part.push_back(c);
  }
  if (!part.empty()) parts.push_back(std::move(part));
  return parts;
}

// Letter/digit boundaries only; case-independent.
std::vector<std::string> digit_runs(std::string_view text) {
  std::vector<std::string> runs;
  std::string run;
  for (char c : text) {
    if (!run.empty() && is_digit(run.back()) != is_digit(c)) {
      runs.push_back(std::move(run));
      run.clear();
    }
    run.push_back(c);
  }
  if (!run.empty()) runs.push_back(std::move(run));
  return runs;
}

void push_unique(std::vector<Lemma>& v, const Lemma& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

std::vector<Token> tokenize_raw(std::string_view raw) {
  const auto defaults = NormalizerTables::defaults();
  std::vector<Token> tokens;
  for (const auto& chunk : split_chunks(raw)) {
    if (chunk.relation) {
      tokens.push_back({"with", PosHint::relation});
      continue;
    }
    for (const auto& part : camel_parts(chunk.text)) {
      std::string text = to_lower(part);
      const PosHint hint =
          defaults.relation_words.contains(text) ? PosHint::relation : PosHint::unknown;
      tokens.push_back({std::move(text), hint});
    }
  }
  if (tokens.empty()) {
    throw KeywordError("keyword '" + std::string(raw) + "' contains no word characters");
  }
  return tokens;
}

std::string render(const NormalizedKeyword& keyword) {
  std::string out;
  const auto append = [&](const std::string& word) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  };
  for (const auto& m : keyword.modifiers) append(m.text);
  for (std::size_t i = 0; i < keyword.heads.size(); ++i) {
    if (i > 0) append("&");
    append(keyword.heads[i].text);
  }
  for (const auto& r : keyword.relations) append(r);
  return out;
}

KeywordNormalizer::KeywordNormalizer(const LexiconGraph& lexicon, NormalizerTables tables)
    : lexicon_(&lexicon), tables_(std::move(tables)) {
  for (const auto& s : lexicon.synsets()) {
    for (const auto& lemma : s.lemmas) {
      if (lemma.find('_') == std::string::npos) continue;
      std::string compact;
      std::size_t parts = 1;
      for (char c : lemma) {
        if (c == '_') ++parts;
        else compact.push_back(c);
      }
      compact_multiwords_.emplace(compact, lemma);
      max_multiword_parts_ = std::max(max_multiword_parts_, parts);
    }
  }
}

std::optional<Lemma> KeywordNormalizer::resolve_word(const std::string& word) const {
  for (Pos p : {Pos::noun, Pos::verb, Pos::adjective, Pos::adverb}) {
    if (lexicon_->has_lemma(word, p)) return Lemma{word, to_hint(p)};
  }
  if (auto it = compact_multiwords_.find(word); it != compact_multiwords_.end()) {
    return resolve_word(it->second);
  }
  return std::nullopt;
}

Lemma KeywordNormalizer::lemmatize(std::string_view token) const {
  std::string word = to_lower(trim(token));
  if (auto it = tables_.abbreviations.find(word); it != tables_.abbreviations.end()) {
    word = it->second;
    std::replace(word.begin(), word.end(), ' ', '_');
  }
  if (tables_.relation_words.contains(word)) return {word, PosHint::relation};

  const auto noun = [&](const std::string& w) -> std::optional<Lemma> {
    if (lexicon_->has_lemma(w, Pos::noun)) return Lemma{w, PosHint::noun};
    if (auto it = compact_multiwords_.find(w); it != compact_multiwords_.end()) {
      if (lexicon_->has_lemma(it->second, Pos::noun)) return Lemma{it->second, PosHint::noun};
    }
    return std::nullopt;
  };

  std::vector<std::string> singulars;
  if (auto it = tables_.irregular_plurals.find(word); it != tables_.irregular_plurals.end()) {
    singulars.push_back(it->second);
  }
  const auto ends_with = [&](std::string_view suffix) {
    return word.size() > suffix.size() + 1 && word.ends_with(suffix);
  };
  if (ends_with("ies")) singulars.push_back(word.substr(0, word.size() - 3) + "y");
  if (ends_with("ves")) {
    singulars.push_back(word.substr(0, word.size() - 3) + "f");
    singulars.push_back(word.substr(0, word.size() - 3) + "fe");
  }
  if (ends_with("es")) singulars.push_back(word.substr(0, word.size() - 2));
  if (ends_with("s") && !word.ends_with("ss")) singulars.push_back(word.substr(0, word.size() - 1));

  if (!singulars.empty() && tables_.irregular_plurals.contains(word)) {
    if (auto hit = noun(singulars.front())) return *hit;
  }
  if (auto hit = noun(word)) return *hit;
  for (const auto& s : singulars) {
    if (auto hit = noun(s)) return *hit;
  }
  if (auto hit = resolve_word(word)) return *hit;
  for (const auto& s : singulars) {
    if (auto hit = resolve_word(s)) return *hit;
  }
  if (word.size() >= 5 && word.ends_with("ing")) {
    const std::string stem = word.substr(0, word.size() - 3);
    std::vector<std::string> stems{stem, stem + "e"};
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) {
      stems.push_back(stem.substr(0, stem.size() - 1));
    }
    for (const auto& s : stems) {
      if (lexicon_->has_lemma(s, Pos::verb)) return {word, PosHint::verb};
    }
  }
  return {word, PosHint::unknown};
}

bool KeywordNormalizer::is_known_piece(const std::string& piece) const {
  if (tables_.abbreviations.contains(piece) || tables_.relation_words.contains(piece)) return true;
  return lemmatize(piece).pos != PosHint::unknown;
}

// Splits `chunk` into the fewest known pieces (ties: longest first piece).
// Empty when no full cover exists.
std::optional<std::vector<std::string>> KeywordNormalizer::segment(const std::string& chunk) const {
  const std::size_t n = chunk.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  // best[i]: fewest pieces covering chunk[i..n); next[i]: end of first piece.
  std::vector<std::size_t> best(n + 1, kNone), next(n + 1, kNone);
  best[n] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j > i; --j) {
      if (best[j] == kNone || best[j] + 1 >= best[i]) continue;
      if (is_known_piece(chunk.substr(i, j - i))) {
        best[i] = best[j] + 1;
        next[i] = j;
      }
    }
  }
  if (best[0] == kNone) return std::nullopt;
  std::vector<std::string> pieces;
  for (std::size_t i = 0; i < n; i = next[i]) pieces.push_back(chunk.substr(i, next[i] - i));
  return pieces;
}

NormalizedKeyword KeywordNormalizer::normalize(std::string_view raw) const {
  const auto chunks = split_chunks(raw);
  if (chunks.empty()) {
    throw KeywordError("keyword '" + std::string(raw) + "' contains no word characters");
  }

  std::vector<Piece> pieces;
  const auto add_words = [&](const std::vector<std::string>& words, bool hard) {
    for (const auto& w : words) {
      pieces.push_back({w, hard});
      hard = false;
    }
  };
  for (const auto& chunk : chunks) {
    if (chunk.relation) {
      pieces.push_back({"with", true});
      continue;
    }
    bool hard = chunk.hard_before;
    for (const auto& run : digit_runs(chunk.text)) {
      const std::string lower = to_lower(run);
      if (auto seg = segment(lower)) {
        add_words(*seg, hard);
      } else if (chunk.before_slash && lower.size() > 1 && lower.back() == 'w' &&
                 segment(lower.substr(0, lower.size() - 1))) {
        add_words(*segment(lower.substr(0, lower.size() - 1)), hard);
        pieces.push_back({"with", true});
      } else {
        for (const auto& part : camel_parts(run)) {
          const std::string p = to_lower(part);
          add_words(segment(p).value_or(std::vector<std::string>{p}), hard);
          hard = false;
        }
      }
      hard = false;
    }
  }

  // Abbreviation expansion (may yield several words).
  std::vector<Piece> expanded;
  for (auto& piece : pieces) {
    auto it = tables_.abbreviations.find(piece.text);
    if (it == tables_.abbreviations.end()) {
      expanded.push_back(std::move(piece));
      continue;
    }
    bool hard = piece.hard_break_before;
    for (const auto& word : split(it->second, ' ')) {
      if (word.empty()) continue;
      expanded.push_back({word, hard});
      hard = false;
    }
  }

  // Greedy multiword matching over adjacent pieces within a phrase.
  struct Resolved {
    Lemma lemma;
    bool hard_break_before;
  };
  std::vector<Resolved> resolved;
  for (std::size_t i = 0; i < expanded.size();) {
    std::size_t taken = 1;
    std::optional<Lemma> lemma;
    for (std::size_t k = std::min(max_multiword_parts_, expanded.size() - i); k >= 2; --k) {
      bool contiguous = true;
      std::string joined = expanded[i].text;
      for (std::size_t m = i + 1; m < i + k; ++m) {
        if (expanded[m].hard_break_before || tables_.relation_words.contains(expanded[m].text)) {
          contiguous = false;
          break;
        }
        joined += "_" + expanded[m].text;
      }
      if (!contiguous || tables_.relation_words.contains(expanded[i].text)) continue;
      Lemma candidate = lemmatize(joined);
      if (candidate.pos != PosHint::unknown) {
        lemma = candidate;
        taken = k;
        break;
      }
    }
    if (!lemma) lemma = lemmatize(expanded[i].text);
    resolved.push_back({*lemma, expanded[i].hard_break_before});
    i += taken;
  }

  NormalizedKeyword out;
  out.raw = std::string(raw);
  std::vector<Lemma> phrase;
  const auto close_phrase = [&]() {
    auto head = std::find_if(phrase.rbegin(), phrase.rend(),
                             [](const Lemma& l) { return l.pos == PosHint::noun; });
    for (auto it = phrase.begin(); it != phrase.end(); ++it) {
      if (head != phrase.rend() && &*it == &*head) push_unique(out.heads, *it);
    }
    for (auto it = phrase.begin(); it != phrase.end(); ++it) {
      if (head != phrase.rend() && &*it == &*head) continue;
      if (std::find(out.heads.begin(), out.heads.end(), *it) != out.heads.end()) continue;
      push_unique(out.modifiers, *it);
    }
    phrase.clear();
  };
  for (const auto& r : resolved) {
    if (r.lemma.pos == PosHint::relation) {
      close_phrase();
      out.relations.push_back(r.lemma.text);
      continue;
    }
    if (r.hard_break_before) close_phrase();
    phrase.push_back(r.lemma);
  }
  close_phrase();
  // A word that became a head in a later phrase is not also a modifier.
  std::erase_if(out.modifiers, [&](const Lemma& m) {
    return std::find(out.heads.begin(), out.heads.end(), m) != out.heads.end();
  });

  if (out.heads.empty()) {
    std::string listing;
    for (const auto& r : resolved) {
      if (!listing.empty()) listing += ", ";
      listing += r.lemma.text + "/" + std::string(to_string(r.lemma.pos));
    }
    throw KeywordError("no head noun in keyword '" + out.raw + "' (tokens: " + listing + ")");
  }
  return out;
}

Lemma lemmatize_token(const Token& token, const LexiconGraph& lexicon) {
  return KeywordNormalizer(lexicon).lemmatize(token.text);
}

NormalizedKeyword normalize_keyword(std::string_view raw, const LexiconGraph& lexicon) {
  return KeywordNormalizer(lexicon).normalize(raw);
}

}  // namespace affectont
