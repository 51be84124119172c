#include <affectont/lexicon.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace affectont {

char pos_code(Pos pos) {
  switch (pos) {
    case Pos::noun: return 'n';
    case Pos::verb: return 'v';
    case Pos::adjective: return 'a';
    case Pos::adverb: return 'r';
  }
  return '?';
}

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
  }
  return "unknown";
}

std::optional<Pos> parse_pos(std::string_view text) {
  const std::string t = to_lower(trim(text));
  if (t == "n" || t == "noun") return Pos::noun;
  if (t == "v" || t == "verb") return Pos::verb;
  if (t == "a" || t == "s" || t == "adj" || t == "adjective") return Pos::adjective;
  if (t == "r" || t == "adv" || t == "adverb") return Pos::adverb;
  return std::nullopt;
}

std::optional<LexiconFormat> parse_lexicon_format(std::string_view text) {
  if (text == "wndb") return LexiconFormat::wndb;
  if (text == "simple") return LexiconFormat::simple;
  return std::nullopt;
}

namespace {

constexpr Pos kAllPos[] = {Pos::noun, Pos::verb, Pos::adjective, Pos::adverb};

std::string normalize_lemma(std::string_view lemma) {
  std::string out = to_lower(trim(lemma));
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

std::string lemma_key(std::string_view lemma, Pos pos) {
  std::string key(lemma);
  key.push_back('\t');
  key.push_back(pos_code(pos));
  return key;
}

void push_unique(std::vector<std::size_t>& v, std::size_t x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

LexiconGraph LexiconGraph::from_synsets(
    std::vector<Synset> synsets, LoadReport* report,
    const std::vector<std::pair<std::pair<std::string, Pos>, std::vector<SynsetId>>>*
        lemma_order) {
  LexiconGraph g;
  g.synsets_ = std::move(synsets);
  const std::size_t n = g.synsets_.size();
  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = g.synsets_[i];
    if (s.id.empty()) throw LexiconError("synset with empty id");
    if (s.lemmas.empty()) throw LexiconError("synset " + s.id.str() + " has no lemmas");
    for (auto& lemma : s.lemmas) lemma = normalize_lemma(lemma);
    if (!g.index_.emplace(s.id, i).second) {
      throw LexiconError("duplicate synset id " + s.id.str());
    }
  }

  g.up_.assign(n, {});
  g.down_.assign(n, {});
  const auto resolve = [&](const Synset& from, const SynsetId& target) {
    auto it = g.index_.find(target);
    if (it == g.index_.end()) {
      throw LexiconError("synset " + from.id.str() + " points to missing synset " + target.str());
    }
    if (it->second == g.index_.at(from.id)) {
      throw LexiconError("synset " + from.id.str() + " is its own hypernym");
    }
    return it->second;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& h : g.synsets_[i].hypernyms) push_unique(g.up_[i], resolve(g.synsets_[i], h));
    for (const auto& h : g.synsets_[i].hyponyms) push_unique(g.down_[i], resolve(g.synsets_[i], h));
  }

  std::size_t repaired = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p : g.up_[i]) {
      if (std::find(g.down_[p].begin(), g.down_[p].end(), i) == g.down_[p].end()) {
        g.down_[p].push_back(i);
        ++repaired;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c : g.down_[i]) {
      if (std::find(g.up_[c].begin(), g.up_[c].end(), i) == g.up_[c].end()) {
        g.up_[c].push_back(i);
        ++repaired;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = g.synsets_[i];
    s.hypernyms.clear();
    s.hyponyms.clear();
    for (std::size_t p : g.up_[i]) s.hypernyms.push_back(g.synsets_[p].id);
    for (std::size_t c : g.down_[i]) s.hyponyms.push_back(g.synsets_[c].id);
  }

  // Noun hypernym cycle check (iterative DFS, three colors).
  std::vector<char> color(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != 0 || g.synsets_[root].pos != Pos::noun) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < g.up_[node].size()) {
        const std::size_t p = g.up_[node][next++];
        if (g.synsets_[p].pos != Pos::noun) continue;
        if (color[p] == 1) {
          throw LexiconError("noun hypernym cycle through synset " + g.synsets_[p].id.str());
        }
        if (color[p] == 0) {
          color[p] = 1;
          stack.emplace_back(p, 0);
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }

  if (lemma_order != nullptr) {
    for (const auto& [key, ids] : *lemma_order) {
      auto& bucket = g.lemma_index_[lemma_key(normalize_lemma(key.first), key.second)];
      for (const auto& id : ids) {
        auto it = g.index_.find(id);
        if (it == g.index_.end()) {
          throw LexiconError("index entry for '" + key.first + "' names missing synset " + id.str());
        }
        push_unique(bucket, it->second);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& lemma : g.synsets_[i].lemmas) {
      push_unique(g.lemma_index_[lemma_key(lemma, g.synsets_[i].pos)], i);
    }
  }

  if (report != nullptr) {
    report->synsets = n;
    report->repaired_edges += repaired;
  }
  return g;
}

bool LexiconGraph::contains(const SynsetId& id) const { return index_.contains(id); }

std::size_t LexiconGraph::index_of(const SynsetId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw LexiconError("unknown synset " + id.str());
  return it->second;
}

const Synset& LexiconGraph::synset(const SynsetId& id) const { return synsets_[index_of(id)]; }

std::vector<SynsetId> LexiconGraph::lookup(std::string_view lemma, std::optional<Pos> pos) const {
  const std::string key = normalize_lemma(lemma);
  std::vector<SynsetId> out;
  for (Pos p : kAllPos) {
    if (pos && *pos != p) continue;
    auto it = lemma_index_.find(lemma_key(key, p));
    if (it == lemma_index_.end()) continue;
    for (std::size_t i : it->second) out.push_back(synsets_[i].id);
  }
  return out;
}

bool LexiconGraph::has_lemma(std::string_view lemma, std::optional<Pos> pos) const {
  const std::string key = normalize_lemma(lemma);
  for (Pos p : kAllPos) {
    if (pos && *pos != p) continue;
    if (lemma_index_.contains(lemma_key(key, p))) return true;
  }
  return false;
}

std::size_t LexiconGraph::sense_number(const SynsetId& id, std::string_view lemma) const {
  const auto senses = lookup(lemma, synset(id).pos);
  auto it = std::find(senses.begin(), senses.end(), id);
  return it == senses.end() ? 0 : static_cast<std::size_t>(it - senses.begin()) + 1;
}

std::vector<ClosureEntry> LexiconGraph::closure(const SynsetId& id, bool upward) const {
  const std::size_t start = index_of(id);
  const auto& edges = upward ? up_ : down_;
  std::vector<std::size_t> depth(synsets_.size(), 0);
  std::vector<char> seen(synsets_.size(), 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  std::vector<ClosureEntry> out;
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    for (std::size_t next : edges[node]) {
      if (seen[next]) continue;
      seen[next] = 1;
      depth[next] = depth[node] + 1;
      out.push_back({synsets_[next].id, depth[next]});
      queue.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [](const ClosureEntry& a, const ClosureEntry& b) {
    return std::tie(a.depth, a.id) < std::tie(b.depth, b.id);
  });
  return out;
}

std::vector<ClosureEntry> LexiconGraph::hypernym_closure(const SynsetId& id) const {
  return closure(id, true);
}

std::vector<ClosureEntry> LexiconGraph::hyponym_closure(const SynsetId& id) const {
  return closure(id, false);
}

std::set<SynsetId> LexiconGraph::coordinate_terms(const SynsetId& id) const {
  const std::size_t self = index_of(id);
  std::set<SynsetId> out;
  for (std::size_t parent : up_[self]) {
    for (std::size_t sibling : down_[parent]) {
      if (sibling != self) out.insert(synsets_[sibling].id);
    }
  }
  return out;
}

std::optional<std::size_t> LexiconGraph::semantic_distance(const SynsetId& a,
                                                           const SynsetId& b) const {
  const std::size_t from = index_of(a);
  const std::size_t to = index_of(b);
  if (from == to) return 0;
  std::vector<std::size_t> dist(synsets_.size(), 0);
  std::vector<char> seen(synsets_.size(), 0);
  std::deque<std::size_t> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    for (const auto* edges : {&up_[node], &down_[node]}) {
      for (std::size_t next : *edges) {
        if (seen[next]) continue;
        dist[next] = dist[node] + 1;
        if (next == to) return dist[next];
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Simple TSV format

LexiconGraph parse_simple_lexicon(std::istream& in, const std::string& source_name,
                                  LoadReport* report) {
  std::vector<Synset> synsets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      return LexiconError(source_name + ":" + std::to_string(line_no) + ": " + why);
    };
    auto fields = split(line, '\t');
    if (fields.size() < 4 || fields.size() > 5) {
      throw fail("expected 5 tab-separated fields, found " + std::to_string(fields.size()));
    }
    Synset s;
    s.id = SynsetId(std::string(trim(fields[0])));
    if (s.id.empty()) throw fail("empty synset id");
    auto pos = parse_pos(fields[1]);
    if (!pos) throw fail("unknown part of speech '" + fields[1] + "'");
    s.pos = *pos;
    for (const auto& lemma : split(fields[2], ',')) {
      if (!trim(lemma).empty()) s.lemmas.emplace_back(trim(lemma));
    }
    if (s.lemmas.empty()) throw fail("synset has no lemmas");
    s.gloss = std::string(trim(fields[3]));
    if (fields.size() == 5) {
      for (const auto& h : split(fields[4], ',')) {
        if (!trim(h).empty()) s.hypernyms.emplace_back(std::string(trim(h)));
      }
    }
    synsets.push_back(std::move(s));
  }
  LoadReport local;
  auto graph = LexiconGraph::from_synsets(std::move(synsets), &local);
  // Hyponyms are derived by inversion in this format, so nothing was repaired.
  local.repaired_edges = 0;
  if (report != nullptr) *report = local;
  return graph;
}

// ---------------------------------------------------------------------------
// WordNet database files

namespace {

constexpr std::pair<Pos, const char*> kWndbFiles[] = {
    {Pos::noun, "noun"}, {Pos::verb, "verb"}, {Pos::adjective, "adj"}, {Pos::adverb, "adv"}};

SynsetId wndb_id(std::string_view offset, char pos) {
  if (pos == 's') pos = 'a';
  std::string id(offset);
  id.push_back('-');
  id.push_back(pos);
  return SynsetId(std::move(id));
}

std::string strip_adjective_marker(std::string word) {
  const auto paren = word.find('(');
  if (paren != std::string::npos && word.back() == ')') word.erase(paren);
  return word;
}

void parse_wndb_data(const std::filesystem::path& file, std::vector<Synset>& out,
                     LoadReport& report) {
  std::ifstream in(file);
  if (!in) throw LexiconError("cannot open " + file.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == ' ') continue;
    const auto fail = [&](const std::string& why) {
      return LexiconError(file.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    const auto bar = line.find(" | ");
    std::string gloss;
    std::string head = line;
    if (bar != std::string::npos) {
      gloss = std::string(trim(std::string_view(line).substr(bar + 3)));
      head = line.substr(0, bar);
    }
    std::istringstream fields(head);
    std::string offset, lex_filenum, ss_type, w_cnt_hex;
    if (!(fields >> offset >> lex_filenum >> ss_type >> w_cnt_hex)) throw fail("truncated synset record");
    if (ss_type.size() != 1 || !parse_pos(ss_type)) throw fail("bad synset type '" + ss_type + "'");
    std::size_t w_cnt = 0;
    try {
      w_cnt = std::stoul(w_cnt_hex, nullptr, 16);
    } catch (const std::exception&) {
      throw fail("bad word count '" + w_cnt_hex + "'");
    }
    Synset s;
    s.id = wndb_id(offset, ss_type[0]);
    s.pos = *parse_pos(ss_type);
    s.gloss = std::move(gloss);
    for (std::size_t i = 0; i < w_cnt; ++i) {
      std::string word, lex_id;
      if (!(fields >> word >> lex_id)) throw fail("truncated word list");
      s.lemmas.push_back(to_lower(strip_adjective_marker(word)));
    }
    std::string p_cnt_text;
    std::size_t p_cnt = 0;
    if (!(fields >> p_cnt_text) || !parse_size(p_cnt_text, p_cnt)) throw fail("bad pointer count");
    for (std::size_t i = 0; i < p_cnt; ++i) {
      std::string symbol, target, target_pos, source_target;
      if (!(fields >> symbol >> target >> target_pos >> source_target)) throw fail("truncated pointer list");
      if (target_pos.size() != 1 || !parse_pos(target_pos)) throw fail("bad pointer pos '" + target_pos + "'");
      if (symbol == "@" || symbol == "@i") {
        s.hypernyms.push_back(wndb_id(target, target_pos[0]));
      } else if (symbol == "~" || symbol == "~i") {
        s.hyponyms.push_back(wndb_id(target, target_pos[0]));
      } else {
        ++report.ignored_pointers;
      }
    }
    out.push_back(std::move(s));
  }
}

void parse_wndb_index(const std::filesystem::path& file, Pos pos,
                      std::vector<std::pair<std::pair<std::string, Pos>, std::vector<SynsetId>>>& out) {
  std::ifstream in(file);
  if (!in) throw LexiconError("cannot open " + file.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == ' ') continue;
    const auto fail = [&](const std::string& why) {
      return LexiconError(file.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    std::istringstream fields(line);
    std::string lemma, pos_text, synset_cnt_text, p_cnt_text;
    std::size_t synset_cnt = 0, p_cnt = 0;
    if (!(fields >> lemma >> pos_text >> synset_cnt_text >> p_cnt_text) ||
        !parse_size(synset_cnt_text, synset_cnt) || !parse_size(p_cnt_text, p_cnt)) {
      throw fail("malformed index entry");
    }
    std::string skip;
    for (std::size_t i = 0; i < p_cnt + 2; ++i) {
      if (!(fields >> skip)) throw fail("truncated index entry");
    }
    std::vector<SynsetId> ids;
    for (std::size_t i = 0; i < synset_cnt; ++i) {
      std::string offset;
      if (!(fields >> offset)) throw fail("truncated synset offsets");
      ids.push_back(wndb_id(offset, pos_code(pos)));
    }
    out.push_back({{lemma, pos}, std::move(ids)});
  }
}

}  // namespace

LexiconGraph load_lexicon(const std::filesystem::path& source, LexiconFormat format,
                          LoadReport* report) {
  if (format == LexiconFormat::simple) {
    std::ifstream in(source);
    if (!in) throw LexiconError("cannot open lexicon " + source.string());
    return parse_simple_lexicon(in, source.string(), report);
  }

  if (!std::filesystem::is_directory(source)) {
    throw LexiconError("WNDB lexicon path is not a directory: " + source.string());
  }
  LoadReport local;
  std::vector<Synset> synsets;
  std::vector<std::pair<std::pair<std::string, Pos>, std::vector<SynsetId>>> order;
  bool any = false;
  for (const auto& [pos, name] : kWndbFiles) {
    const auto data = source / (std::string("data.") + name);
    if (!std::filesystem::exists(data)) continue;
    any = true;
    parse_wndb_data(data, synsets, local);
    const auto index = source / (std::string("index.") + name);
    if (std::filesystem::exists(index)) parse_wndb_index(index, pos, order);
  }
  if (!any) throw LexiconError("no data.<pos> files in " + source.string());
  auto graph = LexiconGraph::from_synsets(std::move(synsets), &local, &order);
  if (report != nullptr) *report = local;
  return graph;
}

}  // namespace affectont
