#include <affectont/config.hpp>

#include "text_util.hpp"

#include <fstream>
#include <sstream>

namespace affectont {

namespace {

enum class Section { none, cut, exclude, disjoint, abbreviations, irregulars, relation_words, predicates, relations };

Section section_named(std::string_view name) {
  if (name == "cut") return Section::cut;
  if (name == "exclude") return Section::exclude;
  if (name == "disjoint") return Section::disjoint;
  if (name == "abbreviations") return Section::abbreviations;
  if (name == "irregulars") return Section::irregulars;
  if (name == "relation_words") return Section::relation_words;
  if (name == "predicates") return Section::predicates;
  if (name == "relations") return Section::relations;
  return Section::none;
}

std::vector<std::string> words(std::string_view body) {
  std::istringstream in{std::string(body)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

PipelineConfig parse_config(std::istream& in, const std::string& source_name) {
  PipelineConfig cfg;
  Section section = Section::none;
  bool cut_replaced = false;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& message) {
    throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + message);
  };
  const auto key_value = [&](std::string_view body) {
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    auto key = to_lower(trim(body.substr(0, eq)));
    auto value = to_lower(trim(body.substr(eq + 1)));
    if (key.empty() || value.empty()) fail("empty key or value");
    return std::pair{std::move(key), std::move(value)};
  };

  while (std::getline(in, line)) {
    ++line_no;
    // '#' opens a comment only at the start of a word; concept ids contain it.
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    const auto body = trim(line);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']') fail("unterminated section header");
      section = section_named(trim(body.substr(1, body.size() - 2)));
      if (section == Section::none) fail("unknown section " + std::string(body));
      if (section == Section::cut && !cut_replaced) {
        cfg.prune.cut_lemmas.clear();
        cut_replaced = true;
      }
      continue;
    }

    switch (section) {
      case Section::none: {
        auto [key, value] = key_value(body);
        if (key != "min_depth") fail("unknown setting '" + key + "'");
        if (!parse_size(value, cfg.prune.min_depth_from_root)) fail("min_depth must be a non-negative integer");
        break;
      }
      case Section::cut:
        cfg.prune.cut_lemmas.insert(to_lower(body));
        break;
      case Section::exclude:
        cfg.prune.exclusion_list.insert(std::string(body));
        break;
      case Section::disjoint: {
        const auto bar = body.find('|');
        if (bar == std::string_view::npos) fail("expected 'a | b'");
        std::string a(trim(body.substr(0, bar)));
        std::string b(trim(body.substr(bar + 1)));
        if (a.empty() || b.empty() || b.find('|') != std::string::npos) fail("expected 'a | b'");
        cfg.disjoint.emplace_back(std::move(a), std::move(b));
        break;
      }
      case Section::abbreviations: {
        auto [key, value] = key_value(body);
        cfg.tables.abbreviations[key] = value;
        break;
      }
      case Section::irregulars: {
        auto [key, value] = key_value(body);
        cfg.tables.irregular_plurals[key] = value;
        break;
      }
      case Section::relation_words:
        cfg.tables.relation_words.insert(to_lower(body));
        break;
      case Section::predicates:
        cfg.predicates.insert(std::string(body));
        break;
      case Section::relations: {
        auto parts = words(body);
        if (parts.size() != 3) fail("expected 'subject predicate object'");
        if (!cfg.predicates.contains(parts[1])) fail("predicate '" + parts[1] + "' is not declared in [predicates]");
        cfg.relations.push_back({parts[0], parts[1], parts[2]});
        break;
      }
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  return parse_config(in, file.string());
}

}  // namespace affectont
