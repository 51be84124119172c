#include "cli.hpp"

#include "pipeline.hpp"

#include <affectont/dublin_core.hpp>
#include <affectont/query.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace affectont::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::vector<std::string> keywords;
  std::string out_path;
  bool json = false;
  std::string config_path;
  std::string lexicon_path;
  std::string lexicon_format;
  std::string annotations_path;
  std::string base_iri{kDefaultBaseIri};
  bool lenient = false;
  std::size_t sense = 1;
  std::string expr;
  std::string pl_window;
  std::string ar_window;
  std::string scope = "all";
  bool allow_repeat = false;
  std::vector<std::string> waypoints;
  bool mime = false;
  std::string db_name = "IAPS";
  std::string creator;
  std::string contributor;
  std::string date;
  std::vector<std::string> ids;
  std::string manifest_path;
};

/// Data sink: the --out file when given, the output stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Error("cannot open output file " + path);
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_ontology_file(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".owl" || ext == ".rdf";
}

double parse_number(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("invalid number '" + std::string(text) + "' in " + what);
  }
  return v;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(flag + " expects a:b, got '" + text + "'");
  return {parse_number(std::string_view(text).substr(0, colon), flag),
          parse_number(std::string_view(text).substr(colon + 1), flag)};
}

QueryScope parse_scope(const std::string& text) {
  if (text == "primary") return QueryScope::primary_only;
  if (text == "all") return QueryScope::primary_and_secondary;
  throw UsageError("--scope must be primary or all");
}

PipelineConfig config_for(const Options& o) {
  return o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
}

std::vector<Stimulus> read_manifest(const std::string& path, bool lenient, std::ostream& err) {
  auto parsed = load_manifest(path, ManifestOptions{lenient});
  for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
  for (const auto& e : parsed.errors) err << path << ":" << e.line << ": " << e.message << '\n';
  return std::move(parsed.stimuli);
}

LexiconGraph lexicon_for(const Options& o) {
  if (o.lexicon_path.empty()) throw UsageError("--lexicon is required for this input");
  LexiconSource source{o.lexicon_path, std::nullopt};
  if (!o.lexicon_format.empty()) {
    source.format = parse_lexicon_format(o.lexicon_format);
    if (!source.format) throw UsageError("--lexicon-format must be wndb or simple");
  }
  return open_lexicon(source);
}

std::optional<AnnotationStore> extra_annotations(const Options& o) {
  if (o.annotations_path.empty()) return std::nullopt;
  return load_annotations(o.annotations_path);
}

Corpus load_corpus(const Options& o, std::ostream& err) {
  if (is_ontology_file(o.input)) return corpus_from_model(parse_owl(read_file(o.input)));
  const auto lexicon = lexicon_for(o);
  const auto extra = extra_annotations(o);
  return annotate(read_manifest(o.input, o.lenient, err), lexicon, config_for(o),
                  extra ? &*extra : nullptr);
}

nlohmann::ordered_json lemma_json(const Lemma& l) {
  return {{"lemma", l.text}, {"pos", std::string(to_string(l.pos))}};
}

nlohmann::ordered_json keyword_json(const NormalizedKeyword& nk) {
  nlohmann::ordered_json j;
  j["raw"] = nk.raw;
  j["heads"] = nlohmann::ordered_json::array();
  for (const auto& h : nk.heads) j["heads"].push_back(lemma_json(h));
  j["modifiers"] = nlohmann::ordered_json::array();
  for (const auto& m : nk.modifiers) j["modifiers"].push_back(lemma_json(m));
  j["relations"] = nk.relations;
  j["canonical"] = render(nk);
  return j;
}

nlohmann::ordered_json stimulus_json(const Stimulus& s) {
  return {{"id", s.id.str()},
          {"pleasure", s.affect.pleasure},
          {"arousal", s.affect.arousal},
          {"resource", s.resource}};
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  const auto stimuli = read_manifest(o.input, o.lenient, err);
  Sink sink(o.out_path, out);
  if (o.json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& s : stimuli) {
      auto item = stimulus_json(s);
      item["keyword"] = s.raw_keyword;
      item["media_kind"] = s.media_kind ? std::string(to_string(*s.media_kind)) : "";
      j.push_back(std::move(item));
    }
    *sink << j.dump(2) << '\n';
  } else {
    write_manifest(*sink, stimuli);
  }
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
  const auto stats = compute_stats(read_manifest(o.input, o.lenient, err));
  Sink sink(o.out_path, out);
  if (o.json) {
    *sink << stats_to_json(stats) << '\n';
  } else {
    write_stats_table(*sink, stats);
  }
  return kExitOk;
}

int cmd_normalize(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> raws = o.keywords;
  if (!o.manifest_path.empty()) {
    for (const auto& s : read_manifest(o.manifest_path, o.lenient, err)) raws.push_back(s.raw_keyword);
  }
  if (raws.empty()) throw UsageError("normalize needs keywords or --manifest");
  const auto lexicon = lexicon_for(o);
  const KeywordNormalizer normalizer(lexicon, config_for(o).tables);

  Sink sink(o.out_path, out);
  auto j = nlohmann::ordered_json::array();
  int status = kExitOk;
  for (const auto& raw : raws) {
    try {
      const auto nk = normalizer.normalize(raw);
      if (o.json) {
        j.push_back(keyword_json(nk));
      } else {
        *sink << raw << '\t' << render(nk) << '\n';
      }
    } catch (const KeywordError& e) {
      err << "keyword '" << raw << "': " << e.what() << '\n';
      status = kExitDataError;
    }
  }
  if (o.json) *sink << j.dump(2) << '\n';
  return status;
}

int cmd_enrich(const Options& o, std::ostream& out, std::ostream&) {
  const auto lexicon = lexicon_for(o);
  const KeywordNormalizer normalizer(lexicon, config_for(o).tables);
  const auto nk = normalizer.normalize(o.input);
  const Lemma& head = nk.heads.front();
  const auto senses = lexicon.lookup(head.text, Pos::noun);
  if (senses.empty()) throw KeywordError("head '" + head.text + "' has no noun sense");
  if (o.sense == 0 || o.sense > senses.size()) {
    throw UsageError("--sense " + std::to_string(o.sense) + " out of range; '" + head.text +
                     "' has " + std::to_string(senses.size()) + " noun sense(s)");
  }
  const Synset& syn = lexicon.synset(senses[o.sense - 1]);
  const auto label = [&](const SynsetId& id) { return lexicon.synset(id).lemmas.front(); };
  const auto hypernyms = lexicon.hypernym_closure(syn.id);
  const auto hyponyms = lexicon.hyponym_closure(syn.id);
  const auto coordinates = lexicon.coordinate_terms(syn.id);

  Sink sink(o.out_path, out);
  if (o.json) {
    nlohmann::ordered_json j;
    j["keyword"] = keyword_json(nk);
    j["synset"] = syn.id.str();
    j["sense"] = o.sense;
    j["senses"] = senses.size();
    j["lemmas"] = syn.lemmas;
    j["gloss"] = syn.gloss;
    const auto closure_json = [&](const std::vector<ClosureEntry>& entries) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& e : entries) {
        arr.push_back({{"synset", e.id.str()}, {"lemma", label(e.id)}, {"depth", e.depth}});
      }
      return arr;
    };
    j["hypernyms"] = closure_json(hypernyms);
    j["coordinate_terms"] = nlohmann::ordered_json::array();
    for (const auto& c : coordinates) {
      j["coordinate_terms"].push_back({{"synset", c.str()}, {"lemma", label(c)}});
    }
    j["hyponyms"] = closure_json(hyponyms);
    *sink << j.dump(2) << '\n';
    return kExitOk;
  }
  *sink << "keyword: " << nk.raw << '\n'
        << "normalized: " << render(nk) << '\n'
        << "synset: " << syn.id << " (sense " << o.sense << " of " << senses.size() << ")\n"
        << "lemmas:";
  for (const auto& l : syn.lemmas) *sink << ' ' << l;
  *sink << "\ngloss: " << syn.gloss << "\nhypernyms:\n";
  for (const auto& e : hypernyms) *sink << "  " << e.depth << ' ' << e.id << ' ' << label(e.id) << '\n';
  *sink << "coordinate terms:\n";
  for (const auto& c : coordinates) *sink << "  " << c << ' ' << label(c) << '\n';
  *sink << "hyponyms:\n";
  for (const auto& e : hyponyms) *sink << "  " << e.depth << ' ' << e.id << ' ' << label(e.id) << '\n';
  return kExitOk;
}

int cmd_build_ontology(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = config_for(o);
  const auto lexicon = lexicon_for(o);
  const auto extra = extra_annotations(o);
  const Corpus corpus =
      annotate(read_manifest(o.input, o.lenient, err), lexicon, config, extra ? &*extra : nullptr);

  std::vector<std::pair<ConceptId, ConceptId>> pairs;
  for (const auto& [a, b] : config.disjoint) {
    const auto ca = resolve_concept(corpus.taxonomy, a);
    const auto cb = resolve_concept(corpus.taxonomy, b);
    if (ca && cb) {
      pairs.emplace_back(*ca, *cb);
    } else {
      err << "note: disjoint pair " << a << " | " << b << " is outside the taxonomy\n";
    }
  }
  for (const auto& v : disjointness_audit(corpus.taxonomy, pairs)) {
    err << "warning: " << v.node << " descends from disjoint " << v.first << " and " << v.second << '\n';
  }

  const auto model = build_model(corpus.taxonomy, corpus.stimuli, corpus.store, corpus.relations,
                                 corpus.predicates, o.base_iri);
  const auto report = validate_model(model);
  if (!report.notes.empty()) {
    err << "note: " << report.notes.size() << " stimulus individual(s) have no secondary meaning\n";
  }
  const std::string document = serialize_owl(model);
  Sink sink(o.out_path, out);
  *sink << document;
  return kExitOk;
}

int cmd_emit_dc(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.date.empty()) throw UsageError("--date YYYY-MM-DD is required");
  const CalendarDate date = CalendarDate::parse(o.date);
  auto stimuli = read_manifest(o.input, o.lenient, err);
  if (!o.ids.empty()) {
    std::vector<Stimulus> selected;
    for (const auto& id : o.ids) {
      auto it = std::find_if(stimuli.begin(), stimuli.end(),
                             [&](const Stimulus& s) { return s.id.str() == id; });
      if (it == stimuli.end()) throw DublinCoreError("stimulus " + id + " is not in the manifest");
      selected.push_back(*it);
    }
    stimuli = std::move(selected);
  }
  std::vector<DublinCoreRecord> records;
  for (const auto& s : stimuli) {
    records.push_back(derive_record(s, o.db_name, o.creator, o.contributor, date,
                                    o.mime ? FormatStyle::mime : FormatStyle::word));
  }
  if (o.out_path.empty()) {
    for (const auto& r : records) out << serialize_dc(r);
  } else {
    for (const auto& path : write_dc_batch(records, o.out_path)) err << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

std::set<StimulusId> windowed(const Options& o, std::set<StimulusId> ids, const StimulusIndex& index) {
  if (o.pl_window.empty() && o.ar_window.empty()) return ids;
  AffectWindow window;
  if (!o.pl_window.empty()) {
    std::tie(window.pleasure_min, window.pleasure_max) = parse_range(o.pl_window, "--pl");
  }
  if (!o.ar_window.empty()) {
    std::tie(window.arousal_min, window.arousal_max) = parse_range(o.ar_window, "--ar");
  }
  try {
    window.validate();
  } catch (const QueryError& e) {
    throw UsageError(e.what());
  }
  return affect_filter(ids, index, window);
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  const QueryExpr expr = parse_query(o.expr);
  const QueryScope scope = parse_scope(o.scope);
  const Corpus corpus = load_corpus(o, err);
  const auto index = index_stimuli(corpus.stimuli);
  const auto ids = windowed(o, evaluate_query(expr, corpus.store, corpus.taxonomy, scope), index);

  Sink sink(o.out_path, out);
  if (o.json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& id : ids) j.push_back(stimulus_json(index.at(id)));
    *sink << j.dump(2) << '\n';
  } else {
    for (const auto& id : ids) *sink << id << '\n';
  }
  return kExitOk;
}

Waypoint parse_waypoint(const std::string& text) {
  const auto colon = text.find(':');
  const std::string point = text.substr(0, colon);
  const auto comma = point.find(',');
  if (comma == std::string::npos) {
    throw UsageError("--waypoint expects pleasure,arousal[:query], got '" + text + "'");
  }
  Waypoint w;
  w.target.pleasure = parse_number(std::string_view(point).substr(0, comma), "--waypoint");
  w.target.arousal = parse_number(std::string_view(point).substr(comma + 1), "--waypoint");
  if (colon != std::string::npos) w.constraint = parse_query(text.substr(colon + 1));
  return w;
}

int cmd_scenario(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<Waypoint> waypoints;
  for (const auto& text : o.waypoints) waypoints.push_back(parse_waypoint(text));
  ScenarioOptions options;
  options.allow_repeat = o.allow_repeat;
  options.scope = parse_scope(o.scope);
  const Corpus corpus = load_corpus(o, err);
  const auto index = index_stimuli(corpus.stimuli);
  const auto chosen = assemble_scenario(waypoints, corpus.store, corpus.taxonomy, index, options);

  Sink sink(o.out_path, out);
  auto j = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const Stimulus& s = index.at(chosen[i]);
    const double distance = std::hypot(s.affect.pleasure - waypoints[i].target.pleasure,
                                       s.affect.arousal - waypoints[i].target.arousal);
    if (o.json) {
      auto item = stimulus_json(s);
      item["waypoint"] = i + 1;
      item["distance"] = distance;
      j.push_back(std::move(item));
    } else {
      std::ostringstream d;
      d.setf(std::ios::fixed);
      d.precision(4);
      d << distance;
      *sink << (i + 1) << '\t' << s.id << '\t' << s.affect.pleasure << '\t' << s.affect.arousal << '\t'
            << d.str() << '\n';
    }
  }
  if (o.json) *sink << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Ontology-based annotation of affective multimedia stimuli", "affectont"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Pipeline configuration file")->check(CLI::ExistingFile);
  };
  const auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", o.out_path, "Write data here"); };
  const auto json_opt = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
  const auto lexicon_opts = [&](CLI::App* sub) {
    sub->add_option("--lexicon", o.lexicon_path, "Lexicon file (simple) or WNDB directory")
        ->check(CLI::ExistingPath);
    sub->add_option("--lexicon-format", o.lexicon_format, "wndb or simple")
        ->check(CLI::IsMember({"wndb", "simple"}));
  };
  const auto lenient_opt = [&](CLI::App* sub) {
    sub->add_flag("--lenient", o.lenient, "Skip malformed manifest rows instead of failing");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a manifest and print its canonical form");
  ingest->add_option("manifest", o.input)->required()->check(CLI::ExistingFile);
  common(ingest), out_opt(ingest), json_opt(ingest), lenient_opt(ingest);

  auto* stats = app.add_subcommand("stats", "Keyword statistics of a manifest");
  stats->add_option("manifest", o.input)->required()->check(CLI::ExistingFile);
  common(stats), out_opt(stats), json_opt(stats), lenient_opt(stats);

  auto* normalize = app.add_subcommand("normalize", "Decompose raw keywords");
  normalize->add_option("keywords", o.keywords);
  normalize->add_option("--manifest", o.manifest_path, "Normalize every manifest keyword")
      ->check(CLI::ExistingFile);
  common(normalize), out_opt(normalize), json_opt(normalize), lexicon_opts(normalize),
      lenient_opt(normalize);

  auto* enrich = app.add_subcommand("enrich", "Show the lexical neighbourhood of a keyword");
  enrich->add_option("keyword", o.input)->required();
  enrich->add_option("--sense", o.sense, "1-based noun sense of the first head")->capture_default_str();
  common(enrich), out_opt(enrich), json_opt(enrich), lexicon_opts(enrich);

  auto* build = app.add_subcommand("build-ontology", "Emit the OWL ontology for a manifest");
  build->add_option("manifest", o.input)->required()->check(CLI::ExistingFile);
  build->add_option("--annotations", o.annotations_path, "Folksonomy JSON store")
      ->check(CLI::ExistingFile);
  build->add_option("--base-iri", o.base_iri, "Ontology base IRI")->capture_default_str();
  common(build), out_opt(build), lexicon_opts(build), lenient_opt(build);

  auto* dc = app.add_subcommand("emit-dc", "Dublin Core records for manifest stimuli");
  dc->add_option("manifest", o.input)->required()->check(CLI::ExistingFile);
  dc->add_option("--date", o.date, "Record date, YYYY-MM-DD");
  dc->add_option("--db", o.db_name, "Source database name (dc:type)")->capture_default_str();
  dc->add_option("--creator", o.creator, "dc:creator");
  dc->add_option("--contributor", o.contributor, "dc:contributor");
  dc->add_option("--id", o.ids, "Only these stimulus ids");
  dc->add_flag("--mime", o.mime, "MIME-style dc:format");
  dc->add_option("--out", o.out_path, "Directory for <id>.dc.rdf files (default: print)");
  common(dc), lenient_opt(dc);

  const auto corpus_opts = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Manifest CSV or .owl document")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--annotations", o.annotations_path, "Folksonomy JSON store")
        ->check(CLI::ExistingFile);
    sub->add_option("--scope", o.scope, "primary or all")->capture_default_str();
    common(sub), out_opt(sub), json_opt(sub), lexicon_opts(sub), lenient_opt(sub);
  };

  auto* query = app.add_subcommand("query", "Boolean concept query over annotated stimuli");
  query->add_option("--expr", o.expr, "Query expression")->required();
  query->add_option("--pl", o.pl_window, "Pleasure window a:b");
  query->add_option("--ar", o.ar_window, "Arousal window a:b");
  corpus_opts(query);

  auto* scenario = app.add_subcommand("scenario", "Pick stimuli following affect waypoints");
  scenario->add_option("--waypoint", o.waypoints, "pleasure,arousal[:query]; repeatable")->required();
  scenario->add_flag("--allow-repeat", o.allow_repeat, "Allow a stimulus at several waypoints");
  corpus_opts(scenario);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o, out, err);
    if (stats->parsed()) return cmd_stats(o, out, err);
    if (normalize->parsed()) return cmd_normalize(o, out, err);
    if (enrich->parsed()) return cmd_enrich(o, out, err);
    if (build->parsed()) return cmd_build_ontology(o, out, err);
    if (dc->parsed()) return cmd_emit_dc(o, out, err);
    if (query->parsed()) return cmd_query(o, out, err);
    if (scenario->parsed()) return cmd_scenario(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const QueryParseError& e) {
    err << "query parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace affectont::cli
