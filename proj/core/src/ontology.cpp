#include <affectont/ontology.hpp>
#include <affectont/xml.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace affectont {

namespace {

constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

constexpr std::string_view kProxySuffix = "_c";

const std::set<std::string, std::less<>>& reserved_names() {
  static const std::set<std::string, std::less<>> names{
      "Stimulus",      "DescribingConcept", "hasPrimaryMeaning", "isPrimaryMeaningOf",
      "hasSecondaryMeaning", "isSecondaryMeaningOf", "pleasure", "arousal",
      "resource",      "weight",            "sourceSynset",      "lemma"};
  return names;
}

bool is_ncname(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(first) || first == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.';
  });
}

std::string base_iri_problem(std::string_view base) {
  if (base.empty()) return "base IRI is empty";
  for (char c : base) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '#' || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '\\' || c == '^' || c == '`') {
      return std::string("base IRI contains forbidden character '") + c + "'";
    }
  }
  return {};
}

std::string predicate_problem(std::string_view predicate) {
  if (!is_ncname(predicate)) return "predicate '" + std::string(predicate) + "' is not an XML name";
  if (reserved_names().contains(predicate)) {
    return "predicate '" + std::string(predicate) + "' collides with the ontology vocabulary";
  }
  return {};
}

std::string join(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + " (" + v.subject + "): " + v.message;
  }
  return out;
}

class Writer {
 public:
  explicit Writer(const OntologyModel& model) : model_(model), ns_(model.base_iri + "#") {}

  std::string run() {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ << "<rdf:RDF xmlns=\"" << xml_escape(ns_) << "\"\n"
         << "  xmlns:rdf=\"" << kRdf << "\"\n"
         << "  xmlns:rdfs=\"" << kRdfs << "\"\n"
         << "  xmlns:owl=\"" << kOwl << "\"\n"
         << "  xmlns:xsd=\"" << kXsd << "\">\n";
    schema();
    concepts();
    proxies();
    stimuli();
    out_ << "</rdf:RDF>\n";
    return out_.str();
  }

 private:
  std::string term(std::string_view fragment) const { return xml_escape(ns_ + std::string(fragment)); }
  std::string concept_iri(const ConceptId& id) const { return term(iri_encode(id.str())); }
  std::string proxy_iri(const ConceptId& id) const {
    return term(iri_encode(id.str()) + std::string(kProxySuffix));
  }
  std::string stimulus_iri(const StimulusId& id) const { return term(iri_encode(id.str())); }

  void empty(int depth, std::string_view element, std::string_view attr, std::string_view value) {
    out_ << std::string(depth * 2, ' ') << '<' << element << ' ' << attr << "=\"" << value << "\"/>\n";
  }
  void open(int depth, std::string_view element, std::string_view about) {
    out_ << std::string(depth * 2, ' ') << '<' << element << " rdf:about=\"" << about << "\">\n";
  }
  void close(int depth, std::string_view element) {
    out_ << std::string(depth * 2, ' ') << "</" << element << ">\n";
  }
  void text(int depth, std::string_view element, std::string_view value,
            std::string_view datatype = {}) {
    out_ << std::string(depth * 2, ' ') << '<' << element;
    if (!datatype.empty()) out_ << " rdf:datatype=\"" << kXsd << datatype << '"';
    out_ << '>' << xml_escape(value) << "</" << element << ">\n";
  }

  void schema() {
    empty(1, "owl:Ontology", "rdf:about", xml_escape(model_.base_iri));
    empty(1, "owl:Class", "rdf:about", term("Stimulus"));
    empty(1, "owl:Class", "rdf:about", term("DescribingConcept"));
    for (const auto& [forward, inverse] :
         {std::pair{"hasPrimaryMeaning", "isPrimaryMeaningOf"},
          std::pair{"hasSecondaryMeaning", "isSecondaryMeaningOf"}}) {
      open(1, "owl:ObjectProperty", term(forward));
      empty(2, "rdfs:domain", "rdf:resource", term("Stimulus"));
      empty(2, "rdfs:range", "rdf:resource", term("DescribingConcept"));
      close(1, "owl:ObjectProperty");
      open(1, "owl:ObjectProperty", term(inverse));
      empty(2, "owl:inverseOf", "rdf:resource", term(forward));
      close(1, "owl:ObjectProperty");
    }
    for (const auto& [name, type] : {std::pair{"pleasure", "decimal"}, std::pair{"arousal", "decimal"},
                                     std::pair{"resource", "string"}}) {
      open(1, "owl:DatatypeProperty", term(name));
      empty(2, "rdfs:domain", "rdf:resource", term("Stimulus"));
      empty(2, "rdfs:range", "rdf:resource", std::string(kXsd) + type);
      close(1, "owl:DatatypeProperty");
    }
    for (const char* name : {"weight", "sourceSynset", "lemma"}) {
      empty(1, "owl:AnnotationProperty", "rdf:about", term(name));
    }
    for (const auto& p : model_.predicates) {
      open(1, "owl:ObjectProperty", term(p));
      empty(2, "rdfs:domain", "rdf:resource", term("DescribingConcept"));
      empty(2, "rdfs:range", "rdf:resource", term("DescribingConcept"));
      close(1, "owl:ObjectProperty");
    }
  }

  void concepts() {
    for (const auto& [id, node] : model_.concepts.nodes()) {
      open(1, "owl:Class", concept_iri(id));
      text(2, "rdfs:label", node.label);
      empty(2, "rdfs:subClassOf", "rdf:resource", term("DescribingConcept"));
      std::vector<ConceptId> parents = node.parents;
      std::sort(parents.begin(), parents.end());
      for (const auto& p : parents) empty(2, "rdfs:subClassOf", "rdf:resource", concept_iri(p));
      if (node.source_synset) text(2, "sourceSynset", node.source_synset->str());
      for (const auto& lemma : node.lemmas) text(2, "lemma", lemma);
      close(1, "owl:Class");
    }
  }

  void proxies() {
    std::map<ConceptId, std::set<StimulusId>> primary_of, secondary_of;
    for (const auto& s : model_.stimuli) {
      for (const auto& c : s.primaries) primary_of[c].insert(s.id);
      for (const auto& sec : s.secondaries) secondary_of[sec.concept_id].insert(s.id);
    }
    std::map<ConceptId, std::vector<const RelationAssertion*>> outgoing;
    std::vector<RelationAssertion> relations = model_.relations;
    std::sort(relations.begin(), relations.end());
    for (const auto& r : relations) outgoing[r.subject].push_back(&r);

    for (const auto& [id, node] : model_.concepts.nodes()) {
      open(1, "owl:NamedIndividual", proxy_iri(id));
      empty(2, "rdf:type", "rdf:resource", concept_iri(id));
      for (const auto& s : primary_of[id]) empty(2, "isPrimaryMeaningOf", "rdf:resource", stimulus_iri(s));
      for (const auto& s : secondary_of[id]) {
        empty(2, "isSecondaryMeaningOf", "rdf:resource", stimulus_iri(s));
      }
      for (const auto* r : outgoing[id]) empty(2, r->predicate, "rdf:resource", proxy_iri(r->object));
      close(1, "owl:NamedIndividual");
    }
  }

  void stimuli() {
    std::vector<const StimulusIndividual*> sorted;
    for (const auto& s : model_.stimuli) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* s : sorted) {
      auto secondaries = s->secondaries;
      std::sort(secondaries.begin(), secondaries.end(),
                [](const auto& a, const auto& b) { return a.concept_id < b.concept_id; });
      open(1, "Stimulus", stimulus_iri(s->id));
      text(2, "pleasure", format_real(s->pleasure), "decimal");
      text(2, "arousal", format_real(s->arousal), "decimal");
      text(2, "resource", s->resource, "string");
      for (const auto& c : s->primaries) empty(2, "hasPrimaryMeaning", "rdf:resource", proxy_iri(c));
      for (const auto& sec : secondaries) {
        empty(2, "hasSecondaryMeaning", "rdf:resource", proxy_iri(sec.concept_id));
      }
      close(1, "Stimulus");
      for (const auto& sec : secondaries) {
        out_ << "  <owl:Axiom>\n";
        empty(2, "owl:annotatedSource", "rdf:resource", stimulus_iri(s->id));
        empty(2, "owl:annotatedProperty", "rdf:resource", term("hasSecondaryMeaning"));
        empty(2, "owl:annotatedTarget", "rdf:resource", proxy_iri(sec.concept_id));
        text(2, "weight", format_real(sec.weight), "decimal");
        out_ << "  </owl:Axiom>\n";
      }
    }
  }

  const OntologyModel& model_;
  std::string ns_;
  std::ostringstream out_;
};

class Reader {
 public:
  OntologyModel run(const XmlElement& root) {
    if (!root.is(kRdf, "RDF")) throw OwlError("root element is not rdf:RDF");
    if (root.children.empty() || !root.children.front().is(kOwl, "Ontology")) {
      throw OwlError("document does not start with an owl:Ontology header");
    }
    const std::string* base = root.children.front().attribute(kRdf, "about");
    if (base == nullptr) throw OwlError("owl:Ontology lacks rdf:about");
    if (auto problem = base_iri_problem(*base); !problem.empty()) throw OwlError(problem);
    model_.base_iri = *base;
    ns_ = *base + "#";

    for (std::size_t i = 1; i < root.children.size(); ++i) element(root.children[i]);
    return finish();
  }

 private:
  [[noreturn]] void unsupported(const XmlElement& e) const {
    std::string name = e.local;
    if (e.ns == kRdf) name = "rdf:" + name;
    else if (e.ns == kRdfs) name = "rdfs:" + name;
    else if (e.ns == kOwl) name = "owl:" + name;
    else if (e.ns != ns_) name = "{" + e.ns + "}" + name;
    throw OwlError("unsupported construct <" + name + "> at line " + std::to_string(e.line));
  }

  std::string fragment(const XmlElement& e, std::string_view attr_ns, std::string_view attr) const {
    const std::string* value = e.attribute(attr_ns, attr);
    if (value == nullptr) {
      throw OwlError("<" + e.local + "> at line " + std::to_string(e.line) + " lacks " +
                     std::string(attr));
    }
    if (!value->starts_with(ns_)) {
      throw OwlError("IRI " + *value + " at line " + std::to_string(e.line) +
                     " is outside the ontology namespace");
    }
    return value->substr(ns_.size());
  }
  std::string about(const XmlElement& e) const { return fragment(e, kRdf, "about"); }
  std::string resource(const XmlElement& e) const { return fragment(e, kRdf, "resource"); }

  ConceptId proxy_concept(const std::string& frag, const XmlElement& e) const {
    if (!frag.ends_with(kProxySuffix)) {
      throw OwlError("expected a concept proxy at line " + std::to_string(e.line) + ", got " + frag);
    }
    return ConceptId(iri_decode(std::string_view(frag).substr(0, frag.size() - kProxySuffix.size())));
  }

  static double decimal(const XmlElement& e) {
    const auto text = trim(e.text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw OwlError("invalid decimal '" + std::string(text) + "' at line " + std::to_string(e.line));
    }
    return value;
  }

  bool local(const XmlElement& e, std::string_view name) const { return e.ns == ns_ && e.local == name; }

  void element(const XmlElement& e) {
    if (e.is(kOwl, "Class")) return concept_class(e);
    if (e.is(kOwl, "ObjectProperty")) return object_property(e);
    if (e.is(kOwl, "DatatypeProperty")) {
      const auto name = about(e);
      if (name != "pleasure" && name != "arousal" && name != "resource") unsupported_property(e, name);
      return schema_children(e);
    }
    if (e.is(kOwl, "AnnotationProperty")) {
      const auto name = about(e);
      if (name != "weight" && name != "sourceSynset" && name != "lemma") unsupported_property(e, name);
      return schema_children(e);
    }
    if (e.is(kOwl, "NamedIndividual")) return proxy(e);
    if (local(e, "Stimulus")) return stimulus(e);
    if (e.is(kOwl, "Axiom")) return axiom(e);
    unsupported(e);
  }

  [[noreturn]] static void unsupported_property(const XmlElement& e, const std::string& name) {
    throw OwlError("unsupported construct: unknown property '" + name + "' at line " +
                   std::to_string(e.line));
  }

  void schema_children(const XmlElement& e) const {
    for (const auto& c : e.children) {
      if (!(c.is(kRdfs, "domain") || c.is(kRdfs, "range") || c.is(kOwl, "inverseOf"))) unsupported(c);
    }
  }

  void concept_class(const XmlElement& e) {
    const auto frag = about(e);
    if (frag == "Stimulus" || frag == "DescribingConcept") {
      if (!e.children.empty()) unsupported(e.children.front());
      return;
    }
    ConceptNode node;
    node.id = ConceptId(iri_decode(frag));
    for (const auto& c : e.children) {
      if (c.is(kRdfs, "label")) {
        node.label = c.text;
      } else if (c.is(kRdfs, "subClassOf")) {
        const auto parent = resource(c);
        if (parent != "DescribingConcept") node.parents.emplace_back(iri_decode(parent));
      } else if (local(c, "sourceSynset")) {
        node.source_synset = SynsetId(c.text);
      } else if (local(c, "lemma")) {
        node.lemmas.push_back(c.text);
      } else {
        unsupported(c);
      }
    }
    nodes_.push_back(std::move(node));
  }

  void object_property(const XmlElement& e) {
    const auto name = about(e);
    if (name == "hasPrimaryMeaning" || name == "isPrimaryMeaningOf" ||
        name == "hasSecondaryMeaning" || name == "isSecondaryMeaningOf") {
      return schema_children(e);
    }
    if (auto problem = predicate_problem(name); !problem.empty()) {
      throw OwlError("unsupported construct: " + problem + " at line " + std::to_string(e.line));
    }
    model_.predicates.insert(name);
    schema_children(e);
  }

  void proxy(const XmlElement& e) {
    const ConceptId concept_id = proxy_concept(about(e), e);
    bool typed = false;
    for (const auto& c : e.children) {
      if (c.is(kRdf, "type")) {
        if (ConceptId(iri_decode(resource(c))) != concept_id) {
          throw OwlError("proxy for " + concept_id.str() + " typed with another class at line " +
                         std::to_string(c.line));
        }
        typed = true;
      } else if (local(c, "isPrimaryMeaningOf")) {
        primary_inverse_.emplace(StimulusId(iri_decode(resource(c))), concept_id);
      } else if (local(c, "isSecondaryMeaningOf")) {
        secondary_inverse_.emplace(StimulusId(iri_decode(resource(c))), concept_id);
      } else if (c.ns == ns_ && model_.predicates.contains(c.local)) {
        model_.relations.push_back({concept_id, c.local, proxy_concept(resource(c), c)});
      } else {
        unsupported(c);
      }
    }
    if (!typed) throw OwlError("proxy for " + concept_id.str() + " has no rdf:type");
  }

  void stimulus(const XmlElement& e) {
    StimulusIndividual s;
    s.id = StimulusId(iri_decode(about(e)));
    bool have_pleasure = false, have_arousal = false;
    for (const auto& c : e.children) {
      if (local(c, "pleasure")) {
        s.pleasure = decimal(c);
        have_pleasure = true;
      } else if (local(c, "arousal")) {
        s.arousal = decimal(c);
        have_arousal = true;
      } else if (local(c, "resource")) {
        s.resource = c.text;
      } else if (local(c, "hasPrimaryMeaning")) {
        s.primaries.push_back(proxy_concept(resource(c), c));
      } else if (local(c, "hasSecondaryMeaning")) {
        s.secondaries.push_back({proxy_concept(resource(c), c), std::nan("")});
      } else {
        unsupported(c);
      }
    }
    if (!have_pleasure || !have_arousal) {
      throw OwlError("stimulus " + s.id.str() + " lacks pleasure or arousal");
    }
    model_.stimuli.push_back(std::move(s));
  }

  void axiom(const XmlElement& e) {
    std::optional<StimulusId> source;
    std::optional<ConceptId> target;
    std::optional<double> weight;
    for (const auto& c : e.children) {
      if (c.is(kOwl, "annotatedSource")) {
        source = StimulusId(iri_decode(resource(c)));
      } else if (c.is(kOwl, "annotatedProperty")) {
        if (resource(c) != "hasSecondaryMeaning") unsupported(c);
      } else if (c.is(kOwl, "annotatedTarget")) {
        target = proxy_concept(resource(c), c);
      } else if (local(c, "weight")) {
        weight = decimal(c);
      } else {
        unsupported(c);
      }
    }
    if (!source || !target || !weight) {
      throw OwlError("incomplete owl:Axiom at line " + std::to_string(e.line));
    }
    if (!weights_.emplace(std::pair{*source, *target}, *weight).second) {
      throw OwlError("duplicate weight axiom for " + source->str() + " / " + target->str());
    }
  }

  OntologyModel finish() {
    model_.concepts = TaxonomyGraph::from_nodes(std::move(nodes_));
    std::set<std::pair<StimulusId, ConceptId>> primary_forward, secondary_forward;
    for (auto& s : model_.stimuli) {
      for (const auto& c : s.primaries) primary_forward.emplace(s.id, c);
      for (auto& sec : s.secondaries) {
        secondary_forward.emplace(s.id, sec.concept_id);
        auto it = weights_.find({s.id, sec.concept_id});
        if (it == weights_.end()) {
          throw OwlError("no weight axiom for secondary meaning " + sec.concept_id.str() +
                         " of stimulus " + s.id.str());
        }
        sec.weight = it->second;
        weights_.erase(it);
      }
    }
    if (!weights_.empty()) {
      const auto& [key, w] = *weights_.begin();
      throw OwlError("weight axiom for " + key.first.str() + " / " + key.second.str() +
                     " has no matching secondary meaning");
    }
    if (primary_forward != primary_inverse_) {
      throw OwlError("hasPrimaryMeaning and isPrimaryMeaningOf triples are not symmetric");
    }
    if (secondary_forward != secondary_inverse_) {
      throw OwlError("hasSecondaryMeaning and isSecondaryMeaningOf triples are not symmetric");
    }
    return std::move(model_);
  }

  OntologyModel model_;
  std::string ns_;
  std::vector<ConceptNode> nodes_;
  std::set<std::pair<StimulusId, ConceptId>> primary_inverse_, secondary_inverse_;
  std::map<std::pair<StimulusId, ConceptId>, double> weights_;
};

}  // namespace

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::primary_cardinality: return "primary-cardinality";
    case Violation::Kind::affect_range: return "affect-range";
    case Violation::Kind::concept_cycle: return "concept-cycle";
    case Violation::Kind::unknown_concept: return "unknown-concept";
    case Violation::Kind::inverse_asymmetry: return "inverse-asymmetry";
    case Violation::Kind::weight_range: return "weight-range";
    case Violation::Kind::duplicate_secondary: return "duplicate-secondary";
    case Violation::Kind::primary_as_secondary: return "primary-as-secondary";
    case Violation::Kind::duplicate_stimulus: return "duplicate-stimulus";
    case Violation::Kind::relation: return "relation";
    case Violation::Kind::base_iri: return "base-iri";
  }
  return "unknown";
}

bool ValidationReport::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

OntologyModel build_model(const TaxonomyGraph& taxonomy, std::span<const Stimulus> stimuli,
                          const AnnotationStore& annotations,
                          const std::vector<RelationAssertion>& relations,
                          const std::set<std::string>& predicates, std::string base_iri) {
  if (auto problem = base_iri_problem(base_iri); !problem.empty()) throw ModelError(problem);
  OntologyModel model;
  model.base_iri = std::move(base_iri);
  model.concepts = transitive_reduction(taxonomy);
  for (const auto& p : predicates) {
    if (auto problem = predicate_problem(p); !problem.empty()) throw ModelError(problem);
  }
  model.predicates = predicates;

  std::set<StimulusId> seen;
  for (const auto& stim : stimuli) {
    if (!seen.insert(stim.id).second) throw ModelError("duplicate stimulus " + stim.id.str());
    if (!annotations.contains(stim.id)) {
      throw ModelError("stimulus " + stim.id.str() + " has no primary annotation");
    }
    StimulusIndividual ind;
    ind.id = stim.id;
    ind.pleasure = stim.affect.pleasure;
    ind.arousal = stim.affect.arousal;
    ind.resource = stim.resource;
    const ConceptId& primary = annotations.entry(stim.id).primary;
    if (!taxonomy.contains(primary)) {
      throw ModelError("stimulus " + stim.id.str() + ": primary concept " + primary.str() +
                       " is not in the taxonomy");
    }
    ind.primaries.push_back(primary);
    for (const auto& [concept_id, weight] : tag_cloud(annotations, stim.id, false).entries) {
      if (!taxonomy.contains(concept_id)) {
        throw ModelError("stimulus " + stim.id.str() + ": secondary concept " + concept_id.str() +
                         " is not in the taxonomy");
      }
      ind.secondaries.push_back({concept_id, weight});
    }
    std::sort(ind.secondaries.begin(), ind.secondaries.end(),
              [](const auto& a, const auto& b) { return a.concept_id < b.concept_id; });
    model.stimuli.push_back(std::move(ind));
  }
  std::sort(model.stimuli.begin(), model.stimuli.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  for (const auto& r : relations) {
    if (!predicates.contains(r.predicate)) {
      throw ModelError("relation predicate '" + r.predicate + "' is not declared");
    }
    for (const auto* end : {&r.subject, &r.object}) {
      if (!taxonomy.contains(*end)) {
        throw ModelError("relation " + r.subject.str() + " " + r.predicate + " " + r.object.str() +
                         " names unknown concept " + end->str());
      }
    }
  }
  model.relations = relations;
  std::sort(model.relations.begin(), model.relations.end());
  model.relations.erase(std::unique(model.relations.begin(), model.relations.end()),
                        model.relations.end());
  return model;
}

ValidationReport validate_model(const OntologyModel& model) {
  ValidationReport report;
  const auto add = [&](Violation::Kind kind, std::string subject, std::string message) {
    report.violations.push_back({kind, std::move(subject), std::move(message)});
  };

  if (auto problem = base_iri_problem(model.base_iri); !problem.empty()) {
    add(Violation::Kind::base_iri, model.base_iri, problem);
  }
  try {
    (void)model.concepts.topological_order();
  } catch (const TaxonomyError& e) {
    add(Violation::Kind::concept_cycle, "concepts", e.what());
  }

  std::set<StimulusId> seen;
  for (const auto& s : model.stimuli) {
    const std::string sid = s.id.str();
    if (!seen.insert(s.id).second) add(Violation::Kind::duplicate_stimulus, sid, "stimulus listed twice");
    if (s.primaries.size() != 1) {
      add(Violation::Kind::primary_cardinality, sid,
          "expected exactly one primary meaning, found " + std::to_string(s.primaries.size()));
    }
    for (const auto& [axis, value] : {std::pair{"pleasure", s.pleasure}, std::pair{"arousal", s.arousal}}) {
      if (!in_affect_range(value)) {
        add(Violation::Kind::affect_range, sid, std::string(axis) + " " + format_real(value) +
                                                    " outside [1, 9]");
      }
    }
    for (const auto& c : s.primaries) {
      if (!model.concepts.contains(c)) {
        add(Violation::Kind::unknown_concept, sid, "primary concept " + c.str() + " is not defined");
        add(Violation::Kind::inverse_asymmetry, sid,
            "isPrimaryMeaningOf cannot be rendered for undefined concept " + c.str());
      }
    }
    std::set<ConceptId> secondary_seen;
    for (const auto& sec : s.secondaries) {
      const std::string c = sec.concept_id.str();
      if (!(sec.weight > 0.0 && sec.weight <= 1.0)) {
        add(Violation::Kind::weight_range, sid, "weight " + format_real(sec.weight) + " of " + c +
                                                    " outside (0, 1]");
      }
      if (!secondary_seen.insert(sec.concept_id).second) {
        add(Violation::Kind::duplicate_secondary, sid, "secondary " + c + " listed twice");
      }
      if (std::find(s.primaries.begin(), s.primaries.end(), sec.concept_id) != s.primaries.end()) {
        add(Violation::Kind::primary_as_secondary, sid, c + " is both primary and secondary");
      }
      if (!model.concepts.contains(sec.concept_id)) {
        add(Violation::Kind::unknown_concept, sid, "secondary concept " + c + " is not defined");
        add(Violation::Kind::inverse_asymmetry, sid,
            "isSecondaryMeaningOf cannot be rendered for undefined concept " + c);
      }
    }
    if (s.secondaries.empty()) report.notes.push_back("stimulus " + sid + " has no secondary meaning");
  }

  for (const auto& p : model.predicates) {
    if (auto problem = predicate_problem(p); !problem.empty()) add(Violation::Kind::relation, p, problem);
  }
  for (const auto& r : model.relations) {
    const std::string subject = r.subject.str() + " " + r.predicate + " " + r.object.str();
    if (!model.predicates.contains(r.predicate)) {
      add(Violation::Kind::relation, subject, "predicate is not declared");
    }
    if (!model.concepts.contains(r.subject) || !model.concepts.contains(r.object)) {
      add(Violation::Kind::relation, subject, "relation names an undefined concept");
    }
  }
  return report;
}

std::string serialize_owl(const OntologyModel& model) {
  const auto report = validate_model(model);
  if (!report.ok()) throw ModelError("invalid ontology model: " + join(report.violations));
  return Writer(model).run();
}

OntologyModel parse_owl(std::string_view document) { return Reader().run(parse_xml(document)); }

OntologyModel canonical(const OntologyModel& model) {
  OntologyModel out;
  out.base_iri = model.base_iri;
  std::vector<ConceptNode> nodes;
  for (const auto& [id, node] : model.concepts.nodes()) {
    ConceptNode copy = node;
    std::sort(copy.parents.begin(), copy.parents.end());
    nodes.push_back(std::move(copy));
  }
  out.concepts = TaxonomyGraph::from_nodes(std::move(nodes));
  out.stimuli = model.stimuli;
  std::sort(out.stimuli.begin(), out.stimuli.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (auto& s : out.stimuli) {
    std::stable_sort(s.secondaries.begin(), s.secondaries.end(),
                     [](const auto& a, const auto& b) { return a.concept_id < b.concept_id; });
  }
  out.relations = model.relations;
  std::sort(out.relations.begin(), out.relations.end());
  out.predicates = model.predicates;
  return out;
}

bool structurally_equal(const OntologyModel& a, const OntologyModel& b) {
  const auto ca = canonical(a);
  const auto cb = canonical(b);
  return ca.base_iri == cb.base_iri && ca.concepts.nodes() == cb.concepts.nodes() &&
         ca.stimuli == cb.stimuli && ca.relations == cb.relations && ca.predicates == cb.predicates;
}

std::string iri_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += c;
    } else {
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    }
  }
  return out;
}

std::string iri_decode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    unsigned value = 0;
    if (i + 2 >= text.size()) {
      throw OwlError("truncated percent escape in '" + std::string(text) + "'");
    }
    auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + i + 3, value, 16);
    if (ec != std::errc() || ptr != text.data() + i + 3) {
      throw OwlError("malformed percent escape in '" + std::string(text) + "'");
    }
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

}  // namespace affectont
