#include "pipeline.hpp"

#include <affectont/manifest.hpp>

#include <algorithm>

namespace affectont::cli {

LexiconGraph open_lexicon(const LexiconSource& source) {
  LexiconFormat format = source.format.value_or(std::filesystem::is_directory(source.path)
                                                    ? LexiconFormat::wndb
                                                    : LexiconFormat::simple);
  return load_lexicon(source.path, format);
}

namespace {

SynsetId first_noun_sense(const LexiconGraph& lexicon, const Stimulus& stim, const Lemma& head) {
  const auto senses = lexicon.lookup(head.text, Pos::noun);
  if (senses.empty()) {
    throw KeywordError("stimulus " + stim.id.str() + ": head '" + head.text + "' of keyword '" +
                       stim.raw_keyword + "' has no noun sense in the lexicon");
  }
  return senses.front();
}

/// Synset behind a `lemma#pos#sense` concept id.
SynsetId synset_for_concept(const LexiconGraph& lexicon, const ConceptId& id) {
  const auto parts = [&] {
    std::vector<std::string> out;
    std::string cur;
    for (char c : id.str()) {
      if (c == '#') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }();
  if (parts.size() == 3) {
    const auto pos = parse_pos(parts[1]);
    std::size_t sense = 0;
    try {
      sense = std::stoul(parts[2]);
    } catch (const std::exception&) {
      sense = 0;
    }
    if (pos && sense > 0) {
      const auto senses = lexicon.lookup(parts[0], *pos);
      if (sense <= senses.size()) return senses[sense - 1];
    }
  }
  throw AnnotationError("annotation concept " + id.str() + " does not name a lexicon sense");
}

}  // namespace

Corpus annotate(std::vector<Stimulus> stimuli, const LexiconGraph& lexicon,
                const PipelineConfig& config, const AnnotationStore* extra) {
  const KeywordNormalizer normalizer(lexicon, config.tables);
  std::vector<TaxonomySeed> seeds;
  struct Meanings {
    ConceptId primary;
    std::vector<ConceptId> others;
  };
  std::vector<Meanings> meanings;
  for (const auto& stim : stimuli) {
    NormalizedKeyword nk;
    try {
      nk = normalizer.normalize(stim.raw_keyword);
    } catch (const KeywordError& e) {
      throw KeywordError("stimulus " + stim.id.str() + ": " + e.what());
    }
    Meanings m;
    for (std::size_t i = 0; i < nk.heads.size(); ++i) {
      const SynsetId synset = first_noun_sense(lexicon, stim, nk.heads[i]);
      seeds.push_back({nk, synset});
      const ConceptId concept_id = concept_id_for(lexicon, synset);
      if (i == 0) {
        m.primary = concept_id;
      } else if (concept_id != m.primary &&
                 std::find(m.others.begin(), m.others.end(), concept_id) == m.others.end()) {
        m.others.push_back(concept_id);
      }
    }
    meanings.push_back(std::move(m));
  }
  if (extra != nullptr) {
    for (const auto& [id, entry] : extra->entries()) {
      seeds.push_back({{}, synset_for_concept(lexicon, entry.primary)});
      for (const auto& [key, w] : entry.contributions) {
        seeds.push_back({{}, synset_for_concept(lexicon, key.second)});
      }
    }
  }

  Corpus corpus;
  corpus.taxonomy = prune(build_taxonomy(lexicon, seeds), config.prune, &corpus.pruned);

  AnnotationStore built;
  for (std::size_t i = 0; i < stimuli.size(); ++i) {
    built.set_primary(stimuli[i].id, meanings[i].primary);
    for (const auto& c : meanings[i].others) built.assign_secondary(stimuli[i].id, "manifest", c, 1.0);
  }
  if (extra != nullptr) {
    const AnnotationStore both[] = {built, *extra};
    corpus.store = merge_folksonomies(both);
  } else {
    corpus.store = std::move(built);
  }

  corpus.predicates = config.predicates;
  for (const auto& spec : config.relations) {
    const auto subject = resolve_concept(corpus.taxonomy, spec.subject);
    const auto object = resolve_concept(corpus.taxonomy, spec.object);
    if (!subject || !object) {
      throw ConfigError("relation " + spec.subject + " " + spec.predicate + " " + spec.object +
                        " names a concept outside the taxonomy");
    }
    corpus.relations.push_back({*subject, spec.predicate, *object});
  }
  corpus.stimuli = std::move(stimuli);
  return corpus;
}

Corpus corpus_from_model(const OntologyModel& model) {
  Corpus corpus;
  corpus.taxonomy = model.concepts;
  corpus.relations = model.relations;
  corpus.predicates = model.predicates;
  for (const auto& ind : model.stimuli) {
    Stimulus s;
    s.id = ind.id;
    s.resource = ind.resource;
    s.affect = {ind.pleasure, ind.arousal};
    try {
      s.media_kind = classify_extension(ind.resource);
    } catch (const ClassificationError&) {
      s.media_kind.reset();
    }
    corpus.stimuli.push_back(std::move(s));
    if (ind.primaries.empty()) continue;
    corpus.store.set_primary(ind.id, ind.primaries.front());
    for (const auto& sec : ind.secondaries) {
      corpus.store.assign_secondary(ind.id, "ontology", sec.concept_id, sec.weight);
    }
  }
  return corpus;
}

}  // namespace affectont::cli
