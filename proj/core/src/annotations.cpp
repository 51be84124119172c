#include <affectont/annotations.hpp>

#include <affectont/taxonomy.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace affectont {

namespace {

void check_weight(double weight) {
  if (!(weight > 0.0 && weight <= 1.0)) {
    throw AnnotationError("secondary weight " + std::to_string(weight) + " outside (0, 1]");
  }
}

}  // namespace

void AnnotationStore::set_primary(const StimulusId& stimulus, const ConceptId& concept_id) {
  if (stimulus.empty()) throw AnnotationError("empty stimulus id");
  if (concept_id.empty()) throw AnnotationError("empty primary concept for " + stimulus.str());
  auto& e = entries_[stimulus];
  for (const auto& [key, w] : e.contributions) {
    if (key.second == concept_id) {
      throw AnnotationError("concept " + concept_id.str() + " is already a secondary of stimulus " +
                            stimulus.str());
    }
  }
  e.primary = concept_id;
}

void AnnotationStore::assign_secondary(const StimulusId& stimulus, const std::string& contributor,
                                       const ConceptId& concept_id, double weight,
                                       const TaxonomyGraph* taxonomy) {
  auto it = entries_.find(stimulus);
  if (it == entries_.end()) throw AnnotationError("unknown stimulus " + stimulus.str());
  check_weight(weight);
  if (contributor.empty()) throw AnnotationError("empty contributor name");
  if (concept_id == it->second.primary) {
    throw AnnotationError("concept " + concept_id.str() + " is the primary meaning of stimulus " +
                          stimulus.str());
  }
  if (taxonomy != nullptr && !taxonomy->contains(concept_id)) {
    throw AnnotationError("concept " + concept_id.str() + " is not in the taxonomy");
  }
  it->second.contributions[{contributor, concept_id}] = weight;
}

const AnnotationStore::Entry& AnnotationStore::entry(const StimulusId& stimulus) const {
  auto it = entries_.find(stimulus);
  if (it == entries_.end()) throw AnnotationError("unknown stimulus " + stimulus.str());
  return it->second;
}

std::vector<Contribution> AnnotationStore::contributions(const StimulusId& stimulus) const {
  std::vector<Contribution> out;
  for (const auto& [key, w] : entry(stimulus).contributions) out.push_back({key.first, key.second, w});
  return out;
}

std::map<ConceptId, double> AnnotationStore::raw_weights(const StimulusId& stimulus,
                                                         bool include_primary) const {
  const Entry& e = entry(stimulus);
  std::map<ConceptId, double> out;
  for (const auto& [key, w] : e.contributions) out[key.second] += w;
  if (include_primary) out[e.primary] += kPrimaryRawWeight;
  return out;
}

TagCloud tag_cloud(const AnnotationStore& store, const StimulusId& stimulus, bool include_primary) {
  TagCloud cloud;
  cloud.stimulus_id = stimulus;
  const auto raw = store.raw_weights(stimulus, include_primary);
  double total = 0.0;
  for (const auto& [c, w] : raw) total += w;
  if (raw.empty()) return cloud;
  cloud.entries.assign(raw.begin(), raw.end());
  std::stable_sort(cloud.entries.begin(), cloud.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [c, w] : cloud.entries) w /= total;
  return cloud;
}

double stimulus_similarity(const AnnotationStore& store, const StimulusId& a, const StimulusId& b) {
  const auto va = store.raw_weights(a, true);
  const auto vb = store.raw_weights(b, true);
  if (va.empty() || vb.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [c, w] : va) {
    na += w * w;
    if (auto it = vb.find(c); it != vb.end()) dot += w * it->second;
  }
  for (const auto& [c, w] : vb) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

AnnotationStore merge_folksonomies(std::span<const AnnotationStore> stores) {
  AnnotationStore merged;
  std::map<StimulusId, AnnotationStore::Entry> entries;
  for (const auto& store : stores) {
    for (const auto& [id, e] : store.entries()) {
      auto [it, fresh] = entries.try_emplace(id, AnnotationStore::Entry{e.primary, {}});
      if (!fresh && it->second.primary != e.primary) {
        throw AnnotationError("conflicting primaries for stimulus " + id.str() + ": " +
                              it->second.primary.str() + " vs " + e.primary.str());
      }
      for (const auto& [key, w] : e.contributions) {
        auto [slot, inserted] = it->second.contributions.try_emplace(key, w);
        if (!inserted) slot->second = std::max(slot->second, w);
      }
    }
  }
  for (const auto& [id, e] : entries) {
    merged.set_primary(id, e.primary);
    for (const auto& [key, w] : e.contributions) merged.assign_secondary(id, key.first, key.second, w);
  }
  return merged;
}

std::string to_json(const AnnotationStore& store) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [id, e] : store.entries()) {
    nlohmann::json contributions = nlohmann::json::array();
    for (const auto& [key, w] : e.contributions) {
      contributions.push_back({{"contributor", key.first}, {"concept", key.second.str()}, {"weight", w}});
    }
    doc[id.str()] = {{"primary", e.primary.str()}, {"contributions", std::move(contributions)}};
  }
  return doc.dump(2) + "\n";
}

AnnotationStore annotations_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw AnnotationError(std::string("annotation store is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw AnnotationError("annotation store must be a JSON object");
  AnnotationStore store;
  try {
    for (const auto& [id, value] : doc.items()) {
      const StimulusId sid(id);
      store.set_primary(sid, ConceptId(value.at("primary").get<std::string>()));
      if (!value.contains("contributions")) continue;
      for (const auto& c : value.at("contributions")) {
        store.assign_secondary(sid, c.at("contributor").get<std::string>(),
                               ConceptId(c.at("concept").get<std::string>()),
                               c.at("weight").get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw AnnotationError(std::string("malformed annotation store: ") + e.what());
  }
  return store;
}

AnnotationStore load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AnnotationError("cannot open annotation store " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return annotations_from_json(buffer.str());
}

}  // namespace affectont
