#include <affectont/annotations.hpp>
#include <affectont/taxonomy.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numeric>

#include "oracles.hpp"

namespace affectont {
namespace {

using testing::Rng;

const StimulusId kS("6000");
const ConceptId kPrison("prison#n#1");
const ConceptId kFear("fear#n#1");
const ConceptId kMan("man#n#1");

TEST(Annotations, PrimaryThenSecondaries) {
  AnnotationStore store;
  store.set_primary(kS, kPrison);
  store.assign_secondary(kS, "alice", kFear, 0.5);
  store.assign_secondary(kS, "bob", kFear, 0.25);
  store.assign_secondary(kS, "bob", kMan, 1.0);
  const auto raw = store.raw_weights(kS, false);
  EXPECT_DOUBLE_EQ(raw.at(kFear), 0.75);
  EXPECT_DOUBLE_EQ(raw.at(kMan), 1.0);
  EXPECT_EQ(store.raw_weights(kS, true).at(kPrison), kPrimaryRawWeight);
  EXPECT_EQ(store.contributions(kS).size(), 3u);
}

TEST(Annotations, Rejections) {
  AnnotationStore store;
  EXPECT_THROW(store.assign_secondary(kS, "a", kFear, 0.5), AnnotationError);
  store.set_primary(kS, kPrison);
  EXPECT_THROW(store.assign_secondary(kS, "a", kFear, 0.0), AnnotationError);
  EXPECT_THROW(store.assign_secondary(kS, "a", kFear, 1.5), AnnotationError);
  EXPECT_THROW(store.assign_secondary(kS, "a", kPrison, 0.5), AnnotationError);
  EXPECT_THROW(store.assign_secondary(kS, "", kFear, 0.5), AnnotationError);
  store.assign_secondary(kS, "a", kFear, 0.5);
  EXPECT_THROW(store.set_primary(kS, kFear), AnnotationError);
  TaxonomyGraph empty;
  EXPECT_THROW(store.assign_secondary(kS, "a", kMan, 0.5, &empty), AnnotationError);
}

TEST(Annotations, TagCloudOrderAndNormalization) {
  AnnotationStore store;
  store.set_primary(kS, kPrison);
  store.assign_secondary(kS, "a", kMan, 0.5);
  store.assign_secondary(kS, "a", kFear, 0.5);
  const auto cloud = tag_cloud(store, kS, true);
  ASSERT_EQ(cloud.entries.size(), 3u);
  EXPECT_EQ(cloud.entries[0].first, kPrison);
  EXPECT_DOUBLE_EQ(cloud.entries[0].second, 0.5);
  // Equal weights order by concept id.
  EXPECT_EQ(cloud.entries[1].first, kFear);
  EXPECT_EQ(cloud.entries[2].first, kMan);
  EXPECT_THROW(tag_cloud(AnnotationStore{}, kS, true), AnnotationError);
  AnnotationStore bare;
  bare.set_primary(kS, kPrison);
  EXPECT_TRUE(tag_cloud(bare, kS, false).entries.empty());
}

TEST(Annotations, SimilarityKnownValue) {
  AnnotationStore store;
  const StimulusId a("a"), b("b");
  store.set_primary(a, kPrison);
  store.set_primary(b, kPrison);
  store.assign_secondary(b, "u", kFear, 1.0);
  EXPECT_NEAR(stimulus_similarity(store, a, b), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Annotations, MergeKeepsMaximumAndDetectsConflicts) {
  AnnotationStore x, y;
  x.set_primary(kS, kPrison);
  y.set_primary(kS, kPrison);
  x.assign_secondary(kS, "u", kFear, 0.3);
  y.assign_secondary(kS, "u", kFear, 0.7);
  const std::array<AnnotationStore, 2> both{x, y};
  const auto merged = merge_folksonomies(both);
  EXPECT_DOUBLE_EQ(merged.raw_weights(kS, false).at(kFear), 0.7);

  AnnotationStore z;
  z.set_primary(kS, kMan);
  const std::array<AnnotationStore, 2> clash{x, z};
  EXPECT_THROW(merge_folksonomies(clash), AnnotationError);
}

TEST(Annotations, JsonRoundTrip) {
  Rng rng(7);
  const auto store = testing::random_store(rng, 12, 8, 3);
  const auto text = to_json(store);
  EXPECT_EQ(annotations_from_json(text), store);
  EXPECT_EQ(to_json(annotations_from_json(text)), text);
}

TEST(Annotations, JsonRejectsMalformed) {
  EXPECT_THROW(annotations_from_json("[1,2]"), AnnotationError);
  EXPECT_THROW(annotations_from_json("{"), AnnotationError);
  EXPECT_THROW(annotations_from_json(R"({"1":{"contributions":[]}})"), AnnotationError);
  EXPECT_THROW(
      annotations_from_json(
          R"({"1":{"primary":"a","contributions":[{"contributor":"u","concept":"b","weight":2}]}})"),
      AnnotationError);
}

TEST(AnnotationsProperty, TagCloudSumsToOne) {
  Rng rng(8);
  for (int round = 0; round < 100; ++round) {
    const auto store = testing::random_store(rng, 10, 12, 4);
    for (const auto& [id, e] : store.entries()) {
      for (bool include_primary : {true, false}) {
        const auto cloud = tag_cloud(store, id, include_primary);
        if (cloud.entries.empty()) continue;
        double sum = 0.0;
        for (const auto& [c, w] : cloud.entries) sum += w;
        EXPECT_NEAR(sum, 1.0, 1e-9);
        for (std::size_t i = 1; i < cloud.entries.size(); ++i)
          EXPECT_GE(cloud.entries[i - 1].second, cloud.entries[i].second);
      }
    }
  }
}

TEST(AnnotationsProperty, SimilarityMatchesCosineOracle) {
  Rng rng(9);
  for (int round = 0; round < 60; ++round) {
    const auto store = testing::random_store(rng, 8, 6, 3);
    for (const auto& [a, ea] : store.entries()) {
      EXPECT_NEAR(stimulus_similarity(store, a, a), 1.0, 1e-12);
      for (const auto& [b, eb] : store.entries()) {
        const double s = stimulus_similarity(store, a, b);
        EXPECT_EQ(s, stimulus_similarity(store, b, a));
        EXPECT_NEAR(s, testing::cosine_oracle(store.raw_weights(a, true), store.raw_weights(b, true)), 1e-12);
      }
    }
  }
}

TEST(AnnotationsProperty, MergeCommutativeAssociative) {
  Rng rng(10);
  for (int round = 0; round < 60; ++round) {
    const auto a = testing::random_store(rng, 6, 5, 3);
    const auto b = testing::random_store(rng, 8, 5, 3);
    const auto c = testing::random_store(rng, 4, 5, 3);
    const auto merge2 = [](const AnnotationStore& x, const AnnotationStore& y) {
      const std::array<AnnotationStore, 2> v{x, y};
      return merge_folksonomies(v);
    };
    EXPECT_EQ(merge2(a, b), merge2(b, a));
    EXPECT_EQ(merge2(merge2(a, b), c), merge2(a, merge2(b, c)));
    EXPECT_EQ(merge2(a, a), a);
  }
}

}  // namespace
}  // namespace affectont
