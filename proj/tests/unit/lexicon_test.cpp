#include <affectont/lexicon.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "oracles.hpp"

namespace affectont {
namespace {

using testing::Rng;

const LexiconGraph& mini() {
  static const LexiconGraph lexicon =
      load_lexicon(testing::data_path("lexicon/mini.tsv"), LexiconFormat::simple);
  return lexicon;
}

std::vector<std::string> ids(const std::vector<ClosureEntry>& closure) {
  std::vector<std::string> out;
  for (const auto& e : closure) out.push_back(e.id.str());
  return out;
}

TEST(Lexicon, PrisonClosureOrder) {
  const auto closure = mini().hypernym_closure(SynsetId("prison#n#1"));
  const auto got = ids(closure);
  const std::vector<std::string> chain = {
      "correctional_institution#n#1", "penal_institution#n#1", "institution#n#1", "establishment#n#1",
      "structure#n#1", "artifact#n#1", "whole#n#1", "object#n#1", "physical_entity#n#1", "entity#n#1"};
  ASSERT_GE(got.size(), 4u);
  EXPECT_EQ(std::vector<std::string>(got.begin(), got.begin() + 4),
            std::vector<std::string>(chain.begin(), chain.begin() + 4));
  for (std::size_t i = 0; i < closure.size(); ++i) EXPECT_EQ(closure[i].depth, i + 1);
}

TEST(Lexicon, HyponymClosureReachesJail) {
  const auto down = ids(mini().hyponym_closure(SynsetId("prison#n#1")));
  EXPECT_NE(std::find(down.begin(), down.end(), "jail#n#1"), down.end());
}

TEST(Lexicon, CoordinateTermsShareAParent) {
  const auto coords = mini().coordinate_terms(SynsetId("female#n#1"));
  EXPECT_TRUE(coords.contains(SynsetId("male#n#1")));
  EXPECT_FALSE(coords.contains(SynsetId("female#n#1")));
}

TEST(Lexicon, SemanticDistance) {
  EXPECT_EQ(mini().semantic_distance(SynsetId("prison#n#1"), SynsetId("prison#n#1")), 0u);
  EXPECT_EQ(mini().semantic_distance(SynsetId("prison#n#1"), SynsetId("correctional_institution#n#1")), 1u);
  EXPECT_EQ(mini().semantic_distance(SynsetId("female#n#1"), SynsetId("male#n#1")), 2u);
  EXPECT_THROW(mini().semantic_distance(SynsetId("nope"), SynsetId("prison#n#1")), LexiconError);
}

TEST(Lexicon, LookupAndSenseNumbers) {
  const auto senses = mini().lookup("prison", Pos::noun);
  ASSERT_FALSE(senses.empty());
  EXPECT_EQ(senses.front().str(), "prison#n#1");
  EXPECT_EQ(mini().sense_number(SynsetId("prison#n#1"), "prison"), 1u);
  EXPECT_TRUE(mini().has_lemma("cliff diver", Pos::noun));
  EXPECT_FALSE(mini().has_lemma("prison", Pos::verb));
}

TEST(Lexicon, SimpleFormatRejectsProblems) {
  std::istringstream dangling("a#n#1\tn\ta\tgloss\tmissing#n#1\n");
  EXPECT_THROW(parse_simple_lexicon(dangling), LexiconError);
  std::istringstream dup("a#n#1\tn\ta\tg\t\na#n#1\tn\ta\tg\t\n");
  EXPECT_THROW(parse_simple_lexicon(dup), LexiconError);
  std::istringstream cycle("a#n#1\tn\ta\tg\tb#n#1\nb#n#1\tn\tb\tg\ta#n#1\n");
  EXPECT_THROW(parse_simple_lexicon(cycle), LexiconError);
}

TEST(Lexicon, FromSynsetsCompletesInverseEdges) {
  std::vector<Synset> synsets(2);
  synsets[0].id = SynsetId("root");
  synsets[0].lemmas = {"root"};
  synsets[1].id = SynsetId("leaf");
  synsets[1].lemmas = {"leaf"};
  synsets[1].hypernyms = {SynsetId("root")};
  LoadReport report;
  const auto g = LexiconGraph::from_synsets(synsets, &report);
  EXPECT_EQ(report.repaired_edges, 1u);
  EXPECT_EQ(g.synset(SynsetId("root")).hyponyms, std::vector<SynsetId>{SynsetId("leaf")});
}

TEST(Wndb, LoadsMiniatureDatabase) {
  LoadReport report;
  const auto g = load_lexicon(testing::data_path("lexicon/wndb-mini"), LexiconFormat::wndb, &report);
  EXPECT_EQ(report.synsets, g.size());
  EXPECT_EQ(g.size(), 11u);
  EXPECT_EQ(report.repaired_edges, 2u);
  EXPECT_EQ(report.ignored_pointers, 4u);

  const auto& prison = g.synset(SynsetId("00003000-n"));
  EXPECT_EQ(prison.lemmas, (std::vector<std::string>{"prison", "prison_house"}));
  EXPECT_NE(prison.gloss.find("confinement"), std::string::npos);

  // index.noun lists the state sense first.
  const auto senses = g.lookup("prison", Pos::noun);
  ASSERT_EQ(senses.size(), 2u);
  EXPECT_EQ(senses[0].str(), "00006000-n");
  EXPECT_EQ(senses[1].str(), "00003000-n");

  EXPECT_EQ(g.synset(SynsetId("00005000-n")).lemmas.front(), "jail");
  EXPECT_EQ(g.synset(SynsetId("00010100-a")).lemmas.front(), "furious");
  EXPECT_EQ(g.synset(SynsetId("00010100-a")).pos, Pos::adjective);
  EXPECT_TRUE(g.has_lemma("sorrow", Pos::verb));

  const auto closure = ids(g.hypernym_closure(SynsetId("00005000-n")));
  EXPECT_EQ(closure, (std::vector<std::string>{"00003000-n", "00002000-n", "00001930-n", "00001740-n"}));
  EXPECT_TRUE(g.synset(SynsetId("00002000-n")).hyponyms.size() == 2);
}

TEST(Wndb, MissingDirectoryFails) {
  EXPECT_THROW(load_lexicon(testing::data_path("lexicon/none"), LexiconFormat::wndb), LexiconError);
}

TEST(Wndb, FullWordNetWhenAvailable) {
  const char* dir = std::getenv("AFFECTONT_WNDB_DIR");
  if (dir == nullptr) GTEST_SKIP() << "set AFFECTONT_WNDB_DIR to a WordNet dict directory";
  const auto g = load_lexicon(dir, LexiconFormat::wndb);
  const auto prison = g.lookup("prison", Pos::noun);
  ASSERT_FALSE(prison.empty());
  const auto closure = g.hypernym_closure(prison.front());
  ASSERT_GE(closure.size(), 4u);
  EXPECT_EQ(g.synset(closure[0].id).lemmas.front(), "correctional_institution");
  EXPECT_EQ(g.synset(closure[1].id).lemmas.front(), "penal_institution");
  EXPECT_EQ(g.synset(closure[2].id).lemmas.front(), "institution");
  EXPECT_EQ(g.synset(closure[3].id).lemmas.front(), "establishment");
}

TEST(LexiconProperty, DistanceMatchesFloydWarshall) {
  Rng rng(3);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.between(2, 25));
    std::vector<Synset> synsets(n);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      synsets[i].id = SynsetId("s" + std::to_string(i));
      synsets[i].lemmas = {"w" + std::to_string(i)};
      for (std::size_t j = 0; j < i; ++j) {
        if (rng.chance(0.12)) {
          synsets[i].hypernyms.push_back(synsets[j].id);
          edges.emplace_back(i, j);
        }
      }
    }
    const auto g = LexiconGraph::from_synsets(synsets);
    const auto d = testing::distance_oracle(n, edges);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const auto got = g.semantic_distance(synsets[a].id, synsets[b].id);
        if (d[a][b] == SIZE_MAX) {
          EXPECT_FALSE(got.has_value());
        } else {
          ASSERT_TRUE(got.has_value());
          EXPECT_EQ(*got, d[a][b]);
          EXPECT_EQ(g.semantic_distance(synsets[b].id, synsets[a].id), got);
        }
      }
    }
  }
}

TEST(LexiconProperty, ClosureMatchesWarshall) {
  Rng rng(4);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 30));
    std::vector<Synset> synsets(n);
    testing::BoolMatrix m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      synsets[i].id = SynsetId("s" + std::to_string(i));
      synsets[i].lemmas = {"w"};
      for (std::size_t j = 0; j < i; ++j) {
        if (rng.chance(0.15)) {
          synsets[i].hypernyms.push_back(synsets[j].id);
          m[i][j] = true;
        }
      }
    }
    const auto g = LexiconGraph::from_synsets(synsets);
    const auto reach = testing::closure_oracle(m);
    for (std::size_t i = 0; i < n; ++i) {
      std::set<std::size_t> got;
      for (const auto& e : g.hypernym_closure(synsets[i].id)) got.insert(std::stoul(e.id.str().substr(1)));
      std::set<std::size_t> want;
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][j]) want.insert(j);
      EXPECT_EQ(got, want);
    }
  }
}

}  // namespace
}  // namespace affectont
