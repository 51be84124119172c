#include <affectont/keyword.hpp>
#include <affectont/lexicon.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "oracles.hpp"

namespace affectont {
namespace {

const LexiconGraph& mini() {
  static const LexiconGraph lexicon =
      load_lexicon(testing::data_path("lexicon/mini.tsv"), LexiconFormat::simple);
  return lexicon;
}

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

using Strings = std::vector<std::string>;

TEST(Tokenize, SplitsCompoundTags) {
  EXPECT_EQ(texts(tokenize_raw("AngryFace")), (Strings{"angry", "face"}));
  EXPECT_EQ(texts(tokenize_raw("MenW/guns")), (Strings{"men", "with", "guns"}));
  EXPECT_EQ(texts(tokenize_raw("Girl&Dog")), (Strings{"girl", "dog"}));
  EXPECT_EQ(texts(tokenize_raw("w/Dog")), (Strings{"with", "dog"}));
  EXPECT_EQ(texts(tokenize_raw("Room101")), (Strings{"room", "101"}));
  EXPECT_EQ(texts(tokenize_raw("  Biking / train ")), (Strings{"biking", "train"}));
}

TEST(Tokenize, RelationTokenIsTagged) {
  const auto tokens = tokenize_raw("MenW/guns");
  EXPECT_EQ(tokens[1].pos_hint, PosHint::relation);
}

TEST(Tokenize, OnlyDelimitersFails) {
  EXPECT_THROW(tokenize_raw("&/ -"), KeywordError);
  EXPECT_THROW(tokenize_raw(""), KeywordError);
}

TEST(Lemmatize, PluralsAndAbbreviations) {
  KeywordNormalizer n(mini());
  EXPECT_EQ(n.lemmatize("women"), (Lemma{"woman", PosHint::noun}));
  EXPECT_EQ(n.lemmatize("babies"), (Lemma{"baby", PosHint::noun}));
  EXPECT_EQ(n.lemmatize("neut"), (Lemma{"neutral", PosHint::adjective}));
  EXPECT_EQ(n.lemmatize("fem"), (Lemma{"female", PosHint::noun}));
  EXPECT_EQ(n.lemmatize("guns"), (Lemma{"gun", PosHint::noun}));
  EXPECT_EQ(n.lemmatize("grieving"), (Lemma{"grieving", PosHint::verb}));
  EXPECT_EQ(n.lemmatize("quickly"), (Lemma{"quickly", PosHint::adverb}));
}

TEST(Lemmatize, UnknownWordIsNotAnError) {
  KeywordNormalizer n(mini());
  EXPECT_EQ(n.lemmatize("zorblax"), (Lemma{"zorblax", PosHint::unknown}));
}

struct Expected {
  const char* raw;
  Strings heads;
  Strings modifiers;
  Strings relations;
};

std::vector<Expected> corpus() {
  return {
      {"Woman", {"woman"}, {}, {}},
      {"Women", {"woman"}, {}, {}},
      {"Baby", {"baby"}, {}, {}},
      {"Babies", {"baby"}, {}, {}},
      {"Soldier", {"soldier"}, {}, {}},
      {"Soldiers", {"soldier"}, {}, {}},
      {"AngryFace", {"face"}, {"angry"}, {}},
      {"GrievingFem", {"female"}, {"grieving"}, {}},
      {"ManInPool", {"man", "pool"}, {}, {"in"}},
      {"BoysReading", {"boy"}, {"reading"}, {}},
      {"Girl&Dog", {"girl", "dog"}, {}, {}},
      {"Fem", {"female"}, {}, {}},
      {"-fem", {"female"}, {}, {}},
      {"Fem/-fem", {"female"}, {}, {}},
      {"Cliffdiver", {"cliff_diver"}, {}, {}},
      {"CliffDivers", {"cliff_diver"}, {}, {}},
      {"MenW/guns", {"man", "gun"}, {}, {"with"}},
      {"BikerCouple", {"couple"}, {"biker"}, {}},
      {"Biking/train", {"biking", "train"}, {}, {}},
      {"NeuMan", {"man"}, {"neutral"}, {}},
      {"NeutGirl", {"girl"}, {"neutral"}, {}},
      {"NeutralGirl", {"girl"}, {"neutral"}, {}},
      {"NeuWoman", {"woman"}, {"neutral"}, {}},
      {"Boat", {"boat"}, {}, {}},
  };
}

Strings lemmas(const std::vector<Lemma>& v) {
  Strings out;
  for (const auto& l : v) out.push_back(l.text);
  return out;
}

TEST(Normalize, KeywordCorpus) {
  KeywordNormalizer n(mini());
  for (const auto& e : corpus()) {
    SCOPED_TRACE(e.raw);
    const auto k = n.normalize(e.raw);
    EXPECT_EQ(k.raw, e.raw);
    EXPECT_EQ(lemmas(k.heads), e.heads);
    EXPECT_EQ(lemmas(k.modifiers), e.modifiers);
    EXPECT_EQ(k.relations, e.relations);
    for (const auto& h : k.heads) EXPECT_EQ(h.pos, PosHint::noun);
  }
}

TEST(Normalize, GrievingIsAVerbModifier) {
  const auto k = normalize_keyword("GrievingFem", mini());
  ASSERT_EQ(k.modifiers.size(), 1u);
  EXPECT_EQ(k.modifiers[0].pos, PosHint::verb);
}

TEST(Normalize, SingularAndPluralAgree) {
  KeywordNormalizer n(mini());
  EXPECT_TRUE(n.normalize("Cliffdiver").same_decomposition(n.normalize("CliffDivers")));
  EXPECT_TRUE(n.normalize("Woman").same_decomposition(n.normalize("Women")));
}

TEST(Normalize, NoHeadFails) {
  KeywordNormalizer n(mini());
  try {
    n.normalize("Angry");
    FAIL();
  } catch (const KeywordError& e) {
    EXPECT_NE(std::string(e.what()).find("angry"), std::string::npos);
  }
}

TEST(Normalize, CustomAbbreviationTable) {
  auto tables = NormalizerTables::defaults();
  tables.abbreviations["ppl"] = "person";
  KeywordNormalizer n(mini(), tables);
  EXPECT_EQ(lemmas(n.normalize("HappyPpl").heads), Strings{"person"});
}

TEST(Normalize, RenderMatchesParts) {
  KeywordNormalizer n(mini());
  EXPECT_EQ(render(n.normalize("AngryFace")), "angry face");
  EXPECT_EQ(render(n.normalize("Girl&Dog")), "girl & dog");
}

TEST(Tables, ParseTableHandlesComments) {
  std::istringstream in("# header\nFem=Female\n\n neu = neutral # trailing\n");
  const auto table = parse_table(in, "t");
  EXPECT_EQ(table.at("fem"), "female");
  EXPECT_EQ(table.at("neu"), "neutral");
  std::istringstream bad("novalue\n");
  EXPECT_THROW(parse_table(bad, "t"), ConfigError);
}

TEST(Tables, BundledFilesParse) {
  const auto abbreviations = load_table(testing::data_path("config/abbreviations.txt"));
  EXPECT_EQ(abbreviations.at("fem"), "female");
  const auto irregular = load_table(testing::data_path("config/irregulars.txt"));
  EXPECT_EQ(irregular.at("women"), "woman");
}

// Random keywords assembled from single-word lexicon entries.
std::string random_keyword(testing::Rng& rng) {
  static const Strings nouns = {"boat", "dog", "girl", "woman", "man", "face", "pool", "train", "baby", "gun"};
  static const Strings plurals = {"boats", "dogs", "girls", "women", "men", "faces", "pools", "trains", "babies", "guns"};
  static const Strings adjectives = {"angry", "happy", "sad", "young", "neutral", "neu", "neut"};
  std::string out;
  const int segments = rng.between(1, 3);
  for (int s = 0; s < segments; ++s) {
    if (s > 0) out += rng.chance(0.5) ? "&" : "/";
    if (rng.chance(0.5)) out += rng.pick(adjectives) + " ";
    out += rng.chance(0.5) ? rng.pick(nouns) : rng.pick(plurals);
  }
  if (rng.chance(0.3)) out += " with " + rng.pick(nouns);
  return out;
}

std::string camel(const std::string& s) {
  std::string out;
  bool upper = true;
  for (char c : s) {
    if (c == ' ') {
      upper = true;
      continue;
    }
    out.push_back(upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    upper = false;
  }
  return out;
}

TEST(NormalizeProperty, IdempotentDeterministicCaseInsensitive) {
  KeywordNormalizer n(mini());
  testing::Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const std::string raw = random_keyword(rng);
    SCOPED_TRACE(raw);
    const auto k = n.normalize(raw);
    EXPECT_TRUE(n.normalize(render(k)).same_decomposition(k));
    const auto again = n.normalize(raw);
    EXPECT_TRUE(again.same_decomposition(k));
    EXPECT_EQ(again.raw, k.raw);
    std::string upper = raw;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    EXPECT_TRUE(n.normalize(upper).same_decomposition(k));
    EXPECT_TRUE(n.normalize(camel(raw)).same_decomposition(k));
  }
}

TEST(NormalizeProperty, IrregularPluralsCollapse) {
  KeywordNormalizer n(mini());
  for (const auto& [plural, singular] : n.tables().irregular_plurals) {
    if (!mini().has_lemma(singular, Pos::noun)) continue;
    SCOPED_TRACE(plural);
    EXPECT_TRUE(n.normalize(plural).same_decomposition(n.normalize(singular)));
  }
}

}  // namespace
}  // namespace affectont
