#include <affectont/config.hpp>

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"

namespace affectont {
namespace {

PipelineConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.conf");
}

TEST(Config, EmptyKeepsDefaults) {
  const auto cfg = parse("");
  EXPECT_EQ(cfg.prune.cut_lemmas, PruneConfig::defaults().cut_lemmas);
  EXPECT_EQ(cfg.tables.abbreviations, NormalizerTables::defaults().abbreviations);
}

TEST(Config, SectionsAndComments) {
  const auto cfg = parse(
      "# pipeline\n"
      "min_depth = 2\n"
      "[cut]\n"
      "Entity  # root\n"
      "[cut]\n"
      "object\n"
      "[exclude]\n"
      "prison#n#1\n"
      "[disjoint]\n"
      "female | male\n"
      "[abbreviations]\n"
      "PPL = people\n"
      "[irregulars]\n"
      "geese = goose\n"
      "[relation_words]\n"
      "beside\n"
      "[predicates]\n"
      "member_of\n"
      "[relations]\n"
      "soldier#n#1 member_of army#n#1\n");
  EXPECT_EQ(cfg.prune.min_depth_from_root, 2u);
  EXPECT_EQ(cfg.prune.cut_lemmas, (std::set<std::string>{"entity", "object"}));
  EXPECT_EQ(cfg.prune.exclusion_list, std::set<std::string>{"prison#n#1"});
  ASSERT_EQ(cfg.disjoint.size(), 1u);
  EXPECT_EQ(cfg.disjoint[0], (std::pair<std::string, std::string>{"female", "male"}));
  EXPECT_EQ(cfg.tables.abbreviations.at("ppl"), "people");
  EXPECT_EQ(cfg.tables.abbreviations.at("fem"), "female");
  EXPECT_EQ(cfg.tables.irregular_plurals.at("geese"), "goose");
  EXPECT_TRUE(cfg.tables.relation_words.contains("beside"));
  ASSERT_EQ(cfg.relations.size(), 1u);
  EXPECT_EQ(cfg.relations[0], (RelationSpec{"soldier#n#1", "member_of", "army#n#1"}));
}

TEST(Config, ErrorsCarryLineNumbers) {
  const auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message("[bogus]\n"), "test.conf:1: unknown section [bogus]");
  EXPECT_EQ(message("\nmin_depth = -1\n"), "test.conf:2: min_depth must be a non-negative integer");
  EXPECT_EQ(message("[disjoint]\na b\n"), "test.conf:2: expected 'a | b'");
  EXPECT_EQ(message("[relations]\na p b\n"), "test.conf:2: predicate 'p' is not declared in [predicates]");
  EXPECT_EQ(message("[abbreviations]\nfem\n"), "test.conf:2: expected key = value");
  EXPECT_EQ(message("colour = red\n"), "test.conf:1: unknown setting 'colour'");
}

TEST(Config, BundledFilesLoad) {
  const auto def = load_config(testing::data_path("config/default.conf"));
  EXPECT_EQ(def.prune.cut_lemmas, PruneConfig::defaults().cut_lemmas);
  EXPECT_TRUE(def.predicates.contains("member_of"));
  const auto stim = load_config(testing::data_path("config/stimuli.conf"));
  EXPECT_EQ(stim.relations.size(), 2u);
  EXPECT_THROW(load_config(testing::data_path("config/missing.conf")), ConfigError);
}

}  // namespace
}  // namespace affectont
