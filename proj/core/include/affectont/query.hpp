#pragma once

// Boolean concept queries over annotated stimuli, affect windows and
// waypoint-driven scenario assembly.

#include <affectont/annotations.hpp>
#include <affectont/common.hpp>
#include <affectont/lexicon.hpp>
#include <affectont/manifest.hpp>
#include <affectont/taxonomy.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace affectont {

struct QueryTerm {
  std::string lemma;
  std::optional<Pos> pos;
  std::optional<std::size_t> sense;

  friend bool operator==(const QueryTerm&, const QueryTerm&) = default;
};

/// Query syntax tree. And/Or nodes have at least two children, Not exactly one.
struct QueryExpr {
  enum class Kind { term, negation, conjunction, disjunction };

  Kind kind = Kind::term;
  QueryTerm term;
  std::vector<QueryExpr> children;

  static QueryExpr make_term(std::string lemma, std::optional<Pos> pos = {},
                             std::optional<std::size_t> sense = {});
  static QueryExpr make_not(QueryExpr child);
  static QueryExpr make_and(std::vector<QueryExpr> children);
  static QueryExpr make_or(std::vector<QueryExpr> children);

  friend bool operator==(const QueryExpr&, const QueryExpr&) = default;
};

/// Fully parenthesized rendering that parses back to the same tree.
std::string to_string(const QueryExpr& expr);

class QueryParseError : public Error {
 public:
  QueryParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Grammar, lowest precedence first:
///   or   := and ("OR" and)*
///   and  := not ("AND" not)*
///   not  := "NOT" not | atom
///   atom := "(" or ")" | term
///   term := lemma ["#" pos ["#" sense]]
/// Operators are case-insensitive; lemmas are lowercased.
QueryExpr parse_query(std::string_view text);

class QueryError : public Error {
 public:
  using Error::Error;
};

enum class QueryScope { primary_only, primary_and_secondary };

/// Concepts a term denotes: the exact concept id `lemma#pos#sense` when fully
/// qualified, otherwise every concept whose id starts with the lemma (and pos,
/// when given).
std::set<ConceptId> resolve_term(const QueryTerm& term, const TaxonomyGraph& taxonomy);

/// Stimulus ids matching `query`. A term matches a stimulus annotated with the
/// term's concept or any of its descendants. NOT is the complement within the
/// store's stimuli. Throws QueryError listing every unresolvable term.
std::set<StimulusId> evaluate_query(const QueryExpr& query, const AnnotationStore& store,
                                    const TaxonomyGraph& taxonomy,
                                    QueryScope scope = QueryScope::primary_and_secondary);

/// Inclusive pleasure/arousal bounds.
struct AffectWindow {
  double pleasure_min = kAffectMin;
  double pleasure_max = kAffectMax;
  double arousal_min = kAffectMin;
  double arousal_max = kAffectMax;

  /// Throws QueryError when a bound is outside [1, 9] or min > max.
  void validate() const;
  bool contains(const AffectPoint& p) const;
};

using StimulusIndex = std::map<StimulusId, Stimulus>;

StimulusIndex index_stimuli(std::span<const Stimulus> stimuli);

/// Ids whose stimulus falls inside the window. Ids missing from the index are dropped.
std::set<StimulusId> affect_filter(const std::set<StimulusId>& ids, const StimulusIndex& stimuli,
                                   const AffectWindow& window);

struct Waypoint {
  AffectPoint target;
  std::optional<QueryExpr> constraint;
};

class ScenarioError : public Error {
 public:
  ScenarioError(std::size_t waypoint, const std::string& message);
  /// 1-based index of the waypoint that could not be served.
  std::size_t waypoint() const noexcept { return waypoint_; }

 private:
  std::size_t waypoint_;
};

struct ScenarioOptions {
  bool allow_repeat = false;
  QueryScope scope = QueryScope::primary_and_secondary;
};

/// Greedy per-waypoint selection: nearest candidate in the (pleasure,
/// arousal) plane, ties by ascending id.
std::vector<StimulusId> assemble_scenario(const std::vector<Waypoint>& waypoints,
                                          const AnnotationStore& store,
                                          const TaxonomyGraph& taxonomy,
                                          const StimulusIndex& stimuli,
                                          ScenarioOptions options = {});

}  // namespace affectont
