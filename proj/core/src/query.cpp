#include <affectont/query.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <limits>

namespace affectont {

QueryExpr QueryExpr::make_term(std::string lemma, std::optional<Pos> pos,
                               std::optional<std::size_t> sense) {
  QueryExpr e;
  e.kind = Kind::term;
  e.term = {std::move(lemma), pos, sense};
  return e;
}

QueryExpr QueryExpr::make_not(QueryExpr child) {
  QueryExpr e;
  e.kind = Kind::negation;
  e.children.push_back(std::move(child));
  return e;
}

QueryExpr QueryExpr::make_and(std::vector<QueryExpr> children) {
  if (children.size() < 2) throw QueryError("AND needs at least two operands");
  QueryExpr e;
  e.kind = Kind::conjunction;
  e.children = std::move(children);
  return e;
}

QueryExpr QueryExpr::make_or(std::vector<QueryExpr> children) {
  if (children.size() < 2) throw QueryError("OR needs at least two operands");
  QueryExpr e;
  e.kind = Kind::disjunction;
  e.children = std::move(children);
  return e;
}

std::string to_string(const QueryExpr& expr) {
  const auto operand = [](const QueryExpr& child) {
    return child.kind == QueryExpr::Kind::term ? to_string(child) : "(" + to_string(child) + ")";
  };
  switch (expr.kind) {
    case QueryExpr::Kind::term: {
      std::string out = expr.term.lemma;
      if (expr.term.pos) {
        out += '#';
        out += pos_code(*expr.term.pos);
        if (expr.term.sense) out += "#" + std::to_string(*expr.term.sense);
      }
      return out;
    }
    case QueryExpr::Kind::negation:
      return "NOT " + operand(expr.children.front());
    case QueryExpr::Kind::conjunction:
    case QueryExpr::Kind::disjunction: {
      const char* op = expr.kind == QueryExpr::Kind::conjunction ? " AND " : " OR ";
      std::string out;
      for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (i > 0) out += op;
        out += operand(expr.children[i]);
      }
      return out;
    }
  }
  return {};
}

QueryParseError::QueryParseError(std::size_t offset, const std::string& message)
    : Error("query offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

struct Lexeme {
  enum class Kind { open, close, word, op_and, op_or, op_not, end };
  Kind kind;
  std::size_t offset;
  std::string text;
};

std::vector<Lexeme> lex(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Lexeme::Kind::open, i, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Lexeme::Kind::close, i, ")"});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')') {
        ++i;
      }
      std::string word(text.substr(start, i - start));
      const std::string upper = [&] {
        std::string u = word;
        for (auto& ch : u) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        return u;
      }();
      Lexeme::Kind kind = Lexeme::Kind::word;
      if (upper == "AND") kind = Lexeme::Kind::op_and;
      else if (upper == "OR") kind = Lexeme::Kind::op_or;
      else if (upper == "NOT") kind = Lexeme::Kind::op_not;
      out.push_back({kind, start, std::move(word)});
    }
  }
  out.push_back({Lexeme::Kind::end, text.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexemes_(lex(text)) {}

  QueryExpr parse() {
    if (lexemes_.front().kind == Lexeme::Kind::end) throw QueryParseError(0, "empty query");
    QueryExpr e = parse_or();
    const Lexeme& rest = peek();
    if (rest.kind == Lexeme::Kind::close) throw QueryParseError(rest.offset, "unbalanced ')'");
    if (rest.kind != Lexeme::Kind::end) {
      throw QueryParseError(rest.offset, "expected AND or OR before '" + rest.text + "'");
    }
    return e;
  }

 private:
  const Lexeme& peek() const { return lexemes_[pos_]; }
  const Lexeme& take() { return lexemes_[pos_++]; }

  QueryExpr parse_or() {
    std::vector<QueryExpr> parts{parse_and()};
    while (peek().kind == Lexeme::Kind::op_or) {
      last_operator_ = take().offset;
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front()) : QueryExpr::make_or(std::move(parts));
  }

  QueryExpr parse_and() {
    std::vector<QueryExpr> parts{parse_not()};
    while (peek().kind == Lexeme::Kind::op_and) {
      last_operator_ = take().offset;
      parts.push_back(parse_not());
    }
    return parts.size() == 1 ? std::move(parts.front()) : QueryExpr::make_and(std::move(parts));
  }

  QueryExpr parse_not() {
    if (peek().kind == Lexeme::Kind::op_not) {
      last_operator_ = take().offset;
      return QueryExpr::make_not(parse_not());
    }
    return parse_atom();
  }

  QueryExpr parse_atom() {
    const Lexeme& next = peek();
    switch (next.kind) {
      case Lexeme::Kind::open: {
        const std::size_t open_at = take().offset;
        if (peek().kind == Lexeme::Kind::close) throw QueryParseError(peek().offset, "empty term");
        QueryExpr inner = parse_or();
        if (peek().kind != Lexeme::Kind::close) {
          throw QueryParseError(open_at, "unbalanced '(' opened here");
        }
        take();
        return inner;
      }
      case Lexeme::Kind::word:
        return parse_term(take());
      case Lexeme::Kind::end:
        if (last_operator_) throw QueryParseError(*last_operator_, "dangling operator");
        throw QueryParseError(next.offset, "expected a term");
      case Lexeme::Kind::close:
        if (last_operator_) throw QueryParseError(*last_operator_, "dangling operator");
        throw QueryParseError(next.offset, "empty term");
      default:
        throw QueryParseError(next.offset, "unexpected operator '" + next.text + "'");
    }
  }

  static QueryExpr parse_term(const Lexeme& word) {
    const auto parts = split(word.text, '#');
    if (parts.size() > 3) throw QueryParseError(word.offset, "too many '#' in term");
    const std::string lemma = to_lower(parts[0]);
    if (lemma.empty()) throw QueryParseError(word.offset, "empty term");
    for (char c : lemma) {
      const auto u = static_cast<unsigned char>(c);
      if (!(std::isalnum(u) || c == '_' || c == '-' || c == '\'' || c == '.' || u >= 0x80)) {
        throw QueryParseError(word.offset, std::string("invalid character '") + c + "' in term");
      }
    }
    std::optional<Pos> pos;
    std::optional<std::size_t> sense;
    if (parts.size() >= 2) {
      pos = parse_pos(parts[1]);
      if (!pos) {
        throw QueryParseError(word.offset + lemma.size() + 1,
                              "unknown part of speech '" + parts[1] + "'");
      }
    }
    if (parts.size() == 3) {
      std::size_t n = 0;
      if (!parse_size(parts[2], n) || n == 0) {
        throw QueryParseError(word.offset + parts[0].size() + parts[1].size() + 2,
                              "sense must be a positive integer");
      }
      sense = n;
    }
    return QueryExpr::make_term(lemma, pos, sense);
  }

  std::vector<Lexeme> lexemes_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> last_operator_;
};

void collect_terms(const QueryExpr& e, std::vector<const QueryTerm*>& out) {
  if (e.kind == QueryExpr::Kind::term) {
    out.push_back(&e.term);
    return;
  }
  for (const auto& c : e.children) collect_terms(c, out);
}

class Evaluator {
 public:
  Evaluator(const AnnotationStore& store, const TaxonomyGraph& taxonomy, QueryScope scope)
      : store_(store), taxonomy_(taxonomy) {
    for (const auto& [id, e] : store.entries()) {
      universe_.insert(id);
      auto& concepts = annotated_[id];
      concepts.insert(e.primary);
      if (scope == QueryScope::primary_and_secondary) {
        for (const auto& [key, w] : e.contributions) concepts.insert(key.second);
      }
    }
  }

  void prepare(const QueryExpr& query) {
    std::vector<const QueryTerm*> terms;
    collect_terms(query, terms);
    std::vector<std::string> missing;
    for (const QueryTerm* t : terms) {
      auto resolved = resolve_term(*t, taxonomy_);
      if (resolved.empty()) {
        QueryExpr e;
        e.term = *t;
        missing.push_back(to_string(e));
        continue;
      }
      std::set<ConceptId> closure = resolved;
      for (const auto& c : resolved) {
        auto below = taxonomy_.descendants(c);
        closure.insert(below.begin(), below.end());
      }
      subsumed_[t] = std::move(closure);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw QueryError("unresolved query terms: " + list);
    }
  }

  std::set<StimulusId> eval(const QueryExpr& e) const {
    switch (e.kind) {
      case QueryExpr::Kind::term: {
        const auto& concepts = subsumed_.at(&e.term);
        std::set<StimulusId> out;
        for (const auto& [id, annotated] : annotated_) {
          if (std::any_of(annotated.begin(), annotated.end(),
                          [&](const ConceptId& c) { return concepts.contains(c); })) {
            out.insert(id);
          }
        }
        return out;
      }
      case QueryExpr::Kind::negation: {
        const auto inner = eval(e.children.front());
        std::set<StimulusId> out;
        std::set_difference(universe_.begin(), universe_.end(), inner.begin(), inner.end(),
                            std::inserter(out, out.end()));
        return out;
      }
      case QueryExpr::Kind::conjunction: {
        auto acc = eval(e.children.front());
        for (std::size_t i = 1; i < e.children.size() && !acc.empty(); ++i) {
          const auto next = eval(e.children[i]);
          std::set<StimulusId> out;
          std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(),
                                std::inserter(out, out.end()));
          acc = std::move(out);
        }
        return acc;
      }
      case QueryExpr::Kind::disjunction: {
        std::set<StimulusId> acc;
        for (const auto& c : e.children) {
          const auto next = eval(c);
          acc.insert(next.begin(), next.end());
        }
        return acc;
      }
    }
    return {};
  }

 private:
  const AnnotationStore& store_;
  const TaxonomyGraph& taxonomy_;
  std::set<StimulusId> universe_;
  std::map<StimulusId, std::set<ConceptId>> annotated_;
  std::map<const QueryTerm*, std::set<ConceptId>> subsumed_;
};

}  // namespace

QueryExpr parse_query(std::string_view text) { return Parser(text).parse(); }

std::set<ConceptId> resolve_term(const QueryTerm& term, const TaxonomyGraph& taxonomy) {
  std::set<ConceptId> out;
  if (term.pos && term.sense) {
    ConceptId exact(term.lemma + "#" + pos_code(*term.pos) + "#" + std::to_string(*term.sense));
    if (taxonomy.contains(exact)) out.insert(exact);
    return out;
  }
  if (!term.pos && taxonomy.contains(ConceptId(term.lemma))) out.insert(ConceptId(term.lemma));
  std::string prefix = term.lemma + "#";
  if (term.pos) {
    prefix += pos_code(*term.pos);
    prefix += '#';
  }
  for (auto it = taxonomy.nodes().lower_bound(ConceptId(prefix));
       it != taxonomy.nodes().end() && it->first.str().starts_with(prefix); ++it) {
    out.insert(it->first);
  }
  return out;
}

std::set<StimulusId> evaluate_query(const QueryExpr& query, const AnnotationStore& store,
                                    const TaxonomyGraph& taxonomy, QueryScope scope) {
  Evaluator evaluator(store, taxonomy, scope);
  evaluator.prepare(query);
  return evaluator.eval(query);
}

void AffectWindow::validate() const {
  const auto check = [](double lo, double hi, const char* axis) {
    if (!in_affect_range(lo) || !in_affect_range(hi)) {
      throw QueryError(std::string(axis) + " window bounds must lie in [1, 9]");
    }
    if (lo > hi) throw QueryError(std::string(axis) + " window minimum exceeds maximum");
  };
  check(pleasure_min, pleasure_max, "pleasure");
  check(arousal_min, arousal_max, "arousal");
}

bool AffectWindow::contains(const AffectPoint& p) const {
  return p.pleasure >= pleasure_min && p.pleasure <= pleasure_max && p.arousal >= arousal_min &&
         p.arousal <= arousal_max;
}

StimulusIndex index_stimuli(std::span<const Stimulus> stimuli) {
  StimulusIndex index;
  for (const auto& s : stimuli) index.emplace(s.id, s);
  return index;
}

std::set<StimulusId> affect_filter(const std::set<StimulusId>& ids, const StimulusIndex& stimuli,
                                   const AffectWindow& window) {
  window.validate();
  std::set<StimulusId> out;
  for (const auto& id : ids) {
    auto it = stimuli.find(id);
    if (it != stimuli.end() && window.contains(it->second.affect)) out.insert(id);
  }
  return out;
}

ScenarioError::ScenarioError(std::size_t waypoint, const std::string& message)
    : Error("waypoint " + std::to_string(waypoint) + ": " + message), waypoint_(waypoint) {}

std::vector<StimulusId> assemble_scenario(const std::vector<Waypoint>& waypoints,
                                          const AnnotationStore& store,
                                          const TaxonomyGraph& taxonomy,
                                          const StimulusIndex& stimuli, ScenarioOptions options) {
  if (waypoints.empty()) throw ScenarioError(0, "scenario needs at least one waypoint");
  std::vector<StimulusId> chosen;
  std::set<StimulusId> used;
  for (std::size_t w = 0; w < waypoints.size(); ++w) {
    const Waypoint& wp = waypoints[w];
    if (!in_affect_range(wp.target.pleasure) || !in_affect_range(wp.target.arousal)) {
      throw ScenarioError(w + 1, "target outside [1, 9]^2");
    }
    std::set<StimulusId> candidates;
    if (wp.constraint) {
      candidates = evaluate_query(*wp.constraint, store, taxonomy, options.scope);
    } else {
      for (const auto& [id, s] : stimuli) candidates.insert(id);
    }
    const StimulusId* best = nullptr;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& id : candidates) {
      if (!options.allow_repeat && used.contains(id)) continue;
      auto it = stimuli.find(id);
      if (it == stimuli.end()) continue;
      const double dp = it->second.affect.pleasure - wp.target.pleasure;
      const double da = it->second.affect.arousal - wp.target.arousal;
      const double d = std::hypot(dp, da);
      if (d < best_distance) {  // candidates iterate in ascending id order
        best_distance = d;
        best = &id;
      }
    }
    if (best == nullptr) throw ScenarioError(w + 1, "no candidate stimulus left");
    used.insert(*best);
    chosen.push_back(*best);
  }
  return chosen;
}

}  // namespace affectont
