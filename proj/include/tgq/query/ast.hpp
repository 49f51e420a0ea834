#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tgq/rdf/term.hpp"

namespace tgq::query {

struct Variable {
  std::string name;  // without the leading '?'
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, rdf::Term>;

inline bool isVariable(const PatternTerm& t) { return std::holds_alternative<Variable>(t); }
inline const Variable& asVariable(const PatternTerm& t) { return std::get<Variable>(t); }
inline const rdf::Term& asTerm(const PatternTerm& t) { return std::get<rdf::Term>(t); }
std::string toString(const PatternTerm& t);

struct TriplePattern {
  PatternTerm s, p, o;

  std::string toString() const;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

enum class Position { Subject, Object };
enum class JoinKind { SubjectObject, ObjectObject };

/// Triple patterns sharing one subject (variable or ground term).
struct StarPattern {
  size_t id = 0;  // index within its branch
  PatternTerm subject;
  std::vector<TriplePattern> patterns;
  std::set<rdf::Term> requiredProperties;
};

/// A variable shared by two stars. For subject-object joins `starA` holds the
/// variable in object position and `starB` has it as subject; for
/// object-object joins `starA < starB`.
struct JoinEdge {
  size_t starA = 0;
  Position posA = Position::Object;
  size_t starB = 0;
  Position posB = Position::Subject;
  std::string variable;
  JoinKind kind = JoinKind::SubjectObject;
};

/// One conjunctive branch.
struct GraphPattern {
  size_t id = 0;
  std::vector<TriplePattern> patterns;
  std::vector<StarPattern> stars;
  std::vector<JoinEdge> joinEdges;
  /// Variables fixed to a constant by query rewriting; they no longer occur
  /// in `patterns` but still appear in solutions.
  std::map<std::string, rdf::Term> constants;
  /// OPTIONAL groups, kept only for MQO-form input.
  std::vector<std::vector<TriplePattern>> optionals;
};

/// Union of conjunctive queries.
struct UCQ {
  std::vector<GraphPattern> branches;
  std::vector<Variable> projection;

  size_t width() const { return branches.size(); }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(size_t position, const std::string& message)
      : std::runtime_error("syntax error at offset " + std::to_string(position) + ": " + message),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

class UnsupportedConstruct : public std::runtime_error {
 public:
  explicit UnsupportedConstruct(std::string name)
      : std::runtime_error("unsupported construct: " + name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Variables of a pattern list in first-occurrence order.
std::vector<std::string> variablesOf(const std::vector<TriplePattern>& patterns);

/// Renders a UCQ back to the query grammar (one branch per UNION block).
std::string toQueryString(const UCQ& q);

}  // namespace tgq::query
