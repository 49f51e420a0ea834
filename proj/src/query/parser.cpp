#include "tgq/query/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "tgq/query/stars.hpp"
#include "tgq/rdf/vocab.hpp"

namespace tgq::query {

std::string toString(const PatternTerm& t) {
  if (isVariable(t)) return "?" + asVariable(t).name;
  return asTerm(t).toNTriples();
}

std::string TriplePattern::toString() const {
  return query::toString(s) + " " + query::toString(p) + " " + query::toString(o);
}

std::vector<std::string> variablesOf(const std::vector<TriplePattern>& patterns) {
  std::vector<std::string> out;
  auto add = [&](const PatternTerm& t) {
    if (!isVariable(t)) return;
    const auto& n = asVariable(t).name;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  for (const auto& tp : patterns) {
    add(tp.s);
    add(tp.p);
    add(tp.o);
  }
  return out;
}

std::string toQueryString(const UCQ& q) {
  std::ostringstream out;
  out << "SELECT";
  for (const auto& v : q.projection) out << " ?" << v.name;
  out << " WHERE {\n";
  for (size_t b = 0; b < q.branches.size(); ++b) {
    if (q.branches.size() > 1) out << (b == 0 ? "  { " : "  UNION { ");
    else out << "  ";
    const auto& br = q.branches[b];
    for (size_t i = 0; i < br.patterns.size(); ++i) {
      out << (i ? " . " : "") << br.patterns[i].toString();
    }
    for (const auto& opt : br.optionals) {
      out << " OPTIONAL {";
      for (size_t i = 0; i < opt.size(); ++i) out << (i ? " . " : " ") << opt[i].toString();
      out << " }";
    }
    if (q.branches.size() > 1) out << " }";
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

struct Branch {
  std::vector<TriplePattern> patterns;
  std::vector<std::vector<TriplePattern>> optionals;
};

std::vector<Branch> product(const std::vector<Branch>& a, const std::vector<Branch>& b) {
  std::vector<Branch> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      Branch r = x;
      r.patterns.insert(r.patterns.end(), y.patterns.begin(), y.patterns.end());
      r.optionals.insert(r.optionals.end(), y.optionals.begin(), y.optionals.end());
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {
    prefixes_["rdf"] = std::string(rdf::vocab::kRdfNs);
    prefixes_["rdfs"] = std::string(rdf::vocab::kRdfsNs);
  }

  UCQ parse() {
    prologue();
    std::string kw = keyword();
    if (iequals(kw, "CONSTRUCT") || iequals(kw, "DESCRIBE") || iequals(kw, "ASK")) {
      throw UnsupportedConstruct(kw);
    }
    if (!iequals(kw, "SELECT")) fail("expected SELECT");
    bool selectAll = false;
    std::vector<Variable> projection;
    skipWs();
    size_t save = pos_;
    std::string mod = keyword();
    if (!iequals(mod, "DISTINCT") && !iequals(mod, "REDUCED")) pos_ = save;
    skipWs();
    if (peek() == '*') {
      ++pos_;
      selectAll = true;
    } else {
      while (true) {
        skipWs();
        if (peek() == '?' || peek() == '$') {
          projection.push_back(variable());
        } else if (peek() == '(') {
          throw UnsupportedConstruct("aggregate/expression in SELECT");
        } else {
          break;
        }
      }
      if (projection.empty()) fail("expected projection variables or '*'");
    }
    skipWs();
    save = pos_;
    if (!iequals(keyword(), "WHERE")) pos_ = save;
    skipWs();
    auto branches = group();
    skipWs();
    if (!atEnd()) {
      std::string trailing = keyword();
      if (!trailing.empty()) throw UnsupportedConstruct("solution modifier " + trailing);
      fail("trailing input after query");
    }

    UCQ q;
    for (const auto& b : branches) {
      if (b.patterns.empty()) throw UnsupportedConstruct("empty group pattern");
    }
    for (size_t i = 0; i < branches.size(); ++i) {
      auto gp = decomposeStars(std::move(branches[i].patterns), i);
      gp.optionals = std::move(branches[i].optionals);
      q.branches.push_back(std::move(gp));
    }
    if (selectAll) {
      std::vector<std::string> seen;
      for (const auto& b : q.branches) {
        for (auto& v : variablesOf(b.patterns)) {
          if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
        }
        for (const auto& opt : b.optionals) {
          for (auto& v : variablesOf(opt)) {
            if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
          }
        }
      }
      for (auto& v : seen) q.projection.push_back(Variable{v});
    } else {
      q.projection = std::move(projection);
    }
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  bool atEnd() const { return pos_ >= s_.size(); }
  char peek(size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }

  void skipWs() {
    while (!atEnd()) {
      char c = s_[pos_];
      if (c == '#') {
        while (!atEnd() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skipWs();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool isNameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  std::string keyword() {
    skipWs();
    size_t start = pos_;
    while (!atEnd() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void prologue() {
    while (true) {
      skipWs();
      size_t save = pos_;
      std::string kw = keyword();
      if (iequals(kw, "BASE")) throw UnsupportedConstruct("BASE");
      if (!iequals(kw, "PREFIX")) {
        pos_ = save;
        return;
      }
      skipWs();
      size_t start = pos_;
      while (!atEnd() && isNameChar(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (peek() != ':') fail("expected ':' in PREFIX declaration");
      ++pos_;
      skipWs();
      if (peek() != '<') fail("expected IRI in PREFIX declaration");
      prefixes_[name] = iriRef();
    }
  }

  std::string iriRef() {
    ++pos_;  // '<'
    size_t start = pos_;
    while (!atEnd() && s_[pos_] != '>') {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) fail("whitespace in IRI");
      ++pos_;
    }
    if (atEnd()) fail("unterminated IRI");
    std::string iri(s_.substr(start, pos_ - start));
    ++pos_;
    if (iri.empty()) fail("empty IRI");
    return iri;
  }

  Variable variable() {
    ++pos_;  // '?' or '$'
    size_t start = pos_;
    while (!atEnd() && isNameChar(s_[pos_])) ++pos_;
    if (pos_ == start) fail("empty variable name");
    return Variable{std::string(s_.substr(start, pos_ - start))};
  }

  rdf::Term literal() {
    ++pos_;  // '"'
    std::string lexical;
    while (true) {
      if (atEnd()) fail("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (atEnd()) fail("unterminated literal");
        char e = s_[pos_++];
        switch (e) {
          case 'n': lexical += '\n'; break;
          case 't': lexical += '\t'; break;
          case 'r': lexical += '\r'; break;
          case '"': lexical += '"'; break;
          case '\\': lexical += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      } else {
        lexical += c;
      }
    }
    std::string datatype, lang;
    if (peek() == '@') {
      ++pos_;
      size_t start = pos_;
      while (!atEnd() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      lang = std::string(s_.substr(start, pos_ - start));
      if (lang.empty()) fail("empty language tag");
    } else if (peek() == '^' && peek(1) == '^') {
      pos_ += 2;
      auto dt = iriOrPrefixed();
      if (!dt) fail("expected datatype IRI");
      datatype = *dt;
    }
    return rdf::Term::literal(std::move(lexical), std::move(datatype), std::move(lang));
  }

  std::optional<std::string> iriOrPrefixed() {
    if (peek() == '<') return iriRef();
    size_t start = pos_;
    while (!atEnd() && isNameChar(s_[pos_])) ++pos_;
    if (peek() != ':') {
      pos_ = start;
      return std::nullopt;
    }
    std::string prefix(s_.substr(start, pos_ - start));
    ++pos_;
    size_t localStart = pos_;
    while (!atEnd() && (isNameChar(s_[pos_]) || s_[pos_] == '.')) ++pos_;
    while (pos_ > localStart && s_[pos_ - 1] == '.') --pos_;
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      pos_ = start;
      fail("undefined prefix '" + prefix + ":'");
    }
    return it->second + std::string(s_.substr(localStart, pos_ - localStart));
  }

  PatternTerm term(bool propertyPosition) {
    skipWs();
    char c = peek();
    if (c == '?' || c == '$') return variable();
    if (c == '"') {
      if (propertyPosition) fail("literal in property position");
      return literal();
    }
    if (c == '_' && peek(1) == ':') throw UnsupportedConstruct("blank node in query");
    if (c == '[') throw UnsupportedConstruct("blank node in query");
    if (propertyPosition && (c == '^' || c == '(' || c == '!')) {
      throw UnsupportedConstruct("property path");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      size_t start = pos_++;
      while (!atEnd() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (propertyPosition) fail("number in property position");
      return rdf::Term::literal(std::string(s_.substr(start, pos_ - start)),
                                "http://www.w3.org/2001/XMLSchema#integer");
    }
    if (propertyPosition && c == 'a' && !isNameChar(peek(1)) && peek(1) != ':') {
      ++pos_;
      return rdf::Term::iri(std::string(rdf::vocab::kType));
    }
    if (auto iri = iriOrPrefixed()) return rdf::Term::iri(std::move(*iri));
    fail("expected a term");
  }

  void rejectPathOperator() {
    // path operators directly follow the property, or appear as a binary
    // '/' or '|' after whitespace
    char c = peek();
    if (c == '+' || c == '*' || c == '?' || c == '/' || c == '|') {
      if (c == '?' && isNameChar(peek(1))) return;  // next token is a variable
      throw UnsupportedConstruct("property path");
    }
    size_t save = pos_;
    skipWs();
    if (peek() == '/' || peek() == '|') throw UnsupportedConstruct("property path");
    pos_ = save;
  }

  void triples(Branch& into) {
    PatternTerm subject = term(false);
    while (true) {
      PatternTerm property = term(true);
      rejectPathOperator();
      if (isVariable(property)) throw UnsupportedConstruct("variable in property position");
      while (true) {
        PatternTerm object = term(false);
        into.patterns.push_back({subject, property, object});
        skipWs();
        if (peek() != ',') break;
        ++pos_;
      }
      skipWs();
      if (peek() != ';') break;
      ++pos_;
      skipWs();
      if (peek() == '.' || peek() == '}') break;
    }
  }

  // Returns the flattened branches of a `{ ... }` group.
  std::vector<Branch> group() {
    expect('{');
    std::vector<Branch> acc{Branch{}};
    while (true) {
      skipWs();
      if (atEnd()) fail("unterminated group, expected '}'");
      char c = peek();
      if (c == '}') {
        ++pos_;
        return acc;
      }
      if (c == '.') {
        ++pos_;
        continue;
      }
      if (c == '{') {
        std::vector<Branch> alternatives = group();
        while (true) {
          skipWs();
          size_t save = pos_;
          if (!iequals(keyword(), "UNION")) {
            pos_ = save;
            break;
          }
          auto more = group();
          alternatives.insert(alternatives.end(), more.begin(), more.end());
        }
        acc = product(acc, alternatives);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        size_t save = pos_;
        std::string kw = keyword();
        if (iequals(kw, "OPTIONAL")) {
          auto inner = group();
          if (inner.size() != 1) throw UnsupportedConstruct("UNION inside OPTIONAL");
          if (!inner[0].optionals.empty()) throw UnsupportedConstruct("nested OPTIONAL");
          for (auto& b : acc) b.optionals.push_back(inner[0].patterns);
          continue;
        }
        for (const char* unsupported : {"FILTER", "BIND", "VALUES", "MINUS", "GRAPH", "SERVICE", "SELECT"}) {
          if (iequals(kw, unsupported)) throw UnsupportedConstruct(unsupported);
        }
        if (iequals(kw, "UNION")) fail("UNION must follow a group");
        pos_ = save;
      }
      Branch local;
      triples(local);
      for (auto& b : acc) b.patterns.insert(b.patterns.end(), local.patterns.begin(), local.patterns.end());
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

UCQ parseQuery(std::string_view text) { return Parser(text).parse(); }

}  // namespace tgq::query
