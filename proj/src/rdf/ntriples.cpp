#include "tgq/rdf/ntriples.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace tgq::rdf {

MalformedLine::MalformedLine(size_t lineNo, std::string reason)
    : std::runtime_error("line " + std::to_string(lineNo) + ": " + reason),
      line_(lineNo),
      reason_(std::move(reason)) {}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, size_t lineNo) : s_(line), lineNo_(lineNo) {}

  void skipWs() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) {
      ++pos_;
    }
  }
  bool atEnd() const { return pos_ >= s_.size(); }
  char peek() const { return atEnd() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& reason) const {
    throw MalformedLine(lineNo_, reason + " (column " + std::to_string(pos_ + 1) + ")");
  }

  std::string iri() {
    // at '<'
    ++pos_;
    size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '>') {
      char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '<' || c == '"') fail("bad IRI: illegal character in IRI");
      ++pos_;
    }
    if (atEnd()) fail("bad IRI brackets: missing '>'");
    std::string value(s_.substr(start, pos_ - start));
    ++pos_;
    if (value.empty()) fail("bad IRI: empty IRI");
    return value;
  }

  std::string blankLabel() {
    // at "_:"; labels may contain '.' but never end with one
    pos_ += 2;
    size_t start = pos_;
    while (pos_ < s_.size()) {
      unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (!std::isalnum(c) && c != '_' && c != '-' && c != '.') break;
      ++pos_;
    }
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return std::string(s_.substr(start, pos_ - start));
  }

  static void appendUtf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  Term literal() {
    // at '"'
    ++pos_;
    std::string lexical;
    bool closed = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_++];
      if (c == '"') {
        closed = true;
        break;
      }
      if (c != '\\') {
        lexical += c;
        continue;
      }
      if (atEnd()) break;
      char e = s_[pos_++];
      switch (e) {
        case 't': lexical += '\t'; break;
        case 'b': lexical += '\b'; break;
        case 'n': lexical += '\n'; break;
        case 'r': lexical += '\r'; break;
        case 'f': lexical += '\f'; break;
        case '"': lexical += '"'; break;
        case '\'': lexical += '\''; break;
        case '\\': lexical += '\\'; break;
        case 'u':
        case 'U': {
          size_t len = e == 'u' ? 4 : 8;
          if (pos_ + len > s_.size()) fail("truncated unicode escape");
          std::string hex(s_.substr(pos_, len));
          if (!std::all_of(hex.begin(), hex.end(), [](char h) { return std::isxdigit(static_cast<unsigned char>(h)); })) {
            fail("bad unicode escape");
          }
          appendUtf8(lexical, std::stoul(hex, nullptr, 16));
          pos_ += len;
          break;
        }
        default:
          fail(std::string("unknown escape \\") + e);
      }
    }
    if (!closed) fail("unterminated literal");
    std::string datatype, lang;
    if (peek() == '@') {
      ++pos_;
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
      lang = std::string(s_.substr(start, pos_ - start));
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (peek() != '<') fail("datatype must be an IRI");
      datatype = iri();
    }
    return Term::literal(std::move(lexical), std::move(datatype), std::move(lang));
  }

  Term term(const char* position) {
    skipWs();
    char c = peek();
    if (c == '<') return Term::iri(iri());
    if (c == '_' && s_.substr(pos_, 2) == "_:") return Term::blank(blankLabel());
    if (c == '"') return literal();
    if (atEnd()) fail(std::string("missing ") + position);
    fail(std::string("unexpected character '") + c + "' in " + position);
  }

  void terminator() {
    skipWs();
    if (peek() != '.') fail("missing terminator '.'");
    ++pos_;
    skipWs();
    if (!atEnd() && peek() != '#') fail("trailing content after '.'");
  }

 private:
  std::string_view s_;
  size_t lineNo_;
  size_t pos_ = 0;
};

}  // namespace

bool parseNTriplesLine(std::string_view line, size_t lineNo, TermTriple& out) {
  LineParser p(line, lineNo);
  p.skipWs();
  if (p.atEnd() || p.peek() == '#') return false;
  out.s = p.term("subject");
  if (out.s.isLiteral()) p.fail("literal in subject position");
  out.p = p.term("property");
  if (!out.p.isIri()) p.fail("property must be an IRI");
  out.o = p.term("object");
  p.terminator();
  return true;
}

ParseResult parseNTriples(std::istream& in, const ParseOptions& options) {
  GraphBuilder builder(options.dictionary ? options.dictionary
                                          : std::make_shared<Dictionary>());
  ParseResult result;
  std::string line;
  TermTriple t;
  while (std::getline(in, line)) {
    ++result.linesRead;
    try {
      if (parseNTriplesLine(line, result.linesRead, t)) builder.add(t);
    } catch (const MalformedLine& e) {
      if (options.strict) throw;
      ++result.skippedLines;
      if (result.errors.size() < 100) result.errors.push_back(e);
    }
  }
  result.graph = std::move(builder).build();
  return result;
}

ParseResult parseNTriples(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parseNTriples(in, options);
}

ParseResult readNTriplesFile(const std::filesystem::path& path,
                             const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parseNTriples(in, options);
}

void serializeNTriples(const Graph& g, std::ostream& out) {
  std::vector<std::array<std::string, 3>> lines;
  lines.reserve(g.size());
  for (const auto& t : g.triples()) {
    auto tt = g.resolve(t);
    lines.push_back({tt.s.toNTriples(), tt.p.toNTriples(), tt.o.toNTriples()});
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l[0] << ' ' << l[1] << ' ' << l[2] << " .\n";
}

std::string serializeNTriples(const Graph& g) {
  std::ostringstream out;
  serializeNTriples(g, out);
  return out.str();
}

}  // namespace tgq::rdf
