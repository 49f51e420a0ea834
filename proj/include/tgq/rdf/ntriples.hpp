#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tgq/rdf/graph.hpp"

namespace tgq::rdf {

class MalformedLine : public std::runtime_error {
 public:
  MalformedLine(size_t lineNo, std::string reason);
  size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  size_t line_;
  std::string reason_;
};

struct ParseOptions {
  /// Strict mode aborts on the first malformed line; lenient mode skips and
  /// counts it.
  bool strict = true;
  /// Dictionary to intern into; a fresh one is created when null.
  std::shared_ptr<Dictionary> dictionary;
};

struct ParseResult {
  Graph graph;
  size_t linesRead = 0;
  size_t skippedLines = 0;
  /// Diagnostics for skipped lines (lenient mode), capped at 100 entries.
  std::vector<MalformedLine> errors;
};

ParseResult parseNTriples(std::istream& in, const ParseOptions& options = {});
ParseResult parseNTriples(std::string_view text, const ParseOptions& options = {});
ParseResult readNTriplesFile(const std::filesystem::path& path,
                             const ParseOptions& options = {});

/// Parses one N-Triples statement; throws MalformedLine. Returns false for
/// blank and comment lines.
bool parseNTriplesLine(std::string_view line, size_t lineNo, TermTriple& out);

/// Writes one triple per line, sorted by the N-Triples forms of subject,
/// property and object.
void serializeNTriples(const Graph& g, std::ostream& out);
std::string serializeNTriples(const Graph& g);

}  // namespace tgq::rdf
