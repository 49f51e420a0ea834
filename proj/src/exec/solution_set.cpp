#include "tgq/exec/solution_set.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace tgq::exec {

void SolutionSet::add(SolutionRow row) {
  if (row.size() != variables_.size())
    throw std::invalid_argument("solution row width does not match the projection");
  rows_.insert(std::move(row));
}

std::string renderRow(const SolutionRow& row) {
  std::string line;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) line += '\t';
    if (row[i]) line += row[i]->toNTriples();
  }
  return line;
}

namespace {
std::vector<std::string> renderedRows(const std::set<SolutionRow>& rows) {
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const auto& r : rows) lines.push_back(renderRow(r));
  std::sort(lines.begin(), lines.end());
  return lines;
}
}  // namespace

void SolutionSet::writeTsv(std::ostream& out) const {
  for (size_t i = 0; i < variables_.size(); ++i) out << (i ? "\t?" : "?") << variables_[i];
  out << '\n';
  for (const auto& line : renderedRows(rows_)) out << line << '\n';
}

std::string SolutionSet::toTsv() const {
  std::ostringstream os;
  writeTsv(os);
  return os.str();
}

std::vector<std::string> SolutionSet::missingFrom(const SolutionSet& other) const {
  std::vector<std::string> out;
  for (const auto& r : rows_)
    if (!other.rows_.count(r)) out.push_back(renderRow(r));
  std::sort(out.begin(), out.end());
  return out;
}

SolutionSet toSolutions(const BoundQuery& q, const mr::Dataset& rows, const rdf::Dictionary& dict) {
  SolutionSet out(q.projection);
  for (const auto& rec : rows) {
    const auto* row = std::get_if<mr::Row>(&rec);
    if (!row) throw std::logic_error("engine output contains a non-row record");
    const BoundBranch& b = q.branches.at(row->tag);
    SolutionRow sol(q.projection.size());
    for (size_t i = 0; i < sol.size(); ++i) {
      const auto& e = b.projection[i];
      if (const auto* c = std::get_if<rdf::Term>(&e))
        sol[i] = *c;
      else if (row->values[i] != rdf::kNoTerm)
        sol[i] = dict.term(row->values[i]);
    }
    out.add(std::move(sol));
  }
  return out;
}

}  // namespace tgq::exec
