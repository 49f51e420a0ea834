#include "tgq/query/stats.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tgq::query {

namespace {

std::string join(const std::vector<size_t>& v, size_t from, size_t to) {
  std::string out;
  for (size_t i = from; i < to; ++i) {
    if (i > from) out += ':';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<size_t> nonZero(const std::vector<size_t>& v) {
  std::vector<size_t> out;
  for (size_t x : v) {
    if (x) out.push_back(x);
  }
  return out;
}

}  // namespace

std::string renderEdgesCell(const std::vector<std::vector<size_t>>& aligned) {
  if (aligned.empty()) return {};
  auto first = nonZero(aligned.front());
  bool uniform = std::all_of(aligned.begin(), aligned.end(),
                             [&](const auto& v) { return nonZero(v) == first; });
  if (uniform || aligned.size() > 2) return join(first, 0, first.size());

  const auto& a = aligned[0];
  const auto& b = aligned[1];
  size_t n = a.size();
  size_t suffix = 0;
  while (suffix < n && a[n - 1 - suffix] == b[n - 1 - suffix]) ++suffix;
  std::string out = "(" + join(a, 0, n - suffix) + ")/(" + join(b, 0, n - suffix) + ")";
  if (suffix) out += ":" + join(a, n - suffix, n);
  return out;
}

QueryStats computeStats(const UCQ& q) {
  QueryStats st;
  st.unionWidth = q.branches.size();

  std::set<TriplePattern> distinctPatterns;
  std::vector<PatternTerm> slots;
  auto slotOf = [&](const PatternTerm& subject) {
    auto it = std::find(slots.begin(), slots.end(), subject);
    if (it != slots.end()) return static_cast<size_t>(it - slots.begin());
    slots.push_back(subject);
    return slots.size() - 1;
  };
  using EdgeKey = std::tuple<JoinKind, std::string, size_t, size_t>;
  std::set<EdgeKey> edges;

  std::vector<std::vector<std::pair<size_t, size_t>>> perBranch;  // (slot, edges)
  for (const auto& br : q.branches) {
    distinctPatterns.insert(br.patterns.begin(), br.patterns.end());
    auto& row = perBranch.emplace_back();
    for (const auto& star : br.stars) row.emplace_back(slotOf(star.subject), star.patterns.size());
    for (const auto& e : br.joinEdges) {
      size_t a = slotOf(br.stars[e.starA].subject);
      size_t b = slotOf(br.stars[e.starB].subject);
      if (e.kind == JoinKind::ObjectObject && b < a) std::swap(a, b);
      edges.emplace(e.kind, e.variable, a, b);
    }
  }

  std::vector<std::vector<size_t>> aligned;
  for (const auto& row : perBranch) {
    auto& v = aligned.emplace_back(slots.size(), 0);
    for (auto [slot, n] : row) v[slot] += n;
  }
  if (!q.branches.empty()) {
    for (const auto& star : q.branches.front().stars) st.edgesPerStar.push_back(star.patterns.size());
  }

  st.numTriplePatterns = distinctPatterns.size();
  st.numStarPatterns = std::count_if(slots.begin(), slots.end(), [](const PatternTerm& s) { return isVariable(s); });
  for (const auto& [kind, var, a, b] : edges) {
    (kind == JoinKind::SubjectObject ? st.numSOJoins : st.numOOJoins)++;
  }
  st.edgesCell = renderEdgesCell(aligned);
  return st;
}

}  // namespace tgq::query
