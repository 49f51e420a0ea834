#include "tgq/query/stars.hpp"

#include <algorithm>

namespace tgq::query {

GraphPattern decomposeStars(std::vector<TriplePattern> patterns, size_t id) {
  GraphPattern gp;
  gp.id = id;
  gp.patterns = std::move(patterns);

  for (const auto& tp : gp.patterns) {
    auto it = std::find_if(gp.stars.begin(), gp.stars.end(),
                           [&](const StarPattern& s) { return s.subject == tp.s; });
    if (it == gp.stars.end()) {
      StarPattern star;
      star.id = gp.stars.size();
      star.subject = tp.s;
      gp.stars.push_back(std::move(star));
      it = std::prev(gp.stars.end());
    }
    it->patterns.push_back(tp);
    if (!isVariable(tp.p)) it->requiredProperties.insert(asTerm(tp.p));
  }

  // one edge per (variable, star pair)
  auto roleIn = [](const StarPattern& star, const std::string& var) {
    bool subject = isVariable(star.subject) && asVariable(star.subject).name == var;
    bool object = false;
    for (const auto& tp : star.patterns) {
      if (isVariable(tp.o) && asVariable(tp.o).name == var) object = true;
    }
    return std::pair{subject, object};
  };
  std::vector<std::string> vars = variablesOf(gp.patterns);
  for (const auto& var : vars) {
    for (size_t a = 0; a < gp.stars.size(); ++a) {
      for (size_t b = a + 1; b < gp.stars.size(); ++b) {
        auto [aSubj, aObj] = roleIn(gp.stars[a], var);
        auto [bSubj, bObj] = roleIn(gp.stars[b], var);
        if (!(aSubj || aObj) || !(bSubj || bObj)) continue;
        JoinEdge e;
        e.variable = var;
        if (aSubj) {
          e = {b, Position::Object, a, Position::Subject, var, JoinKind::SubjectObject};
        } else if (bSubj) {
          e = {a, Position::Object, b, Position::Subject, var, JoinKind::SubjectObject};
        } else {
          e = {a, Position::Object, b, Position::Object, var, JoinKind::ObjectObject};
        }
        gp.joinEdges.push_back(std::move(e));
      }
    }
  }
  return gp;
}

void redecompose(UCQ& q) {
  for (size_t i = 0; i < q.branches.size(); ++i) {
    auto& b = q.branches[i];
    auto constants = std::move(b.constants);
    auto optionals = std::move(b.optionals);
    b = decomposeStars(std::move(b.patterns), i);
    b.constants = std::move(constants);
    b.optionals = std::move(optionals);
  }
}

}  // namespace tgq::query
