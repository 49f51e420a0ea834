#include "tgq/bench/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgq::bench {

namespace {

const std::string kPrefix = "PREFIX ex: <http://example.org/>\n";

std::string unionOf(const std::vector<std::string>& branches) {
  std::string body;
  for (size_t i = 0; i < branches.size(); ++i) {
    if (i) body += "\n  UNION\n";
    body += "  { " + branches[i] + " }";
  }
  return kPrefix + "SELECT * WHERE {\n" + body + "\n}\n";
}

std::string select(const std::string& vars, const std::string& body) {
  return kPrefix + "SELECT " + vars + " WHERE {\n  " + body + "\n}\n";
}

std::vector<CorpusQuery> build() {
  std::vector<CorpusQuery> q;
  q.push_back({"UQ1", select("?s", "?s a ex:C3 ."), false});
  q.push_back({"UQ2", select("?s ?v ?w", "?s a ex:C1 ; ex:a0 ?v ; ex:a1 ?w ."), false});
  q.push_back({"UQ4", select("?s ?v", "?s a ex:C2 ; ex:a2 ?v ."), false});
  q.push_back({"UQ5", select("?s ?v ?w", "?s a ex:C5 ; ex:a0 ?v .\n  ex:i7 ex:a1 ?w ."), false});
  q.push_back({"UQ6", select("*",
                             "?x ex:l0 ?y ; ex:l1 ?z ; ex:a3 ?v .\n  ?y ex:a4 ?w .\n  ?z ex:a5 ?u ."),
               false});
  q.push_back({"UQ7", select("*", "?x a ex:C4 ; ex:l0 ?y ; ex:a1 ?v .\n  ?y ex:l1 ?z .\n  ?z ex:a2 ?w ."),
               false});
  q.push_back({"UQ8", select("*",
                             "?x a ex:C1 ; ex:a0 ?v ; ex:a1 ?w ; ex:l0 ?y .\n  ?y ex:a2 ?u ; ex:l1 ?z .\n"
                             "  ?z ex:a3 ?t ."),
               false});
  q.push_back({"UQ9", select("*", "?x ex:a0 ?v ; ex:a1 ?w ; ex:l0 ?y .\n  ?y a ex:C2 ; ex:a2 ?u ."), false});
  q.push_back({"UQ12", select("?s ?v", "?s a ex:C6 ; ex:a3 ?v ."), false});
  q.push_back({"CRQ7", select("*",
                              "?x ex:l0 ?y .\n  ?y a ex:C3 ; ex:a0 ?v ; ex:a1 ?w ; ex:l1 ?z .\n  ?z ex:a2 ?u ."),
               false});
  q.push_back({"CRQ9", select("*",
                              "?a ex:l0 ?b .\n  ?b ex:a0 ?v ; ex:l1 ?c ; ex:l2 ?d .\n  ?c ex:a1 ?w .\n"
                              "  ?d ex:a2 ?x .\n  ?e ex:a3 ?w ; ex:a4 ?t ."),
               false});
  q.push_back({"CRQ13", select("*", "?a ex:l0 ?b .\n  ?b a ex:C2 ; ex:l1 ?c .\n  ?c ex:a0 ?v ."), false});
  q.push_back({"CRQ22", select("*",
                               "?a ex:l0 ?b .\n  ?b a ex:C1 ; ex:a0 ?v ; ex:a1 ?w ; ex:a2 ?u .\n"
                               "  ?c ex:a3 ?w ."),
               false});
  q.push_back({"CRQ23", select("*",
                               "?a a ex:C3 ; ex:l0 ?b .\n  ?b ex:l1 ?c .\n  ?c ex:a0 ?v ; ex:a1 ?w .\n"
                               "  ?d ex:a2 ?w ; ex:a3 ?t ."),
               false});

  std::vector<std::string> br;
  for (int i = 1; i <= 17; ++i) br.push_back("?s" + std::to_string(i) + " a ex:C" + std::to_string(i) + " .");
  q.push_back({"UQ1+", unionOf(br), true});

  br.clear();
  for (int i = 1; i <= 14; ++i) {
    std::string s = "?p" + std::to_string(i);
    br.push_back(s + " a ex:C" + std::to_string(i) + " ; ex:a0 ?v ; ex:a1 ?w .");
  }
  for (int j = 1; j <= 3; ++j) {
    std::string s = "?q" + std::to_string(j);
    br.push_back(s + " a ex:C" + std::to_string(14 + j) + " ; ex:a0 ?v . ?r" + std::to_string(j) +
                 " ex:a1 \"v" + std::to_string(j) + "\" .");
  }
  q.push_back({"UQ2+", unionOf(br), true});

  q.push_back({"UQ3",
               unionOf({"?a a ex:C1 ; ex:a0 ?v ; ex:l0 ?b ; ex:l1 ?c . ?b ex:a2 ?u . ?c ex:a3 ?t .",
                        "?a a ex:C1 ; ex:a0 ?v ; ex:l1 ?c ; ex:a1 ?w . ?c ex:a3 ?t ."}),
               true});

  br.clear();
  for (int i = 1; i <= 12; ++i)
    br.push_back("?s" + std::to_string(i) + " a ex:C" + std::to_string(i) + " ; ex:a0 ?n .");
  q.push_back({"UQ4+", unionOf(br), true});

  br.clear();
  for (int i = 1; i <= 12; ++i)
    br.push_back("?s" + std::to_string(i) + " a ex:C" + std::to_string(i + 12) + " ; ex:a3 ?n .");
  q.push_back({"UQ12+", unionOf(br), true});

  const std::string x = "?x ex:l0 ?y ; ex:l1 ?z .";
  const std::string y = "?y ex:a0 ?v ; ex:l2 ?w .";
  const std::string z = "?z ex:a1 ?u ; ex:l0 ?w .";
  const std::string w = "?w ex:a2 ?t ; ex:a3 ?m .";
  const std::string v = "?r ex:l3 ?x ; ex:a4 ?k .";
  q.push_back({"UQ18", unionOf({x, x + " " + y, x + " " + z, y + " " + w, z + " " + w, v + " " + x}), true});
  return q;
}

}  // namespace

const std::vector<CorpusQuery>& corpus() {
  static const std::vector<CorpusQuery> queries = build();
  return queries;
}

const CorpusQuery& corpusQuery(const std::string& name) {
  for (const auto& q : corpus())
    if (q.name == name) return q;
  throw std::out_of_range("no corpus query named " + name);
}

SyntheticSpec corpusDataSpec(size_t triples, std::uint64_t seed) {
  SyntheticSpec s;
  s.classes = 63;
  s.depth = 5;
  s.fanout = 2;
  s.attributes = 6;
  s.links = 4;
  s.mvpRate = 0.1;
  s.seed = seed;
  // About 1 + 6*0.6*1.2 + 4*0.5*1.2 = 7.7 triples per instance.
  s.instances = std::max<size_t>(1, triples * 10 / 77);
  return s;
}

}  // namespace tgq::bench
