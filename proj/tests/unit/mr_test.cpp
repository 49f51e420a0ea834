#include <gtest/gtest.h>

#include <random>

#include "tgq/mr/runtime.hpp"

using namespace tgq::mr;

namespace {

Dataset triples(std::initializer_list<IdTriple> ts) {
  Dataset d;
  for (auto t : ts) d.emplace_back(t);
  return d;
}

Job groupBySubject(std::uint32_t partitions) {
  Job j;
  j.id = "group";
  j.inputs = {"src"};
  j.partitions = partitions;
  j.map = [](const Record& r, MapContext& ctx) {
    const auto& t = std::get<IdTriple>(r);
    ctx.emit({t.s}, r);
  };
  j.reduce = [](const Key& k, std::span<const Record> vs, ReduceContext& ctx) {
    ctx.write(Row{0, {k[0], static_cast<TermId>(vs.size())}});
  };
  return j;
}

Job wordCount(std::uint32_t partitions) {
  Job j;
  j.id = "wc";
  j.inputs = {"words"};
  j.partitions = partitions;
  j.map = [](const Record& r, MapContext& ctx) {
    ctx.emit({std::get<Row>(r).values[0]}, Row{0, {1}});
  };
  j.reduce = [](const Key& k, std::span<const Record> vs, ReduceContext& ctx) {
    TermId n = 0;
    for (const auto& v : vs) n += std::get<Row>(v).values[0];
    ctx.write(Row{0, {k[0], n}});
  };
  return j;
}

std::vector<IdTriple> tripleList(const Dataset& d) {
  std::vector<IdTriple> out;
  for (const auto& r : d) out.push_back(std::get<IdTriple>(r));
  return out;
}

std::vector<Row> rowList(const Dataset& d) {
  std::vector<Row> out;
  for (const auto& r : d) out.push_back(std::get<Row>(r));
  return out;
}

std::set<Row> rowsOf(const Dataset& d) {
  std::set<Row> out;
  for (const auto& r : d) out.insert(std::get<Row>(r));
  return out;
}

}  // namespace

TEST(Runtime, GroupsBySubject) {
  Registry reg;
  reg.add("src", triples({{1, 10, 2}, {1, 11, 3}, {2, 10, 4}, {1, 12, 5}, {2, 11, 6}}), true);
  Runtime rt(reg);
  auto res = rt.runJob(groupBySubject(2));
  EXPECT_EQ(res.stats.reduceGroups, 2u);
  EXPECT_EQ(res.stats.shuffleRecords, 5u);
  EXPECT_EQ(res.stats.mapInputRecords, 5u);
  EXPECT_EQ(rowsOf(*res.output), (std::set<Row>{Row{0, {1, 3}}, Row{0, {2, 2}}}));
  EXPECT_TRUE(reg.contains("group"));
  EXPECT_EQ(res.sourcesRead, std::vector<std::string>{"src"});
}

TEST(Runtime, MapOnlyIdentity) {
  Registry reg;
  Dataset d;
  for (TermId i = 0; i < 37; ++i) d.emplace_back(IdTriple{i, 1, 2});
  reg.add("src", d, true);
  Job j;
  j.id = "copy";
  j.inputs = {"src"};
  j.map = [](const Record& r, MapContext& ctx) { ctx.write(r); };
  Runtime rt(reg, RuntimeOptions{4, 5});
  auto res = rt.runJob(j);
  EXPECT_EQ(res.output->size(), 37u);
  EXPECT_EQ(res.stats.shuffleRecords, 0u);
  EXPECT_EQ(tripleList(*res.output), tripleList(d));
}

TEST(Runtime, WordCountPartitionInvariance) {
  std::set<Row> expected{Row{0, {7, 2}}, Row{0, {8, 1}}};
  for (std::uint32_t parts : {1u, 2u, 4u}) {
    Registry reg;
    reg.add("words", Dataset{Row{0, {7}}, Row{0, {7}}, Row{0, {8}}});
    auto res = Runtime(reg).runJob(wordCount(parts));
    EXPECT_EQ(rowsOf(*res.output), expected) << parts;
  }
}

TEST(Runtime, ContextMisuseFails) {
  Registry reg;
  reg.add("src", triples({{1, 2, 3}}));
  Job j = groupBySubject(1);
  j.map = [](const Record& r, MapContext& ctx) { ctx.write(r); };
  EXPECT_THROW(Runtime(reg).runJob(j), JobFailure);
  Job m;
  m.id = "m";
  m.inputs = {"src"};
  m.map = [](const Record& r, MapContext& ctx) { ctx.emit({1}, r); };
  EXPECT_THROW(Runtime(reg).runJob(m), JobFailure);
}

TEST(Runtime, InputIndexReflectsDataset) {
  Registry reg;
  reg.add("l", Dataset{Row{0, {1}}});
  reg.add("r", Dataset{Row{0, {1}}, Row{0, {2}}});
  Job j;
  j.id = "j";
  j.inputs = {"l", "r"};
  j.map = [](const Record& r, MapContext& ctx) {
    auto row = std::get<Row>(r);
    row.tag = static_cast<std::uint32_t>(ctx.inputIndex());
    ctx.write(row);
  };
  auto res = Runtime(reg).runJob(j);
  EXPECT_EQ(rowsOf(*res.output), (std::set<Row>{Row{0, {1}}, Row{1, {1}}, Row{1, {2}}}));
}

TEST(Workflow, Empty) {
  Registry reg;
  auto res = runWorkflow(Workflow{}, reg);
  EXPECT_TRUE(res.output.empty());
  EXPECT_EQ(res.stats.jobsExecuted, 0u);
}

TEST(Workflow, UnresolvedInput) {
  Registry reg;
  Workflow w;
  w.jobs.push_back(groupBySubject(1));
  try {
    runWorkflow(w, reg);
    FAIL();
  } catch (const UnresolvedInput& e) {
    EXPECT_EQ(e.handle(), "src");
  }
}

TEST(Workflow, FailureCarriesJobIndex) {
  Registry reg;
  reg.add("src", triples({{1, 2, 3}}), true);
  Workflow w;
  w.jobs.push_back(groupBySubject(1));
  Job bad;
  bad.id = "bad";
  bad.inputs = {"group"};
  bad.map = [](const Record&, MapContext&) { throw std::runtime_error("boom"); };
  w.jobs.push_back(bad);
  try {
    runWorkflow(w, reg);
    FAIL();
  } catch (const JobFailure& e) {
    EXPECT_EQ(e.jobIndex(), 1u);
    EXPECT_EQ(e.jobId(), "bad");
  }
}

TEST(Workflow, ScansCountedPerSourceRead) {
  Registry reg;
  reg.add("src", triples({{1, 2, 3}, {4, 2, 3}}), true);
  Workflow w;
  for (int i = 0; i < 3; ++i) {
    Job j = groupBySubject(1);
    j.id = "g" + std::to_string(i);
    w.jobs.push_back(j);
  }
  Job last;
  last.id = "merge";
  last.inputs = {"g0", "g1", "g2"};
  last.map = [](const Record& r, MapContext& ctx) { ctx.write(r); };
  w.jobs.push_back(last);
  auto res = runWorkflow(w, reg);
  EXPECT_EQ(res.stats.jobsExecuted, 4u);
  EXPECT_EQ(res.stats.inputScans.at("src"), 3u);
  EXPECT_EQ(res.stats.totalSourceScans(), 3u);
  EXPECT_EQ(res.output.size(), 6u);
}

TEST(Workflow, StatsJsonRoundTrip) {
  Registry reg;
  reg.add("src", triples({{1, 10, 2}, {1, 11, 3}, {2, 10, 4}}), true);
  Workflow w;
  w.jobs.push_back(groupBySubject(3));
  auto res = runWorkflow(w, reg);
  auto j = res.stats.toJson();
  EXPECT_EQ(j.at("statsVersion"), 1);
  EXPECT_EQ(j.at("jobsExecuted"), 1);
  auto back = RunStats::fromJson(j);
  EXPECT_EQ(back.toJson(), j);
  EXPECT_EQ(back.totalShuffleRecords(), 3u);
}

// Identical runs, any thread count or split size, give identical output and
// counters; shuffle counts equal emitted pairs; set output is partition
// invariant.
TEST(RuntimeProperty, DeterminismAndInvariance) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 60; ++iter) {
    Dataset words;
    size_t n = rng() % 500;
    for (size_t i = 0; i < n; ++i) words.emplace_back(Row{0, {static_cast<TermId>(rng() % 40)}});
    std::set<Row> reference;
    bool first = true;
    for (std::uint32_t parts : {1u, 3u, 8u}) {
      Dataset baseline;
      JobStats baseStats;
      for (unsigned threads : {1u, 4u}) {
        Registry reg;
        reg.add("words", words);
        Runtime rt(reg, RuntimeOptions{threads, 1 + rng() % 64});
        auto res = rt.runJob(wordCount(parts));
        EXPECT_EQ(res.stats.shuffleRecords, n);
        if (threads == 1) {
          baseline = *res.output;
          baseStats = res.stats;
        } else {
          EXPECT_EQ(rowList(*res.output), rowList(baseline));
          EXPECT_EQ(res.stats.reduceGroups, baseStats.reduceGroups);
          EXPECT_EQ(res.stats.outputRecords, baseStats.outputRecords);
        }
      }
      if (first) {
        reference = rowsOf(baseline);
        first = false;
      } else {
        EXPECT_EQ(rowsOf(baseline), reference);
      }
    }
    std::map<TermId, TermId> counts;
    for (const auto& r : words) ++counts[std::get<Row>(r).values[0]];
    std::set<Row> oracle;
    for (auto [w, c] : counts) oracle.insert(Row{0, {w, c}});
    EXPECT_EQ(reference, oracle);
  }
}
