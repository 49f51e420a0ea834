#include "tgq/mr/run_stats.hpp"

namespace tgq::mr {

size_t RunStats::totalMapInputRecords() const {
  size_t n = 0;
  for (const auto& j : jobs) n += j.mapInputRecords;
  return n;
}

size_t RunStats::totalShuffleRecords() const {
  size_t n = 0;
  for (const auto& j : jobs) n += j.shuffleRecords;
  return n;
}

size_t RunStats::totalReduceOutputRecords() const {
  size_t n = 0;
  for (const auto& j : jobs) n += j.reduceOutputRecords;
  return n;
}

size_t RunStats::totalSourceScans() const {
  size_t n = 0;
  for (const auto& [_, c] : inputScans) n += c;
  return n;
}

void RunStats::append(const JobStats& job, const std::vector<std::string>& sourcesRead) {
  ++jobsExecuted;
  jobs.push_back(job);
  for (const auto& s : sourcesRead) ++inputScans[s];
}

nlohmann::json RunStats::toJson() const {
  nlohmann::json j;
  j["statsVersion"] = kStatsVersion;
  j["jobsExecuted"] = jobsExecuted;
  j["jobs"] = nlohmann::json::array();
  for (const auto& s : jobs) {
    j["jobs"].push_back({{"id", s.id},
                         {"mapInputRecords", s.mapInputRecords},
                         {"shuffleRecords", s.shuffleRecords},
                         {"reduceGroups", s.reduceGroups},
                         {"reduceOutputRecords", s.reduceOutputRecords},
                         {"outputRecords", s.outputRecords}});
  }
  j["inputScans"] = nlohmann::json::object();
  for (const auto& [k, v] : inputScans) j["inputScans"][k] = v;
  j["totals"] = {{"mapInputRecords", totalMapInputRecords()},
                 {"shuffleRecords", totalShuffleRecords()},
                 {"reduceOutputRecords", totalReduceOutputRecords()},
                 {"sourceScans", totalSourceScans()}};
  return j;
}

RunStats RunStats::fromJson(const nlohmann::json& j) {
  if (j.value("statsVersion", 0) != kStatsVersion)
    throw std::runtime_error("unsupported statsVersion");
  RunStats s;
  s.jobsExecuted = j.at("jobsExecuted").get<size_t>();
  for (const auto& js : j.at("jobs")) {
    JobStats job;
    job.id = js.at("id").get<std::string>();
    job.mapInputRecords = js.value("mapInputRecords", size_t{0});
    job.shuffleRecords = js.value("shuffleRecords", size_t{0});
    job.reduceGroups = js.value("reduceGroups", size_t{0});
    job.reduceOutputRecords = js.value("reduceOutputRecords", size_t{0});
    job.outputRecords = js.value("outputRecords", size_t{0});
    s.jobs.push_back(job);
  }
  for (const auto& [k, v] : j.at("inputScans").items()) s.inputScans[k] = v.get<size_t>();
  return s;
}

}  // namespace tgq::mr
