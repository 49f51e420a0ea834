#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace tgq::mr {

struct JobStats {
  std::string id;
  size_t mapInputRecords = 0;
  size_t shuffleRecords = 0;
  size_t reduceGroups = 0;
  size_t reduceOutputRecords = 0;
  size_t outputRecords = 0;
};

struct RunStats {
  static constexpr int kStatsVersion = 1;

  size_t jobsExecuted = 0;
  std::vector<JobStats> jobs;
  /// Reads per source dataset.
  std::map<std::string, size_t> inputScans;

  size_t totalMapInputRecords() const;
  size_t totalShuffleRecords() const;
  size_t totalReduceOutputRecords() const;
  size_t totalSourceScans() const;

  void append(const JobStats& job, const std::vector<std::string>& sourcesRead);

  /// {statsVersion, jobsExecuted, jobs: [...], inputScans: {...}, totals}
  nlohmann::json toJson() const;
  static RunStats fromJson(const nlohmann::json& j);
};

}  // namespace tgq::mr
