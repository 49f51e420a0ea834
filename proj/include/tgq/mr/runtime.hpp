#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgq/mr/record.hpp"
#include "tgq/mr/run_stats.hpp"

namespace tgq::mr {

class UnresolvedInput : public std::runtime_error {
 public:
  explicit UnresolvedInput(const std::string& handle)
      : std::runtime_error("unresolved input dataset '" + handle + "'"), handle_(handle) {}
  const std::string& handle() const { return handle_; }

 private:
  std::string handle_;
};

/// A user function failed; carries the job id and its workflow position.
class JobFailure : public std::runtime_error {
 public:
  JobFailure(std::string jobId, size_t jobIndex, const std::string& what)
      : std::runtime_error("job " + std::to_string(jobIndex) + " (" + jobId + "): " + what),
        jobId_(std::move(jobId)),
        jobIndex_(jobIndex) {}
  const std::string& jobId() const { return jobId_; }
  size_t jobIndex() const { return jobIndex_; }

 private:
  std::string jobId_;
  size_t jobIndex_;
};

using Dataset = std::vector<Record>;

/// Named, materialized record collections. Source datasets are the ones
/// whose reads are counted as input scans.
class Registry {
 public:
  void add(const std::string& handle, Dataset records, bool source = false);
  void add(const std::string& handle, std::shared_ptr<const Dataset> records, bool source = false);
  std::shared_ptr<const Dataset> get(const std::string& handle) const;
  bool contains(const std::string& handle) const { return datasets_.count(handle) > 0; }
  bool isSource(const std::string& handle) const;

 private:
  struct Entry {
    std::shared_ptr<const Dataset> records;
    bool source = false;
  };
  std::map<std::string, Entry> datasets_;
};

/// Handed to map functions. A job with a reduce phase may only `emit`; a
/// map-only job may only `write`.
class MapContext {
 public:
  void emit(Key key, Record value);
  void write(Record record);
  /// Position of the current record's dataset in `Job::inputs`.
  size_t inputIndex() const { return inputIndex_; }

 private:
  friend class Runtime;
  bool mapOnly_ = false;
  size_t inputIndex_ = 0;
  std::vector<std::pair<Key, Record>> pairs_;
  std::vector<Record> written_;
};

class ReduceContext {
 public:
  void write(Record record) { out_.push_back(std::move(record)); }

 private:
  friend class Runtime;
  std::vector<Record> out_;
};

using MapFn = std::function<void(const Record&, MapContext&)>;
using ReduceFn = std::function<void(const Key&, std::span<const Record>, ReduceContext&)>;

struct Job {
  std::string id;
  std::vector<std::string> inputs;
  MapFn map;
  ReduceFn reduce;  // empty for a map-only job
  std::uint32_t partitions = 1;
  std::string output;  // handle for the result; defaults to `id`

  bool mapOnly() const { return !reduce; }
  const std::string& outputHandle() const { return output.empty() ? id : output; }
};

struct Workflow {
  std::vector<Job> jobs;
  /// Handles concatenated into the workflow result; defaults to the last
  /// job's output.
  std::vector<std::string> outputs;
};

struct RuntimeOptions {
  /// Worker threads for map tasks and reduce partitions; 1 runs everything
  /// inline. Output and counters do not depend on this value.
  unsigned threads = 1;
  size_t splitSize = 1 << 15;
};

struct JobResult {
  std::shared_ptr<const Dataset> output;
  JobStats stats;
  std::vector<std::string> sourcesRead;
};

class Runtime {
 public:
  explicit Runtime(Registry& registry, RuntimeOptions options = {})
      : registry_(registry), options_(options) {}

  /// Runs one job and registers its output under `job.outputHandle()`.
  JobResult runJob(const Job& job, size_t jobIndex = 0);

 private:
  Registry& registry_;
  RuntimeOptions options_;
};

struct WorkflowResult {
  Dataset output;
  RunStats stats;
};

/// Runs the jobs in order. Every input must be registered before the job
/// that reads it runs (source datasets or earlier outputs).
WorkflowResult runWorkflow(const Workflow& workflow, Registry& registry,
                           RuntimeOptions options = {});

}  // namespace tgq::mr
