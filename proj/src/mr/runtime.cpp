#include "tgq/mr/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace tgq::mr {

std::uint64_t hashKey(const Key& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ 0x5bd1e995ULL;
  for (TermId part : key) {
    for (int b = 0; b < 4; ++b) {
      h ^= (part >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

void Registry::add(const std::string& handle, Dataset records, bool source) {
  add(handle, std::make_shared<const Dataset>(std::move(records)), source);
}

void Registry::add(const std::string& handle, std::shared_ptr<const Dataset> records, bool source) {
  datasets_[handle] = Entry{std::move(records), source};
}

std::shared_ptr<const Dataset> Registry::get(const std::string& handle) const {
  auto it = datasets_.find(handle);
  if (it == datasets_.end()) throw UnresolvedInput(handle);
  return it->second.records;
}

bool Registry::isSource(const std::string& handle) const {
  auto it = datasets_.find(handle);
  return it != datasets_.end() && it->second.source;
}

void MapContext::emit(Key key, Record value) {
  if (mapOnly_) throw std::logic_error("emit called in a map-only job");
  pairs_.emplace_back(std::move(key), std::move(value));
}

void MapContext::write(Record record) {
  if (!mapOnly_) throw std::logic_error("write called in a job with a reduce phase");
  written_.push_back(std::move(record));
}

namespace {

// Runs task(i) for i in [0, n) on up to `threads` workers; rethrows the
// first failure by task index.
template <class F>
void parallelFor(size_t n, unsigned threads, F&& task) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned count = static_cast<unsigned>(std::min<size_t>(threads, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Split {
  size_t input;
  const Dataset* data;
  size_t begin, end;
};

}  // namespace

JobResult Runtime::runJob(const Job& job, size_t jobIndex) {
  if (!job.map) throw std::invalid_argument("job '" + job.id + "' has no map function");
  if (job.partitions == 0) throw std::invalid_argument("job '" + job.id + "' has zero partitions");

  std::vector<std::shared_ptr<const Dataset>> inputs;
  JobResult result;
  for (const auto& handle : job.inputs) {
    inputs.push_back(registry_.get(handle));
    if (registry_.isSource(handle)) result.sourcesRead.push_back(handle);
  }

  std::vector<Split> splits;
  const size_t splitSize = std::max<size_t>(1, options_.splitSize);
  for (size_t i = 0; i < inputs.size(); ++i) {
    const Dataset& d = *inputs[i];
    for (size_t b = 0; b < d.size(); b += splitSize)
      splits.push_back({i, &d, b, std::min(d.size(), b + splitSize)});
  }

  JobStats& stats = result.stats;
  stats.id = job.id;
  for (const auto& in : inputs) stats.mapInputRecords += in->size();

  auto fail = [&](const std::exception& e) -> JobFailure {
    return JobFailure(job.id, jobIndex, e.what());
  };

  std::vector<MapContext> contexts(splits.size());
  try {
    parallelFor(splits.size(), options_.threads, [&](size_t s) {
      MapContext& ctx = contexts[s];
      ctx.mapOnly_ = job.mapOnly();
      ctx.inputIndex_ = splits[s].input;
      for (size_t r = splits[s].begin; r < splits[s].end; ++r) job.map((*splits[s].data)[r], ctx);
    });
  } catch (const std::exception& e) {
    throw fail(e);
  }

  auto output = std::make_shared<Dataset>();
  if (job.mapOnly()) {
    for (auto& ctx : contexts)
      std::move(ctx.written_.begin(), ctx.written_.end(), std::back_inserter(*output));
    stats.outputRecords = output->size();
  } else {
    // Partition in emission order, then sort each partition by key; ties keep
    // emission order so reducers see a deterministic value sequence.
    const std::uint32_t parts = job.partitions;
    std::vector<std::vector<std::pair<Key, Record>>> buckets(parts);
    for (auto& ctx : contexts) {
      stats.shuffleRecords += ctx.pairs_.size();
      for (auto& kv : ctx.pairs_) {
        size_t p = parts == 1 ? 0 : hashKey(kv.first) % parts;
        buckets[p].push_back(std::move(kv));
      }
      ctx.pairs_.clear();
    }
    std::vector<ReduceContext> reduced(parts);
    std::vector<size_t> groups(parts, 0);
    try {
      parallelFor(parts, options_.threads, [&](size_t p) {
        auto& bucket = buckets[p];
        std::stable_sort(bucket.begin(), bucket.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Record> values;
        for (size_t i = 0; i < bucket.size();) {
          size_t j = i;
          values.clear();
          while (j < bucket.size() && bucket[j].first == bucket[i].first)
            values.push_back(std::move(bucket[j++].second));
          job.reduce(bucket[i].first, std::span<const Record>(values), reduced[p]);
          ++groups[p];
          i = j;
        }
        bucket.clear();
      });
    } catch (const std::exception& e) {
      throw fail(e);
    }
    for (size_t p = 0; p < parts; ++p) {
      stats.reduceGroups += groups[p];
      std::move(reduced[p].out_.begin(), reduced[p].out_.end(), std::back_inserter(*output));
    }
    stats.reduceOutputRecords = output->size();
    stats.outputRecords = output->size();
  }

  result.output = output;
  registry_.add(job.outputHandle(), result.output, false);
  return result;
}

WorkflowResult runWorkflow(const Workflow& workflow, Registry& registry, RuntimeOptions options) {
  Runtime runtime(registry, options);
  WorkflowResult result;
  for (size_t i = 0; i < workflow.jobs.size(); ++i) {
    JobResult jr = runtime.runJob(workflow.jobs[i], i);
    result.stats.append(jr.stats, jr.sourcesRead);
  }
  std::vector<std::string> outs = workflow.outputs;
  if (outs.empty() && !workflow.jobs.empty()) outs.push_back(workflow.jobs.back().outputHandle());
  for (const auto& h : outs) {
    auto d = registry.get(h);
    result.output.insert(result.output.end(), d->begin(), d->end());
  }
  return result;
}

}  // namespace tgq::mr
