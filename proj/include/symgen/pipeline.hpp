#pragma once

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>
#include <utime.h>

#include <chrono>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "symgen/tasks.hpp"

// Parallel dataset production. Single-threaded workers claim shards through
// exclusively-created lock files, write to a temp file, and publish with an
// atomic rename, so a killed worker leaves either no shard or a complete
// one. Shard content is a pure function of (config, shard index): reruns
// and resumes are byte-identical regardless of which worker did the work.

namespace symgen::pipeline {

struct LevelProb {
  double level = 0;
  double prob = 1;
};

struct DatasetConfig {
  std::vector<std::pair<std::string, double>> tasks;  // empty = every task
  std::vector<LevelProb> levels{{0, 1.0}};
  uint64_t total = 1000;
  double trace_probability = 0.5;
  uint64_t shard_size = 500;
  std::string output_dir = "dataset";
  int workers = 1;
  double base_timeout_ms = 4000;
  uint64_t seed = 0;
  int balance_window = 20;
  double balance_cap = 0.6;
  int retry_cap = 8;  // fresh-seed retries per slot before giving up

  void validate() const {
    double total_prob = 0;
    for (const auto& lp : levels) {
      if (lp.level < 0) throw err("config", "levels must be non-negative");
      total_prob += lp.prob;
    }
    if (std::abs(total_prob - 1.0) > 1e-9)
      throw err("config", "level mixture probabilities must sum to 1");
    if (total == 0 || shard_size == 0) throw err("config", "counts must be positive");
    if (balance_window < 10) throw err("config", "balancing window must be >= 10");
    if (balance_cap <= 0 || balance_cap > 1) throw err("config", "cap must be in (0,1]");
  }

  static DatasetConfig from_json(const Json& j) {
    DatasetConfig c;
    if (j.contains("tasks") && !j.at("tasks").is_null()) {
      for (const auto& [name, w] : j.at("tasks").items())
        c.tasks.push_back({name, w.get<double>()});
    }
    if (j.contains("levels")) {
      c.levels.clear();
      for (const auto& lp : j.at("levels"))
        c.levels.push_back({lp[0].get<double>(), lp[1].get<double>()});
    }
    if (j.contains("total")) c.total = j.at("total").get<uint64_t>();
    if (j.contains("trace_probability"))
      c.trace_probability = j.at("trace_probability").get<double>();
    if (j.contains("shard_size")) c.shard_size = j.at("shard_size").get<uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("base_timeout_ms")) c.base_timeout_ms = j.at("base_timeout_ms").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("balance_window")) c.balance_window = j.at("balance_window").get<int>();
    if (j.contains("balance_cap")) c.balance_cap = j.at("balance_cap").get<double>();
    return c;
  }

  Json to_json() const {
    Json jt = Json::object();
    for (const auto& [name, w] : tasks) jt[name] = w;
    Json jl = Json::array();
    for (const auto& lp : levels) jl.push_back(Json::array({lp.level, lp.prob}));
    return Json{{"tasks", jt},
                {"levels", jl},
                {"total", total},
                {"trace_probability", trace_probability},
                {"shard_size", shard_size},
                {"output_dir", output_dir},
                {"workers", workers},
                {"base_timeout_ms", base_timeout_ms},
                {"seed", seed},
                {"balance_window", balance_window},
                {"balance_cap", balance_cap}};
  }

  uint64_t config_hash() const {
    Json j = to_json();
    j.erase("output_dir");  // relocating a dataset keeps its identity
    j.erase("workers");
    return fnv1a(j.dump());
  }

  uint64_t num_shards() const { return (total + shard_size - 1) / shard_size; }
};

// timeout = base * (1 + level)
inline std::chrono::milliseconds scaled_timeout(double base_ms, double level) {
  return std::chrono::milliseconds(static_cast<int64_t>(base_ms * (1.0 + level)));
}

// ---------------------------------------------------------------------------
// Balancing: within every window of W accepted examples, no key exceeds
// ceil(cap * W) occurrences.

class BalanceFilter {
public:
  BalanceFilter(int window, double cap)
      : window_(window), max_per_window_(static_cast<int>(std::ceil(cap * window))) {}

  bool accept(const std::optional<std::string>& key) {
    if (!key) {
      push("");
      return true;
    }
    int count = 1;
    for (const auto& k : recent_)
      if (k == *key) ++count;
    if (count > max_per_window_) return false;
    push(*key);
    return true;
  }

private:
  void push(const std::string& k) {
    recent_.push_back(k);
    if (static_cast<int>(recent_.size()) > window_ - 1) recent_.pop_front();
  }
  int window_;
  int max_per_window_;
  std::deque<std::string> recent_;
};

// ---------------------------------------------------------------------------
// Stats

struct ShardStats {
  std::map<std::string, uint64_t> per_task;
  std::map<std::string, uint64_t> per_level;
  uint64_t accepted = 0, timeouts = 0, failures = 0, balance_rejects = 0;

  Json to_json() const {
    return Json{{"per_task", per_task},     {"per_level", per_level},
                {"accepted", accepted},     {"timeouts", timeouts},
                {"failures", failures},     {"balance_rejects", balance_rejects}};
  }
  static ShardStats from_json(const Json& j) {
    ShardStats s;
    s.per_task = j.at("per_task").get<std::map<std::string, uint64_t>>();
    s.per_level = j.at("per_level").get<std::map<std::string, uint64_t>>();
    s.accepted = j.at("accepted").get<uint64_t>();
    s.timeouts = j.at("timeouts").get<uint64_t>();
    s.failures = j.at("failures").get<uint64_t>();
    s.balance_rejects = j.at("balance_rejects").get<uint64_t>();
    return s;
  }
};

// Test seam: lets fault-injection suites wire hanging or crashing
// generators into the pipeline without touching the task registry.
using GenerateFn =
    std::function<TaskExample(const std::string& task, double level, uint64_t seed,
                              const Budget& budget)>;

inline TaskExample default_generate(const std::string& task, double level, uint64_t seed,
                                    const Budget& budget) {
  return generate_example(get_task(task), level, seed, budget);
}

// ---------------------------------------------------------------------------
// Paths and small file helpers

inline std::string shard_path(const DatasetConfig& cfg, uint64_t k) {
  return cfg.output_dir + "/part-" + std::to_string(k) + ".jsonl";
}
inline std::string stats_path(const DatasetConfig& cfg, uint64_t k) {
  return cfg.output_dir + "/part-" + std::to_string(k) + ".stats.json";
}
inline std::string lock_path(const DatasetConfig& cfg, uint64_t k) {
  return cfg.output_dir + "/part-" + std::to_string(k) + ".lock";
}

inline bool file_exists(const std::string& path) {
  struct stat st;
  return ::stat(path.c_str(), &st) == 0;
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0)
    throw err("io", "rename failed for " + path);
}

// ---------------------------------------------------------------------------
// Worker

struct WorkerOutcome {
  uint64_t shards_done = 0;
  uint64_t lock_contention = 0;
};

namespace detail {

// Exclusive-creation claim; returns false when another worker holds it.
inline bool claim_lock(const std::string& path) {
  int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) return false;
  std::string body = std::to_string(::getpid()) + "\n";
  ssize_t n = ::write(fd, body.data(), body.size());
  (void)n;
  ::close(fd);
  return true;
}

inline void heartbeat(const std::string& path) { ::utime(path.c_str(), nullptr); }

inline std::optional<pid_t> lock_owner(const std::string& path) {
  std::ifstream in(path);
  pid_t pid;
  if (in >> pid) return pid;
  return std::nullopt;
}

// A lock is stale when its owner is dead, or alive but silent for
// `stale_ms`. Releasing a silent owner's lock is safe: shard bytes are a
// pure function of (config, index), so a late rename writes the same file.
inline bool lock_is_stale(const std::string& path, double stale_ms) {
  auto owner = lock_owner(path);
  if (!owner || ::kill(*owner, 0) != 0) return true;
  struct stat st;
  if (::stat(path.c_str(), &st) != 0) return false;
  auto age = std::time(nullptr) - st.st_mtime;
  return age * 1000.0 >= stale_ms;
}

}  // namespace detail

// Generates one shard's content in memory: deterministic bytes.
inline std::pair<std::string, ShardStats> build_shard(const DatasetConfig& cfg, uint64_t k,
                                                      const GenerateFn& generate,
                                                      const std::string& heartbeat_file = "") {
  std::vector<std::pair<std::string, double>> tasks = cfg.tasks;
  if (tasks.empty())
    for (const auto& name : list_tasks()) tasks.push_back({name, 1.0});
  std::vector<double> task_weights;
  for (const auto& [name, w] : tasks) task_weights.push_back(w);
  std::vector<double> level_weights;
  for (const auto& lp : cfg.levels) level_weights.push_back(lp.prob);

  uint64_t first_id = k * cfg.shard_size;
  uint64_t want = std::min(cfg.shard_size, cfg.total - std::min(cfg.total, first_id));

  std::string content;
  ShardStats stats;
  BalanceFilter balance(cfg.balance_window, cfg.balance_cap);

  uint64_t candidate = 0;
  for (uint64_t slot = 0; slot < want; ++slot) {
    bool accepted = false;
    for (int attempt = 0; attempt < cfg.retry_cap && !accepted; ++attempt, ++candidate) {
      uint64_t h = hash_combine(hash_combine(hash_combine(cfg.config_hash(), cfg.seed), k),
                                candidate);
      Rng rng(h);
      size_t ti = rng.weighted(task_weights);
      double level = cfg.levels[rng.weighted(level_weights)].level;
      uint64_t ex_seed = rng.next_u64();

      TaskExample ex;
      try {
        Budget budget = Budget::after(scaled_timeout(cfg.base_timeout_ms, level));
        ex = generate(tasks[ti].first, level, ex_seed, budget);
      } catch (const TimeoutError&) {
        ++stats.timeouts;
        continue;
      } catch (const std::exception&) {
        ++stats.failures;
        continue;
      }
      if (!balance.accept(ex.balancing_key)) {
        ++stats.balance_rejects;
        continue;
      }
      // Trace attachment is a deterministic function of the example seed.
      uint64_t coin = hash_combine(fnv1a(std::string("trace")), ex.seed);
      double u = (coin >> 11) * 0x1.0p-53;
      if (!(u < cfg.trace_probability)) ex.cot.reset();

      Json line = ex.to_json();
      char idbuf[24];
      std::snprintf(idbuf, sizeof idbuf, "%09llu",
                    static_cast<unsigned long long>(first_id + slot));
      line["id"] = std::string(idbuf);
      content += line.dump() + "\n";
      ++stats.accepted;
      ++stats.per_task[ex.task_name];
      char lvl[24];
      std::snprintf(lvl, sizeof lvl, "%g", ex.level);
      ++stats.per_level[lvl];
      accepted = true;
      if (!heartbeat_file.empty()) detail::heartbeat(heartbeat_file);
    }
    // A slot that exhausts its retries surfaces in the manifest tallies
    // rather than crashing the run; the shard simply ends up shorter.
  }
  return {std::move(content), std::move(stats)};
}

// Claims and completes shards until none remain claimable.
inline WorkerOutcome worker_loop(const DatasetConfig& cfg, const GenerateFn& generate,
                                 double stale_ms) {
  WorkerOutcome outcome;
  for (uint64_t k = 0; k < cfg.num_shards(); ++k) {
    if (file_exists(shard_path(cfg, k))) continue;
    std::string lock = lock_path(cfg, k);
    if (!detail::claim_lock(lock)) {
      if (detail::lock_is_stale(lock, stale_ms)) {
        ::unlink(lock.c_str());
        if (!detail::claim_lock(lock)) {
          ++outcome.lock_contention;
          continue;
        }
      } else {
        ++outcome.lock_contention;
        continue;
      }
    }
    if (file_exists(shard_path(cfg, k))) {  // finished while we waited
      ::unlink(lock.c_str());
      continue;
    }
    auto [content, stats] = build_shard(cfg, k, generate, lock);
    write_file_atomic(shard_path(cfg, k), content);
    write_file_atomic(stats_path(cfg, k), stats.to_json().dump(2));
    ::unlink(lock.c_str());
    ++outcome.shards_done;
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Orchestration

struct Manifest {
  std::string path;
  Json body;
};

inline Manifest write_manifest(const DatasetConfig& cfg) {
  ShardStats total;
  Json shards = Json::array();
  uint64_t line_total = 0;
  for (uint64_t k = 0; k < cfg.num_shards(); ++k) {
    if (!file_exists(shard_path(cfg, k)))
      throw err("incomplete", "missing shard " + std::to_string(k));
    ShardStats s;
    if (file_exists(stats_path(cfg, k))) {
      std::ifstream in(stats_path(cfg, k));
      Json j = Json::parse(in);
      s = ShardStats::from_json(j);
    } else {
      // Rebuild counts from the shard itself.
      std::ifstream in(shard_path(cfg, k));
      std::string line;
      while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        Json j = Json::parse(line);
        ++s.accepted;
        ++s.per_task[j.at("task").get<std::string>()];
        char lvl[24];
        std::snprintf(lvl, sizeof lvl, "%g", j.at("level").get<double>());
        ++s.per_level[lvl];
      }
    }
    uint64_t lines = 0;
    {
      std::ifstream in(shard_path(cfg, k));
      std::string line;
      while (std::getline(in, line))
        if (!trim(line).empty()) ++lines;
    }
    if (lines != s.accepted)
      throw err("corrupt-shard", "stats disagree with shard " + std::to_string(k));
    line_total += lines;
    for (const auto& [t, c] : s.per_task) total.per_task[t] += c;
    for (const auto& [l, c] : s.per_level) total.per_level[l] += c;
    total.accepted += s.accepted;
    total.timeouts += s.timeouts;
    total.failures += s.failures;
    total.balance_rejects += s.balance_rejects;
    shards.push_back(Json{{"index", k}, {"lines", lines}});
  }
  Manifest m;
  m.body = Json{{"config_hash", cfg.config_hash()},
                {"config", cfg.to_json()},
                {"total_examples", line_total},
                {"shards", shards},
                {"per_task", total.per_task},
                {"per_level", total.per_level},
                {"timeouts", total.timeouts},
                {"failures", total.failures},
                {"balance_rejects", total.balance_rejects}};
  m.path = cfg.output_dir + "/manifest.json";
  write_file_atomic(m.path, m.body.dump(2) + "\n");
  return m;
}

// Runs generation with worker processes; resumable and crash safe. The
// parent supervises heartbeats and reaps stalled children, then finishes
// any unclaimed work itself before writing the manifest.
inline Manifest run_generation(const DatasetConfig& cfg,
                               const GenerateFn& generate = default_generate) {
  cfg.validate();
  ::mkdir(cfg.output_dir.c_str(), 0755);
  double max_level = 0;
  for (const auto& lp : cfg.levels) max_level = std::max(max_level, lp.level);
  double stale_ms = 5.0 * cfg.base_timeout_ms * (1.0 + max_level);

  int n_workers = std::max(1, cfg.workers);
  std::vector<pid_t> children;
  for (int w = 1; w < n_workers; ++w) {
    pid_t pid = ::fork();
    if (pid == 0) {
      try {
        worker_loop(cfg, generate, stale_ms);
        ::_exit(0);
      } catch (...) {
        ::_exit(1);
      }
    }
    if (pid > 0) children.push_back(pid);
  }
  worker_loop(cfg, generate, stale_ms);

  // Supervision: reap children; kill any whose shard lock heartbeat stalls.
  auto start = std::chrono::steady_clock::now();
  while (!children.empty()) {
    for (auto it = children.begin(); it != children.end();) {
      int status = 0;
      pid_t r = ::waitpid(*it, &status, WNOHANG);
      if (r == *it) it = children.erase(it);
      else ++it;
    }
    if (children.empty()) break;
    double waited = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    if (waited > stale_ms) {
      for (pid_t pid : children) {
        ::kill(pid, SIGKILL);
        ::waitpid(pid, nullptr, 0);
      }
      children.clear();
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  // Mop-up pass for shards lost to killed or stalled workers.
  for (uint64_t k = 0; k < cfg.num_shards(); ++k) {
    std::string lock = lock_path(cfg, k);
    if (file_exists(lock)) {
      auto owner = detail::lock_owner(lock);
      if (!owner || ::kill(*owner, 0) != 0) ::unlink(lock.c_str());
    }
  }
  worker_loop(cfg, generate, stale_ms);
  return write_manifest(cfg);
}

}  // namespace symgen::pipeline
