#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgen/util/error.hpp"
#include "symgen/util/rng.hpp"
#include "symgen/util/strings.hpp"

namespace symgen {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Generation budget

// Cooperative deadline. Generators call checkpoint() inside their sampling
// loops; when the budget is exhausted the attempt is abandoned via
// TimeoutError and the caller retries with a fresh derived seed.
class Budget {
public:
  static Budget none() { return Budget(); }

  static Budget after(std::chrono::milliseconds d) {
    Budget b;
    b.enabled_ = true;
    b.end_ = std::chrono::steady_clock::now() + d;
    return b;
  }

  void checkpoint() const {
    if (!enabled_) return;
    if (++tick_ % 16 != 0) return;
    if (std::chrono::steady_clock::now() > end_)
      throw TimeoutError("generation budget exhausted");
  }

private:
  bool enabled_ = false;
  mutable uint64_t tick_ = 0;
  std::chrono::steady_clock::time_point end_{};
};

// ---------------------------------------------------------------------------
// Example schema

struct TaskExample {
  std::string task_name;
  double level = 0;
  uint64_t seed = 0;
  std::string prompt;
  std::string answer;
  std::optional<std::string> cot;
  std::optional<std::string> balancing_key;
  Json payload;  // enough structure to re-verify the gold answer

  Json to_json() const {
    Json meta;
    if (balancing_key) meta["balancing_key"] = *balancing_key;
    if (cot) meta["cot"] = *cot;
    meta["payload"] = payload;
    return Json{{"task", task_name}, {"level", level},  {"seed", seed},
                {"prompt", prompt},  {"answer", answer}, {"metadata", meta}};
  }

  static TaskExample from_json(const Json& j) {
    TaskExample ex;
    ex.task_name = j.at("task").get<std::string>();
    ex.level = j.at("level").get<double>();
    ex.seed = j.at("seed").get<uint64_t>();
    ex.prompt = j.at("prompt").get<std::string>();
    ex.answer = j.at("answer").get<std::string>();
    const Json& meta = j.at("metadata");
    if (meta.contains("cot")) ex.cot = meta.at("cot").get<std::string>();
    if (meta.contains("balancing_key"))
      ex.balancing_key = meta.at("balancing_key").get<std::string>();
    ex.payload = meta.at("payload");
    return ex;
  }
};

// ---------------------------------------------------------------------------
// Difficulty knob

// floor(x) + Bernoulli(frac(x)); expectation equals x. Discrete generation
// parameters are always resolved through this, never truncated.
inline int64_t stochastic_round(double x, Rng& rng) {
  if (x < 0) throw err("domain", "stochastic_round requires x >= 0");
  double fl = std::floor(x);
  double frac = x - fl;
  int64_t base = static_cast<int64_t>(fl);
  if (frac <= 0) return base;
  return base + (rng.uniform() < frac ? 1 : 0);
}

// Maps the single difficulty level to named generation parameters.
class DifficultyKnob {
public:
  enum class Growth { linear, geometric };

  struct Param {
    std::string name;
    double base = 0;
    Growth growth = Growth::linear;
    double rate = 0;  // slope (linear) or ratio (geometric)
    bool integer = false;
    double cap = 1e18;
  };

  DifficultyKnob() = default;
  explicit DifficultyKnob(std::vector<Param> params) : params_(std::move(params)) {}

  DifficultyKnob& linear(const std::string& name, double base, double slope,
                         bool integer = true, double cap = 1e18) {
    params_.push_back({name, base, Growth::linear, slope, integer, cap});
    return *this;
  }

  DifficultyKnob& geometric(const std::string& name, double base, double ratio,
                            bool integer = true, double cap = 1e18) {
    params_.push_back({name, base, Growth::geometric, ratio, integer, cap});
    return *this;
  }

  double raw(const std::string& name, double level) const {
    for (const auto& p : params_) {
      if (p.name != name) continue;
      double v = p.growth == Growth::linear ? p.base + p.rate * level
                                            : p.base * std::pow(p.rate, level);
      return std::min(v, p.cap);
    }
    throw err("unknown-parameter", "no knob parameter named " + name);
  }

  // Integer parameters are stochastically rounded.
  int64_t resolve_int(const std::string& name, double level, Rng& rng) const {
    return stochastic_round(raw(name, level), rng);
  }

  const std::vector<Param>& params() const { return params_; }

  std::string describe() const {
    std::string out;
    for (const auto& p : params_) {
      if (!out.empty()) out += ", ";
      out += p.name + "=" + format_num(p.base) +
             (p.growth == Growth::linear ? "+" + format_num(p.rate) + "*L"
                                         : "*" + format_num(p.rate) + "^L");
    }
    return out;
  }

private:
  static std::string format_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }
  std::vector<Param> params_;
};

// ---------------------------------------------------------------------------
// Answer extraction

// Content of the last well-formed <answer>...</answer> span, trimmed.
// Falls back to the whole trimmed input when no span exists.
inline std::string extract_answer(const std::string& model_output) {
  static const std::string open = "<answer>", close = "</answer>";
  std::string last;
  bool found = false;
  size_t pos = 0;
  while (true) {
    size_t b = model_output.find(open, pos);
    if (b == std::string::npos) break;
    size_t e = model_output.find(close, b + open.size());
    if (e == std::string::npos) break;
    last = model_output.substr(b + open.size(), e - b - open.size());
    found = true;
    pos = e + close.size();
  }
  return trim(found ? last : model_output);
}

// ---------------------------------------------------------------------------
// Task handles

struct Task {
  std::string name;
  std::string summary;
  DifficultyKnob knob;
  bool trace_capable = false;
  bool listed = true;  // variants resolvable by name but not catalogued
  std::function<TaskExample(double level, uint64_t seed, const Budget&)> generate;
  std::function<double(const std::string& answer, const TaskExample&)> score;
};

namespace detail {
// Defined in tasks.hpp, which wires every task module into the registry.
const std::vector<Task>& task_registry();
}  // namespace detail

inline std::vector<std::string> list_tasks() {
  std::vector<std::string> names;
  for (const auto& t : detail::task_registry())
    if (t.listed) names.push_back(t.name);
  std::sort(names.begin(), names.end());
  return names;
}

// All generatable names, including unlisted variants.
inline std::vector<std::string> all_task_names() {
  std::vector<std::string> names;
  for (const auto& t : detail::task_registry()) names.push_back(t.name);
  std::sort(names.begin(), names.end());
  return names;
}

inline const Task& get_task(const std::string& name) {
  for (const auto& t : detail::task_registry())
    if (t.name == name) return t;
  throw err("unknown-task",
            "no task named '" + name + "' (nearest: '" +
                nearest_of(name, all_task_names()) + "')");
}

inline TaskExample generate_example(const Task& task, double level, uint64_t seed,
                                    const Budget& budget = Budget::none()) {
  if (level < 0) throw err("domain", "level must be >= 0");
  return task.generate(level, seed, budget);
}

// Total scoring wrapper: malformed answers score 0, never raise.
inline double score_answer(const Task& task, const std::string& answer,
                           const TaskExample& example) {
  if (trim(answer).empty()) return 0.0;
  double r;
  try {
    r = task.score(answer, example);
  } catch (const std::exception&) {
    return 0.0;
  }
  if (!(r >= 0.0)) return 0.0;
  return r > 1.0 ? 1.0 : r;
}

}  // namespace symgen
