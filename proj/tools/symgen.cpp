// Command-line surface: list tasks, generate single examples, score answers
// and transcripts, run dataset production, emit a task gallery.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "symgen/pipeline.hpp"
#include "symgen/tasks.hpp"

using namespace symgen;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw err("io", "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

TaskExample load_example(const std::string& path) {
  std::string text = trim(slurp(path));
  auto nl = text.find('\n');
  if (nl != std::string::npos) text = text.substr(0, nl);
  return TaskExample::from_json(Json::parse(text));
}

int cmd_list() {
  for (const auto& name : list_tasks()) {
    const Task& t = get_task(name);
    std::cout << name << "\t" << t.summary << "\n\tknob: " << t.knob.describe()
              << (t.trace_capable ? "\ttraces: yes" : "") << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& task, double level, uint64_t seed, bool keep_cot) {
  TaskExample ex = generate_example(get_task(task), level, seed);
  if (!keep_cot) ex.cot.reset();
  Json line = ex.to_json();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%g:%llu", task.c_str(), level,
                static_cast<unsigned long long>(seed));
  line["id"] = std::string(buf);
  std::cout << line.dump() << "\n";
  return 0;
}

int cmd_score(const std::string& task, const std::string& example_file,
              const std::string& answer_file, const std::string& batch_file,
              bool transcript) {
  if (!batch_file.empty()) {
    // Batch mode: example-file holds examples with ids, batch holds
    // {id, response} lines; emits {id, reward} lines.
    std::map<std::string, TaskExample> examples;
    std::map<std::string, std::string> task_of;
    std::ifstream exf(example_file);
    if (!exf) throw err("io", "cannot read " + example_file);
    std::string line;
    while (std::getline(exf, line)) {
      if (trim(line).empty()) continue;
      Json j = Json::parse(line);
      examples[j.at("id").get<std::string>()] = TaskExample::from_json(j);
      task_of[j.at("id").get<std::string>()] = j.at("task").get<std::string>();
    }
    std::ifstream bf(batch_file);
    if (!bf) throw err("io", "cannot read " + batch_file);
    while (std::getline(bf, line)) {
      if (trim(line).empty()) continue;
      Json j = Json::parse(line);
      std::string id = j.at("id").get<std::string>();
      auto it = examples.find(id);
      if (it == examples.end()) {
        std::cout << Json{{"id", id}, {"error", "unknown id"}}.dump() << "\n";
        continue;
      }
      std::string response = extract_answer(j.at("response").get<std::string>());
      double r = score_answer(get_task(task_of[id]), response, it->second);
      std::cout << Json{{"id", id}, {"reward", r}}.dump() << "\n";
    }
    return 0;
  }
  TaskExample ex = load_example(example_file);
  std::string answer = slurp(answer_file);
  if (transcript) answer = extract_answer(answer);
  const Task& t = get_task(task.empty() ? ex.task_name : task);
  std::cout << score_answer(t, answer, ex) << "\n";
  return 0;
}

int cmd_dataset(const std::string& config_file, int workers_override,
                const std::string& out_override, int64_t total_override) {
  pipeline::DatasetConfig cfg;
  if (!config_file.empty()) cfg = pipeline::DatasetConfig::from_json(Json::parse(slurp(config_file)));
  if (workers_override > 0) cfg.workers = workers_override;
  if (total_override > 0) cfg.total = static_cast<uint64_t>(total_override);
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (const char* env = std::getenv("SYMGEN_OUT_DIR")) cfg.output_dir = env;
  pipeline::Manifest m = pipeline::run_generation(cfg);
  std::cout << m.path << "\n";
  return 0;
}

int cmd_gallery(int per_task, const std::string& out_file) {
  std::string md = "# Task gallery\n\nGenerated examples per task at levels 0, 3 and 5.\n";
  for (const auto& name : list_tasks()) {
    const Task& t = get_task(name);
    md += "\n## " + name + "\n\n" + t.summary + " (knob: " + t.knob.describe() + ")\n";
    for (double level : {0.0, 3.0, 5.0}) {
      for (int k = 0; k < per_task; ++k) {
        TaskExample ex = generate_example(t, level, static_cast<uint64_t>(k));
        md += "\n### level " + std::to_string(static_cast<int>(level)) + ", seed " +
              std::to_string(k) + "\n\n";
        md += "Prompt:\n\n```\n" + ex.prompt + "\n```\n\nAnswer:\n\n```\n" + ex.answer +
              "\n```\n";
        if (ex.cot) md += "\nTrace:\n\n```\n" + *ex.cot + "\n```\n";
      }
    }
  }
  if (out_file.empty()) {
    std::cout << md;
  } else {
    std::ofstream out(out_file, std::ios::binary);
    out << md;
    std::cout << out_file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"procedural generation and verification of symbolic reasoning tasks"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the task catalog and knob schedules");

  std::string task, example_file, answer_file, batch_file, config_file, out_file;
  double level = 0;
  uint64_t seed = 0;
  bool keep_cot = false, transcript = false;
  int workers = 0, per_task = 1;
  int64_t total = 0;

  auto* gen = app.add_subcommand("gen", "generate one example as a JSONL line");
  gen->add_option("--task", task, "task name")->required();
  gen->add_option("--level", level, "difficulty level (non-negative real)");
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_flag("--cot", keep_cot, "keep the reasoning trace when available");

  auto* score = app.add_subcommand("score", "score an answer, transcript, or batch");
  score->add_option("--task", task, "task name (defaults to the example's)");
  score->add_option("--example-file", example_file, "JSONL example file")->required();
  score->add_option("--answer-file", answer_file, "answer or transcript text file");
  score->add_option("--batch", batch_file, "JSONL of {id, response} lines");
  score->add_flag("--transcript", transcript,
                  "treat the answer file as a model transcript (<answer> tags)");

  auto* dataset = app.add_subcommand("dataset", "run parallel dataset production");
  dataset->add_option("--config", config_file, "JSON config file");
  dataset->add_option("--workers", workers, "worker process count override");
  dataset->add_option("--out", out_file, "output directory override");
  dataset->add_option("--total", total, "example count override");

  auto* gallery = app.add_subcommand("gallery", "emit a markdown catalog of examples");
  gallery->add_option("--per-task", per_task, "examples per task per level");
  gallery->add_option("--out", out_file, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (list->parsed()) return cmd_list();
    if (gen->parsed()) return cmd_gen(task, level, seed, keep_cot);
    if (score->parsed()) return cmd_score(task, example_file, answer_file, batch_file, transcript);
    if (dataset->parsed()) return cmd_dataset(config_file, workers, out_file, total);
    if (gallery->parsed()) return cmd_gallery(per_task, out_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
