// Command-line front end for the tra shared library: batch reward scoring,
// toy GRPO training, alpha ablation sweeps and counting-metric evaluation.
// Everything numerical goes through the public C API; this file only does
// flag parsing, JSONL/CSV plumbing and manifest bookkeeping.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tra/tra.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

int status_to_exit(tra_status status) {
  switch (status) {
    case TRA_OK: return kExitOk;
    case TRA_ERR_INVALID_ARGUMENT: return kExitInputError;
    case TRA_ERR_INVALID_CONFIG: return kExitConfigError;
    default: return kExitNumericError;
  }
}

[[nodiscard]] int fail_status(tra_status status, const std::string& context) {
  std::cerr << "error: " << context << ": " << tra_last_error() << " ("
            << tra_status_name(status) << ")\n";
  return status_to_exit(status);
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, end) : "nan";
}

// "1,2,3" or "1..5" (inclusive).
std::optional<std::vector<uint64_t>> parse_seed_list(const std::string& text) {
  std::vector<uint64_t> seeds;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    try {
      uint64_t lo = std::stoull(text.substr(0, dots));
      uint64_t hi = std::stoull(text.substr(dots + 2));
      if (hi < lo) return std::nullopt;
      for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      return seeds;
    } catch (...) {
      return std::nullopt;
    }
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      seeds.push_back(std::stoull(item));
    } catch (...) {
      return std::nullopt;
    }
  }
  if (seeds.empty()) return std::nullopt;
  return seeds;
}

std::optional<std::vector<double>> parse_alpha_list(const std::string& text) {
  std::vector<double> alphas;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) return std::nullopt;
      alphas.push_back(v);
    } catch (...) {
      return std::nullopt;
    }
  }
  if (alphas.empty()) return std::nullopt;
  return alphas;
}

// Flag bundles; names mirror the config fields so the manifest doubles as
// flag documentation.
struct RewardFlags {
  tra_reward_config cfg{};
  void attach(CLI::App* app) {
    tra_reward_config_init(&cfg);
    app->add_option("--alpha", cfg.alpha, "Weight of the range reward")->capture_default_str();
    app->add_option("--k", cfg.k, "Gaussian sharpness")->capture_default_str();
    app->add_option("--rel-tolerance", cfg.rel_tolerance, "Validity indicator bound")
        ->capture_default_str();
    app->add_option("--guard-eps", cfg.guard_eps, "Division guard for gt = 0")
        ->capture_default_str();
  }
  void to_manifest(json& cfg_json) const {
    cfg_json["alpha"] = cfg.alpha;
    cfg_json["k"] = cfg.k;
    cfg_json["rel_tolerance"] = cfg.rel_tolerance;
    cfg_json["guard_eps"] = cfg.guard_eps;
  }
};

struct GrpoFlags {
  tra_grpo_config cfg{};
  void attach(CLI::App* app) {
    tra_grpo_config_init(&cfg);
    app->add_option("--clip-eps", cfg.clip_eps, "Importance-ratio clip half-width")
        ->capture_default_str();
    app->add_option("--beta", cfg.beta, "KL penalty weight")->capture_default_str();
    app->add_option("--group-size", cfg.group_size, "Responses sampled per query")
        ->capture_default_str();
  }
  void to_manifest(json& cfg_json) const {
    cfg_json["clip_eps"] = cfg.clip_eps;
    cfg_json["beta"] = cfg.beta;
    cfg_json["group_size"] = cfg.group_size;
  }
};

struct EnvFlags {
  tra_env_config cfg{};
  void attach(CLI::App* app) {
    tra_env_config_init(&cfg);
    app->add_option("--c-max", cfg.c_max, "Largest count in the environment")
        ->capture_default_str();
    app->add_option("--noise", cfg.noise, "Observation jitter magnitude")->capture_default_str();
    app->add_option("--halfwidth-max", cfg.halfwidth_max, "Largest interval halfwidth")
        ->capture_default_str();
    app->add_option("--p-malformed", cfg.p_malformed, "Malformed-response probability")
        ->capture_default_str();
  }
  void to_manifest(json& cfg_json) const {
    cfg_json["c_max"] = cfg.c_max;
    cfg_json["noise"] = cfg.noise;
    cfg_json["halfwidth_max"] = cfg.halfwidth_max;
    cfg_json["p_malformed"] = cfg.p_malformed;
  }
};

struct TrainFlags {
  tra_train_config cfg{};
  void attach(CLI::App* app) {
    tra_train_config_init(&cfg);
    app->add_option("--steps", cfg.steps, "Optimization steps")->capture_default_str();
    app->add_option("--lr,--learning-rate", cfg.learning_rate, "Gradient-ascent step size")
        ->capture_default_str();
    app->add_option("--seed", cfg.seed, "Master seed for all randomness")->capture_default_str();
  }
  void to_manifest(json& cfg_json) const {
    cfg_json["steps"] = cfg.steps;
    cfg_json["learning_rate"] = cfg.learning_rate;
  }
};

bool write_text_file(const fs::path& path, const std::string& content, std::string* error) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    *error = "cannot open " + path.string() + " for writing";
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    *error = "failed writing " + path.string();
    return false;
  }
  return true;
}

int write_manifest(const fs::path& path, json manifest) {
  manifest["version"] = tra_version();
  std::string error;
  if (!write_text_file(path, manifest.dump(2) + "\n", &error)) {
    std::cerr << "error: " << error << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

std::optional<int64_t> get_gt(const json& record, std::string* error) {
  if (!record.contains("gt")) {
    *error = "missing field: gt";
    return std::nullopt;
  }
  const json& gt = record["gt"];
  if (!gt.is_number_integer() && !gt.is_number_unsigned()) {
    *error = "gt must be an integer";
    return std::nullopt;
  }
  int64_t value = gt.get<int64_t>();
  if (value < 0) {
    *error = "gt must be >= 0";
    return std::nullopt;
  }
  return value;
}

json breakdown_to_json(const tra_reward_breakdown& b) {
  json out;
  out["well_formed"] = b.well_formed != 0;
  if (b.well_formed) {
    out["range_low"] = b.range_low;
    out["range_up"] = b.range_up;
    out["answer"] = b.answer;
  }
  out["r_format"] = b.r_format;
  out["r_range"] = b.r_range;
  out["r_ans"] = b.r_ans;
  out["r_acc"] = b.r_acc;
  out["r_total"] = b.r_total;
  return out;
}

// ---- score ---------------------------------------------------------------

struct ScoreOptions {
  std::string input;
  std::string output;
  bool groups = false;
  bool strict = false;
  RewardFlags reward;
};

json score_flat_record(const json& record, const tra_reward_config& cfg, std::string* error) {
  auto gt = get_gt(record, error);
  if (!gt) return {};
  if (!record.contains("response") || !record["response"].is_string()) {
    *error = "missing or non-string field: response";
    return {};
  }
  std::string text = record["response"].get<std::string>();
  tra_reward_breakdown breakdown{};
  if (tra_status s = tra_score_response(text.c_str(), *gt, &cfg, &breakdown); s != TRA_OK) {
    *error = tra_last_error();
    return {};
  }
  json out = breakdown_to_json(breakdown);
  if (record.contains("id")) out["id"] = record["id"];
  out["gt"] = *gt;
  return out;
}

json score_group_record(const json& record, const tra_reward_config& cfg, std::string* error) {
  auto gt = get_gt(record, error);
  if (!gt) return {};
  if (!record.contains("responses") || !record["responses"].is_array()) {
    *error = "missing or non-array field: responses";
    return {};
  }
  std::vector<std::string> texts;
  for (const json& item : record["responses"]) {
    if (!item.is_string()) {
      *error = "responses must be an array of strings";
      return {};
    }
    texts.push_back(item.get<std::string>());
  }
  if (texts.size() < 2) {
    *error = "group needs at least 2 responses";
    return {};
  }
  std::vector<const char*> ptrs;
  ptrs.reserve(texts.size());
  for (const auto& t : texts) ptrs.push_back(t.c_str());
  std::vector<tra_reward_breakdown> breakdowns(texts.size());
  std::vector<double> advantages(texts.size());
  tra_status s = tra_score_group(ptrs.data(), static_cast<int64_t>(texts.size()), *gt, &cfg,
                                 breakdowns.data(), advantages.data());
  if (s != TRA_OK) {
    *error = tra_last_error();
    return {};
  }
  json out;
  if (record.contains("query_id")) out["query_id"] = record["query_id"];
  out["gt"] = *gt;
  json resp_array = json::array();
  for (const auto& b : breakdowns) resp_array.push_back(breakdown_to_json(b));
  out["responses"] = std::move(resp_array);
  out["advantages"] = advantages;
  return out;
}

int cmd_score(const ScoreOptions& opts) {
  // Reject a bad reward config before touching the input.
  {
    tra_reward_breakdown probe{};
    if (tra_status s = tra_score_response("", 0, &opts.reward.cfg, &probe); s != TRA_OK)
      return fail_status(s, "invalid reward configuration");
  }

  std::ifstream file_in;
  std::istream* in = &std::cin;
  if (opts.input != "-") {
    file_in.open(opts.input, std::ios::binary);
    if (!file_in) {
      std::cerr << "error: cannot open input " << opts.input << "\n";
      return kExitInputError;
    }
    in = &file_in;
  }

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (opts.output != "-") {
    file_out.open(opts.output, std::ios::binary);
    if (!file_out) {
      std::cerr << "error: cannot open output " << opts.output << "\n";
      return kExitInputError;
    }
    out = &file_out;
  }

  int64_t line_number = 0;
  int64_t record_count = 0;
  int64_t error_count = 0;
  std::string line;
  while (std::getline(*in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::string error;
    json result;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      error = "invalid JSON";
    } else {
      result = opts.groups ? score_group_record(record, opts.reward.cfg, &error)
                           : score_flat_record(record, opts.reward.cfg, &error);
    }
    if (!error.empty()) {
      ++error_count;
      json err_record;
      err_record["line"] = line_number;
      err_record["error"] = error;
      *out << err_record.dump() << "\n";
    } else {
      ++record_count;
      *out << result.dump() << "\n";
    }
  }
  out->flush();

  if (record_count == 0 && error_count == 0)
    std::cerr << "warning: input contained no records\n";
  if (error_count > 0)
    std::cerr << "warning: " << error_count << " record(s) failed; see output error entries\n";

  if (opts.output != "-") {
    json manifest;
    manifest["command"] = "score";
    json cfg_json;
    opts.reward.to_manifest(cfg_json);
    manifest["config"] = cfg_json;
    manifest["flags"] = {{"groups", opts.groups}, {"strict", opts.strict}};
    manifest["inputs"] = {{"input", opts.input}};
    manifest["outputs"] = {{"scored", opts.output}};
    if (int rc = write_manifest(opts.output + ".manifest.json", std::move(manifest)); rc != kExitOk)
      return rc;
  }
  return (opts.strict && error_count > 0) ? kExitInputError : kExitOk;
}

// ---- train-toy -------------------------------------------------------------

struct TrainOptions {
  std::string out_dir;
  RewardFlags reward;
  GrpoFlags grpo;
  EnvFlags env;
  TrainFlags train;
};

json train_config_manifest(const TrainOptions& opts) {
  json cfg;
  opts.reward.to_manifest(cfg);
  opts.grpo.to_manifest(cfg);
  opts.env.to_manifest(cfg);
  opts.train.to_manifest(cfg);
  return cfg;
}

int cmd_train_toy(const TrainOptions& opts) {
  tra_trainer* trainer = nullptr;
  tra_status s =
      tra_trainer_create(&opts.env.cfg, &opts.reward.cfg, &opts.grpo.cfg, &opts.train.cfg, &trainer);
  if (s != TRA_OK) return fail_status(s, "invalid configuration");

  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  fs::path dir(opts.out_dir);
  fs::path trajectory_path = dir / "trajectory.jsonl";
  fs::path policy_path = dir / "policy.json";

  std::ofstream trajectory(trajectory_path, std::ios::binary);
  if (!trajectory) {
    std::cerr << "error: cannot open " << trajectory_path.string() << " for writing\n";
    tra_trainer_destroy(trainer);
    return kExitInputError;
  }

  for (int64_t step = 0; step < opts.train.cfg.steps; ++step) {
    tra_train_record record{};
    if (tra_status step_status = tra_trainer_step(trainer, &record); step_status != TRA_OK) {
      tra_trainer_destroy(trainer);
      return fail_status(step_status, "training aborted");
    }
    json line;
    line["step"] = record.step;
    line["mean_total_reward"] = record.mean_total_reward;
    line["mean_r_ans"] = record.mean_r_ans;
    line["mean_r_range"] = record.mean_r_range;
    line["format_rate"] = record.format_rate;
    line["mae"] = record.mae;
    trajectory << line.dump() << "\n";
  }
  trajectory.flush();
  if (!trajectory) {
    std::cerr << "error: failed writing " << trajectory_path.string() << "\n";
    tra_trainer_destroy(trainer);
    return kExitInputError;
  }

  char* policy_json = nullptr;
  s = tra_trainer_policy_json(trainer, &policy_json);
  tra_trainer_destroy(trainer);
  if (s != TRA_OK) return fail_status(s, "policy serialization failed");
  std::string policy_text(policy_json);
  tra_free(policy_json);
  std::string error;
  if (!write_text_file(policy_path, policy_text + "\n", &error)) {
    std::cerr << "error: " << error << "\n";
    return kExitInputError;
  }

  json manifest;
  manifest["command"] = "train-toy";
  manifest["config"] = train_config_manifest(opts);
  manifest["seed"] = opts.train.cfg.seed;
  manifest["outputs"] = {{"trajectory", trajectory_path.string()},
                         {"policy", policy_path.string()}};
  return write_manifest(dir / "manifest.json", std::move(manifest));
}

// ---- ablate ----------------------------------------------------------------

struct AblateOptions {
  std::string out_dir;
  std::string alphas_text = "0,0.2,0.4,1.0";
  std::string seeds_text = "1..5";
  RewardFlags reward;
  GrpoFlags grpo;
  EnvFlags env;
  TrainFlags train;
};

int cmd_ablate(const AblateOptions& opts) {
  auto alphas = parse_alpha_list(opts.alphas_text);
  if (!alphas) {
    std::cerr << "error: cannot parse --alphas '" << opts.alphas_text << "'\n";
    return kExitConfigError;
  }
  auto seeds = parse_seed_list(opts.seeds_text);
  if (!seeds) {
    std::cerr << "error: cannot parse --seeds '" << opts.seeds_text << "'\n";
    return kExitConfigError;
  }

  // Validate the base configuration once, before the sweep.
  {
    tra_trainer* probe = nullptr;
    tra_status s = tra_trainer_create(&opts.env.cfg, &opts.reward.cfg, &opts.grpo.cfg,
                                      &opts.train.cfg, &probe);
    if (s != TRA_OK) return fail_status(s, "invalid configuration");
    tra_trainer_destroy(probe);
  }

  std::vector<tra_ablation_cell> cells(alphas->size() * seeds->size());
  tra_status s = tra_ablate(alphas->data(), static_cast<int64_t>(alphas->size()), seeds->data(),
                            static_cast<int64_t>(seeds->size()), &opts.env.cfg, &opts.reward.cfg,
                            &opts.grpo.cfg, &opts.train.cfg, cells.data());
  if (s != TRA_OK) return fail_status(s, "ablation failed");

  std::ostringstream csv;
  csv << "alpha,seed,final_mae,final_mean_reward\n";
  size_t idx = 0;
  for (size_t ai = 0; ai < alphas->size(); ++ai) {
    double mae_sum = 0.0, reward_sum = 0.0;
    int64_t ok_cells = 0;
    for (size_t si = 0; si < seeds->size(); ++si, ++idx) {
      const tra_ablation_cell& cell = cells[idx];
      if (cell.ok) {
        csv << format_double(cell.alpha) << "," << cell.seed << ","
            << format_double(cell.final_mae) << "," << format_double(cell.final_mean_reward)
            << "\n";
        mae_sum += cell.final_mae;
        reward_sum += cell.final_mean_reward;
        ++ok_cells;
      } else {
        csv << format_double(cell.alpha) << "," << cell.seed << ",error,error\n";
        std::cerr << "warning: cell alpha=" << format_double(cell.alpha) << " seed=" << cell.seed
                  << " failed: " << cell.error << "\n";
      }
    }
    if (ok_cells > 0) {
      csv << format_double(alphas->at(ai)) << ",aggregate,"
          << format_double(mae_sum / static_cast<double>(ok_cells)) << ","
          << format_double(reward_sum / static_cast<double>(ok_cells)) << "\n";
    } else {
      csv << format_double(alphas->at(ai)) << ",aggregate,error,error\n";
    }
  }

  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  fs::path dir(opts.out_dir);
  fs::path csv_path = dir / "ablation.csv";
  std::string error;
  if (!write_text_file(csv_path, csv.str(), &error)) {
    std::cerr << "error: " << error << "\n";
    return kExitInputError;
  }

  json manifest;
  manifest["command"] = "ablate";
  json cfg = train_config_manifest(
      {opts.out_dir, opts.reward, opts.grpo, opts.env, opts.train});
  cfg.erase("alpha");  // swept, not fixed
  manifest["config"] = cfg;
  manifest["sweep"] = {{"alphas", *alphas}, {"seeds", *seeds}};
  manifest["outputs"] = {{"table", csv_path.string()}};
  return write_manifest(dir / "manifest.json", std::move(manifest));
}

// ---- eval ------------------------------------------------------------------

struct EvalOptions {
  std::string predictions;
  std::string output;  // empty: stdout only
  bool binary = false;
};

int cmd_eval(const EvalOptions& opts) {
  std::ifstream in(opts.predictions, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open predictions file " << opts.predictions << "\n";
    return kExitInputError;
  }

  std::vector<int64_t> predicted;
  std::vector<uint8_t> missing;
  std::vector<int64_t> gts;
  std::unordered_set<std::string> seen_ids;
  std::vector<std::string> schema_errors;

  int64_t line_number = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto schema_error = [&](const std::string& msg) {
      schema_errors.push_back("line " + std::to_string(line_number) + ": " + msg);
    };
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      schema_error("invalid JSON");
      continue;
    }
    if (!record.contains("id") || !(record["id"].is_string() || record["id"].is_number())) {
      schema_error("missing or invalid field: id");
      continue;
    }
    std::string id = record["id"].is_string() ? record["id"].get<std::string>()
                                              : record["id"].dump();
    if (!seen_ids.insert(id).second) {
      schema_error("duplicate id: " + id);
      continue;
    }
    std::string gt_error;
    auto gt = get_gt(record, &gt_error);
    if (!gt) {
      schema_error(gt_error);
      continue;
    }
    if (!record.contains("predicted")) {
      schema_error("missing field: predicted (use null for unparseable outputs)");
      continue;
    }
    const json& pred = record["predicted"];
    if (pred.is_null()) {
      predicted.push_back(0);
      missing.push_back(1);
    } else if ((pred.is_number_integer() || pred.is_number_unsigned()) &&
               pred.get<int64_t>() >= 0) {
      predicted.push_back(pred.get<int64_t>());
      missing.push_back(0);
    } else {
      schema_error("predicted must be a non-negative integer or null");
      continue;
    }
    gts.push_back(*gt);
  }

  if (!schema_errors.empty()) {
    for (const auto& e : schema_errors) std::cerr << "error: " << e << "\n";
    return kExitInputError;
  }
  if (gts.empty()) {
    std::cerr << "error: predictions file contains no records\n";
    return kExitInputError;
  }

  tra_eval_report report{};
  tra_status s = tra_evaluate(predicted.data(), missing.data(), gts.data(),
                              static_cast<int64_t>(gts.size()), opts.binary ? 1 : 0, &report);
  if (s != TRA_OK) return fail_status(s, "evaluation failed");

  json doc;
  doc["count"] = report.count;
  doc["mae"] = report.mae;
  doc["rmse"] = report.rmse;
  if (report.has_accuracy) doc["accuracy"] = report.accuracy;
  doc["malformed_count"] = report.malformed_count;
  std::cout << doc.dump(2) << "\n";

  if (!opts.output.empty()) {
    std::string error;
    if (!write_text_file(opts.output, doc.dump(2) + "\n", &error)) {
      std::cerr << "error: " << error << "\n";
      return kExitInputError;
    }
    json manifest;
    manifest["command"] = "eval";
    manifest["flags"] = {{"binary", opts.binary}};
    manifest["inputs"] = {{"predictions", opts.predictions}};
    manifest["outputs"] = {{"report", opts.output}};
    if (int rc = write_manifest(opts.output + ".manifest.json", std::move(manifest));
        rc != kExitOk)
      return rc;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reward scoring, GRPO toy training and counting metrics for "
               "structured think/range/answer responses"};
  app.require_subcommand(1);

  ScoreOptions score_opts;
  CLI::App* score = app.add_subcommand("score", "Score completions from a JSONL batch file");
  score->add_option("--input", score_opts.input, "Input JSONL path ('-' for stdin)")->required();
  score->add_option("--output", score_opts.output, "Output JSONL path ('-' for stdout)")
      ->required();
  score->add_flag("--groups", score_opts.groups,
                  "Input holds response groups {query_id, gt, responses}; adds advantages");
  score->add_flag("--strict", score_opts.strict, "Exit nonzero if any record fails");
  score_opts.reward.attach(score);

  TrainOptions train_opts;
  CLI::App* train_toy =
      app.add_subcommand("train-toy", "Train the tabular counting policy on the synthetic task");
  train_toy->add_option("--out-dir", train_opts.out_dir,
                        "Directory for trajectory.jsonl, policy.json and manifest.json")
      ->required();
  train_opts.reward.attach(train_toy);
  train_opts.grpo.attach(train_toy);
  train_opts.env.attach(train_toy);
  train_opts.train.attach(train_toy);

  AblateOptions ablate_opts;
  CLI::App* ablate = app.add_subcommand("ablate", "Sweep the range-reward weight across seeds");
  ablate->add_option("--out-dir", ablate_opts.out_dir,
                     "Directory for ablation.csv and manifest.json")
      ->required();
  ablate->add_option("--alphas", ablate_opts.alphas_text, "Comma-separated alpha values")
      ->capture_default_str();
  ablate->add_option("--seeds", ablate_opts.seeds_text, "Seeds: comma list or lo..hi")
      ->capture_default_str();
  ablate_opts.reward.attach(ablate);
  ablate_opts.grpo.attach(ablate);
  ablate_opts.env.attach(ablate);
  ablate_opts.train.attach(ablate);

  EvalOptions eval_opts;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Compute MAE/RMSE over a prediction file");
  eval_cmd->add_option("--predictions", eval_opts.predictions, "JSONL of {id, predicted|null, gt}")
      ->required();
  eval_cmd->add_option("--output", eval_opts.output, "Also write the JSON report to this path");
  eval_cmd->add_flag("--binary", eval_opts.binary,
                     "Include exact-match accuracy (requires gt in {0, 1})");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  if (score->parsed()) return cmd_score(score_opts);
  if (train_toy->parsed()) return cmd_train_toy(train_opts);
  if (ablate->parsed()) return cmd_ablate(ablate_opts);
  if (eval_cmd->parsed()) return cmd_eval(eval_opts);
  return kExitConfigError;
}
