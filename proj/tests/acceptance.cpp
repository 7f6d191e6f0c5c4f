// Acceptance suite: executes every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
// argv[1] must point at the CLI binary (used by the determinism criterion).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "grpo.hpp"
#include "metrics.hpp"
#include "response_parser.hpp"
#include "reward.hpp"
#include "rng.hpp"
#include "toy_env.hpp"

namespace fs = std::filesystem;
using namespace tra;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// ---- criterion 1: reward oracle fixtures -----------------------------------

void criterion_1() {
  Timer timer;
  RewardConfig cfg;  // alpha 0.2, k 20
  auto b = score_response(
      "<think>counting</think>\n<range>[15, 20]</range>\n<answer>19</answer>", 19, cfg);
  bool pass = std::abs(b.r_range - 0.67912) < 1e-4 && std::abs(b.r_total - 2.13582) < 1e-4 &&
              validity_indicator(15, 10, cfg) == 0.0;
  double elapsed = timer.seconds();
  pass = pass && elapsed < 1.0;
  report(1, "reward oracle fixtures", pass,
         "r_range=" + fmt(b.r_range) + " r_total=" + fmt(b.r_total) + " boundary_ind=" +
             fmt(validity_indicator(15, 10, cfg)) + " " + fmt(elapsed) + "s");
}

// ---- criterion 2: reward bounds and monotonicity properties ----------------

void criterion_2() {
  Timer timer;
  Rng rng(0xACCE97ULL);
  int64_t samples = 0;
  int64_t violations = 0;
  const double alpha_grid[] = {0.0, 0.2, 0.4, 1.0};

  for (int iter = 0; iter < 100000; ++iter) {
    RewardConfig cfg;
    cfg.alpha = alpha_grid[rng.uniform_int(0, 3)];
    cfg.k = 5.0 + 35.0 * rng.uniform_double();
    int64_t gt = rng.uniform_int(0, 200);
    int64_t low = rng.uniform_int(0, 250);
    int64_t up = rng.uniform_int(0, 250);
    int64_t ans = rng.uniform_int(0, 250);
    bool malformed = rng.uniform_double() < 0.1;
    std::string text = malformed ? "<think>broken</think>"
                                 : to_canonical_text("t", low, up, ans);
    auto b = score_response(text, gt, cfg);
    ++samples;

    if (b.r_range < 0.0 || b.r_range > 1.0) ++violations;
    if (b.r_ans < 0.0 || b.r_ans > 1.0) ++violations;
    if (b.r_total < 0.0 || b.r_total > 2.0 + cfg.alpha + 1e-12) ++violations;
    if (malformed && (b.r_total != 0.0 || b.r_acc != 0.0)) ++violations;
    if (!malformed) {
      if (interval_validity(low, up, gt) == 0.0 && b.r_range != 0.0) ++violations;
      if (validity_indicator(ans, gt, cfg) == 0.0 && b.r_ans != 0.0) ++violations;
      if (b.r_acc != b.r_ans + cfg.alpha * b.r_range) ++violations;
      if (gt == 0 && b.r_ans != (ans == 0 ? 1.0 : 0.0)) ++violations;
    }

    // monotonicity in |y - gt| (strict until underflow) and symmetry
    if (gt >= 1) {
      int64_t d1 = rng.uniform_int(0, 150);
      int64_t d2 = d1 + rng.uniform_int(1, 50);
      double nearer = gaussian_score(gt + d1, gt, cfg);
      double farther = gaussian_score(gt + d2, gt, cfg);
      if (nearer < farther) ++violations;
      if (nearer > 1e-300 && !(nearer > farther)) ++violations;
      int64_t d = rng.uniform_int(0, gt);
      if (gaussian_score(gt + d, gt, cfg) != gaussian_score(gt - d, gt, cfg)) ++violations;
    }
  }
  report(2, "reward bounds/monotonicity over randomized samples", violations == 0,
         std::to_string(samples) + " samples, " + std::to_string(violations) + " violations, " +
             fmt(timer.seconds()) + "s");
}

// ---- criterion 3: advantage normalization ----------------------------------

void criterion_3() {
  Timer timer;
  Rng rng(333);
  bool pass = true;
  for (int iter = 0; iter < 10000 && pass; ++iter) {
    size_t n = static_cast<size_t>(rng.uniform_int(2, 64));
    std::vector<double> rewards(n);
    for (auto& r : rewards) r = 2.2 * rng.uniform_double();
    rewards[0] += 0.25;  // non-constant
    auto adv = compute_advantages(rewards);
    double mean = 0.0;
    for (double v : adv) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : adv) var += (v - mean) * (v - mean);
    double stdev = std::sqrt(var / static_cast<double>(n));
    if (std::abs(mean) >= 1e-9 || std::abs(stdev - 1.0) >= 1e-9) pass = false;
  }
  for (int iter = 0; iter < 100 && pass; ++iter) {
    size_t n = static_cast<size_t>(rng.uniform_int(2, 64));
    auto adv = compute_advantages(std::vector<double>(n, 2.2 * rng.uniform_double()));
    for (double v : adv) {
      if (v != 0.0) pass = false;
    }
  }
  double elapsed = timer.seconds();
  pass = pass && elapsed < 5.0;
  report(3, "advantage normalization over 10^4 random groups", pass, fmt(elapsed) + "s");
}

// ---- criterion 4: analytic gradient vs finite differences ------------------

struct FdInstance {
  ResponseGroup group;
  GrpoConfig cfg;
  std::vector<double> theta;
  std::vector<double> base_logp;
  std::vector<std::vector<double>> dlogp;

  void refresh_logp() {
    size_t n = base_logp.size();
    group.logp_current.resize(n);
    for (size_t i = 0; i < n; ++i) {
      double v = base_logp[i];
      for (size_t j = 0; j < theta.size(); ++j) v += dlogp[i][j] * theta[j];
      group.logp_current[i] = v;
    }
  }
};

void criterion_4() {
  Timer timer;
  Rng rng(444);
  const double h = 1e-5;
  double max_rel_err = 0.0;
  int tested = 0;
  while (tested < 100) {
    size_t n = 8;
    size_t dim = static_cast<size_t>(rng.uniform_int(1, 64));
    FdInstance inst;
    inst.cfg.clip_eps = 0.2;
    inst.cfg.beta = (rng.uniform_double() < 0.5) ? 0.0 : 0.4 * rng.uniform_double();
    inst.cfg.group_size = static_cast<int64_t>(n);
    inst.theta.assign(dim, 0.0);
    for (auto& t : inst.theta) t = 0.2 * (rng.uniform_double() - 0.5);
    inst.base_logp.resize(n);
    inst.dlogp.assign(n, std::vector<double>(dim));
    inst.group.rewards.resize(n);
    inst.group.logp_old.resize(n);
    inst.group.logp_ref.resize(n);
    inst.group.advantages.resize(n);
    for (size_t i = 0; i < n; ++i) {
      inst.base_logp[i] = -4.0 - 3.0 * rng.uniform_double();
      for (auto& g : inst.dlogp[i]) g = 2.0 * (rng.uniform_double() - 0.5);
      inst.group.rewards[i] = 2.2 * rng.uniform_double();
      inst.group.logp_old[i] = inst.base_logp[i] - 0.3 + 0.6 * rng.uniform_double();
      inst.group.logp_ref[i] = inst.base_logp[i] - 0.5 + rng.uniform_double();
      inst.group.advantages[i] = 3.0 * (rng.uniform_double() - 0.5);
    }
    inst.refresh_logp();

    // finite differences are meaningless at the clip kink; resample
    bool near_kink = false;
    for (size_t i = 0; i < n; ++i) {
      double s1 = std::exp(inst.group.logp_current[i] - inst.group.logp_old[i]);
      if (std::abs(s1 - 0.8) < 1e-3 || std::abs(s1 - 1.2) < 1e-3) near_kink = true;
    }
    if (near_kink) continue;
    ++tested;

    auto analytic = grpo_gradient(inst.group, inst.cfg, inst.dlogp, dim);
    for (size_t j = 0; j < dim; ++j) {
      FdInstance plus = inst;
      plus.theta[j] += h;
      plus.refresh_logp();
      FdInstance minus = inst;
      minus.theta[j] -= h;
      minus.refresh_logp();
      double fd = (grpo_objective(plus.group, plus.cfg) -
                   grpo_objective(minus.group, minus.cfg)) /
                  (2.0 * h);
      double rel = std::abs(analytic[j] - fd) / std::max({1e-3, std::abs(analytic[j]), std::abs(fd)});
      max_rel_err = std::max(max_rel_err, rel);
    }
  }
  double elapsed = timer.seconds();
  bool pass = max_rel_err < 1e-4 && elapsed < 30.0;
  report(4, "objective gradient vs central finite differences", pass,
         "max_rel_err=" + fmt(max_rel_err) + " " + fmt(elapsed) + "s");
}

// ---- criterion 5: KL estimator ----------------------------------------------

void criterion_5() {
  Rng rng(555);
  bool pass = true;
  for (int iter = 0; iter < 100000 && pass; ++iter) {
    double a = -12.0 * rng.uniform_double();
    double b = -12.0 * rng.uniform_double();
    double kl = kl_estimate(a, b);
    if (!(kl >= 0.0) || !std::isfinite(kl)) pass = false;
    if (std::abs(a - b) < 1e-12 && kl > 1e-12) pass = false;
    if (std::abs(a - b) > 1e-6 && !(kl > 0.0)) pass = false;
  }
  for (int iter = 0; iter < 1000 && pass; ++iter) {
    double a = -12.0 * rng.uniform_double();
    if (kl_estimate(a, a) != 0.0) pass = false;
  }
  report(5, "KL estimator nonnegative, zero iff equal", pass, "10^5 pairs");
}

// ---- criterion 6: toy learning ----------------------------------------------

double window_mean(const std::vector<TrainRecord>& records, size_t begin, size_t end,
                   double TrainRecord::*field) {
  double sum = 0.0;
  for (size_t i = begin; i < end; ++i) sum += records[i].*field;
  return sum / static_cast<double>(end - begin);
}

void criterion_6() {
  Timer timer;
  EnvConfig env;  // c_max 30, noise 2
  RewardConfig reward;  // alpha 0.2
  GrpoConfig grpo;      // group size 8
  int reward_up = 0;
  int mae_halved = 0;
  std::ostringstream detail;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    TrainerConfig cfg;
    cfg.steps = 500;
    cfg.seed = seed;
    TrainResult result = train(env, reward, grpo, cfg);
    double first_reward = window_mean(result.trajectory, 0, 50, &TrainRecord::mean_total_reward);
    double last_reward =
        window_mean(result.trajectory, 450, 500, &TrainRecord::mean_total_reward);
    double first_mae = window_mean(result.trajectory, 0, 50, &TrainRecord::mae);
    double last_mae = window_mean(result.trajectory, 450, 500, &TrainRecord::mae);
    if (last_reward > first_reward) ++reward_up;
    if (last_mae < 0.5 * first_mae) ++mae_halved;
    detail << "s" << seed << ": r " << fmt(first_reward) << "->" << fmt(last_reward) << ", mae "
           << fmt(first_mae) << "->" << fmt(last_mae) << "; ";
  }
  double elapsed = timer.seconds();
  bool pass = reward_up >= 4 && mae_halved >= 4 && elapsed < 120.0;
  report(6, "toy learning improves reward and halves MAE on >= 4/5 seeds", pass,
         detail.str() + fmt(elapsed) + "s");
}

// ---- criterion 7: ablation ordering -----------------------------------------

void criterion_7() {
  Timer timer;
  EnvConfig env;
  RewardConfig reward;
  GrpoConfig grpo;
  TrainerConfig train_cfg;
  train_cfg.steps = 500;
  std::vector<double> alphas = {0.0, 0.2, 0.4, 1.0};
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  auto cells = ablate_alpha(alphas, seeds, env, reward, grpo, train_cfg);

  std::ostringstream detail;
  double mean_by_alpha[4] = {};
  bool all_ok = true;
  for (size_t ai = 0; ai < alphas.size(); ++ai) {
    double sum = 0.0;
    for (size_t si = 0; si < seeds.size(); ++si) {
      const auto& cell = cells[ai * seeds.size() + si];
      if (!cell.ok) all_ok = false;
      sum += cell.final_mae;
    }
    mean_by_alpha[ai] = sum / static_cast<double>(seeds.size());
    detail << "alpha=" << fmt(alphas[ai]) << ": mean_final_mae=" << fmt(mean_by_alpha[ai]) << "; ";
  }
  bool pass = all_ok && mean_by_alpha[1] <= mean_by_alpha[3];
  report(7, "alpha sweep: mean final MAE at 0.2 <= at 1.0", pass,
         detail.str() + fmt(timer.seconds()) + "s");
}

// ---- criterion 8: metrics ----------------------------------------------------

void criterion_8() {
  std::vector<PredictionRecord> fixture(2);
  fixture[0] = {.id = "a", .predicted = 5, .gt = 4, .category = {}};
  fixture[1] = {.id = "b", .predicted = 7, .gt = 10, .category = {}};
  bool pass = std::abs(mae(fixture) - 2.0) < 1e-9 &&
              std::abs(rmse(fixture) - std::sqrt(5.0)) < 1e-9;

  Rng rng(888);
  for (int iter = 0; iter < 10000 && pass; ++iter) {
    size_t n = static_cast<size_t>(rng.uniform_int(1, 50));
    std::vector<PredictionRecord> records(n);
    for (size_t i = 0; i < n; ++i) {
      records[i].id = std::to_string(i);
      records[i].predicted = rng.uniform_int(0, 80);
      records[i].gt = rng.uniform_int(0, 80);
    }
    if (rmse(records) < mae(records) - 1e-12) pass = false;
  }
  report(8, "MAE/RMSE fixtures and rmse >= mae property", pass, "10^4 random files");
}

// ---- criterion 9: CLI determinism --------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_9(const char* cli) {
  if (!cli) {
    report(9, "train-toy reruns are byte-identical", false, "CLI path not supplied");
    return;
  }
  fs::path dir = fs::temp_directory_path() / ("tra_accept_" + std::to_string(getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  // Identical invocation twice: the emitted manifests must match, and so must
  // every output they cover.
  std::string cmd = std::string(cli) + " train-toy --out-dir " + dir.string() +
                    " --steps 120 --seed 7 --c-max 12 > /dev/null 2>&1";
  bool pass = true;
  std::string first_traj, first_policy, first_manifest;
  for (int attempt = 0; attempt < 2; ++attempt) {
    int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) != 0) pass = false;
    if (attempt == 0) {
      first_traj = slurp(dir / "trajectory.jsonl");
      first_policy = slurp(dir / "policy.json");
      first_manifest = slurp(dir / "manifest.json");
      fs::remove(dir / "trajectory.jsonl");
      fs::remove(dir / "policy.json");
      fs::remove(dir / "manifest.json");
    }
  }
  pass = pass && !first_traj.empty() && first_traj == slurp(dir / "trajectory.jsonl") &&
         first_policy == slurp(dir / "policy.json") &&
         first_manifest == slurp(dir / "manifest.json");
  fs::remove_all(dir);
  report(9, "train-toy reruns are byte-identical", pass, "");
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argc > 1 ? argv[1] : nullptr);
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
