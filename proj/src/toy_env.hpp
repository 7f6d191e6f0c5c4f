#ifndef TRA_TOY_ENV_HPP_
#define TRA_TOY_ENV_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grpo.hpp"
#include "reward.hpp"
#include "rng.hpp"

namespace tra {

// Synthetic counting task: the ground-truth count is observed through
// symmetric integer noise. Stands in for a query whose true count must be
// inferred from an imperfect observation.
struct EnvConfig {
  int64_t c_max = 30;         // counts live in [0, c_max]
  int64_t noise = 2;          // observation = gt corrupted by +/- noise
  int64_t halfwidth_max = 10; // largest learnable interval halfwidth
  double p_malformed = 0.1;   // fixed chance of emitting a malformed response
};

void validate(const EnvConfig& cfg);

struct SyntheticTask {
  int64_t task_id = 0;
  int64_t gt_count = 0;
  int64_t observation = 0;
};

// gt uniform on [0, c_max]; observation = clamp(gt + U{-noise..noise}, 0, c_max).
SyntheticTask sample_task(Rng& task_stream, const EnvConfig& cfg, int64_t task_id);

// Tabular policy over structured responses. Each observation is its own
// bucket, so log-probabilities and their parameter gradients are exact.
// A response is malformed with fixed probability p_malformed (not learned);
// otherwise an answer a and interval halfwidth w are drawn from per-bucket
// softmax heads and rendered as canonical text with range [max(0, a-w), a+w].
class ToyCountingPolicy {
 public:
  struct Action {
    bool malformed = false;
    int64_t answer = 0;
    int64_t halfwidth = 0;
  };

  explicit ToyCountingPolicy(const EnvConfig& cfg);

  int64_t bucket_count() const { return c_max_ + 1; }
  int64_t answer_count() const { return c_max_ + 1; }
  int64_t halfwidth_count() const { return w_max_ + 1; }
  double p_malformed() const { return p_malformed_; }
  int64_t bucket_of(int64_t observation) const;

  size_t param_count() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  // Flat parameter layout: all answer logits (bucket-major), then all
  // halfwidth logits.
  size_t answer_index(int64_t bucket, int64_t answer) const;
  size_t halfwidth_index(int64_t bucket, int64_t halfwidth) const;

  Action sample_action(int64_t observation, Rng& rng) const;
  // Exact log of the sampling probability of `action` at `observation` under
  // the factorized distribution (malformed indicator x answer x halfwidth).
  double logp(const Action& action, int64_t observation) const;
  // Writes d(logp)/d(params) into `out` (zeroed first). Malformed actions
  // have zero gradient everywhere.
  void logp_grad(const Action& action, int64_t observation, std::span<double> out) const;
  std::string render(const Action& action, int64_t observation) const;

 private:
  std::vector<double> softmax_row(size_t offset, int64_t len) const;
  double log_softmax_at(size_t offset, int64_t len, int64_t index) const;

  int64_t c_max_;
  int64_t w_max_;
  double p_malformed_;
  std::vector<double> params_;
};

struct GroupSample {
  std::vector<ToyCountingPolicy::Action> actions;
  std::vector<std::string> texts;
  std::vector<double> logp;
};

// Draws n responses for one task. Throws std::invalid_argument for n < 2.
GroupSample sample_group(const ToyCountingPolicy& policy, const SyntheticTask& task, int64_t n,
                         Rng& stream);

struct TrainerConfig {
  int64_t steps = 500;
  // Sized for the 500-step budget: each observation bucket is visited only a
  // handful of times, so per-visit logit movement must be large enough to
  // concentrate the softmax heads within one run.
  double learning_rate = 3.5;
  uint64_t seed = 1;
};

void validate(const TrainerConfig& cfg);

struct TrainRecord {
  int64_t step = 0;
  double mean_total_reward = 0.0;
  double mean_r_ans = 0.0;
  double mean_r_range = 0.0;
  double format_rate = 0.0;
  double mae = 0.0;  // |answer - gt| over the step's well-formed samples
};

// One-task-per-step GRPO loop over the synthetic environment. Per step:
// sample a task, sample a group under the pre-update policy (which therefore
// serves as the frozen old policy), score it, normalize advantages within the
// group, and ascend the analytic objective gradient. The reference policy is
// pinned to the initial parameters. Fully deterministic given the seed.
class ToyTrainer {
 public:
  ToyTrainer(const EnvConfig& env, const RewardConfig& reward, const GrpoConfig& grpo,
             const TrainerConfig& train);
  ToyTrainer(const EnvConfig& env, const RewardConfig& reward, const GrpoConfig& grpo,
             const TrainerConfig& train, ToyCountingPolicy initial_policy);

  // Runs one optimization step. Throws NumericError on a non-finite gradient.
  TrainRecord step();
  const ToyCountingPolicy& policy() const { return policy_; }
  const EnvConfig& env() const { return env_; }
  int64_t steps_done() const { return step_; }

 private:
  EnvConfig env_;
  RewardConfig reward_;
  GrpoConfig grpo_;
  TrainerConfig train_;
  ToyCountingPolicy policy_;
  ToyCountingPolicy ref_policy_;
  Rng task_stream_;
  int64_t step_ = 0;
};

struct TrainResult {
  std::vector<TrainRecord> trajectory;
  ToyCountingPolicy final_policy;
};

TrainResult train(const EnvConfig& env, const RewardConfig& reward, const GrpoConfig& grpo,
                  const TrainerConfig& train_cfg);

// Window (in steps, capped by the run length) over which ablation summaries
// average the trailing trajectory records.
inline constexpr int64_t kSummaryWindow = 50;

struct AblationCell {
  double alpha = 0.0;
  uint64_t seed = 0;
  double final_mae = 0.0;         // mean record mae over the trailing window
  double final_mean_reward = 0.0; // mean total reward over the trailing window
  bool ok = false;
  std::string error;
};

// Runs train() for every (alpha, seed) pair, alpha-major, holding everything
// else fixed. A failing cell is recorded and does not abort the sweep.
std::vector<AblationCell> ablate_alpha(std::span<const double> alphas,
                                       std::span<const uint64_t> seeds, const EnvConfig& env,
                                       const RewardConfig& reward_base, const GrpoConfig& grpo,
                                       const TrainerConfig& train_base);

}  // namespace tra

#endif  // TRA_TOY_ENV_HPP_
