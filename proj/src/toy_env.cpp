#include "toy_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "errors.hpp"
#include "response_parser.hpp"

namespace tra {

void validate(const EnvConfig& cfg) {
  if (cfg.c_max < 1) throw ConfigError("c_max must be >= 1");
  if (cfg.noise < 0) throw ConfigError("noise must be >= 0");
  if (cfg.halfwidth_max < 0) throw ConfigError("halfwidth_max must be >= 0");
  if (!(cfg.p_malformed >= 0.0) || !(cfg.p_malformed < 1.0))
    throw ConfigError("p_malformed must be in [0, 1)");
}

void validate(const TrainerConfig& cfg) {
  if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
  if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate))
    throw ConfigError("learning_rate must be finite and >= 0");
}

SyntheticTask sample_task(Rng& task_stream, const EnvConfig& cfg, int64_t task_id) {
  SyntheticTask task;
  task.task_id = task_id;
  task.gt_count = task_stream.uniform_int(0, cfg.c_max);
  int64_t jitter = cfg.noise > 0 ? task_stream.uniform_int(-cfg.noise, cfg.noise) : 0;
  task.observation = std::clamp<int64_t>(task.gt_count + jitter, 0, cfg.c_max);
  return task;
}

ToyCountingPolicy::ToyCountingPolicy(const EnvConfig& cfg)
    : c_max_(cfg.c_max), w_max_(cfg.halfwidth_max), p_malformed_(cfg.p_malformed) {
  validate(cfg);
  params_.assign(static_cast<size_t>(bucket_count()) *
                     static_cast<size_t>(answer_count() + halfwidth_count()),
                 0.0);
}

int64_t ToyCountingPolicy::bucket_of(int64_t observation) const {
  return std::clamp<int64_t>(observation, 0, c_max_);
}

size_t ToyCountingPolicy::answer_index(int64_t bucket, int64_t answer) const {
  return static_cast<size_t>(bucket * answer_count() + answer);
}

size_t ToyCountingPolicy::halfwidth_index(int64_t bucket, int64_t halfwidth) const {
  return static_cast<size_t>(bucket_count() * answer_count() + bucket * halfwidth_count() +
                             halfwidth);
}

std::vector<double> ToyCountingPolicy::softmax_row(size_t offset, int64_t len) const {
  std::vector<double> probs(static_cast<size_t>(len));
  double max_logit = params_[offset];
  for (int64_t i = 1; i < len; ++i) max_logit = std::max(max_logit, params_[offset + i]);
  double sum = 0.0;
  for (int64_t i = 0; i < len; ++i) {
    probs[static_cast<size_t>(i)] = std::exp(params_[offset + i] - max_logit);
    sum += probs[static_cast<size_t>(i)];
  }
  for (auto& p : probs) p /= sum;
  return probs;
}

double ToyCountingPolicy::log_softmax_at(size_t offset, int64_t len, int64_t index) const {
  double max_logit = params_[offset];
  for (int64_t i = 1; i < len; ++i) max_logit = std::max(max_logit, params_[offset + i]);
  double sum = 0.0;
  for (int64_t i = 0; i < len; ++i) sum += std::exp(params_[offset + i] - max_logit);
  return params_[offset + index] - max_logit - std::log(sum);
}

ToyCountingPolicy::Action ToyCountingPolicy::sample_action(int64_t observation, Rng& rng) const {
  Action action;
  if (rng.uniform_double() < p_malformed_) {
    action.malformed = true;
    return action;
  }
  int64_t bucket = bucket_of(observation);
  action.answer = rng.categorical(softmax_row(answer_index(bucket, 0), answer_count()));
  action.halfwidth = rng.categorical(softmax_row(halfwidth_index(bucket, 0), halfwidth_count()));
  return action;
}

double ToyCountingPolicy::logp(const Action& action, int64_t observation) const {
  if (action.malformed) return std::log(p_malformed_);
  int64_t bucket = bucket_of(observation);
  return std::log1p(-p_malformed_) +
         log_softmax_at(answer_index(bucket, 0), answer_count(), action.answer) +
         log_softmax_at(halfwidth_index(bucket, 0), halfwidth_count(), action.halfwidth);
}

void ToyCountingPolicy::logp_grad(const Action& action, int64_t observation,
                                  std::span<double> out) const {
  if (out.size() != params_.size()) throw std::invalid_argument("gradient buffer size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  if (action.malformed) return;  // p_malformed is fixed, not a parameter
  int64_t bucket = bucket_of(observation);

  auto answer_probs = softmax_row(answer_index(bucket, 0), answer_count());
  for (int64_t a = 0; a < answer_count(); ++a) {
    out[answer_index(bucket, a)] =
        (a == action.answer ? 1.0 : 0.0) - answer_probs[static_cast<size_t>(a)];
  }
  auto width_probs = softmax_row(halfwidth_index(bucket, 0), halfwidth_count());
  for (int64_t w = 0; w < halfwidth_count(); ++w) {
    out[halfwidth_index(bucket, w)] =
        (w == action.halfwidth ? 1.0 : 0.0) - width_probs[static_cast<size_t>(w)];
  }
}

std::string ToyCountingPolicy::render(const Action& action, int64_t observation) const {
  std::string think = "obs=" + std::to_string(observation);
  if (action.malformed) {
    // Missing range and answer blocks: fails the format check by design.
    return "<think>" + think + "</think>";
  }
  int64_t low = std::max<int64_t>(0, action.answer - action.halfwidth);
  int64_t up = action.answer + action.halfwidth;
  return to_canonical_text(think, low, up, action.answer);
}

GroupSample sample_group(const ToyCountingPolicy& policy, const SyntheticTask& task, int64_t n,
                         Rng& stream) {
  if (n < 2) throw std::invalid_argument("group size must be >= 2");
  GroupSample out;
  out.actions.reserve(static_cast<size_t>(n));
  out.texts.reserve(static_cast<size_t>(n));
  out.logp.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    auto action = policy.sample_action(task.observation, stream);
    out.texts.push_back(policy.render(action, task.observation));
    out.logp.push_back(policy.logp(action, task.observation));
    out.actions.push_back(action);
  }
  return out;
}

ToyTrainer::ToyTrainer(const EnvConfig& env, const RewardConfig& reward, const GrpoConfig& grpo,
                       const TrainerConfig& train)
    : ToyTrainer(env, reward, grpo, train, ToyCountingPolicy(env)) {}

ToyTrainer::ToyTrainer(const EnvConfig& env, const RewardConfig& reward, const GrpoConfig& grpo,
                       const TrainerConfig& train, ToyCountingPolicy initial_policy)
    : env_(env),
      reward_(reward),
      grpo_(grpo),
      train_(train),
      policy_(std::move(initial_policy)),
      ref_policy_(policy_),
      task_stream_(derive_stream(train.seed, "task")) {
  validate(env_);
  validate(reward_);
  validate(grpo_);
  validate(train_);
}

TrainRecord ToyTrainer::step() {
  SyntheticTask task = sample_task(task_stream_, env_, step_);
  Rng sample_stream(derive_stream(train_.seed, "sample", static_cast<uint64_t>(step_)));
  int64_t n = grpo_.group_size;
  GroupSample samples = sample_group(policy_, task, n, sample_stream);

  ResponseGroup group;
  group.query_id = std::to_string(task.task_id);
  group.logp_old = samples.logp;
  // Single inner epoch: the update is computed on the sampling policy itself,
  // so current and old log-probabilities coincide and every ratio is 1.
  group.logp_current = samples.logp;
  group.rewards.reserve(static_cast<size_t>(n));
  group.logp_ref.reserve(static_cast<size_t>(n));

  std::vector<RewardBreakdown> breakdowns;
  breakdowns.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    breakdowns.push_back(score_response(samples.texts[static_cast<size_t>(i)], task.gt_count, reward_));
    group.rewards.push_back(breakdowns.back().r_total);
    group.logp_ref.push_back(ref_policy_.logp(samples.actions[static_cast<size_t>(i)], task.observation));
  }
  group.advantages = compute_advantages(group.rewards);

  std::vector<std::vector<double>> dlogp(static_cast<size_t>(n),
                                         std::vector<double>(policy_.param_count(), 0.0));
  for (int64_t i = 0; i < n; ++i) {
    policy_.logp_grad(samples.actions[static_cast<size_t>(i)], task.observation,
                      dlogp[static_cast<size_t>(i)]);
  }
  auto grad = grpo_gradient(group, grpo_, dlogp, policy_.param_count());
  for (double g : grad) {
    if (!std::isfinite(g))
      throw NumericError("non-finite gradient at step " + std::to_string(step_));
  }
  auto params = policy_.params();
  for (size_t j = 0; j < params.size(); ++j) params[j] += train_.learning_rate * grad[j];

  TrainRecord record;
  record.step = step_;
  int64_t well_formed = 0;
  double abs_err = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const auto& b = breakdowns[static_cast<size_t>(i)];
    record.mean_total_reward += b.r_total;
    record.mean_r_ans += b.r_ans;
    record.mean_r_range += b.r_range;
    record.format_rate += b.r_format;
    if (!samples.actions[static_cast<size_t>(i)].malformed) {
      ++well_formed;
      abs_err += std::abs(static_cast<double>(samples.actions[static_cast<size_t>(i)].answer -
                                              task.gt_count));
    }
  }
  double dn = static_cast<double>(n);
  record.mean_total_reward /= dn;
  record.mean_r_ans /= dn;
  record.mean_r_range /= dn;
  record.format_rate /= dn;
  // With no well-formed sample in the group there is no answer to score;
  // charge the error of the implicit zero prediction.
  record.mae = well_formed > 0 ? abs_err / static_cast<double>(well_formed)
                               : static_cast<double>(task.gt_count);
  ++step_;
  return record;
}

TrainResult train(const EnvConfig& env, const RewardConfig& reward, const GrpoConfig& grpo,
                  const TrainerConfig& train_cfg) {
  ToyTrainer trainer(env, reward, grpo, train_cfg);
  TrainResult result{.trajectory = {}, .final_policy = ToyCountingPolicy(env)};
  result.trajectory.reserve(static_cast<size_t>(train_cfg.steps));
  for (int64_t s = 0; s < train_cfg.steps; ++s) result.trajectory.push_back(trainer.step());
  result.final_policy = trainer.policy();
  return result;
}

namespace {

double trailing_mean(const std::vector<TrainRecord>& trajectory, double TrainRecord::*field) {
  int64_t window = std::min<int64_t>(kSummaryWindow, static_cast<int64_t>(trajectory.size()));
  double sum = 0.0;
  for (size_t i = trajectory.size() - static_cast<size_t>(window); i < trajectory.size(); ++i) {
    sum += trajectory[i].*field;
  }
  return sum / static_cast<double>(window);
}

}  // namespace

std::vector<AblationCell> ablate_alpha(std::span<const double> alphas,
                                       std::span<const uint64_t> seeds, const EnvConfig& env,
                                       const RewardConfig& reward_base, const GrpoConfig& grpo,
                                       const TrainerConfig& train_base) {
  if (alphas.empty() || seeds.empty())
    throw std::invalid_argument("ablation needs at least one alpha and one seed");
  std::vector<AblationCell> cells;
  cells.reserve(alphas.size() * seeds.size());
  for (double alpha : alphas) {
    for (uint64_t seed : seeds) {
      AblationCell cell;
      cell.alpha = alpha;
      cell.seed = seed;
      RewardConfig reward = reward_base;
      reward.alpha = alpha;
      TrainerConfig train_cfg = train_base;
      train_cfg.seed = seed;
      try {
        TrainResult result = train(env, reward, grpo, train_cfg);
        cell.final_mae = trailing_mean(result.trajectory, &TrainRecord::mae);
        cell.final_mean_reward = trailing_mean(result.trajectory, &TrainRecord::mean_total_reward);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace tra
