#include "tra/tra.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "grpo.hpp"
#include "metrics.hpp"
#include "response_parser.hpp"
#include "reward.hpp"
#include "toy_env.hpp"

namespace {

thread_local std::string g_last_error;

tra_status fail(tra_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

// Runs `fn`, translating core exceptions into status codes.
template <typename Fn>
tra_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TRA_OK;
  } catch (const tra::ConfigError& e) {
    return fail(TRA_ERR_INVALID_CONFIG, e.what());
  } catch (const tra::NumericError& e) {
    return fail(TRA_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TRA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TRA_ERR_INTERNAL, e.what());
  }
}

tra::RewardConfig to_core(const tra_reward_config& c) {
  return {.alpha = c.alpha, .k = c.k, .rel_tolerance = c.rel_tolerance, .guard_eps = c.guard_eps};
}

tra::GrpoConfig to_core(const tra_grpo_config& c) {
  return {.clip_eps = c.clip_eps, .beta = c.beta, .group_size = c.group_size};
}

tra::EnvConfig to_core(const tra_env_config& c) {
  return {.c_max = c.c_max,
          .noise = c.noise,
          .halfwidth_max = c.halfwidth_max,
          .p_malformed = c.p_malformed};
}

tra::TrainerConfig to_core(const tra_train_config& c) {
  return {.steps = c.steps, .learning_rate = c.learning_rate, .seed = c.seed};
}

tra_reward_breakdown to_c(const tra::StructuredResponse& resp, const tra::RewardBreakdown& b) {
  tra_reward_breakdown out{};
  out.well_formed = resp.well_formed ? 1 : 0;
  out.range_low = resp.well_formed ? resp.range_low : 0;
  out.range_up = resp.well_formed ? resp.range_up : 0;
  out.answer = resp.well_formed ? resp.answer : 0;
  out.r_format = b.r_format;
  out.r_range = b.r_range;
  out.r_ans = b.r_ans;
  out.r_acc = b.r_acc;
  out.r_total = b.r_total;
  return out;
}

}  // namespace

struct tra_trainer {
  tra::ToyTrainer impl;
};

extern "C" {

const char* tra_version(void) { return "0.1.0"; }

const char* tra_status_name(tra_status status) {
  switch (status) {
    case TRA_OK: return "TRA_OK";
    case TRA_ERR_INVALID_ARGUMENT: return "TRA_ERR_INVALID_ARGUMENT";
    case TRA_ERR_INVALID_CONFIG: return "TRA_ERR_INVALID_CONFIG";
    case TRA_ERR_NUMERIC: return "TRA_ERR_NUMERIC";
    case TRA_ERR_INTERNAL: return "TRA_ERR_INTERNAL";
  }
  return "TRA_ERR_UNKNOWN";
}

const char* tra_last_error(void) { return g_last_error.c_str(); }

void tra_free(void* ptr) { std::free(ptr); }

void tra_reward_config_init(tra_reward_config* cfg) {
  if (!cfg) return;
  tra::RewardConfig d;
  *cfg = {d.alpha, d.k, d.rel_tolerance, d.guard_eps};
}

void tra_grpo_config_init(tra_grpo_config* cfg) {
  if (!cfg) return;
  tra::GrpoConfig d;
  *cfg = {d.clip_eps, d.beta, d.group_size};
}

void tra_env_config_init(tra_env_config* cfg) {
  if (!cfg) return;
  tra::EnvConfig d;
  *cfg = {d.c_max, d.noise, d.halfwidth_max, d.p_malformed};
}

void tra_train_config_init(tra_train_config* cfg) {
  if (!cfg) return;
  tra::TrainerConfig d;
  *cfg = {d.steps, d.learning_rate, d.seed};
}

tra_status tra_score_response(const char* text, int64_t gt_count, const tra_reward_config* cfg,
                              tra_reward_breakdown* out) {
  if (!text || !cfg || !out) return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  if (gt_count < 0) return fail(TRA_ERR_INVALID_ARGUMENT, "gt_count must be >= 0");
  return guarded([&] {
    tra::RewardConfig core_cfg = to_core(*cfg);
    tra::validate(core_cfg);
    tra::StructuredResponse resp = tra::parse_response(text);
    *out = to_c(resp, tra::score_parsed(resp, gt_count, core_cfg));
  });
}

tra_status tra_score_group(const char* const* texts, int64_t n, int64_t gt_count,
                           const tra_reward_config* cfg, tra_reward_breakdown* breakdowns,
                           double* advantages) {
  if (!texts || !cfg || !breakdowns || !advantages)
    return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  if (n < 2) return fail(TRA_ERR_INVALID_ARGUMENT, "group needs at least 2 responses");
  if (gt_count < 0) return fail(TRA_ERR_INVALID_ARGUMENT, "gt_count must be >= 0");
  return guarded([&] {
    tra::RewardConfig core_cfg = to_core(*cfg);
    tra::validate(core_cfg);
    std::vector<double> totals(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      if (!texts[i]) throw std::invalid_argument("null response text at index " + std::to_string(i));
      tra::StructuredResponse resp = tra::parse_response(texts[i]);
      tra::RewardBreakdown b = tra::score_parsed(resp, gt_count, core_cfg);
      breakdowns[i] = to_c(resp, b);
      totals[static_cast<size_t>(i)] = b.r_total;
    }
    auto adv = tra::compute_advantages(totals);
    std::copy(adv.begin(), adv.end(), advantages);
  });
}

tra_status tra_compute_advantages(const double* rewards, int64_t n, double* advantages) {
  if (!rewards || !advantages) return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto adv = tra::compute_advantages(std::span<const double>(rewards, static_cast<size_t>(n < 0 ? 0 : n)));
    std::copy(adv.begin(), adv.end(), advantages);
  });
}

tra_status tra_kl_estimate(double logp_current, double logp_ref, double* out) {
  if (!out) return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  *out = tra::kl_estimate(logp_current, logp_ref);
  g_last_error.clear();
  return TRA_OK;
}

tra_status tra_evaluate(const int64_t* predicted, const uint8_t* missing, const int64_t* gt,
                        int64_t n, int32_t binary, tra_eval_report* out) {
  if (!predicted || !gt || !out) return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  if (n < 1) return fail(TRA_ERR_INVALID_ARGUMENT, "need at least one record");
  return guarded([&] {
    std::vector<tra::PredictionRecord> records(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      auto& rec = records[static_cast<size_t>(i)];
      rec.id = std::to_string(i);
      rec.gt = gt[i];
      if (!missing || !missing[i]) rec.predicted = predicted[i];
    }
    tra::EvalReport report = tra::evaluate(records, binary != 0);
    *out = {report.count,
            report.mae,
            report.rmse,
            report.accuracy.value_or(0.0),
            report.accuracy.has_value() ? 1 : 0,
            report.malformed_count};
  });
}

tra_status tra_trainer_create(const tra_env_config* env, const tra_reward_config* reward,
                              const tra_grpo_config* grpo, const tra_train_config* train,
                              tra_trainer** out) {
  if (!env || !reward || !grpo || !train || !out)
    return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new tra_trainer{
        tra::ToyTrainer(to_core(*env), to_core(*reward), to_core(*grpo), to_core(*train))};
  });
}

tra_status tra_trainer_step(tra_trainer* trainer, tra_train_record* record) {
  if (!trainer || !record) return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    tra::TrainRecord r = trainer->impl.step();
    *record = {r.step, r.mean_total_reward, r.mean_r_ans, r.mean_r_range, r.format_rate, r.mae};
  });
}

tra_status tra_trainer_policy_json(const tra_trainer* trainer, char** json_out) {
  if (!trainer || !json_out) return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  *json_out = nullptr;
  return guarded([&] {
    const tra::ToyCountingPolicy& policy = trainer->impl.policy();
    nlohmann::json doc;
    doc["c_max"] = trainer->impl.env().c_max;
    doc["halfwidth_max"] = trainer->impl.env().halfwidth_max;
    doc["p_malformed"] = policy.p_malformed();
    doc["bucket_count"] = policy.bucket_count();
    auto params = policy.params();
    nlohmann::json answer_rows = nlohmann::json::array();
    nlohmann::json width_rows = nlohmann::json::array();
    for (int64_t b = 0; b < policy.bucket_count(); ++b) {
      nlohmann::json row = nlohmann::json::array();
      for (int64_t a = 0; a < policy.answer_count(); ++a) row.push_back(params[policy.answer_index(b, a)]);
      answer_rows.push_back(std::move(row));
      nlohmann::json wrow = nlohmann::json::array();
      for (int64_t w = 0; w < policy.halfwidth_count(); ++w)
        wrow.push_back(params[policy.halfwidth_index(b, w)]);
      width_rows.push_back(std::move(wrow));
    }
    doc["logits_answer"] = std::move(answer_rows);
    doc["logits_halfwidth"] = std::move(width_rows);
    std::string text = doc.dump(2);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *json_out = buf;
  });
}

void tra_trainer_destroy(tra_trainer* trainer) { delete trainer; }

tra_status tra_ablate(const double* alphas, int64_t n_alphas, const uint64_t* seeds,
                      int64_t n_seeds, const tra_env_config* env, const tra_reward_config* reward,
                      const tra_grpo_config* grpo, const tra_train_config* train,
                      tra_ablation_cell* cells) {
  if (!alphas || !seeds || !env || !reward || !grpo || !train || !cells)
    return fail(TRA_ERR_INVALID_ARGUMENT, "null argument");
  if (n_alphas < 1 || n_seeds < 1)
    return fail(TRA_ERR_INVALID_ARGUMENT, "need at least one alpha and one seed");
  return guarded([&] {
    auto result = tra::ablate_alpha(std::span<const double>(alphas, static_cast<size_t>(n_alphas)),
                                    std::span<const uint64_t>(seeds, static_cast<size_t>(n_seeds)),
                                    to_core(*env), to_core(*reward), to_core(*grpo),
                                    to_core(*train));
    for (size_t i = 0; i < result.size(); ++i) {
      tra_ablation_cell& cell = cells[i];
      cell.alpha = result[i].alpha;
      cell.seed = result[i].seed;
      cell.final_mae = result[i].final_mae;
      cell.final_mean_reward = result[i].final_mean_reward;
      cell.ok = result[i].ok ? 1 : 0;
      std::snprintf(cell.error, sizeof(cell.error), "%s", result[i].error.c_str());
    }
  });
}

}  // extern "C"
