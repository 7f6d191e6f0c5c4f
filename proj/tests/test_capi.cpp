#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "tra/tra.h"

namespace {

const char kFigText[] = "<think>counting</think>\n<range>[15, 20]</range>\n<answer>19</answer>";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(tra_version()) == "0.1.0");
  CHECK(std::string(tra_status_name(TRA_OK)) == "TRA_OK");
  CHECK(std::string(tra_status_name(TRA_ERR_INVALID_CONFIG)) == "TRA_ERR_INVALID_CONFIG");
}

TEST_CASE("config defaults") {
  tra_reward_config reward{};
  tra_reward_config_init(&reward);
  CHECK(reward.alpha == 0.2);
  CHECK(reward.k == 20.0);
  CHECK(reward.rel_tolerance == 0.5);
  CHECK(reward.guard_eps == 1e-6);

  tra_grpo_config grpo{};
  tra_grpo_config_init(&grpo);
  CHECK(grpo.clip_eps == 0.2);
  CHECK(grpo.beta == 0.04);
  CHECK(grpo.group_size == 8);

  tra_env_config env{};
  tra_env_config_init(&env);
  CHECK(env.c_max == 30);
  CHECK(env.noise == 2);
  CHECK(env.p_malformed == 0.1);

  tra_train_config train{};
  tra_train_config_init(&train);
  CHECK(train.steps == 500);
  CHECK(train.seed == 1);
}

TEST_CASE("scoring through the C surface") {
  tra_reward_config cfg{};
  tra_reward_config_init(&cfg);
  tra_reward_breakdown b{};
  REQUIRE(tra_score_response(kFigText, 19, &cfg, &b) == TRA_OK);
  CHECK(b.well_formed == 1);
  CHECK(b.range_low == 15);
  CHECK(b.range_up == 20);
  CHECK(b.answer == 19);
  CHECK(b.r_total == doctest::Approx(2.1358230875111337).epsilon(1e-9));

  REQUIRE(tra_score_response("garbage", 19, &cfg, &b) == TRA_OK);
  CHECK(b.well_formed == 0);
  CHECK(b.r_total == 0.0);

  CHECK(tra_score_response(nullptr, 19, &cfg, &b) == TRA_ERR_INVALID_ARGUMENT);
  CHECK(tra_score_response(kFigText, -1, &cfg, &b) == TRA_ERR_INVALID_ARGUMENT);

  tra_reward_config bad = cfg;
  bad.k = -1.0;
  CHECK(tra_score_response(kFigText, 19, &bad, &b) == TRA_ERR_INVALID_CONFIG);
  CHECK(std::strlen(tra_last_error()) > 0);
}

TEST_CASE("group scoring fills breakdowns and advantages") {
  tra_reward_config cfg{};
  tra_reward_config_init(&cfg);
  std::vector<const char*> texts = {kFigText, "broken", kFigText, "broken"};
  std::vector<tra_reward_breakdown> breakdowns(texts.size());
  std::vector<double> advantages(texts.size());
  REQUIRE(tra_score_group(texts.data(), 4, 19, &cfg, breakdowns.data(), advantages.data()) ==
          TRA_OK);
  CHECK(breakdowns[0].well_formed == 1);
  CHECK(breakdowns[1].well_formed == 0);
  CHECK(advantages[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(advantages[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(advantages[0] + advantages[1] + advantages[2] + advantages[3] ==
        doctest::Approx(0.0).scale(1.0));

  CHECK(tra_score_group(texts.data(), 1, 19, &cfg, breakdowns.data(), advantages.data()) ==
        TRA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("advantages and kl through the C surface") {
  double rewards[4] = {2.0, 1.0, 1.0, 0.0};
  double advantages[4] = {};
  REQUIRE(tra_compute_advantages(rewards, 4, advantages) == TRA_OK);
  CHECK(advantages[0] == doctest::Approx(1.4142135623730951).epsilon(1e-12));
  CHECK(tra_compute_advantages(rewards, 1, advantages) == TRA_ERR_INVALID_ARGUMENT);

  double kl = -1.0;
  REQUIRE(tra_kl_estimate(-2.0, -2.0, &kl) == TRA_OK);
  CHECK(kl == 0.0);
  REQUIRE(tra_kl_estimate(-2.0 - std::log(2.0), -2.0, &kl) == TRA_OK);
  CHECK(kl == doctest::Approx(2.0 - std::log(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("evaluation through the C surface") {
  int64_t predicted[2] = {5, 7};
  int64_t gt[2] = {4, 10};
  tra_eval_report report{};
  REQUIRE(tra_evaluate(predicted, nullptr, gt, 2, 0, &report) == TRA_OK);
  CHECK(report.count == 2);
  CHECK(report.mae == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.rmse == doctest::Approx(2.2360679774997896).epsilon(1e-12));
  CHECK(report.has_accuracy == 0);
  CHECK(report.malformed_count == 0);

  uint8_t missing[2] = {0, 1};
  int64_t gt2[2] = {1, 1};
  int64_t pred2[2] = {1, 9};
  REQUIRE(tra_evaluate(pred2, missing, gt2, 2, 1, &report) == TRA_OK);
  CHECK(report.malformed_count == 1);
  CHECK(report.has_accuracy == 1);
  CHECK(report.accuracy == doctest::Approx(0.5).epsilon(1e-12));  // missing scores as 0 != 1

  int64_t bad_gt[1] = {3};
  CHECK(tra_evaluate(predicted, nullptr, bad_gt, 1, 1, &report) == TRA_ERR_INVALID_ARGUMENT);
  CHECK(tra_evaluate(predicted, nullptr, gt, 0, 0, &report) == TRA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("trainer lifecycle through the C surface") {
  tra_env_config env{};
  tra_env_config_init(&env);
  env.c_max = 8;
  tra_reward_config reward{};
  tra_reward_config_init(&reward);
  tra_grpo_config grpo{};
  tra_grpo_config_init(&grpo);
  tra_train_config train{};
  tra_train_config_init(&train);
  train.steps = 10;
  train.seed = 21;

  tra_trainer* trainer = nullptr;
  REQUIRE(tra_trainer_create(&env, &reward, &grpo, &train, &trainer) == TRA_OK);
  REQUIRE(trainer != nullptr);
  for (int64_t i = 0; i < 10; ++i) {
    tra_train_record record{};
    REQUIRE(tra_trainer_step(trainer, &record) == TRA_OK);
    CHECK(record.step == i);
    CHECK(std::isfinite(record.mean_total_reward));
    CHECK(record.format_rate >= 0.0);
    CHECK(record.format_rate <= 1.0);
  }
  char* policy_json = nullptr;
  REQUIRE(tra_trainer_policy_json(trainer, &policy_json) == TRA_OK);
  REQUIRE(policy_json != nullptr);
  CHECK(std::string(policy_json).find("logits_answer") != std::string::npos);
  tra_free(policy_json);
  tra_trainer_destroy(trainer);

  tra_train_config bad = train;
  bad.steps = 0;
  trainer = nullptr;
  CHECK(tra_trainer_create(&env, &reward, &grpo, &bad, &trainer) == TRA_ERR_INVALID_CONFIG);
  CHECK(trainer == nullptr);
}

TEST_CASE("ablation through the C surface") {
  tra_env_config env{};
  tra_env_config_init(&env);
  env.c_max = 6;
  tra_reward_config reward{};
  tra_reward_config_init(&reward);
  tra_grpo_config grpo{};
  tra_grpo_config_init(&grpo);
  tra_train_config train{};
  tra_train_config_init(&train);
  train.steps = 20;

  double alphas[2] = {0.0, 0.2};
  uint64_t seeds[2] = {1, 2};
  std::vector<tra_ablation_cell> cells(4);
  REQUIRE(tra_ablate(alphas, 2, seeds, 2, &env, &reward, &grpo, &train, cells.data()) == TRA_OK);
  for (const auto& cell : cells) {
    CHECK(cell.ok == 1);
    CHECK(std::isfinite(cell.final_mae));
    CHECK(std::isfinite(cell.final_mean_reward));
  }
  CHECK(cells[0].alpha == 0.0);
  CHECK(cells[0].seed == 1);
  CHECK(cells[3].alpha == 0.2);
  CHECK(cells[3].seed == 2);
}
