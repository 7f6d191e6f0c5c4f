#ifndef TRA_REWARD_HPP_
#define TRA_REWARD_HPP_

#include <cstdint>
#include <string_view>

#include "response_parser.hpp"

namespace tra {

struct RewardConfig {
  double alpha = 0.2;          // weight of the range reward inside r_acc
  double k = 20.0;             // Gaussian sharpness
  double rel_tolerance = 0.5;  // relative-error bound of the validity indicator
  double guard_eps = 1e-6;     // division guard for gt = 0
};

// Throws ConfigError unless alpha >= 0, k > 0, 0 < rel_tolerance <= 1 and
// guard_eps > 0.
void validate(const RewardConfig& cfg);

struct RewardBreakdown {
  double r_format = 0.0;
  double r_range = 0.0;
  double r_ans = 0.0;
  double r_acc = 0.0;   // r_ans + alpha * r_range
  double r_total = 0.0; // r_acc + r_format
};

// 1 iff |pred - gt| / max(gt, guard_eps) < rel_tolerance. The inequality is
// strict; the boundary (e.g. 15 vs 10 at tolerance 0.5) scores 0. For gt > 0
// at the default tolerance the comparison is decided in exact integer
// arithmetic so the boundary never depends on float rounding.
double validity_indicator(int64_t pred, int64_t gt, const RewardConfig& cfg);

// exp(-k * ((y - gt) / max(gt, guard_eps))^2), in [0, 1]. Mathematically
// positive; underflows to 0 for extreme relative errors.
double gaussian_score(int64_t y, int64_t gt, const RewardConfig& cfg);

// 1 iff low <= gt <= up. An inverted interval can never contain gt.
double interval_validity(int64_t low, int64_t up, int64_t gt);

// Valid-interval-gated mean of the two bound scores:
//   I_valid * 1/2 * [ind(low)*gauss(low) + ind(up)*gauss(up)]
// Returns 0 for malformed responses.
double range_reward(const StructuredResponse& resp, int64_t gt, const RewardConfig& cfg);

// ind(answer) * gauss(answer).
double answer_reward(int64_t answer, int64_t gt, const RewardConfig& cfg);

// Scores an already-parsed response. Malformed responses earn 0 everywhere.
RewardBreakdown score_parsed(const StructuredResponse& resp, int64_t gt, const RewardConfig& cfg);

// Parses raw text and scores it.
RewardBreakdown score_response(std::string_view raw, int64_t gt, const RewardConfig& cfg);

}  // namespace tra

#endif  // TRA_REWARD_HPP_
