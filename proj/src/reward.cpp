#include "reward.hpp"

#include <cmath>
#include <cstdlib>

#include "errors.hpp"

namespace tra {

void validate(const RewardConfig& cfg) {
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha))
    throw ConfigError("alpha must be finite and >= 0");
  if (!(cfg.k > 0.0) || !std::isfinite(cfg.k)) throw ConfigError("k must be finite and > 0");
  if (!(cfg.rel_tolerance > 0.0) || !(cfg.rel_tolerance <= 1.0))
    throw ConfigError("rel_tolerance must be in (0, 1]");
  if (!(cfg.guard_eps > 0.0) || !std::isfinite(cfg.guard_eps))
    throw ConfigError("guard_eps must be finite and > 0");
}

double validity_indicator(int64_t pred, int64_t gt, const RewardConfig& cfg) {
  int64_t diff = pred >= gt ? pred - gt : gt - pred;
  if (gt > 0) {
    // 2*|d| < gt decides the 0.5 boundary exactly in integers.
    if (cfg.rel_tolerance == 0.5) return 2 * diff < gt ? 1.0 : 0.0;
    return static_cast<double>(diff) < cfg.rel_tolerance * static_cast<double>(gt) ? 1.0 : 0.0;
  }
  return static_cast<double>(diff) < cfg.rel_tolerance * cfg.guard_eps ? 1.0 : 0.0;
}

double gaussian_score(int64_t y, int64_t gt, const RewardConfig& cfg) {
  double denom = gt > 0 ? static_cast<double>(gt) : cfg.guard_eps;
  double rel = (static_cast<double>(y) - static_cast<double>(gt)) / denom;
  return std::exp(-cfg.k * rel * rel);
}

double interval_validity(int64_t low, int64_t up, int64_t gt) {
  return (low <= gt && gt <= up) ? 1.0 : 0.0;
}

double range_reward(const StructuredResponse& resp, int64_t gt, const RewardConfig& cfg) {
  if (!resp.well_formed) return 0.0;
  double valid = interval_validity(resp.range_low, resp.range_up, gt);
  if (valid == 0.0) return 0.0;
  double low_term = validity_indicator(resp.range_low, gt, cfg) * gaussian_score(resp.range_low, gt, cfg);
  double up_term = validity_indicator(resp.range_up, gt, cfg) * gaussian_score(resp.range_up, gt, cfg);
  return 0.5 * (low_term + up_term);
}

double answer_reward(int64_t answer, int64_t gt, const RewardConfig& cfg) {
  return validity_indicator(answer, gt, cfg) * gaussian_score(answer, gt, cfg);
}

RewardBreakdown score_parsed(const StructuredResponse& resp, int64_t gt, const RewardConfig& cfg) {
  RewardBreakdown out;
  out.r_format = format_reward(resp);
  if (resp.well_formed) {
    out.r_range = range_reward(resp, gt, cfg);
    out.r_ans = answer_reward(resp.answer, gt, cfg);
    out.r_acc = out.r_ans + cfg.alpha * out.r_range;
  }
  out.r_total = out.r_acc + out.r_format;
  return out;
}

RewardBreakdown score_response(std::string_view raw, int64_t gt, const RewardConfig& cfg) {
  return score_parsed(parse_response(raw), gt, cfg);
}

}  // namespace tra
