#include "grpo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace tra {
namespace {

constexpr double kStdFloor = 1e-12;
constexpr double kKlExpClamp = 700.0;  // exp(700) is still finite

void check_group(const ResponseGroup& group) {
  size_t n = group.rewards.size();
  if (n < 2) throw std::invalid_argument("group must contain at least 2 responses");
  if (group.logp_current.size() != n || group.logp_old.size() != n || group.logp_ref.size() != n)
    throw std::invalid_argument("group log-probability vectors must match reward count");
  if (group.advantages.size() != n)
    throw std::invalid_argument("group advantages are unpopulated; call compute_advantages");
}

}  // namespace

void validate(const GrpoConfig& cfg) {
  if (!(cfg.clip_eps > 0.0) || !(cfg.clip_eps < 1.0)) throw ConfigError("clip_eps must be in (0, 1)");
  if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta)) throw ConfigError("beta must be finite and >= 0");
  if (cfg.group_size < 2) throw ConfigError("group_size must be >= 2");
}

std::vector<double> compute_advantages(std::span<const double> rewards) {
  size_t n = rewards.size();
  if (n < 2) throw std::invalid_argument("compute_advantages needs at least 2 rewards");

  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(n);

  std::vector<double> centered(n);
  for (size_t i = 0; i < n; ++i) centered[i] = rewards[i] - mean;

  // Second centering pass removes the O(eps * |mean|) residual so that the
  // output mean is zero to machine precision even for near-constant inputs.
  double residual = 0.0;
  for (double d : centered) residual += d;
  residual /= static_cast<double>(n);

  double var = 0.0;
  for (size_t i = 0; i < n; ++i) {
    centered[i] -= residual;
    var += centered[i] * centered[i];
  }
  double std_dev = std::sqrt(var / static_cast<double>(n));

  std::vector<double> out(n, 0.0);
  if (std_dev < kStdFloor) return out;  // constant rewards: no ranking signal
  for (size_t i = 0; i < n; ++i) out[i] = centered[i] / std_dev;
  return out;
}

double kl_estimate(double logp_current, double logp_ref, bool* clamped) noexcept {
  double delta = logp_ref - logp_current;
  bool hit = delta > kKlExpClamp;
  if (hit) delta = kKlExpClamp;
  if (clamped) *clamped = hit;
  // x - log(x) - 1 with log(x) = delta exactly; expm1 keeps the result
  // nonnegative down to delta = 0.
  return std::expm1(delta) - delta;
}

double grpo_objective(const ResponseGroup& group, const GrpoConfig& cfg, GrpoDiagnostics* diag) {
  check_group(group);
  size_t n = group.rewards.size();
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double s1 = std::exp(group.logp_current[i] - group.logp_old[i]);
    double s2 = std::clamp(s1, 1.0 - cfg.clip_eps, 1.0 + cfg.clip_eps);
    double a = group.advantages[i];
    bool clamped = false;
    double kl = kl_estimate(group.logp_current[i], group.logp_ref[i], &clamped);
    if (clamped && diag) ++diag->kl_clamped;
    sum += std::min(s1 * a, s2 * a) - cfg.beta * kl;
  }
  return sum / static_cast<double>(n);
}

std::vector<double> grpo_gradient(const ResponseGroup& group, const GrpoConfig& cfg,
                                  std::span<const std::vector<double>> dlogp_current,
                                  size_t param_dim) {
  check_group(group);
  size_t n = group.rewards.size();
  if (dlogp_current.size() != n)
    throw std::invalid_argument("need one log-probability gradient per response");
  for (const auto& g : dlogp_current) {
    if (g.size() != param_dim)
      throw std::invalid_argument("log-probability gradient dimension mismatch");
  }

  std::vector<double> out(param_dim, 0.0);
  double inv_n = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    double s1 = std::exp(group.logp_current[i] - group.logp_old[i]);
    double s2 = std::clamp(s1, 1.0 - cfg.clip_eps, 1.0 + cfg.clip_eps);
    double a = group.advantages[i];
    // d/dlogp of min(s1*A, s2*A): A*s1 on the unclipped branch, 0 where the
    // min selects an actively clipped term.
    double coeff = (s1 * a <= s2 * a) ? a * s1 : 0.0;
    // d/dlogp of -beta*(x - log x - 1) is beta*(x - 1) with
    // x = exp(logp_ref - logp_current); zero in the clamped region where
    // kl_estimate is constant.
    double delta = group.logp_ref[i] - group.logp_current[i];
    coeff += (delta > kKlExpClamp) ? 0.0 : cfg.beta * std::expm1(delta);
    coeff *= inv_n;
    const auto& g = dlogp_current[i];
    for (size_t j = 0; j < param_dim; ++j) out[j] += coeff * g[j];
  }
  return out;
}

}  // namespace tra
