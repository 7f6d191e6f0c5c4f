#ifndef TRA_GRPO_HPP_
#define TRA_GRPO_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tra {

struct GrpoConfig {
  double clip_eps = 0.2;   // half-width of the importance-ratio clip window
  double beta = 0.04;      // weight of the KL penalty
  int64_t group_size = 8;  // responses sampled per query
};

// Throws ConfigError unless clip_eps in (0, 1), beta >= 0, group_size >= 2.
void validate(const GrpoConfig& cfg);

// N sampled responses to one query, with sequence-level log-probabilities
// under the policy being optimized, the sampling-time policy and the fixed
// reference policy.
struct ResponseGroup {
  std::string query_id;
  std::vector<double> rewards;
  std::vector<double> logp_current;
  std::vector<double> logp_old;
  std::vector<double> logp_ref;
  std::vector<double> advantages;  // populated by compute_advantages
};

// Group-normalized advantages: (r_i - mean) / population std. A group whose
// population std is below 1e-12 carries no ranking signal and maps to the
// all-zero vector. Throws std::invalid_argument for fewer than 2 rewards.
std::vector<double> compute_advantages(std::span<const double> rewards);

// Nonnegative KL estimate x - log(x) - 1 with x = exp(logp_ref - logp_current).
// The exponent is clamped at an internal bound so the result stays finite;
// pass `clamped` to learn whether the clamp fired.
double kl_estimate(double logp_current, double logp_ref, bool* clamped = nullptr) noexcept;

struct GrpoDiagnostics {
  int64_t kl_clamped = 0;  // KL terms whose exponent hit the clamp
};

// Clipped surrogate objective with KL regularization:
//   (1/N) * sum_i min(s1_i*A_i, s2_i*A_i) - beta*kl_i
// with s1_i = exp(logp_current_i - logp_old_i) and s2_i = clip(s1_i,
// 1-clip_eps, 1+clip_eps). Throws std::invalid_argument when advantages are
// unpopulated or vector lengths disagree.
double grpo_objective(const ResponseGroup& group, const GrpoConfig& cfg,
                      GrpoDiagnostics* diag = nullptr);

// Exact gradient of grpo_objective with respect to policy parameters, given
// d(logp_current_i)/d(params) for every response. logp_old, logp_ref and
// advantages are treated as constants; where the min selects the clipped term
// and clipping is active, that term contributes zero gradient.
std::vector<double> grpo_gradient(const ResponseGroup& group, const GrpoConfig& cfg,
                                  std::span<const std::vector<double>> dlogp_current,
                                  size_t param_dim);

}  // namespace tra

#endif  // TRA_GRPO_HPP_
