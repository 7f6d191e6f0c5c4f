/* tra — reward scoring and group-relative policy optimization for
 * structured think/range/answer count predictions.
 *
 * C-compatible surface over the C++ core. All functions return TRA_OK on
 * success; on failure tra_last_error() describes the problem for the calling
 * thread. Unless noted otherwise, every pointer argument must be non-NULL.
 * Scoring functions are pure and safe to call from any number of threads;
 * a trainer handle must be used from one thread at a time.
 */
#ifndef TRA_TRA_H_
#define TRA_TRA_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tra_status {
  TRA_OK = 0,
  TRA_ERR_INVALID_ARGUMENT = 1,
  TRA_ERR_INVALID_CONFIG = 2,
  TRA_ERR_NUMERIC = 3,
  TRA_ERR_INTERNAL = 4
} tra_status;

/* Library version, e.g. "0.1.0". */
const char* tra_version(void);

/* Symbolic name of a status code, e.g. "TRA_ERR_INVALID_CONFIG". */
const char* tra_status_name(tra_status status);

/* Message for the most recent failure on the calling thread. Valid until the
 * next tra_* call on the same thread. Empty string if nothing failed yet. */
const char* tra_last_error(void);

/* Frees any buffer returned by this library. NULL is a no-op. */
void tra_free(void* ptr);

/* ---- configuration ------------------------------------------------- */

typedef struct tra_reward_config {
  double alpha;         /* weight of the range reward, >= 0 (default 0.2)   */
  double k;             /* Gaussian sharpness, > 0 (default 20)             */
  double rel_tolerance; /* validity bound, in (0, 1] (default 0.5)          */
  double guard_eps;     /* division guard, > 0 (default 1e-6)               */
} tra_reward_config;

typedef struct tra_grpo_config {
  double clip_eps;    /* ratio clip half-width, in (0, 1) (default 0.2)     */
  double beta;        /* KL penalty weight, >= 0 (default 0.04)             */
  int64_t group_size; /* responses per query, >= 2 (default 8)              */
} tra_grpo_config;

typedef struct tra_env_config {
  int64_t c_max;         /* counts in [0, c_max], >= 1 (default 30)         */
  int64_t noise;         /* observation jitter, >= 0 (default 2)            */
  int64_t halfwidth_max; /* largest interval halfwidth, >= 0 (default 10)   */
  double p_malformed;    /* malformed-response rate, [0, 1) (default 0.1)   */
} tra_env_config;

typedef struct tra_train_config {
  int64_t steps;        /* optimization steps, >= 1 (default 500)           */
  double learning_rate; /* plain gradient-ascent step size (default 3.5)    */
  uint64_t seed;        /* master seed for all randomness (default 1)       */
} tra_train_config;

void tra_reward_config_init(tra_reward_config* cfg);
void tra_grpo_config_init(tra_grpo_config* cfg);
void tra_env_config_init(tra_env_config* cfg);
void tra_train_config_init(tra_train_config* cfg);

/* ---- response scoring ----------------------------------------------- */

typedef struct tra_reward_breakdown {
  int32_t well_formed; /* 1 iff the text matched the grammar exactly        */
  int64_t range_low;   /* parsed fields; meaningful only when well_formed   */
  int64_t range_up;
  int64_t answer;
  double r_format; /* 1 for well-formed text, else 0                        */
  double r_range;  /* interval reward in [0, 1]                             */
  double r_ans;    /* answer reward in [0, 1]                               */
  double r_acc;    /* r_ans + alpha * r_range                               */
  double r_total;  /* r_acc + r_format                                      */
} tra_reward_breakdown;

/* Parses and scores one completion against the ground-truth count.
 * Malformed text is a valid outcome (all-zero rewards), not an error. */
tra_status tra_score_response(const char* text, int64_t gt_count, const tra_reward_config* cfg,
                              tra_reward_breakdown* out);

/* Scores n >= 2 completions for one query and fills group-normalized
 * advantages of their total rewards. `breakdowns` and `advantages` must hold
 * n elements. */
tra_status tra_score_group(const char* const* texts, int64_t n, int64_t gt_count,
                           const tra_reward_config* cfg, tra_reward_breakdown* breakdowns,
                           double* advantages);

/* Group-normalized advantages (r - mean) / population std; an all-equal
 * vector maps to all zeros. n >= 2. */
tra_status tra_compute_advantages(const double* rewards, int64_t n, double* advantages);

/* Nonnegative KL estimate x - log(x) - 1 with x = exp(logp_ref - logp_current). */
tra_status tra_kl_estimate(double logp_current, double logp_ref, double* out);

/* ---- counting metrics ------------------------------------------------ */

typedef struct tra_eval_report {
  int64_t count;
  double mae;
  double rmse;
  double accuracy;     /* meaningful only when has_accuracy is 1 */
  int32_t has_accuracy;
  int64_t malformed_count;
} tra_eval_report;

/* MAE/RMSE (and, when `binary` is nonzero, exact-match accuracy over gt in
 * {0, 1}) for n >= 1 predictions. missing[i] nonzero marks an unparseable
 * prediction: it scores as 0 and is tallied in malformed_count. `missing` may
 * be NULL when every prediction is present. */
tra_status tra_evaluate(const int64_t* predicted, const uint8_t* missing, const int64_t* gt,
                        int64_t n, int32_t binary, tra_eval_report* out);

/* ---- toy counting trainer -------------------------------------------- */

typedef struct tra_trainer tra_trainer; /* opaque */

typedef struct tra_train_record {
  int64_t step;
  double mean_total_reward;
  double mean_r_ans;
  double mean_r_range;
  double format_rate;
  double mae;
} tra_train_record;

tra_status tra_trainer_create(const tra_env_config* env, const tra_reward_config* reward,
                              const tra_grpo_config* grpo, const tra_train_config* train,
                              tra_trainer** out);

/* Runs one optimization step and reports its statistics. */
tra_status tra_trainer_step(tra_trainer* trainer, tra_train_record* record);

/* Serializes the current policy (logit matrices plus sampling constants) as
 * a JSON document. The returned buffer is owned by the caller; release it
 * with tra_free(). */
tra_status tra_trainer_policy_json(const tra_trainer* trainer, char** json_out);

void tra_trainer_destroy(tra_trainer* trainer);

/* ---- alpha ablation sweep --------------------------------------------- */

typedef struct tra_ablation_cell {
  double alpha;
  uint64_t seed;
  double final_mae;         /* mean record MAE over the trailing 50 steps    */
  double final_mean_reward; /* mean total reward over the trailing 50 steps  */
  int32_t ok;               /* 0 if this cell failed; see error fields below */
  char error[128];          /* empty when ok */
} tra_ablation_cell;

/* Trains one policy per (alpha, seed) pair with everything else fixed and
 * writes n_alphas * n_seeds cells in alpha-major order. A failed cell is
 * recorded in place; the sweep continues. */
tra_status tra_ablate(const double* alphas, int64_t n_alphas, const uint64_t* seeds,
                      int64_t n_seeds, const tra_env_config* env,
                      const tra_reward_config* reward, const tra_grpo_config* grpo,
                      const tra_train_config* train, tra_ablation_cell* cells);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRA_TRA_H_ */
