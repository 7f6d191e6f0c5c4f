#ifndef TRA_METRICS_HPP_
#define TRA_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace tra {

// One scored prediction. A missing `predicted` marks a model output that
// could not be parsed; it scores as predicted = 0 and is tallied in
// malformed_count rather than silently dropped.
struct PredictionRecord {
  std::string id;
  std::optional<int64_t> predicted;
  int64_t gt = 0;
  std::optional<std::string> category;  // pass-through, unused by the metrics
};

// Mean absolute error. Throws std::invalid_argument on an empty list.
double mae(std::span<const PredictionRecord> records);

// Root mean squared error. Throws std::invalid_argument on an empty list.
double rmse(std::span<const PredictionRecord> records);

// Fraction of records with predicted == gt. Every gt must be 0 or 1;
// anything else throws std::invalid_argument.
double binary_accuracy(std::span<const PredictionRecord> records);

struct EvalReport {
  int64_t count = 0;
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> accuracy;  // present only for binary evaluation
  int64_t malformed_count = 0;
};

EvalReport evaluate(std::span<const PredictionRecord> records, bool binary);

}  // namespace tra

#endif  // TRA_METRICS_HPP_
