#include "metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace tra {
namespace {

int64_t effective_prediction(const PredictionRecord& rec) { return rec.predicted.value_or(0); }

void require_nonempty(std::span<const PredictionRecord> records) {
  if (records.empty()) throw std::invalid_argument("metrics require at least one record");
}

}  // namespace

double mae(std::span<const PredictionRecord> records) {
  require_nonempty(records);
  double sum = 0.0;
  for (const auto& rec : records) {
    sum += std::abs(static_cast<double>(effective_prediction(rec) - rec.gt));
  }
  return sum / static_cast<double>(records.size());
}

double rmse(std::span<const PredictionRecord> records) {
  require_nonempty(records);
  double sum = 0.0;
  for (const auto& rec : records) {
    double d = static_cast<double>(effective_prediction(rec) - rec.gt);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(records.size()));
}

double binary_accuracy(std::span<const PredictionRecord> records) {
  require_nonempty(records);
  int64_t correct = 0;
  for (const auto& rec : records) {
    if (rec.gt != 0 && rec.gt != 1)
      throw std::invalid_argument("binary accuracy requires gt in {0, 1}, got id=" + rec.id);
    if (effective_prediction(rec) == rec.gt) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

EvalReport evaluate(std::span<const PredictionRecord> records, bool binary) {
  EvalReport report;
  report.count = static_cast<int64_t>(records.size());
  report.mae = mae(records);
  report.rmse = rmse(records);
  if (binary) report.accuracy = binary_accuracy(records);
  for (const auto& rec : records) {
    if (!rec.predicted.has_value()) ++report.malformed_count;
  }
  return report;
}

}  // namespace tra
