#include "metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rng.hpp"

using namespace tra;

namespace {

PredictionRecord rec(std::string id, int64_t predicted, int64_t gt) {
  PredictionRecord r;
  r.id = std::move(id);
  r.predicted = predicted;
  r.gt = gt;
  return r;
}

}  // namespace

TEST_CASE("mae and rmse fixtures") {
  std::vector<PredictionRecord> two = {rec("a", 5, 4), rec("b", 7, 10)};
  CHECK(mae(two) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rmse(two) == doctest::Approx(2.2360679774997896).epsilon(1e-12));

  std::vector<PredictionRecord> perfect = {rec("a", 3, 3), rec("b", 0, 0), rec("c", 19, 19)};
  CHECK(mae(perfect) == 0.0);
  CHECK(rmse(perfect) == 0.0);

  std::vector<PredictionRecord> single = {rec("a", 0, 1)};
  CHECK(mae(single) == 1.0);
  CHECK(rmse(single) == 1.0);

  // constant residual d gives RMSE d
  std::vector<PredictionRecord> constant = {rec("a", 7, 4), rec("b", 13, 10), rec("c", 3, 0)};
  CHECK(rmse(constant) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mae(constant) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("empty input is rejected") {
  std::vector<PredictionRecord> empty;
  CHECK_THROWS_AS(mae(empty), std::invalid_argument);
  CHECK_THROWS_AS(rmse(empty), std::invalid_argument);
  CHECK_THROWS_AS(binary_accuracy(empty), std::invalid_argument);
}

TEST_CASE("binary accuracy") {
  std::vector<PredictionRecord> mixed = {rec("a", 0, 0), rec("b", 1, 0), rec("c", 1, 1),
                                         rec("d", 0, 1)};
  CHECK(binary_accuracy(mixed) == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<PredictionRecord> all = {rec("a", 0, 0), rec("b", 1, 1)};
  CHECK(binary_accuracy(all) == 1.0);

  std::vector<PredictionRecord> bad = {rec("a", 0, 2)};
  CHECK_THROWS_AS(binary_accuracy(bad), std::invalid_argument);
}

TEST_CASE("missing predictions score as zero and are tallied") {
  PredictionRecord missing;
  missing.id = "m";
  missing.gt = 4;
  std::vector<PredictionRecord> records = {rec("a", 4, 4), missing};
  CHECK(mae(records) == doctest::Approx(2.0).epsilon(1e-12));

  EvalReport report = evaluate(records, false);
  CHECK(report.count == 2);
  CHECK(report.malformed_count == 1);
  CHECK_FALSE(report.accuracy.has_value());

  EvalReport binary_report =
      evaluate(std::vector<PredictionRecord>{rec("a", 1, 1), rec("b", 0, 0)}, true);
  REQUIRE(binary_report.accuracy.has_value());
  CHECK(*binary_report.accuracy == 1.0);
}

TEST_CASE("rmse dominates mae and both are permutation and duplication invariant") {
  Rng rng(2024);
  for (int iter = 0; iter < 2000; ++iter) {
    size_t n = static_cast<size_t>(rng.uniform_int(1, 40));
    std::vector<PredictionRecord> records;
    for (size_t i = 0; i < n; ++i) {
      records.push_back(
          rec(std::to_string(i), rng.uniform_int(0, 60), rng.uniform_int(0, 60)));
    }
    double m = mae(records);
    double r = rmse(records);
    CHECK(r >= m - 1e-12);

    // permutation invariance
    std::vector<PredictionRecord> shuffled = records;
    for (size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(i) - 1))]);
    }
    CHECK(mae(shuffled) == doctest::Approx(m).epsilon(1e-12));
    CHECK(rmse(shuffled) == doctest::Approx(r).epsilon(1e-12));

    // duplication invariance
    std::vector<PredictionRecord> doubled = records;
    doubled.insert(doubled.end(), records.begin(), records.end());
    CHECK(mae(doubled) == doctest::Approx(m).epsilon(1e-12));
    CHECK(rmse(doubled) == doctest::Approx(r).epsilon(1e-12));
  }
}
