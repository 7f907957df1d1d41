#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fahp/comparison.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fahp;

TEST_CASE("validation rejects malformed matrices") {
  CHECK(FAHP_ERROR_CODE(validate_matrix({})) == ErrorCode::OrderTooSmall);
  CHECK(FAHP_ERROR_CODE(validate_matrix({{1, 2}, {0.5}})) == ErrorCode::NonSquare);
  CHECK(FAHP_ERROR_CODE(validate_matrix({{1, -2}, {-0.5, 1}})) == ErrorCode::NonPositiveEntry);
  CHECK(FAHP_ERROR_CODE(validate_matrix({{1, 2}, {0.5, 2}})) == ErrorCode::DiagonalNotOne);
  CHECK(FAHP_ERROR_CODE(validate_matrix({{1, NAN}, {1, 1}})) == ErrorCode::NonPositiveEntry);

  SUBCASE("the uncertainty matrix as tabulated is not reciprocal") {
    const RawMatrix printed{{1, 5, 5}, {1.0 / 5, 1, 1.0 / 7}, {1.0 / 3, 1.0 / 7, 1}};
    try {
      validate_matrix(printed);
      FAIL("expected a reciprocity violation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ReciprocityViolation);
      REQUIRE(e.cell().has_value());
    }
  }

  SUBCASE("the criteria matrix is valid at strict tolerance") {
    const auto m = validate_matrix(support::case_criteria());
    CHECK(m.order() == 4);
    CHECK(m.labels() == default_labels(4));
  }
}

TEST_CASE("reciprocity tolerance is multiplicative") {
  // 0.333 * 3 = 0.999: fine when lenient, rejected when strict.
  const RawMatrix rounded{{1, 3}, {0.333, 1}};
  CHECK(FAHP_ERROR_CODE(validate_matrix(rounded)) == ErrorCode::ReciprocityViolation);
  CHECK(validate_matrix(rounded, {}, Strictness::Lenient).order() == 2);
  const RawMatrix far{{1, 3}, {0.3, 1}};
  CHECK(FAHP_ERROR_CODE(validate_matrix(far, {}, Strictness::Lenient)) == ErrorCode::ReciprocityViolation);
}

TEST_CASE("repair overwrites the lower triangle and is idempotent") {
  const RawMatrix printed{{1, 5, 5}, {1.0 / 5, 1, 1.0 / 7}, {1.0 / 3, 1.0 / 7, 1}};
  const auto once = repair_matrix(printed);
  CHECK(once(2, 0) == doctest::Approx(0.2));
  CHECK(once(2, 1) == doctest::Approx(7.0));
  CHECK(once(0, 2) == 5.0);
  const auto twice = repair_matrix(once.to_raw());
  CHECK(once == twice);

  const auto rec = reconcile_matrix(printed, {}, "Uncertainty");
  CHECK(rec.matrix == once);
  CHECK(rec.repairs.size() == 2);
  for (const auto& r : rec.repairs) {
    CHECK(r.matrix == "Uncertainty");
    CHECK(r.cell.row > r.cell.col);
  }
  CHECK(reconcile_matrix(once.to_raw()).repairs.empty());
}

TEST_CASE("eigenvector weights agree with a characteristic-polynomial oracle") {
  const auto m = validate_matrix(support::case_criteria());
  const auto ew = eigen_weights(m);
  std::vector<std::vector<long double>> a(4, std::vector<long double>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a[i][j] = m(i, j);
  const long double lambda = oracle::largest_eigenvalue(a);
  CHECK(std::fabs(ew.lambda_max - static_cast<double>(lambda)) < 1e-9);
  CHECK(ew.lambda_max == doctest::Approx(4.06902574022287).epsilon(1e-12));
  const std::vector<double> expected{0.0943291613459445, 0.441192189283857, 0.394827694503946, 0.0696509548662527};
  CHECK(support::max_abs_diff(ew.weights.weights, expected) < 1e-10);
  CHECK(ew.weights.method == WeightMethod::Eigen);

  // (A - lambda I) w = 0 with the oracle's lambda.
  for (std::size_t i = 0; i < 4; ++i) {
    long double r = -lambda * ew.weights[i];
    for (std::size_t j = 0; j < 4; ++j) r += a[i][j] * ew.weights[j];
    CHECK(std::fabs(static_cast<double>(r)) < 1e-9);
  }
}

TEST_CASE("geometric-mean weights match row products") {
  const auto m = validate_matrix(support::case_criteria());
  const auto gm = geometric_mean_weights(m);
  std::vector<double> expected;
  for (const auto& row : support::case_criteria()) {
    double p = 1.0;
    for (double v : row) p *= v;
    expected.push_back(std::pow(p, 0.25));
  }
  const double s = support::sum(expected);
  for (auto& x : expected) x /= s;
  CHECK(support::max_abs_diff(gm.weights, expected) < 1e-12);
  CHECK(gm.method == WeightMethod::GeometricMean);
}

TEST_CASE("consistency index and ratio") {
  CHECK(random_index(1) == 0.0);
  CHECK(random_index(3) == doctest::Approx(0.58));
  CHECK(random_index(4) == doctest::Approx(0.90));
  CHECK(random_index(15) == doctest::Approx(1.58));
  CHECK(FAHP_ERROR_CODE(random_index(16)) == ErrorCode::UnsupportedOrder);

  const auto report = consistency(validate_matrix(support::case_criteria()));
  CHECK(report.ci == doctest::Approx(0.0230085800742887).epsilon(1e-9));
  CHECK(report.cr == doctest::Approx(0.0255650889714319).epsilon(1e-9));
  CHECK(report.cr < kConsistencyThreshold);
  CHECK(report.consistent);

  const auto inconsistent = consistency(validate_matrix({{1, 3, 1.0 / 3}, {1.0 / 3, 1, 3}, {3, 1.0 / 3, 1}}));
  CHECK_FALSE(inconsistent.consistent);

  const auto single = consistency(validate_matrix({{1}}));
  CHECK(single.ci == 0.0);
  CHECK(single.cr == 0.0);
  const auto pair = consistency(validate_matrix({{1, 7}, {1.0 / 7, 1}}));
  CHECK(pair.cr == 0.0);
  CHECK(pair.lambda_max == doctest::Approx(2.0));
}

TEST_CASE("property: CI and CR follow lambda_max") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 13;
    const auto m = validate_matrix(support::random_reciprocal(rng, n));
    const auto r = consistency(m);
    const double nn = static_cast<double>(n);
    CHECK(r.lambda_max == doctest::Approx(eigen_weights(m).lambda_max));
    CHECK(r.ci == doctest::Approx((r.lambda_max - nn) / (nn - 1.0)));
    CHECK(r.cr == doctest::Approx(r.ci / random_index(n)));
    CHECK(r.consistent == (r.cr <= kConsistencyThreshold));
  }
}

TEST_CASE("property: consistent matrices recover their weights") {
  std::mt19937_64 rng(20240611);
  for (std::size_t n = 3; n <= 9; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto w = support::random_weights(rng, n);
      const auto m = validate_matrix(support::ratio_matrix(w));
      const auto ew = eigen_weights(m);
      const auto gm = geometric_mean_weights(m);
      CHECK(support::max_abs_diff(ew.weights.weights, w) < 1e-8);
      CHECK(support::max_abs_diff(gm.weights, w) < 1e-8);
      CHECK(std::fabs(ew.lambda_max - static_cast<double>(n)) < 1e-8);
      CHECK(consistency(m).ci <= 1e-8);
      const auto built = consistent_matrix(w);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(built(i, j) == doctest::Approx(w[i] / w[j]).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: reciprocal matrices") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 7;
    const auto raw = support::random_reciprocal(rng, n);
    const auto m = validate_matrix(raw);
    const auto ew = eigen_weights(m);
    const auto gm = geometric_mean_weights(m);
    CHECK(ew.lambda_max >= static_cast<double>(n) - 1e-9);
    CHECK(std::fabs(support::sum(ew.weights.weights) - 1.0) < 1e-12);
    CHECK(std::fabs(support::sum(gm.weights) - 1.0) < 1e-12);
    CHECK(std::all_of(ew.weights.weights.begin(), ew.weights.weights.end(), [](double x) { return x > 0; }));

    const auto p = support::random_permutation(rng, n);
    const auto pm = validate_matrix(support::permute(raw, p));
    const auto pew = eigen_weights(pm);
    const auto pgm = geometric_mean_weights(pm);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(pew.weights[i] - ew.weights[p[i]]) < 1e-9);
      CHECK(std::fabs(pgm[i] - gm[p[i]]) < 1e-12);
    }
    CHECK(std::fabs(pew.lambda_max - ew.lambda_max) < 1e-9);
  }
}

TEST_CASE("labels are carried and checked") {
  const auto m = validate_matrix({{1, 2}, {0.5, 1}}, {"a", "b"});
  CHECK(m.labels() == std::vector<std::string>{"a", "b"});
  CHECK(crisp_weights(m, WeightMethod::Eigen).weights[0] == doctest::Approx(2.0 / 3.0));
  CHECK(crisp_weights(m, WeightMethod::GeometricMean).weights[1] == doctest::Approx(1.0 / 3.0));
  CHECK(to_string(WeightMethod::GeometricMean) == "geomean");
}

TEST_CASE("property: constructed matrices are always valid") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> any(-2.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 8;
    RawMatrix raw(n, std::vector<double>(n));
    for (auto& row : raw)
      for (auto& v : row) v = any(rng);
    bool positive_upper = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) positive_upper = positive_upper && raw[i][j] > 0;
    try {
      const auto m = validate_matrix(raw, {}, Strictness::Lenient);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(m(i, i) == 1.0);
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(m(i, j) > 0);
          CHECK(std::fabs(m(i, j) * m(j, i) - 1.0) <= kLenientTolerance);
        }
      }
    } catch (const Error& e) {
      CHECK(e.code() != ErrorCode::NonSquare);
    }
    if (positive_upper) {
      const auto repaired = repair_matrix(raw);
      CHECK_NOTHROW(validate_matrix(repaired.to_raw()));
    } else {
      CHECK(FAHP_ERROR_CODE(repair_matrix(raw)) == ErrorCode::NonPositiveEntry);
    }
  }
}
