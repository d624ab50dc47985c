#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bellkit/correlation.hpp"
#include "bellkit/errors.hpp"
#include "support/random_models.hpp"

using namespace bellkit;

namespace {

double max_antisymmetry_violation(const CorrelationModel& m, int grid = 2000) {
  double worst = 0.0;
  for (int k = 0; k <= grid; ++k) {
    const double t = kPi * k / grid;
    worst = std::max(worst, std::fabs(m(t) + m(kPi - t)));
  }
  return worst;
}

double max_magnitude(const CorrelationModel& m, int grid = 2000) {
  double worst = 0.0;
  for (int k = 0; k <= grid; ++k) {
    worst = std::max(worst, std::fabs(m(kPi * k / grid)));
  }
  return worst;
}

}  // namespace

TEST_CASE("singlet correlation pins -cos") {
  const CorrelationModel m = CorrelationModel::singlet();
  CHECK(m(0.0) == -1.0);
  CHECK(m(kPi) == 1.0);
  CHECK(std::fabs(m(kPi / 2.0)) < 1e-15);
  CHECK(m(kPi / 3.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(m.kind() == ModelKind::Singlet);
  CHECK(max_antisymmetry_violation(m) < 1e-15);
}

TEST_CASE("flipped singlet negates the singlet") {
  const CorrelationModel f = CorrelationModel::flipped_singlet();
  const CorrelationModel s = CorrelationModel::singlet();
  for (double t : {0.0, 0.3, 1.1, kPi / 2.0, 2.7, kPi}) {
    CHECK(f(t) == -s(t));
  }
}

TEST_CASE("domain is [0, pi] for every model kind") {
  const CorrelationModel m = CorrelationModel::singlet();
  CHECK_THROWS_AS(m(-0.1), std::domain_error);
  CHECK_THROWS_AS(m(kPi + 0.01), std::domain_error);
  CHECK_THROWS_AS(m(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK_THROWS_AS(CorrelationModel::pr_box()(-1e-9), std::domain_error);
}

TEST_CASE("PR box plateau, junctions, and midpoint") {
  for (PrRamp ramp :
       {PrRamp::Linear, PrRamp::CosineSmooth, PrRamp::CubicSmooth}) {
    const CorrelationModel m = CorrelationModel::pr_box(ramp);
    CHECK(m(0.0) == 1.0);
    CHECK(m(kPi / 8.0) == 1.0);
    CHECK(m(kPi / 4.0) == 1.0);
    CHECK(m(kPi) == -1.0);
    CHECK(std::fabs(m(kPi / 2.0)) < 1e-30);
    // All three ramps pass through 1/2 at the ramp midpoint.
    CHECK(m(3.0 * kPi / 8.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(max_antisymmetry_violation(m) < 1e-15);
    CHECK(max_magnitude(m) <= 1.0);
  }
}

TEST_CASE("PR ramps decrease monotonically across the ramp") {
  for (PrRamp ramp :
       {PrRamp::Linear, PrRamp::CosineSmooth, PrRamp::CubicSmooth}) {
    const CorrelationModel m = CorrelationModel::pr_box(ramp);
    double prev = m(kPi / 4.0);
    for (int k = 1; k <= 500; ++k) {
      const double t = kPi / 4.0 + (kPi / 4.0) * k / 500.0;
      const double v = m(t);
      REQUIRE(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("single hemisphere strategy reproduces the sawtooth") {
  const CorrelationModel m =
      CorrelationModel::lhv_mixture({{1.0, 1, 1, 0.0}});
  CHECK(m(0.0) == 1.0);
  CHECK(m(kPi / 4.0) == 0.5);
  CHECK(m(kPi / 2.0) == 0.0);
  CHECK(m(kPi) == -1.0);
  for (int k = 0; k <= 100; ++k) {
    const double t = kPi * k / 100.0;
    REQUIRE(m(t) == doctest::Approx(1.0 - 2.0 * t / kPi).epsilon(1e-14));
  }
}

TEST_CASE("offset strategies stay antisymmetric and bounded") {
  for (double offset : {0.0, 0.4, 0.8, kPi / 2.0, 2.9, kPi}) {
    const CorrelationModel m =
        CorrelationModel::lhv_mixture({{1.0, 1, 1, offset}});
    CHECK(max_antisymmetry_violation(m, 500) < 1e-14);
    CHECK(max_magnitude(m, 500) <= 1.0 + 1e-15);
  }
  const LhvStrategy s{1.0, 1, 1, 0.8};
  CHECK(lhv_strategy_correlation(s, 0.5) ==
        doctest::Approx(0.49070418210593486).epsilon(1e-14));
}

TEST_CASE("sign flips act as a global product") {
  const LhvStrategy plain{1.0, 1, 1, 0.6};
  const LhvStrategy both{1.0, -1, -1, 0.6};
  const LhvStrategy alice{1.0, -1, 1, 0.6};
  const LhvStrategy bob{1.0, 1, -1, 0.6};
  for (double t : {0.1, 0.9, 2.2, 3.0}) {
    CHECK(lhv_strategy_correlation(both, t) ==
          lhv_strategy_correlation(plain, t));
    CHECK(lhv_strategy_correlation(alice, t) ==
          -lhv_strategy_correlation(plain, t));
    CHECK(lhv_strategy_correlation(bob, t) ==
          -lhv_strategy_correlation(plain, t));
  }
}

TEST_CASE("mixture validation rejects malformed strategy lists") {
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({}), std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({{0.9, 1, 1, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({{1.0, 2, 1, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({{1.0, 1, 0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({{1.0, 1, 1, -0.2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({{1.0, 1, 1, kPi + 0.2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::lhv_mixture({{-0.5, 1, 1, 0.0},
                                                 {1.5, 1, 1, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("random mixtures respect the model invariants") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const CorrelationModel m = CorrelationModel::lhv_mixture(
        testsupport::random_lhv_mixture(2026, i));
    CHECK(max_antisymmetry_violation(m, 500) < 1e-13);
    CHECK(max_magnitude(m, 500) <= 1.0 + 1e-13);
  }
}

TEST_CASE("joint distribution realizes C with unbiased marginals") {
  const CorrelationModel m = CorrelationModel::singlet();
  for (double t : {0.0, 0.7, kPi / 2.0, 2.3, kPi}) {
    const JointDistribution d = joint_distribution(m, t);
    CHECK(d.p_pp >= 0.0);
    CHECK(d.p_pm >= 0.0);
    CHECK(d.p_mp >= 0.0);
    CHECK(d.p_mm >= 0.0);
    CHECK(d.sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.marginal_a_plus() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.marginal_b_plus() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.correlation() == doctest::Approx(m(t)).epsilon(1e-14));
  }
}

TEST_CASE("tabulated model interpolates, extends, and reflects") {
  const std::vector<TableSample> samples = {
      {0.5, -0.8}, {1.0, -0.5}, {1.5, 0.0}};
  const CorrelationModel m = tabulated_from_samples(samples, 1e-3);
  CHECK(m.kind() == ModelKind::Tabulated);
  CHECK(m.table_tolerance() == 1e-3);
  CHECK(m.projection_residual() == 0.0);
  CHECK(m.native_step() == doctest::Approx(0.5).epsilon(1e-15));
  // Verbatim at the raw knots: the reflections fall outside the raw range.
  CHECK(m(0.5) == -0.8);
  CHECK(m(1.0) == -0.5);
  CHECK(m(1.5) == 0.0);
  // Linear between knots, constant outside.
  CHECK(m(0.75) == doctest::Approx(-0.65).epsilon(1e-15));
  CHECK(m(0.2) == -0.8);
  CHECK(m(0.0) == -0.8);
  CHECK(m(3.0) == 0.8);
  CHECK(m(kPi) == 0.8);
  // Reflected knots carry the negated values.
  CHECK(m(kPi - 1.0) == 0.5);
  CHECK(m(kPi - 0.75) == doctest::Approx(0.65).epsilon(1e-14));
}

TEST_CASE("full-range tables are symmetrized to their odd part") {
  // Clamped tilt: the even component -0.1 sin(t) must project away.
  std::vector<TableSample> samples;
  const int count = 2001;
  for (int i = 0; i < count; ++i) {
    const double t = kPi * i / (count - 1);
    samples.push_back(
        {t, std::max(-1.0, -std::cos(t) - 0.1 * std::sin(t))});
  }
  const CorrelationModel m = tabulated_from_samples(samples, 1e-2);
  CHECK(max_antisymmetry_violation(m, 1500) < 1e-12);
  // Away from the clamp zone the odd part is exactly -cos.
  CHECK(std::fabs(m(kPi / 4.0) + std::cos(kPi / 4.0)) < 1e-6);
  CHECK(std::fabs(m(kPi / 2.0)) < 1e-12);
  // At pi/2 the raw sample read -0.1, so the projection moved it by 0.1.
  CHECK(m.projection_residual() == doctest::Approx(0.1).epsilon(1e-3));
}

TEST_CASE("exact singlet samples tabulate to the singlet") {
  std::vector<TableSample> samples;
  const int count = 1001;
  for (int i = 0; i < count; ++i) {
    const double t = kPi * i / (count - 1);
    samples.push_back({t, -std::cos(t)});
  }
  const CorrelationModel m = tabulated_from_samples(samples, 1e-6);
  CHECK(m.projection_residual() < 1e-15);
  double worst = 0.0;
  for (int k = 0; k <= 5000; ++k) {
    const double t = kPi * k / 5000.0;
    worst = std::max(worst, std::fabs(m(t) + std::cos(t)));
  }
  CHECK(worst < 2e-6);
}

TEST_CASE("tabulated validation rejects malformed tables") {
  const std::vector<TableSample> ok = {{0.1, 0.0}, {0.2, 0.1}, {0.3, 0.2}};
  CHECK_NOTHROW(tabulated_from_samples(ok, 0.0));
  CHECK_THROWS_AS(
      tabulated_from_samples(std::vector<TableSample>{{0.1, 0.0}, {0.2, 0.1}},
                             1e-3),
      std::invalid_argument);
  CHECK_THROWS_AS(tabulated_from_samples(
                      std::vector<TableSample>{{0.3, 0.0}, {0.2, 0.1},
                                               {0.4, 0.2}},
                      1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(tabulated_from_samples(
                      std::vector<TableSample>{{-0.1, 0.0}, {0.2, 0.1},
                                               {0.4, 0.2}},
                      1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(tabulated_from_samples(
                      std::vector<TableSample>{{0.1, 0.0}, {0.2, 1.1},
                                               {0.4, 0.2}},
                      1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(tabulated_from_samples(
                      std::vector<TableSample>{{0.1, 0.0},
                                               {0.1005, 0.5},
                                               {0.4, 0.2}},
                      1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(tabulated_from_samples(ok, -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(
      tabulated_from_samples(ok, std::numeric_limits<double>::infinity()),
      std::invalid_argument);
  TabulatedOptions bad;
  bad.lipschitz_bound = 0.0;
  CHECK_THROWS_AS(tabulated_from_samples(ok, 1e-3, bad),
                  std::invalid_argument);
}

TEST_CASE("tabulated boundary thetas snap after text round-trips") {
  // 3.14159265359 is pi printed at 12 significant digits, a hair above pi.
  const std::vector<TableSample> rounded = {
      {-1e-10, -1.0}, {kPi / 2.0, 0.0}, {3.14159265359, 1.0}};
  const CorrelationModel m = tabulated_from_samples(rounded, 1e-9);
  CHECK(m(0.0) == -1.0);
  CHECK(m(kPi) == 1.0);

  const std::vector<TableSample> beyond = {
      {0.0, -1.0}, {kPi / 2.0, 0.0}, {kPi + 2e-9, 1.0}};
  CHECK_THROWS_AS(tabulated_from_samples(beyond, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("random antisymmetric catalog keeps its contract") {
  for (std::uint64_t i = 0; i < 8; ++i) {
    const CorrelationModel m =
        testsupport::random_antisymmetric_model(0x5EED0004ULL, i);
    CHECK(max_antisymmetry_violation(m, 800) < 1e-12);
    CHECK(max_magnitude(m, 800) <= 1.0);
    double dev_s = 0.0;
    double dev_f = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double t = kPi * k / 2000.0;
      dev_s = std::max(dev_s, std::fabs(m(t) + std::cos(t)));
      dev_f = std::max(dev_f, std::fabs(m(t) - std::cos(t)));
    }
    CHECK(dev_s >= 1e-4);
    CHECK(dev_f >= 1e-4);
  }
}
