#pragma once

#include <span>
#include <vector>

#include "bellkit/geometry.hpp"

namespace bellkit {

// Interpolation shape of the PR-box correlation on the ramp (pi/4, pi/2).
// All three agree on the plateau (E = 1 up to pi/4), at the endpoints, and
// under the half-turn antisymmetry; they differ only in smoothness.
enum class PrRamp { Linear, CosineSmooth, CubicSmooth };

// One deterministic coplanar strategy: each party reports the sign of the
// cosine between its axis and a shared planar reference direction, Bob's
// reference rotated by offset_radians, and either party may globally flip.
// The ensemble average runs over the uniformly rotated two-sided reference.
struct LhvStrategy {
  double weight = 0.0;
  int alice_sign = 1;
  int bob_sign = 1;
  double offset_radians = 0.0;
};

struct TableSample {
  double theta_radians = 0.0;
  double value = 0.0;
};

struct TabulatedOptions {
  // Validation screen against jump discontinuities in input tables:
  // adjacent samples may differ by at most this slope times their spacing.
  // A convention of this toolkit, not a physical constant.
  double lipschitz_bound = 16.0;
};

enum class ModelKind { Singlet, FlippedSinglet, PrBox, LhvMixture, Tabulated };

// A bipartite correlation function C(theta) on [0, pi]: the expectation of
// the product of the two +-1 outcomes when the axes are theta apart.
// Guaranteed |C| <= 1 and C(pi - theta) = -C(theta) for every model kind.
class CorrelationModel {
 public:
  static CorrelationModel singlet();
  static CorrelationModel flipped_singlet();
  static CorrelationModel pr_box(PrRamp ramp = PrRamp::CosineSmooth);
  static CorrelationModel lhv_mixture(std::vector<LhvStrategy> strategies);

  // Throws std::domain_error when theta is outside [0, pi].
  double operator()(double theta_radians) const;

  ModelKind kind() const { return kind_; }
  PrRamp ramp() const { return ramp_; }
  const std::vector<LhvStrategy>& strategies() const { return strategies_; }

  // Tabulated metadata; zero for closed-form kinds. native_step is the mean
  // spacing of the raw input grid, projection_residual the sup distance
  // between the symmetrized interpolant and the raw samples.
  double table_tolerance() const { return tolerance_; }
  double projection_residual() const { return residual_; }
  double native_step() const { return native_step_; }

 private:
  CorrelationModel() = default;
  friend CorrelationModel tabulated_from_samples(std::span<const TableSample>,
                                                 double, TabulatedOptions);

  ModelKind kind_ = ModelKind::Singlet;
  PrRamp ramp_ = PrRamp::CosineSmooth;
  std::vector<LhvStrategy> strategies_;
  std::vector<double> knots_;
  std::vector<double> values_;
  double tolerance_ = 0.0;
  double residual_ = 0.0;
  double native_step_ = 0.0;
};

// Closed forms backing the model kinds, usable standalone.
double singlet_correlation(double theta_radians);
double flipped_singlet_correlation(double theta_radians);
double pr_correlation(double theta_radians, PrRamp ramp = PrRamp::CosineSmooth);
double lhv_strategy_correlation(const LhvStrategy& strategy,
                                double theta_radians);
double lhv_mixture_correlation(std::span<const LhvStrategy> strategies,
                               double theta_radians);

// Throws std::invalid_argument unless: nonempty, finite weights >= 0 summing
// to 1 within 1e-9, signs in {-1, +1}, offsets finite in [0, pi].
void validate_lhv_strategies(std::span<const LhvStrategy> strategies);

struct JointDistribution {
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;

  double correlation() const { return p_pp - p_pm - p_mp + p_mm; }
  double marginal_a_plus() const { return p_pp + p_pm; }
  double marginal_b_plus() const { return p_pp + p_mp; }
  double sum() const { return p_pp + p_pm + p_mp + p_mm; }
};

// Outcome distribution with unbiased marginals realizing C(theta).
JointDistribution joint_distribution(const CorrelationModel& model,
                                     double theta_radians);

// Builds a Tabulated model from raw (theta, value) samples. Validation:
// at least 3 samples, strictly increasing theta inside [0, pi], finite
// values with |v| <= 1, adjacent jumps within the Lipschitz screen,
// tolerance finite and >= 0. Thetas within 1e-9 outside the interval snap
// onto the endpoint first, so 12-digit text round-trips of pi re-import. The stored interpolant is symmetrized at the
// knot level so C(pi - theta) = -C(theta) holds exactly up to rounding:
// knots are the input grid united with its reflection, and each knot takes
// the odd part of the raw interpolant where both sides are covered, the raw
// value verbatim where only it is covered, and the negated reflection
// otherwise. Evaluation is linear between knots, constant outside.
CorrelationModel tabulated_from_samples(std::span<const TableSample> samples,
                                        double tolerance,
                                        TabulatedOptions options = {});

}  // namespace bellkit
