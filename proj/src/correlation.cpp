#include "bellkit/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bellkit/errors.hpp"

namespace bellkit {
namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta outside [0, pi]: " + std::to_string(theta));
  }
}

// Value of the PR correlation on the half range [0, pi/2].
double pr_half(double t, PrRamp ramp) {
  if (t <= kPi / 4.0) return 1.0;
  if (t >= kPi / 2.0) return 0.0;
  switch (ramp) {
    case PrRamp::Linear:
      return (kPi / 2.0 - t) * (4.0 / kPi);
    case PrRamp::CosineSmooth: {
      // sin^2(2t) equals cos^2(2(t - pi/4)); C1 at both ramp junctions.
      const double s = std::sin(2.0 * t);
      return s * s;
    }
    case PrRamp::CubicSmooth: {
      const double u = (t - kPi / 4.0) * (4.0 / kPi);
      return (1.0 - u) * (1.0 - u) * (1.0 + 2.0 * u);
    }
  }
  throw config_error("unknown PR ramp profile");
}

// Correlation of two hemisphere sign functions whose references are psi
// apart, averaged over the planar rotation ensemble: 1 - 2|psi|/pi on
// [-pi, pi], extended periodically.
double circle_sign_correlation(double psi) {
  double w = std::fmod(psi, 2.0 * kPi);
  if (w > kPi) {
    w -= 2.0 * kPi;
  } else if (w < -kPi) {
    w += 2.0 * kPi;
  }
  return 1.0 - 2.0 * std::fabs(w) / kPi;
}

double table_eval(const std::vector<double>& knots,
                  const std::vector<double>& values, double t) {
  if (t <= knots.front()) return values.front();
  if (t >= knots.back()) return values.back();
  const auto it = std::upper_bound(knots.begin(), knots.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - knots.begin());
  const double t0 = knots[i - 1];
  const double t1 = knots[i];
  const double u = (t - t0) / (t1 - t0);
  return values[i - 1] + u * (values[i] - values[i - 1]);
}

}  // namespace

double singlet_correlation(double theta) {
  check_theta(theta);
  return -std::cos(theta);
}

double flipped_singlet_correlation(double theta) {
  check_theta(theta);
  return std::cos(theta);
}

double pr_correlation(double theta, PrRamp ramp) {
  check_theta(theta);
  if (theta <= kPi / 2.0) return pr_half(theta, ramp);
  return -pr_half(kPi - theta, ramp);
}

double lhv_strategy_correlation(const LhvStrategy& s, double theta) {
  check_theta(theta);
  const double two_sided =
      0.5 * (circle_sign_correlation(theta - s.offset_radians) +
             circle_sign_correlation(theta + s.offset_radians));
  return static_cast<double>(s.alice_sign * s.bob_sign) * two_sided;
}

double lhv_mixture_correlation(std::span<const LhvStrategy> strategies,
                               double theta) {
  check_theta(theta);
  double acc = 0.0;
  for (const LhvStrategy& s : strategies) {
    acc += s.weight * lhv_strategy_correlation(s, theta);
  }
  return acc;
}

void validate_lhv_strategies(std::span<const LhvStrategy> strategies) {
  if (strategies.empty()) {
    throw std::invalid_argument("mixture needs at least one strategy");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const LhvStrategy& s = strategies[i];
    const std::string where = "strategy " + std::to_string(i);
    if (!(std::isfinite(s.weight) && s.weight >= 0.0)) {
      throw std::invalid_argument(where + ": weight must be finite and >= 0");
    }
    if (s.alice_sign * s.alice_sign != 1 || s.bob_sign * s.bob_sign != 1) {
      throw std::invalid_argument(where + ": signs must be -1 or +1");
    }
    if (!(std::isfinite(s.offset_radians) && s.offset_radians >= 0.0 &&
          s.offset_radians <= kPi)) {
      throw std::invalid_argument(where + ": offset must lie in [0, pi]");
    }
    total += s.weight;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("strategy weights must sum to 1, got " +
                                std::to_string(total));
  }
}

CorrelationModel CorrelationModel::singlet() {
  CorrelationModel m;
  m.kind_ = ModelKind::Singlet;
  return m;
}

CorrelationModel CorrelationModel::flipped_singlet() {
  CorrelationModel m;
  m.kind_ = ModelKind::FlippedSinglet;
  return m;
}

CorrelationModel CorrelationModel::pr_box(PrRamp ramp) {
  CorrelationModel m;
  m.kind_ = ModelKind::PrBox;
  m.ramp_ = ramp;
  return m;
}

CorrelationModel CorrelationModel::lhv_mixture(
    std::vector<LhvStrategy> strategies) {
  validate_lhv_strategies(strategies);
  CorrelationModel m;
  m.kind_ = ModelKind::LhvMixture;
  m.strategies_ = std::move(strategies);
  return m;
}

double CorrelationModel::operator()(double theta) const {
  switch (kind_) {
    case ModelKind::Singlet:
      return singlet_correlation(theta);
    case ModelKind::FlippedSinglet:
      return flipped_singlet_correlation(theta);
    case ModelKind::PrBox:
      return pr_correlation(theta, ramp_);
    case ModelKind::LhvMixture:
      return lhv_mixture_correlation(strategies_, theta);
    case ModelKind::Tabulated:
      check_theta(theta);
      return table_eval(knots_, values_, theta);
  }
  throw config_error("unknown model kind");
}

JointDistribution joint_distribution(const CorrelationModel& model,
                                     double theta) {
  double c = model(theta);
  if (std::fabs(c) > 1.0 + 1e-12) {
    throw model_integrity_error("correlation outside [-1, 1] at theta " +
                                std::to_string(theta));
  }
  c = std::clamp(c, -1.0, 1.0);
  JointDistribution d;
  d.p_pp = d.p_mm = 0.25 * (1.0 + c);
  d.p_pm = d.p_mp = 0.25 * (1.0 - c);
  return d;
}

CorrelationModel tabulated_from_samples(std::span<const TableSample> samples,
                                        double tolerance,
                                        TabulatedOptions options) {
  if (samples.size() < 3) {
    throw std::invalid_argument("tabulated model needs at least 3 samples");
  }
  if (!(std::isfinite(tolerance) && tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be finite and >= 0");
  }
  if (!(std::isfinite(options.lipschitz_bound) &&
        options.lipschitz_bound > 0.0)) {
    throw std::invalid_argument("lipschitz_bound must be finite and > 0");
  }
  // Text round-trips nudge boundary samples just past the interval (pi
  // prints as 3.14159265359 at 12 significant digits), so snap anything
  // within 1e-9 of an endpoint back onto it before validating.
  std::vector<TableSample> snapped(samples.begin(), samples.end());
  for (TableSample& s : snapped) {
    if (s.theta_radians > kPi && s.theta_radians <= kPi + 1e-9) {
      s.theta_radians = kPi;
    } else if (s.theta_radians < 0.0 && s.theta_radians >= -1e-9) {
      s.theta_radians = 0.0;
    }
  }
  for (std::size_t i = 0; i < snapped.size(); ++i) {
    const TableSample& s = snapped[i];
    const std::string where = "sample " + std::to_string(i);
    if (!(std::isfinite(s.theta_radians) && s.theta_radians >= 0.0 &&
          s.theta_radians <= kPi)) {
      throw std::invalid_argument(where + ": theta must lie in [0, pi]");
    }
    if (!(std::isfinite(s.value) && std::fabs(s.value) <= 1.0)) {
      throw std::invalid_argument(where + ": value must lie in [-1, 1]");
    }
    if (i > 0) {
      const double dt = s.theta_radians - snapped[i - 1].theta_radians;
      if (!(dt > 0.0)) {
        throw std::invalid_argument(where + ": theta must strictly increase");
      }
      const double dv = std::fabs(s.value - snapped[i - 1].value);
      if (dv > options.lipschitz_bound * dt + 1e-12) {
        throw std::invalid_argument(
            where + ": jump exceeds the Lipschitz screen (" +
            std::to_string(dv) + " over " + std::to_string(dt) + ")");
      }
    }
  }

  const double t_min = snapped.front().theta_radians;
  const double t_max = snapped.back().theta_radians;
  std::vector<double> raw_knots;
  std::vector<double> raw_values;
  raw_knots.reserve(snapped.size());
  raw_values.reserve(snapped.size());
  for (const TableSample& s : snapped) {
    raw_knots.push_back(s.theta_radians);
    raw_values.push_back(s.value);
  }
  const auto raw = [&](double t) { return table_eval(raw_knots, raw_values, t); };
  const auto covered = [&](double t) {
    return t >= t_min - 1e-14 && t <= t_max + 1e-14;
  };

  std::vector<double> knots;
  knots.reserve(2 * snapped.size());
  for (const TableSample& s : snapped) {
    knots.push_back(s.theta_radians);
    knots.push_back(kPi - s.theta_radians);
  }
  std::sort(knots.begin(), knots.end());
  std::vector<double> merged;
  merged.reserve(knots.size());
  for (double t : knots) {
    if (merged.empty() || t - merged.back() > 1e-13) merged.push_back(t);
  }

  std::vector<double> values;
  values.reserve(merged.size());
  for (double t : merged) {
    const double r = kPi - t;
    double v;
    if (covered(t) && covered(r)) {
      v = 0.5 * (raw(t) - raw(r));
    } else if (covered(t)) {
      v = raw(t);
    } else {
      v = -raw(r);
    }
    values.push_back(std::clamp(v, -1.0, 1.0));
  }

  CorrelationModel m;
  m.kind_ = ModelKind::Tabulated;
  m.knots_ = std::move(merged);
  m.values_ = std::move(values);
  m.tolerance_ = tolerance;
  m.native_step_ =
      (t_max - t_min) / static_cast<double>(snapped.size() - 1);
  double residual = 0.0;
  for (const TableSample& s : snapped) {
    residual = std::max(
        residual, std::fabs(s.value - table_eval(m.knots_, m.values_,
                                                 s.theta_radians)));
  }
  m.residual_ = residual;
  return m;
}

}  // namespace bellkit
