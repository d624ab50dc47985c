#include "bellkit/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellkit/errors.hpp"

namespace bellkit {
namespace {

void check_theta_range(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("target separation outside [0, pi]");
  }
}

// Haar-random rotation from a Shoemake quaternion; returns the first two
// columns, an orthonormal pair spanning the rotated xy-plane.
void random_frame(PhiloxStream& rng, Vec3& e1, Vec3& e2) {
  const double u1 = rng.next_double();
  const double u2 = rng.next_double();
  const double u3 = rng.next_double();
  const double r1 = std::sqrt(1.0 - u1);
  const double r2 = std::sqrt(u1);
  const double x = r1 * std::sin(2.0 * kPi * u2);
  const double y = r1 * std::cos(2.0 * kPi * u2);
  const double z = r2 * std::sin(2.0 * kPi * u3);
  const double w = r2 * std::cos(2.0 * kPi * u3);
  e1 = {1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y + w * z),
        2.0 * (x * z - w * y)};
  e2 = {2.0 * (x * y - w * z), 1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z + w * x)};
}

}  // namespace

std::pair<Vec3, Vec3> sample_axis_pair(AxisMode mode, double target_theta,
                                       PhiloxStream& rng) {
  check_theta_range(target_theta);
  const double ct = std::cos(target_theta);
  const double st = std::sin(target_theta);
  switch (mode) {
    case AxisMode::CoplanarUniform: {
      const double phi = 2.0 * kPi * rng.next_double();
      return {Vec3{std::cos(phi), std::sin(phi), 0.0},
              Vec3{std::cos(phi + target_theta), std::sin(phi + target_theta),
                   0.0}};
    }
    case AxisMode::UniformSphere: {
      Vec3 e1, e2;
      random_frame(rng, e1, e2);
      return {e1, ct * e1 + st * e2};
    }
  }
  throw config_error("unknown axis mode");
}

OutcomePair sample_outcomes(const CorrelationModel& model, double theta,
                            PhiloxStream& rng) {
  const JointDistribution d = joint_distribution(model, theta);
  const double u = rng.next_double();
  if (u < d.p_pp) return {1, 1};
  if (u < d.p_pp + d.p_pm) return {1, -1};
  if (u < d.p_pp + d.p_pm + d.p_mp) return {-1, 1};
  return {-1, -1};
}

ExperimentEstimate run_experiment(const ExperimentConfig& config) {
  if (config.trials_per_bin < 1) {
    throw config_error("trials_per_bin must be at least 1");
  }
  if (config.bin_count < 2) {
    throw config_error("bin_count must be at least 2");
  }
  if (config.trials_per_bin >
      std::numeric_limits<std::uint64_t>::max() / config.bin_count) {
    throw config_error("trial count overflows");
  }

  ExperimentEstimate estimate;
  estimate.bins.resize(config.bin_count);
  for (std::uint32_t i = 0; i < config.bin_count; ++i) {
    const double theta =
        (static_cast<double>(i) + 0.5) * kPi / config.bin_count;
    PhiloxStream rng(config.seed, i);
    const JointDistribution d = joint_distribution(config.model, theta);
    const double t1 = d.p_pp;
    const double t2 = d.p_pp + d.p_pm;
    const double t3 = d.p_pp + d.p_pm + d.p_mp;
    std::int64_t sum_ab = 0;
    std::int64_t sum_a = 0;
    std::int64_t sum_b = 0;
    for (std::uint64_t k = 0; k < config.trials_per_bin; ++k) {
      (void)sample_axis_pair(config.axis_mode, theta, rng);
      const double u = rng.next_double();
      int a, b;
      if (u < t1) {
        a = 1;
        b = 1;
      } else if (u < t2) {
        a = 1;
        b = -1;
      } else if (u < t3) {
        a = -1;
        b = 1;
      } else {
        a = -1;
        b = -1;
      }
      sum_ab += a * b;
      sum_a += a;
      sum_b += b;
    }
    const double n = static_cast<double>(config.trials_per_bin);
    BinEstimate& bin = estimate.bins[i];
    bin.theta = theta;
    bin.n = config.trials_per_bin;
    bin.correlation = static_cast<double>(sum_ab) / n;
    bin.mean_a = static_cast<double>(sum_a) / n;
    bin.mean_b = static_cast<double>(sum_b) / n;
    if (config.trials_per_bin >= 2) {
      bin.std_error = std::sqrt(
          std::max(0.0, 1.0 - bin.correlation * bin.correlation) / n);
      bin.std_error_defined = true;
    } else {
      bin.std_error = std::numeric_limits<double>::quiet_NaN();
      bin.std_error_defined = false;
    }
  }
  return estimate;
}

EstimatedModel estimate_to_model(const ExperimentEstimate& estimate) {
  if (estimate.bins.size() < 3) {
    throw std::invalid_argument("estimate needs at least 3 bins to tabulate");
  }
  std::vector<TableSample> samples;
  samples.reserve(estimate.bins.size());
  double max_se = 0.0;
  for (const BinEstimate& bin : estimate.bins) {
    if (bin.n < 2 || !bin.std_error_defined) {
      throw std::invalid_argument(
          "every bin needs n >= 2 and a defined standard error");
    }
    samples.push_back({bin.theta, bin.correlation});
    max_se = std::max(max_se, bin.std_error);
  }
  const double step = samples[1].theta_radians - samples[0].theta_radians;
  TabulatedOptions options;
  options.lipschitz_bound =
      std::max(options.lipschitz_bound, 8.0 * max_se / step + 2.0);
  EstimatedModel out{
      tabulated_from_samples(samples, std::max(max_se, 1e-12), options),
      std::max(max_se, 1e-12)};
  return out;
}

}  // namespace bellkit
