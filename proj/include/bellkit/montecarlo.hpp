#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bellkit/correlation.hpp"
#include "bellkit/geometry.hpp"
#include "bellkit/philox.hpp"

namespace bellkit {

enum class AxisMode { UniformSphere, CoplanarUniform };

struct ExperimentConfig {
  CorrelationModel model = CorrelationModel::singlet();
  std::uint64_t trials_per_bin = 10000;
  std::uint32_t bin_count = 50;
  AxisMode axis_mode = AxisMode::UniformSphere;
  std::uint64_t seed = 0;
};

struct BinEstimate {
  double theta = 0.0;
  std::uint64_t n = 0;
  double correlation = 0.0;
  // sqrt((1 - c^2) / n); NaN with the flag cleared when n < 2.
  double std_error = 0.0;
  bool std_error_defined = false;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

struct ExperimentEstimate {
  std::vector<BinEstimate> bins;
};

// Draws an axis pair with separation target_theta. UniformSphere applies a
// Haar-random rotation (Shoemake quaternion, three uniforms) to a planar
// pair; CoplanarUniform rotates within the xy-plane (one uniform).
std::pair<Vec3, Vec3> sample_axis_pair(AxisMode mode, double target_theta,
                                       PhiloxStream& rng);

struct OutcomePair {
  int a = 1;
  int b = 1;
};

// Draws one outcome pair from joint_distribution(model, theta) by inverse
// transform on a single uniform (cell order ++, +-, -+, --).
OutcomePair sample_outcomes(const CorrelationModel& model, double theta,
                            PhiloxStream& rng);

// Estimates C on bin centers (i + 0.5) * pi / bin_count. Bin i consumes
// stream i of the seed exclusively, so results are independent of
// scheduling and bit-reproducible for a fixed (config, seed). Each trial
// draws its axis pair first, then one outcome variate.
ExperimentEstimate run_experiment(const ExperimentConfig& config);

struct EstimatedModel {
  CorrelationModel model;
  // Largest standard error across bins, floored at 1e-12; the natural
  // domination tolerance for a model built from this estimate.
  double tolerance_floor = 0.0;
};

// Tabulates the binned estimate (every bin must have n >= 2). The
// Lipschitz screen is widened by the noise allowance 8 * max std_error /
// bin step so statistically ordinary jumps between neighbors validate.
EstimatedModel estimate_to_model(const ExperimentEstimate& estimate);

}  // namespace bellkit
