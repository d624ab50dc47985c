#pragma once

#include <optional>

#include "bellkit/chsh.hpp"
#include "bellkit/correlation.hpp"

namespace bellkit {

// Scans (0, pi/2) on a uniform grid of grid_size cells (>= 16, else
// std::invalid_argument) for a sign change or zero of C. Grid zeros (|C| <=
// 1e-12) are returned directly; sign flips between neighbors are bisected
// to an interval of width 1e-10. Returns the crossing angle, or nullopt
// when C keeps one sign on the whole grid.
std::optional<double> sign_consistency_check(const CorrelationModel& model,
                                             int grid_size);

// Smallest n >= 0 with theta1^2 < 2 * delta * 3^n, by direct enumeration.
// This is the guaranteed ceiling on the contraction depth: once the shrunken
// advantage delta * 3^-n exceeds the quadratic gap theta1^2 * 3^-2n / 2, a
// triple of the test angle can no longer reach the quantum value.
int theorem_iteration_bound(double theta1, double delta);

struct ContractionCertificate {
  double theta1 = 0.0;
  double delta = 0.0;
  int n_star = 0;
  double witness_angle = 0.0;
  double candidate_value = 0.0;
  double quantum_value = 0.0;
  // Set when the witness angle falls below the mean spacing of a tabulated
  // model's input grid, i.e. the conclusion rests on interpolated values.
  bool below_native_resolution = false;
};

// Drives the contraction argument from a seed angle theta1 in (0, pi/2)
// where the model correlates more strongly than the singlet: delta =
// -cos(theta1) - C(theta1) must be > 0, else std::invalid_argument. Walks
// theta1 * 3^-n until the chsh2 value at the test angle drops below its
// quantum reference, which the iteration bound guarantees after at most
// theorem_iteration_bound(theta1, delta) steps. n_star is the depth reached.
ContractionCertificate contraction_certificate(const CorrelationModel& model,
                                               double theta1);

enum class VerdictOutcome {
  WitnessFound,
  CoincidesWithSinglet,
  CoincidesWithFlippedSinglet
};

const char* to_string(VerdictOutcome outcome);

struct DominationVerdict {
  VerdictOutcome outcome = VerdictOutcome::CoincidesWithSinglet;
  std::optional<ChshFamily> family;
  std::optional<double> theta;
  std::optional<double> candidate_value;
  std::optional<double> quantum_value;
  std::optional<double> max_deviation;
  std::optional<ContractionCertificate> certificate;
};

// Decides whether the model dominates the singlet correlations or witnesses
// a strict CHSH under-violation. Stages, on the grid k * (pi/2) / grid_size
// (grid_size >= 1000):
//   1. a sign change of C yields a chsh1 witness at the crossing;
//   2. one ascending scan compares the sign-adjusted correlation D with
//      -cos per point. D above -cos by more than `tolerance` is checked as
//      a chsh1 witness at that angle; D below -cos by more than `tolerance`
//      seeds the contraction and reports its chsh2 witness. First trigger
//      wins, so the smallest-theta witness is returned.
//   3. no trigger anywhere: the model coincides with the (possibly flipped)
//      singlet within tolerance; max_deviation reports the sup distance
//      seen on the grid.
DominationVerdict find_domination_witness(const CorrelationModel& model,
                                          double tolerance, int grid_size);

}  // namespace bellkit
