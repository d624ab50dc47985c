#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "bellkit/correlation.hpp"
#include "bellkit/geometry.hpp"

namespace bellkit {

enum class ChshFamily { General, Chsh1, Chsh2 };

const char* to_string(ChshFamily family);

// One evaluated CHSH combination. theta is set for the one-parameter
// families, axes for general layouts; quantum_reference is the value the
// singlet correlation -cos produces on the same combination.
struct ChshRecord {
  ChshFamily family = ChshFamily::General;
  std::optional<double> theta;
  std::optional<AxisQuadruple> axes;
  double value = 0.0;
  double quantum_reference = 0.0;
};

// |C(a,b) + C(a,b') + C(a',b) - C(a',b')| with pairwise angles taken
// between the given unit axes (norms within 1e-10 of 1, else
// std::invalid_argument).
ChshRecord chsh_general(const CorrelationModel& model,
                        const AxisQuadruple& axes);

// One-parameter family on the coplanar layout a' = 0, b = theta,
// a = pi/2, b' = pi/2 + theta: value |2 C(theta) + 2 C(pi/2 - theta)|.
// theta must lie strictly inside (0, pi/2).
ChshRecord chsh1(const CorrelationModel& model, double theta);

// One-parameter family on a' = 0, b = theta/3, a = 2 theta/3, b' = theta:
// value |3 C(theta/3) - C(theta)|. theta strictly inside (0, pi/2).
ChshRecord chsh2(const CorrelationModel& model, double theta);

struct MaximizeResult {
  AxisQuadruple axes;
  // Successive coplanar separations (a' to b, b to a, a to b'); meaningful
  // for the coplanar search, derived pairwise angles otherwise.
  std::array<double, 3> separations{};
  ChshRecord record;
  std::uint64_t evaluations = 0;
};

// Maximizes |chsh_general| over axis layouts: coarse grid then coordinate
// descent, spending at most `budget` objective evaluations (must be >=
// 1000, else config_error). restrict_coplanar confines the search to the
// three-separation planar parameterization; otherwise all eight spherical
// angles are free.
MaximizeResult maximize_chsh(const CorrelationModel& model,
                             bool restrict_coplanar, std::uint64_t budget);

}  // namespace bellkit
