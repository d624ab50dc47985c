#include "bellkit/chsh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bellkit/errors.hpp"

namespace bellkit {
namespace {

void check_unit(const Vec3& v, const char* name) {
  if (std::fabs(norm(v) - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string("axis ") + name +
                                " is not a unit vector");
  }
}

void check_family_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2.0)) {
    throw std::domain_error("family parameter must lie strictly in (0, pi/2)");
  }
}

// Folds an accumulated planar separation back into [0, pi].
double fold_to_pi(double x) {
  double w = std::fmod(x, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w > kPi) w = 2.0 * kPi - w;
  return w;
}

struct Budget {
  std::uint64_t used = 0;
  std::uint64_t limit = 0;
  bool spent() const { return used >= limit; }
};

// Coordinate descent from a start point: probe +-step on each coordinate,
// halve the step after a sweep with no improvement, stop below 1e-9 or when
// the budget runs out. Improvements must clear 1e-12 so exactly mirrored
// maxima cannot make the result drift between equal cells.
template <std::size_t N, typename Objective, typename Clamp>
void refine(std::array<double, N>& point, double& best, double step,
            const Objective& objective, const Clamp& clamp_coord,
            Budget& budget) {
  while (step > 1e-9 && !budget.spent()) {
    bool improved = false;
    for (std::size_t c = 0; c < N && !budget.spent(); ++c) {
      for (double dir : {1.0, -1.0}) {
        if (budget.spent()) break;
        std::array<double, N> probe = point;
        probe[c] = clamp_coord(c, probe[c] + dir * step);
        const double v = objective(probe);
        if (v > best + 1e-12) {
          best = v;
          point = probe;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

MaximizeResult maximize_coplanar(const CorrelationModel& model,
                                 std::uint64_t budget_limit) {
  Budget budget{0, budget_limit};
  const auto objective = [&](const std::array<double, 3>& p) {
    ++budget.used;
    const double t4 = fold_to_pi(p[0] + p[1] + p[2]);
    return std::fabs(model(p[1]) + model(p[2]) + model(p[0]) - model(t4));
  };

  const int m = std::clamp(
      static_cast<int>(std::cbrt(0.75 * static_cast<double>(budget_limit))), 4,
      161);
  const double step = kPi / static_cast<double>(m - 1);
  std::array<double, 3> best_point{};
  double best = -1.0;
  // The last grid index would overshoot pi by an ulp under i * step.
  const auto coord = [&](int i) { return std::min(i * step, kPi); };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const std::array<double, 3> p = {coord(i), coord(j), coord(k)};
        const double v = objective(p);
        if (v > best + 1e-12) {
          best = v;
          best_point = p;
        }
      }
    }
  }

  const auto clamp_coord = [](std::size_t, double x) {
    return std::clamp(x, 0.0, kPi);
  };
  refine(best_point, best, step, objective, clamp_coord, budget);

  MaximizeResult result;
  result.separations = best_point;
  result.axes =
      coplanar_quadruple(best_point[0], best_point[1], best_point[2]);
  result.record = chsh_general(model, result.axes);
  result.evaluations = budget.used;
  return result;
}

Vec3 from_spherical(double polar, double azimuth) {
  const double s = std::sin(polar);
  return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

MaximizeResult maximize_free(const CorrelationModel& model,
                             std::uint64_t budget_limit) {
  Budget budget{0, budget_limit};
  // Angles ordered (polar, azimuth) for a', b, a, b'.
  using Point = std::array<double, 8>;
  const auto axes_of = [](const Point& p) {
    AxisQuadruple q;
    q.a_prime = from_spherical(p[0], p[1]);
    q.b = from_spherical(p[2], p[3]);
    q.a = from_spherical(p[4], p[5]);
    q.b_prime = from_spherical(p[6], p[7]);
    return q;
  };
  const auto objective = [&](const Point& p) {
    ++budget.used;
    const AxisQuadruple q = axes_of(p);
    return std::fabs(model(angle_between(q.a, q.b)) +
                     model(angle_between(q.a, q.b_prime)) +
                     model(angle_between(q.a_prime, q.b)) -
                     model(angle_between(q.a_prime, q.b_prime)));
  };

  const int m = std::clamp(
      static_cast<int>(std::pow(0.75 * static_cast<double>(budget_limit),
                                1.0 / 8.0)),
      2, 7);
  const double polar_step = kPi / static_cast<double>(m - 1);
  const double azim_step = 2.0 * kPi / static_cast<double>(m);
  Point best_point{};
  double best = -1.0;
  Point p{};
  std::array<int, 8> idx{};
  for (;;) {
    for (int c = 0; c < 8; ++c) {
      p[c] = (c % 2 == 0) ? idx[c] * polar_step : idx[c] * azim_step;
    }
    const double v = objective(p);
    if (v > best + 1e-12) {
      best = v;
      best_point = p;
    }
    int c = 7;
    for (; c >= 0; --c) {
      if (++idx[c] < m) break;
      idx[c] = 0;
    }
    if (c < 0) break;
  }

  const auto clamp_coord = [](std::size_t c, double x) {
    if (c % 2 == 0) return std::clamp(x, 0.0, kPi);
    double w = std::fmod(x, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
  };
  refine(best_point, best, polar_step, objective, clamp_coord, budget);

  MaximizeResult result;
  result.axes = axes_of(best_point);
  result.separations = {angle_between(result.axes.a_prime, result.axes.b),
                        angle_between(result.axes.b, result.axes.a),
                        angle_between(result.axes.a, result.axes.b_prime)};
  result.record = chsh_general(model, result.axes);
  result.evaluations = budget.used;
  return result;
}

}  // namespace

const char* to_string(ChshFamily family) {
  switch (family) {
    case ChshFamily::General:
      return "general";
    case ChshFamily::Chsh1:
      return "chsh1";
    case ChshFamily::Chsh2:
      return "chsh2";
  }
  return "unknown";
}

ChshRecord chsh_general(const CorrelationModel& model,
                        const AxisQuadruple& axes) {
  check_unit(axes.a, "a");
  check_unit(axes.a_prime, "a'");
  check_unit(axes.b, "b");
  check_unit(axes.b_prime, "b'");
  const double t_ab = angle_between(axes.a, axes.b);
  const double t_abp = angle_between(axes.a, axes.b_prime);
  const double t_apb = angle_between(axes.a_prime, axes.b);
  const double t_apbp = angle_between(axes.a_prime, axes.b_prime);
  ChshRecord r;
  r.family = ChshFamily::General;
  r.axes = axes;
  r.value =
      std::fabs(model(t_ab) + model(t_abp) + model(t_apb) - model(t_apbp));
  r.quantum_reference = std::fabs(-std::cos(t_ab) - std::cos(t_abp) -
                                  std::cos(t_apb) + std::cos(t_apbp));
  return r;
}

ChshRecord chsh1(const CorrelationModel& model, double theta) {
  check_family_theta(theta);
  const double complement = kPi / 2.0 - theta;
  ChshRecord r;
  r.family = ChshFamily::Chsh1;
  r.theta = theta;
  r.value = std::fabs(2.0 * model(theta) + 2.0 * model(complement));
  r.quantum_reference = 2.0 * std::cos(theta) + 2.0 * std::cos(complement);
  return r;
}

ChshRecord chsh2(const CorrelationModel& model, double theta) {
  check_family_theta(theta);
  ChshRecord r;
  r.family = ChshFamily::Chsh2;
  r.theta = theta;
  r.value = std::fabs(3.0 * model(theta / 3.0) - model(theta));
  r.quantum_reference =
      std::fabs(3.0 * std::cos(theta / 3.0) - std::cos(theta));
  return r;
}

MaximizeResult maximize_chsh(const CorrelationModel& model,
                             bool restrict_coplanar, std::uint64_t budget) {
  if (budget < 1000) {
    throw config_error("maximize budget must be at least 1000 evaluations");
  }
  return restrict_coplanar ? maximize_coplanar(model, budget)
                           : maximize_free(model, budget);
}

}  // namespace bellkit
