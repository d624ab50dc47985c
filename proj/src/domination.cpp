#include "bellkit/domination.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bellkit/errors.hpp"

namespace bellkit {
namespace {

// Correlation read with the |C| <= 1 invariant enforced; analysis routines
// must not quietly continue past a broken model.
double eval_checked(const CorrelationModel& model, double sign, double theta) {
  const double c = sign * model(theta);
  if (!(std::fabs(c) <= 1.0 + 1e-12)) {
    throw model_integrity_error("correlation outside [-1, 1] at theta " +
                                std::to_string(theta));
  }
  return c;
}

ContractionCertificate contraction_impl(const CorrelationModel& model,
                                        double sign, double theta1) {
  if (!(theta1 > 0.0 && theta1 < kPi / 2.0)) {
    throw std::domain_error("contraction seed must lie strictly in (0, pi/2)");
  }
  const double delta = -std::cos(theta1) - eval_checked(model, sign, theta1);
  if (!(delta > 0.0)) {
    throw std::invalid_argument(
        "contraction seed does not exceed the singlet correlation");
  }
  const int cap = theorem_iteration_bound(theta1, delta);

  const auto probe = [&](double tau) {
    const double cand = std::fabs(3.0 * eval_checked(model, sign, tau / 3.0) -
                                  eval_checked(model, sign, tau));
    const double quantum = 3.0 * std::cos(tau / 3.0) - std::cos(tau);
    return std::pair<double, double>(cand, quantum);
  };
  const auto make = [&](int n_star, double tau, double cand, double quantum) {
    ContractionCertificate c;
    c.theta1 = theta1;
    c.delta = delta;
    c.n_star = n_star;
    c.witness_angle = tau;
    c.candidate_value = cand;
    c.quantum_value = quantum;
    c.below_native_resolution =
        model.native_step() > 0.0 && tau < model.native_step();
    return c;
  };

  double pow3 = 1.0;  // 3^(n-1) when testing depth n
  for (int n = 1; n <= cap + 1; ++n) {
    const double tau = theta1 / pow3;
    const auto [cand, quantum] = probe(tau);
    if (cand < quantum) return make(n - 1, tau, cand, quantum);

    pow3 *= 3.0;
    if (theta1 * theta1 < 2.0 * delta * pow3) {
      // Depth n hit the guaranteed ceiling: the advantage now outweighs the
      // quadratic gap, so the next angle down must under-violate.
      const double w = theta1 / pow3;
      const auto [c2, q2] = probe(w);
      if (c2 < q2) return make(n, w, c2, q2);
      // Unreachable for any model honoring |C| <= 1; kept as a hard stop so
      // a silent numerical breakdown cannot masquerade as a certificate.
      double best_gap = 0.0;
      double best_tau = 0.0, best_cand = 0.0, best_quantum = 0.0;
      double p = 1.0;
      for (int k = 0; k <= n + 2; ++k, p *= 3.0) {
        const double t = theta1 / p;
        const auto [ck, qk] = probe(t);
        if (qk - ck > best_gap) {
          best_gap = qk - ck;
          best_tau = t;
          best_cand = ck;
          best_quantum = qk;
        }
      }
      if (best_gap > 0.0) return make(n, best_tau, best_cand, best_quantum);
      throw model_integrity_error(
          "contraction exhausted its depth ceiling without finding an "
          "under-violation");
    }
  }
  throw model_integrity_error("contraction overran its iteration cap");
}

}  // namespace

std::optional<double> sign_consistency_check(const CorrelationModel& model,
                                             int grid_size) {
  if (grid_size < 16) {
    throw std::invalid_argument("sign check needs grid_size >= 16");
  }
  constexpr double kZero = 1e-12;
  const double step = (kPi / 2.0) / static_cast<double>(grid_size);
  double prev_t = 0.0;
  double prev_c = 0.0;
  bool have_prev = false;
  for (int k = 1; k < grid_size; ++k) {
    const double t = k * step;
    const double c = eval_checked(model, 1.0, t);
    if (std::fabs(c) <= kZero) return t;
    if (have_prev && std::signbit(c) != std::signbit(prev_c)) {
      double lo = prev_t;
      double hi = t;
      const bool lo_negative = std::signbit(prev_c);
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double cm = eval_checked(model, 1.0, mid);
        if (std::fabs(cm) <= kZero) return mid;
        if (std::signbit(cm) == lo_negative) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_c = c;
    have_prev = true;
  }
  return std::nullopt;
}

int theorem_iteration_bound(double theta1, double delta) {
  if (!(theta1 > 0.0 && theta1 < kPi / 2.0)) {
    throw std::domain_error("theta1 must lie strictly in (0, pi/2)");
  }
  if (!(std::isfinite(delta) && delta > 0.0)) {
    throw std::invalid_argument("delta must be finite and > 0");
  }
  const double target = theta1 * theta1;
  double pow3 = 1.0;
  int n = 0;
  while (!(target < 2.0 * delta * pow3)) {
    pow3 *= 3.0;
    ++n;
    if (n > 4000) {
      throw config_error("iteration bound did not converge");
    }
  }
  return n;
}

ContractionCertificate contraction_certificate(const CorrelationModel& model,
                                               double theta1) {
  return contraction_impl(model, 1.0, theta1);
}

const char* to_string(VerdictOutcome outcome) {
  switch (outcome) {
    case VerdictOutcome::WitnessFound:
      return "witness_found";
    case VerdictOutcome::CoincidesWithSinglet:
      return "coincides_with_singlet";
    case VerdictOutcome::CoincidesWithFlippedSinglet:
      return "coincides_with_flipped_singlet";
  }
  return "unknown";
}

DominationVerdict find_domination_witness(const CorrelationModel& model,
                                          double tolerance, int grid_size) {
  if (!(std::isfinite(tolerance) && tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be finite and > 0");
  }
  if (grid_size < 1000) {
    throw std::invalid_argument("witness search needs grid_size >= 1000");
  }

  if (const auto crossing = sign_consistency_check(model, grid_size)) {
    // A zero inside (0, pi/2) caps both C(theta) and C(pi/2 - theta) near
    // the crossing, so chsh1 there cannot reach its quantum reference.
    const ChshRecord rec = chsh1(model, *crossing);
    DominationVerdict v;
    v.outcome = VerdictOutcome::WitnessFound;
    v.family = ChshFamily::Chsh1;
    v.theta = *crossing;
    v.candidate_value = rec.value;
    v.quantum_value = rec.quantum_reference;
    return v;
  }

  const double step = (kPi / 2.0) / static_cast<double>(grid_size);
  // No crossing: C keeps one sign on (0, pi/2). The sign-adjusted view D
  // matches the singlet branch, so D(theta) - (-cos theta) measures the
  // candidate's advantage pointwise.
  const double sign = eval_checked(model, 1.0, step) > 0.0 ? -1.0 : 1.0;
  double max_dev = 0.0;
  for (int k = 1; k < grid_size; ++k) {
    const double t = k * step;
    const double dev = eval_checked(model, sign, t) + std::cos(t);
    max_dev = std::max(max_dev, std::fabs(dev));
    if (dev < -tolerance) {
      // D sits strictly below -cos here: an excess over the singlet in
      // magnitude, which the contraction turns into a chsh2 witness.
      const ContractionCertificate cert = contraction_impl(model, sign, t);
      DominationVerdict v;
      v.outcome = VerdictOutcome::WitnessFound;
      v.family = ChshFamily::Chsh2;
      v.theta = cert.witness_angle;
      v.candidate_value = cert.candidate_value;
      v.quantum_value = cert.quantum_value;
      v.certificate = cert;
      return v;
    }
    if (dev > tolerance) {
      // D sits strictly above -cos: check the chsh1 deficit at this angle.
      // The complement angle can compensate, so this is reported only when
      // the evaluated value genuinely falls short.
      const double value = std::fabs(2.0 * eval_checked(model, sign, t) +
                                     2.0 * eval_checked(model, sign,
                                                        kPi / 2.0 - t));
      const double quantum =
          2.0 * std::cos(t) + 2.0 * std::cos(kPi / 2.0 - t);
      if (value < quantum - 1e-12) {
        DominationVerdict v;
        v.outcome = VerdictOutcome::WitnessFound;
        v.family = ChshFamily::Chsh1;
        v.theta = t;
        v.candidate_value = value;
        v.quantum_value = quantum;
        return v;
      }
    }
  }

  DominationVerdict v;
  v.outcome = sign < 0.0 ? VerdictOutcome::CoincidesWithFlippedSinglet
                         : VerdictOutcome::CoincidesWithSinglet;
  v.max_deviation = max_dev;
  return v;
}

}  // namespace bellkit
