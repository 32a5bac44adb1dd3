// SPDX-License-Identifier: Apache-2.0
#include "mvsde/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvsde/errors.hpp"

namespace mvsde::bounds {
namespace {

void require_nonnegative_tau(double tau) {
  if (!(tau >= 0.0)) throw InputError("delay tau must be >= 0");
}

void require_gain_exceeds(double alpha, double c, const char* name) {
  if (!(c > 0.0)) throw PreconditionError(std::string("constant ") + name + " must be positive");
  if (!(alpha > c)) {
    throw PreconditionError("gain must exceed " + std::string(name) + " (alpha=" +
                            std::to_string(alpha) + ", " + name + "=" + std::to_string(c) + ")");
  }
}

Binding binding_of(double first, double second) {
  if (first < second) return Binding::kFirst;
  if (second < first) return Binding::kSecond;
  return Binding::kTie;
}

// Root of phi(tau) = 4 alpha^2 tau^2 = 1/6.
double delay_root(double alpha) { return 1.0 / (2.0 * alpha * std::sqrt(6.0)); }

}  // namespace

double phi(double tau, double alpha) {
  require_nonnegative_tau(tau);
  return 4.0 * alpha * alpha * tau * tau;
}

double psi(double tau, double alpha, double A) {
  require_nonnegative_tau(tau);
  return 12.0 * A * A * tau + 4.0 * (3.0 * A * A + alpha * alpha) * tau * tau;
}

double varphi(double tau, double alpha, double C) {
  require_nonnegative_tau(tau);
  return 8.0 * C * C * tau + 4.0 * (2.0 * C * C + alpha * alpha) * tau * tau;
}

BetaCoefficients beta_coefficients(double tau, double alpha, double A, double C) {
  require_nonnegative_tau(tau);
  const double t2 = tau * tau;
  return {6.0 * A * A * tau + 2.0 * (3.0 * A * A + 2.0 * alpha * alpha) * t2,
          6.0 * A * A * (tau + t2),
          4.0 * C * C * tau + 4.0 * (C * C + alpha * alpha) * t2,
          4.0 * C * C * (tau + t2)};
}

std::string_view to_string(Binding binding) noexcept {
  switch (binding) {
    case Binding::kFirst: return "first";
    case Binding::kSecond: return "second";
    case Binding::kTie: return "tie";
  }
  return "unknown";
}

double positive_quadratic_root(double a, double b, double r) {
  if (!(a > 0.0) || !(b >= 0.0) || !(r > 0.0)) {
    throw InputError("positive_quadratic_root needs a > 0, b >= 0, r > 0");
  }
  // a t^2 + b t - r = 0; with q = -(b + sqrt(b^2 + 4ar))/2 the roots are q/a
  // (negative) and -r/q.
  return 2.0 * r / (b + std::sqrt(b * b + 4.0 * a * r));
}

BoundednessThresholds boundedness_thresholds(double alpha, double A, double B) {
  require_gain_exceeds(alpha, B, "B");
  if (!(A > 0.0)) throw PreconditionError("constant A must be positive");
  const double tau1 = delay_root(alpha);
  const double gap = alpha - B;
  const double tau2 = positive_quadratic_root(4.0 * (3.0 * A * A + alpha * alpha), 12.0 * A * A,
                                              gap * gap / (6.0 * alpha * alpha));
  return {tau1, tau2, std::min(tau1, tau2), binding_of(tau1, tau2)};
}

StabilizationThresholds stabilization_thresholds(double alpha, double C, double D) {
  require_gain_exceeds(alpha, D, "D");
  if (!(C > 0.0)) throw PreconditionError("constant C must be positive");
  const double tau3 = delay_root(alpha);
  const double gap = alpha - D;
  const double tau4 = positive_quadratic_root(4.0 * (2.0 * C * C + alpha * alpha), 8.0 * C * C,
                                              gap * gap / (6.0 * alpha * alpha));
  return {tau3, tau4, std::min(tau3, tau4), binding_of(tau3, tau4)};
}

RateBound decay_rate(double tau, double alpha, double C, double D) {
  const auto thresholds = stabilization_thresholds(alpha, C, D);
  if (!(tau > 0.0 && tau < thresholds.tau_double_star)) {
    throw PreconditionError("delay tau=" + std::to_string(tau) + " outside (0, tau**=" +
                            std::to_string(thresholds.tau_double_star) + ")");
  }
  const double gap = alpha - D;
  const double delay_branch = (1.0 - 6.0 * phi(tau, alpha)) / (2.0 * tau);
  const double growth_branch = (gap * gap - 6.0 * alpha * alpha * varphi(tau, alpha, C)) / gap;
  return {std::min(delay_branch, growth_branch), delay_branch, growth_branch};
}

LyapunovWeights lyapunov_weights(double alpha, double c) {
  require_gain_exceeds(alpha, c, "c");
  const double gap = alpha - c;
  return {2.0 * gap, 12.0 * alpha * alpha / gap};
}

}  // namespace mvsde::bounds
