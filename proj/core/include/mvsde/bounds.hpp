// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace mvsde::bounds {

/// phi(tau) = 4 alpha^2 tau^2.
double phi(double tau, double alpha);
/// psi(tau) = 12 A^2 tau + 4 (3 A^2 + alpha^2) tau^2.
double psi(double tau, double alpha, double A);
/// varphi(tau) = 8 C^2 tau + 4 (2 C^2 + alpha^2) tau^2.
double varphi(double tau, double alpha, double C);

struct BetaCoefficients {
  double beta1;  // 6 A^2 tau + 2 (3 A^2 + 2 alpha^2) tau^2
  double beta2;  // 6 A^2 (tau + tau^2)
  double beta3;  // 4 C^2 tau + 4 (C^2 + alpha^2) tau^2
  double beta4;  // 4 C^2 (tau + tau^2)
};

BetaCoefficients beta_coefficients(double tau, double alpha, double A, double C);

/// Which of the two thresholds is the smaller one.
enum class Binding { kFirst, kSecond, kTie };
std::string_view to_string(Binding binding) noexcept;

/// Admissible delays for mean-square boundedness: tau_star = min(tau1, tau2).
struct BoundednessThresholds {
  double tau1;  // phi(tau1) = 1/6
  double tau2;  // psi(tau2) = (alpha - B)^2 / (6 alpha^2)
  double tau_star;
  Binding binding;
};

/// Admissible delays for mean-square exponential stability.
struct StabilizationThresholds {
  double tau3;  // phi(tau3) = 1/6
  double tau4;  // varphi(tau4) = (alpha - D)^2 / (6 alpha^2)
  double tau_double_star;
  Binding binding;
};

struct RateBound {
  double gamma;        // min of the two branches
  double delay_branch;  // (1 - 6 phi(tau)) / (2 tau)
  double growth_branch; // ((alpha - D)^2 - 6 alpha^2 varphi(tau)) / (alpha - D)
};

struct LyapunovWeights {
  double zeta;   // 2 (alpha - c)
  double sigma;  // 12 alpha^2 / (alpha - c)
};

/// Positive root of a tau^2 + b tau = r for a > 0, b >= 0, r > 0, computed
/// without the b - sqrt(b^2 + 4ar) cancellation.
double positive_quadratic_root(double a, double b, double r);

/// Requires alpha > B > 0 and A > 0; throws PreconditionError otherwise.
BoundednessThresholds boundedness_thresholds(double alpha, double A, double B);

/// Requires alpha > D > 0 and C > 0; throws PreconditionError otherwise.
StabilizationThresholds stabilization_thresholds(double alpha, double C, double D);

/// Mean-square decay-rate bound; requires 0 < tau < tau_double_star.
RateBound decay_rate(double tau, double alpha, double C, double D);

/// Weights of the composite Lyapunov functional; c is B (boundedness) or D
/// (stabilization). Requires alpha > c.
LyapunovWeights lyapunov_weights(double alpha, double c);

}  // namespace mvsde::bounds
