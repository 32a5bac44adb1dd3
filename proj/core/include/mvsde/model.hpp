// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvsde/linalg.hpp"
#include "mvsde/measure.hpp"

namespace mvsde {

/// Coefficients (f, g, g0) of a mean-field SDE driven by one idiosyncratic
/// and one common scalar Brownian motion. Each call writes a d-vector.
///
/// `mu` is the (conditional) empirical measure of the particle cloud and
/// `mu_mean` its precomputed mean; implementations that only need the mean
/// may ignore `mu`.
class CoefficientModel {
 public:
  virtual ~CoefficientModel() = default;

  virtual std::size_t dim() const noexcept = 0;
  virtual void drift(std::span<const double> x, MeasureView mu, std::span<const double> mu_mean,
                     std::span<double> out) const = 0;
  virtual void diffusion(std::span<const double> x, MeasureView mu,
                         std::span<const double> mu_mean, std::span<double> out) const = 0;
  virtual void common_diffusion(std::span<const double> x, MeasureView mu,
                                std::span<const double> mu_mean, std::span<double> out) const = 0;
};

/// f = a1 x + a2 m + f0,  g = b1 x + b2 m + g0,  g^0 = c1 x + c2 m + g00,
/// where m is the mean of the measure argument.
class LinearMeanFieldModel final : public CoefficientModel {
 public:
  struct Coefficients {
    std::size_t dim = 1;
    Matrix a1, a2, b1, b2, c1, c2;
    Vector f0, g0, g00;  // empty means zero
  };

  explicit LinearMeanFieldModel(Coefficients coefficients);

  /// dy = (a1 y + a2 E^1 y) dt + (b1 y + b2 E^1 y) dW + (c1 y + c2 E^1 y) dW^0, d = 1.
  static LinearMeanFieldModel scalar(double a1, double a2, double b1, double b2, double c1,
                                     double c2, double f0 = 0.0, double g0 = 0.0,
                                     double g00 = 0.0);
  static LinearMeanFieldModel zero(std::size_t dim = 1);

  std::size_t dim() const noexcept override { return c_.dim; }
  const Coefficients& coefficients() const noexcept { return c_; }
  bool has_zero_offsets() const noexcept;

  void drift(std::span<const double> x, MeasureView mu, std::span<const double> mu_mean,
             std::span<double> out) const override;
  void diffusion(std::span<const double> x, MeasureView mu, std::span<const double> mu_mean,
                 std::span<double> out) const override;
  void common_diffusion(std::span<const double> x, MeasureView mu,
                        std::span<const double> mu_mean, std::span<double> out) const override;

  // Mean-only evaluation; x and m must have length dim().
  Vector eval_drift(std::span<const double> x, std::span<const double> m) const;
  Vector eval_diffusion(std::span<const double> x, std::span<const double> m) const;
  Vector eval_common_diffusion(std::span<const double> x, std::span<const double> m) const;

 private:
  void affine(const Matrix& on_x, const Matrix& on_m, const Vector& offset,
              std::span<const double> x, std::span<const double> m, std::span<double> out) const;
  void check_dims(std::span<const double> x, std::span<const double> m) const;

  Coefficients c_;
};

/// Structural constants. Only supplied constants are audited or consumed.
///   L: Lipschitz           |h(x,mu) - h(y,nu)|         <= L(|x-y| + W2(mu,nu))
///   A: linear growth       |h(x,mu)|                   <= A(1 + |x| + W2(mu,d0))
///   B: monotone growth     2<x,f> + |g|^2 + |g0|^2     <= B(1 + |x|^2 + W2^2(mu,d0))
///   C: homogeneous growth  |h(x,mu)|                   <= C(|x| + W2(mu,d0))
///   D: homogeneous monot.  2<x,f> + |g|^2 + |g0|^2     <= D(|x|^2 + W2^2(mu,d0))
/// with h ranging over f, g, g0.
struct ConstantsBundle {
  std::optional<double> L, A, B, C, D;
};

/// Throws InputError if any supplied constant is not strictly positive, or if
/// a zero-offset model is paired with C > A or D > B.
void validate_constants(const LinearMeanFieldModel& model, const ConstantsBundle& bundle);

/// Feedback gain alpha and response lag tau of the control -alpha X(t - tau).
/// alpha = 0 is allowed and means "uncontrolled".
struct ControlParams {
  double alpha = 0.0;
  double tau = 0.0;
};

void validate_control(const ControlParams& control);

enum class Inequality { kLipschitz, kLinearGrowth, kMonotone, kHomogeneousGrowth,
                        kHomogeneousMonotone };

std::string_view to_string(Inequality which) noexcept;

struct InequalityAudit {
  Inequality which;
  double constant;
  double worst_ratio;  // max over samples of lhs / rhs
  bool passed;
};

struct AuditReport {
  std::vector<InequalityAudit> checks;  // one entry per supplied constant
  std::size_t samples = 0;
  bool all_passed() const noexcept;
};

/// Samples `samples` pairs of points in the ball of the given radius and
/// pairs of discrete measures (1-D: equal-size atom sets compared with the
/// exact sorted coupling; d > 1: Dirac measures) and checks every inequality
/// whose constant is supplied. A failure refutes the constant; a pass is only
/// evidence. Deterministic in `seed`.
AuditReport audit_constants(const LinearMeanFieldModel& model, const ConstantsBundle& bundle,
                            double radius, std::size_t samples, std::uint64_t seed);

}  // namespace mvsde
