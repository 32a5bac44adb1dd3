// SPDX-License-Identifier: Apache-2.0
#include "mvsde/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mvsde/errors.hpp"
#include "mvsde/rng.hpp"

namespace mvsde {
namespace {

void require_square(const Matrix& m, std::size_t dim, const char* name) {
  if (m.rows() != dim || m.cols() != dim) {
    throw InputError(std::string("model matrix ") + name + " must be " + std::to_string(dim) +
                     "x" + std::to_string(dim));
  }
}

void normalize_offset(Vector& v, std::size_t dim, const char* name) {
  if (v.empty()) {
    v.assign(dim, 0.0);
  } else if (v.size() != dim) {
    throw InputError(std::string("model offset ") + name + " must have length " +
                     std::to_string(dim));
  }
}

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

LinearMeanFieldModel::LinearMeanFieldModel(Coefficients coefficients) : c_(std::move(coefficients)) {
  if (c_.dim == 0) throw InputError("model dimension must be >= 1");
  require_square(c_.a1, c_.dim, "a1");
  require_square(c_.a2, c_.dim, "a2");
  require_square(c_.b1, c_.dim, "b1");
  require_square(c_.b2, c_.dim, "b2");
  require_square(c_.c1, c_.dim, "c1");
  require_square(c_.c2, c_.dim, "c2");
  normalize_offset(c_.f0, c_.dim, "f0");
  normalize_offset(c_.g0, c_.dim, "g0");
  normalize_offset(c_.g00, c_.dim, "g00");
}

LinearMeanFieldModel LinearMeanFieldModel::scalar(double a1, double a2, double b1, double b2,
                                                  double c1, double c2, double f0, double g0,
                                                  double g00) {
  Coefficients c;
  c.dim = 1;
  c.a1 = Matrix::scalar(a1);
  c.a2 = Matrix::scalar(a2);
  c.b1 = Matrix::scalar(b1);
  c.b2 = Matrix::scalar(b2);
  c.c1 = Matrix::scalar(c1);
  c.c2 = Matrix::scalar(c2);
  c.f0 = {f0};
  c.g0 = {g0};
  c.g00 = {g00};
  return LinearMeanFieldModel(std::move(c));
}

LinearMeanFieldModel LinearMeanFieldModel::zero(std::size_t dim) {
  Coefficients c;
  c.dim = dim;
  c.a1 = c.a2 = c.b1 = c.b2 = c.c1 = c.c2 = Matrix(dim, dim);
  return LinearMeanFieldModel(std::move(c));
}

bool LinearMeanFieldModel::has_zero_offsets() const noexcept {
  return all_zero(c_.f0) && all_zero(c_.g0) && all_zero(c_.g00);
}

void LinearMeanFieldModel::affine(const Matrix& on_x, const Matrix& on_m, const Vector& offset,
                                  std::span<const double> x, std::span<const double> m,
                                  std::span<double> out) const {
  std::copy(offset.begin(), offset.end(), out.begin());
  on_x.multiply_add(x, out);
  on_m.multiply_add(m, out);
}

void LinearMeanFieldModel::drift(std::span<const double> x, MeasureView,
                                 std::span<const double> mu_mean, std::span<double> out) const {
  affine(c_.a1, c_.a2, c_.f0, x, mu_mean, out);
}

void LinearMeanFieldModel::diffusion(std::span<const double> x, MeasureView,
                                     std::span<const double> mu_mean,
                                     std::span<double> out) const {
  affine(c_.b1, c_.b2, c_.g0, x, mu_mean, out);
}

void LinearMeanFieldModel::common_diffusion(std::span<const double> x, MeasureView,
                                            std::span<const double> mu_mean,
                                            std::span<double> out) const {
  affine(c_.c1, c_.c2, c_.g00, x, mu_mean, out);
}

void LinearMeanFieldModel::check_dims(std::span<const double> x,
                                      std::span<const double> m) const {
  if (x.size() != c_.dim || m.size() != c_.dim) {
    throw InputError("expected state and mean of dimension " + std::to_string(c_.dim) +
                     ", got " + std::to_string(x.size()) + " and " + std::to_string(m.size()));
  }
}

Vector LinearMeanFieldModel::eval_drift(std::span<const double> x,
                                        std::span<const double> m) const {
  check_dims(x, m);
  Vector out(c_.dim);
  affine(c_.a1, c_.a2, c_.f0, x, m, out);
  return out;
}

Vector LinearMeanFieldModel::eval_diffusion(std::span<const double> x,
                                            std::span<const double> m) const {
  check_dims(x, m);
  Vector out(c_.dim);
  affine(c_.b1, c_.b2, c_.g0, x, m, out);
  return out;
}

Vector LinearMeanFieldModel::eval_common_diffusion(std::span<const double> x,
                                                   std::span<const double> m) const {
  check_dims(x, m);
  Vector out(c_.dim);
  affine(c_.c1, c_.c2, c_.g00, x, m, out);
  return out;
}

void validate_constants(const LinearMeanFieldModel& model, const ConstantsBundle& bundle) {
  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) {
      throw InputError(std::string("constant ") + name + " must be a positive finite number");
    }
  };
  positive(bundle.L, "L");
  positive(bundle.A, "A");
  positive(bundle.B, "B");
  positive(bundle.C, "C");
  positive(bundle.D, "D");
  if (model.has_zero_offsets()) {
    if (bundle.A && bundle.C && *bundle.C > *bundle.A) {
      throw InputError("zero-offset model: homogeneous constant C must not exceed A");
    }
    if (bundle.B && bundle.D && *bundle.D > *bundle.B) {
      throw InputError("zero-offset model: homogeneous constant D must not exceed B");
    }
  }
}

void validate_control(const ControlParams& control) {
  if (!(control.alpha >= 0.0) || !std::isfinite(control.alpha)) {
    throw InputError("feedback gain alpha must be finite and >= 0");
  }
  if (!(control.tau >= 0.0) || !std::isfinite(control.tau)) {
    throw InputError("delay tau must be finite and >= 0");
  }
}

std::string_view to_string(Inequality which) noexcept {
  switch (which) {
    case Inequality::kLipschitz: return "lipschitz_L";
    case Inequality::kLinearGrowth: return "linear_growth_A";
    case Inequality::kMonotone: return "monotone_B";
    case Inequality::kHomogeneousGrowth: return "homogeneous_growth_C";
    case Inequality::kHomogeneousMonotone: return "homogeneous_monotone_D";
  }
  return "unknown";
}

bool AuditReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

constexpr double kAuditSlack = 1e-12;

struct Evaluated {
  Vector f, g, g0;
  double sq_norm_x;
  double second_moment;  // W2^2(mu, delta_0)
};

Evaluated evaluate(const LinearMeanFieldModel& model, std::span<const double> x, MeasureView mu) {
  const Vector m = mean(mu);
  return {model.eval_drift(x, m), model.eval_diffusion(x, m), model.eval_common_diffusion(x, m),
          squared_norm(x), second_moment(mu)};
}

double ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double max_norm(const Evaluated& e) {
  return std::max({norm(e.f), norm(e.g), norm(e.g0)});
}

double monotone_lhs(std::span<const double> x, const Evaluated& e) {
  return 2.0 * dot(x, e.f) + squared_norm(e.g) + squared_norm(e.g0);
}

Vector point_in_ball(CounterStream& rng, std::size_t dim, double radius) {
  Vector v(dim);
  for (double& c : v) c = rng.normal();
  const double n = norm(v);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
  for (double& c : v) c = n > 0.0 ? c * r / n : 0.0;
  return v;
}

}  // namespace

AuditReport audit_constants(const LinearMeanFieldModel& model, const ConstantsBundle& bundle,
                            double radius, std::size_t samples, std::uint64_t seed) {
  if (!(radius > 0.0)) throw InputError("audit radius must be positive");
  if (samples == 0) throw InputError("audit needs at least one sample");
  validate_constants(model, bundle);

  const std::size_t d = model.dim();
  CounterStream rng(seed, 0xA0D17);

  double worst_l = -std::numeric_limits<double>::infinity();
  double worst_a = worst_l, worst_b = worst_l, worst_c = worst_l, worst_d = worst_l;

  constexpr std::size_t kMaxAtoms = 8;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = point_in_ball(rng, d, radius);
    const Vector y = point_in_ball(rng, d, radius);

    std::vector<double> mu_flat, nu_flat;
    double w2_mu_nu = 0.0;
    if (d == 1) {
      const std::size_t atoms = 1 + static_cast<std::size_t>(rng.uniform() * kMaxAtoms) % kMaxAtoms;
      for (std::size_t i = 0; i < atoms; ++i) mu_flat.push_back(rng.uniform(-radius, radius));
      for (std::size_t i = 0; i < atoms; ++i) nu_flat.push_back(rng.uniform(-radius, radius));
      w2_mu_nu = w2_1d(MeasureView(mu_flat, 1), MeasureView(nu_flat, 1));
    } else {
      mu_flat = point_in_ball(rng, d, radius);
      nu_flat = point_in_ball(rng, d, radius);
      w2_mu_nu = std::sqrt(squared_distance(mu_flat, nu_flat));
    }
    const MeasureView mu(mu_flat, d);
    const MeasureView nu(nu_flat, d);

    const Evaluated ex = evaluate(model, x, mu);
    const Evaluated ey = evaluate(model, y, nu);

    if (bundle.L) {
      const double lhs = std::max({std::sqrt(squared_distance(ex.f, ey.f)),
                                   std::sqrt(squared_distance(ex.g, ey.g)),
                                   std::sqrt(squared_distance(ex.g0, ey.g0))});
      const double rhs = *bundle.L * (std::sqrt(squared_distance(x, y)) + w2_mu_nu);
      worst_l = std::max(worst_l, ratio(lhs, rhs));
    }
    for (const auto* e : {&ex, &ey}) {
      const auto& point = (e == &ex) ? x : y;
      const double nx = std::sqrt(e->sq_norm_x);
      const double w2 = std::sqrt(e->second_moment);
      if (bundle.A) worst_a = std::max(worst_a, ratio(max_norm(*e), *bundle.A * (1.0 + nx + w2)));
      if (bundle.C) worst_c = std::max(worst_c, ratio(max_norm(*e), *bundle.C * (nx + w2)));
      const double mono = monotone_lhs(point, *e);
      if (bundle.B) {
        worst_b = std::max(worst_b,
                           ratio(mono, *bundle.B * (1.0 + e->sq_norm_x + e->second_moment)));
      }
      if (bundle.D) {
        worst_d = std::max(worst_d, ratio(mono, *bundle.D * (e->sq_norm_x + e->second_moment)));
      }
    }
  }

  AuditReport report;
  report.samples = samples;
  auto add = [&](Inequality which, const std::optional<double>& constant, double worst) {
    if (!constant) return;
    report.checks.push_back({which, *constant, worst, worst <= 1.0 + kAuditSlack});
  };
  add(Inequality::kLipschitz, bundle.L, worst_l);
  add(Inequality::kLinearGrowth, bundle.A, worst_a);
  add(Inequality::kMonotone, bundle.B, worst_b);
  add(Inequality::kHomogeneousGrowth, bundle.C, worst_c);
  add(Inequality::kHomogeneousMonotone, bundle.D, worst_d);
  return report;
}

}  // namespace mvsde
