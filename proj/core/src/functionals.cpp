// SPDX-License-Identifier: Apache-2.0
#include "mvsde/functionals.hpp"

#include <string>

#include "mvsde/errors.hpp"

namespace mvsde {
namespace {

struct Scratch {
  explicit Scratch(std::size_t d) : f(d), g(d), g0(d) {}
  Vector f, g, g0;
};

// Fills s with f - alpha x_del, g, g0 at particle x.
ParticleCoefficients coefficients_at(Scratch& s, std::span<const double> x,
                                     std::span<const double> x_delayed, MeasureView mu,
                                     std::span<const double> mu_mean,
                                     const CoefficientModel& model, const ControlParams& control) {
  model.drift(x, mu, mu_mean, s.f);
  model.diffusion(x, mu, mu_mean, s.g);
  model.common_diffusion(x, mu, mu_mean, s.g0);
  for (std::size_t c = 0; c < s.f.size(); ++c) s.f[c] -= control.alpha * x_delayed[c];
  return {s.f, s.g, s.g0};
}

void check_cloud(MeasureView current, MeasureView delayed, const CoefficientModel& model) {
  if (current.dim() != model.dim() || delayed.dim() != model.dim() ||
      current.size() != delayed.size()) {
    throw InputError("particle cloud and delayed cloud must match the model dimension and size");
  }
}

// Mean over particles of the per-particle value produced by `term`.
template <typename Term>
double particle_average(MeasureView current, MeasureView delayed, const CoefficientModel& model,
                        const ControlParams& control, Term term) {
  check_cloud(current, delayed, model);
  const Vector m = mean(current);
  Scratch s(model.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    const auto c =
        coefficients_at(s, current.atom(i), delayed.atom(i), current, m, model, control);
    acc += term(current.atom(i), c);
  }
  return acc / static_cast<double>(current.size());
}

}  // namespace

double i2_integrand_value(const ParticleCoefficients& c, double tau) noexcept {
  return tau * squared_norm(c.controlled_drift) + squared_norm(c.diffusion) +
         squared_norm(c.common_diffusion);
}

double generator_own_value(std::span<const double> x, const ParticleCoefficients& c) noexcept {
  return 2.0 * dot(x, c.controlled_drift) + squared_norm(c.diffusion) +
         squared_norm(c.common_diffusion);
}

double generator_lu(std::span<const double> x, std::span<const double> x_delayed, MeasureView mu,
                    std::span<const double> mu_mean, const CoefficientModel& model,
                    const ControlParams& control) {
  if (x.size() != model.dim() || x_delayed.size() != model.dim() ||
      mu_mean.size() != model.dim()) {
    throw InputError("generator_lu: dimension mismatch");
  }
  Scratch s(model.dim());
  return generator_own_value(x, coefficients_at(s, x, x_delayed, mu, mu_mean, model, control));
}

GeneratorValue generator_lu_at(std::size_t i, MeasureView current, MeasureView delayed,
                               const CoefficientModel& model, const ControlParams& control) {
  if (i >= current.size()) throw InputError("generator_lu_at: particle index out of range");
  const double block = particle_average(
      current, delayed, model, control,
      [](std::span<const double> x, const ParticleCoefficients& c) {
        return generator_own_value(x, c);
      });
  const Vector m = mean(current);
  const double own = generator_lu(current.atom(i), delayed.atom(i), current, m, model, control);
  return {own, block};
}

double generator_lu_average(MeasureView current, MeasureView delayed,
                            const CoefficientModel& model, const ControlParams& control) {
  return 2.0 * particle_average(current, delayed, model, control,
                                [](std::span<const double> x, const ParticleCoefficients& c) {
                                  return generator_own_value(x, c);
                                });
}

double i2_integrand(MeasureView current, MeasureView delayed, const CoefficientModel& model,
                    const ControlParams& control) {
  const double tau = control.tau;
  return particle_average(current, delayed, model, control,
                          [tau](std::span<const double>, const ParticleCoefficients& c) {
                            return i2_integrand_value(c, tau);
                          });
}

double i2_discrete(std::span<const GridPoint> window, std::size_t dim,
                   const CoefficientModel& model, const ControlParams& control, double dt,
                   std::size_t delay_steps) {
  if (window.size() < delay_steps) {
    throw InputError("i2_discrete: window has " + std::to_string(window.size()) +
                     " grid points, need " + std::to_string(delay_steps));
  }
  double acc = 0.0;
  for (std::size_t j = window.size() - delay_steps; j < window.size(); ++j) {
    acc += i2_integrand(MeasureView(window[j].states, dim), MeasureView(window[j].delayed, dim),
                        model, control);
  }
  return dt * acc;
}

double i_discrete(std::span<const double> integrand_window, double dt) {
  // I(t_n) = dt * sum_{i=1..k} dt * sum_{j=n-i}^{n-1} h_j = dt^2 sum_j (n - j) h_j.
  const std::size_t k = integrand_window.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) acc += static_cast<double>(k - j) * integrand_window[j];
  return dt * dt * acc;
}

}  // namespace mvsde
