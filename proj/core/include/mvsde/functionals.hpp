// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvsde/measure.hpp"
#include "mvsde/model.hpp"

namespace mvsde {

/// Coefficients of one particle, with the control already folded into the
/// drift: controlled_drift = f(x, mu) - alpha x_delayed.
struct ParticleCoefficients {
  std::span<const double> controlled_drift;
  std::span<const double> diffusion;
  std::span<const double> common_diffusion;
};

/// tau |f - alpha x_del|^2 + |g|^2 + |g0|^2, the integrand of I2.
double i2_integrand_value(const ParticleCoefficients& c, double tau) noexcept;

/// 2 <x, f - alpha x_del> + |g|^2 + |g0|^2: one particle's own contribution to
/// the generator of U(x, mu) = |x|^2 + E^1|x|^2.
double generator_own_value(std::span<const double> x, const ParticleCoefficients& c) noexcept;

/// Breakdown of LU for U = |x|^2 + E^1|x|^2 at a single particle.
struct GeneratorValue {
  double own;            // 2<x, f - alpha x_del> + |g|^2 + |g0|^2
  double measure_block;  // particle average of the same expression
  double total() const noexcept { return own + measure_block; }
};

/// Per-particle own term of LU; `mu` supplies the measure argument and its mean.
double generator_lu(std::span<const double> x, std::span<const double> x_delayed, MeasureView mu,
                    std::span<const double> mu_mean, const CoefficientModel& model,
                    const ControlParams& control);

/// LU at particle i of a cloud: own term plus the particle-averaged E^1 block.
GeneratorValue generator_lu_at(std::size_t i, MeasureView current, MeasureView delayed,
                               const CoefficientModel& model, const ControlParams& control);

/// Particle average of LU over the cloud, i.e. 2 * mean of the own terms.
double generator_lu_average(MeasureView current, MeasureView delayed,
                            const CoefficientModel& model, const ControlParams& control);

/// Particle average of the I2 integrand at one grid point.
double i2_integrand(MeasureView current, MeasureView delayed, const CoefficientModel& model,
                    const ControlParams& control);

/// One grid point of a trajectory: the states X(t_j) and X(t_j - tau).
struct GridPoint {
  std::span<const double> states;
  std::span<const double> delayed;
};

/// Left-rectangle I2(t) = dt * sum over the last `delay_steps` grid points
/// [t - tau, t) of the particle-averaged integrand. Throws InputError if the
/// window holds fewer than delay_steps points.
double i2_discrete(std::span<const GridPoint> window, std::size_t dim,
                   const CoefficientModel& model, const ControlParams& control, double dt,
                   std::size_t delay_steps);

/// Discretized I(t) = int_{-tau}^0 int_{t+r}^t h ds dr from the last k
/// integrand values h_{n-k}, ..., h_{n-1} (oldest first): dt^2 sum_j (n - j) h_j.
double i_discrete(std::span<const double> integrand_window, double dt);

}  // namespace mvsde
