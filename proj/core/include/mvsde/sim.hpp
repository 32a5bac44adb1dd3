// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mvsde/linalg.hpp"
#include "mvsde/model.hpp"
#include "mvsde/rng.hpp"
#include "mvsde/series.hpp"

namespace mvsde {

struct SimConfig {
  std::size_t n_particles = 1;     // N
  std::size_t n_replications = 1;  // M, independent common-noise paths
  double dt = 0.01;
  double horizon = 1.0;
  std::size_t delay_steps = 0;  // tau = delay_steps * dt, always
  std::uint64_t seed = 0;
  std::size_t record_stride = 1;
  std::size_t sample_paths = 0;  // particles per replication whose component-0 path is kept

  double tau() const noexcept { return static_cast<double>(delay_steps) * dt; }
  /// ceil(horizon / dt), tolerant of representation error in the ratio.
  std::size_t n_steps() const noexcept;
};

void validate(const SimConfig& config);

/// Control parameters whose tau is exactly config.tau().
ControlParams make_control(double alpha, const SimConfig& config) noexcept;

/// N particle states plus the last delay_steps+1 snapshots (ring buffer).
/// Snapshot lag 0 is the current state; lag k is X(t - tau).
class ParticleEnsemble {
 public:
  ParticleEnsemble(std::size_t n_particles, std::size_t dim, std::size_t delay_steps);

  std::size_t n_particles() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t delay_steps() const noexcept { return k_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }
  double time(double dt) const noexcept { return static_cast<double>(steps_) * dt; }

  std::span<const double> current() const noexcept { return snapshot(0); }
  std::span<const double> delayed() const noexcept { return snapshot(k_); }
  std::span<const double> snapshot(std::size_t lag) const noexcept;
  std::span<const double> particle(std::size_t i) const noexcept {
    return current().subspan(i * dim_, dim_);
  }
  std::size_t history_size() const noexcept { return k_ + 1; }

  /// Sets every snapshot (the whole pre-history) to `flat_states`.
  void fill_history(std::span<const double> flat_states);

 private:
  friend struct StepAccess;

  std::span<double> slot(std::size_t index) noexcept;

  std::size_t n_;
  std::size_t dim_;
  std::size_t k_;
  std::vector<double> ring_;
  std::size_t head_ = 0;  // slot holding the current state
  std::uint64_t steps_ = 0;
};

/// Writes X^i(0) for particle `particle` of replication `replication`.
using Initializer = std::function<void(std::uint64_t replication, std::size_t particle,
                                       const NoisePlan& noise, std::span<double> out)>;

/// Deterministic x0 for every particle, or a per-particle random draw.
struct InitialCondition {
  Vector x0;
  Initializer random;

  InitialCondition(Vector constant) : x0(std::move(constant)) {}  // NOLINT
  InitialCondition(std::initializer_list<double> constant) : x0(constant) {}
  explicit InitialCondition(Initializer init) : random(std::move(init)) {}
};

ParticleEnsemble init_ensemble(const SimConfig& config, std::size_t dim,
                               std::span<const double> x0);
ParticleEnsemble init_ensemble(const SimConfig& config, std::size_t dim,
                               const InitialCondition& initial, const NoisePlan& noise,
                               std::uint64_t replication);

/// Particle averages evaluated at the pre-step state (left-point rule).
struct StepTerms {
  double i2_integrand = 0.0;  // (1/N) sum tau|f - alpha x_del|^2 + |g|^2 + |g0|^2
  double generator = 0.0;     // (1/N) sum of LU at each particle (= 2 * mean own term)
};

/// One explicit Euler-Maruyama step of
///   dX^i = [f(X^i, mu_N) - alpha X^i(t - tau)] dt + g dW^i + g0 dW^0.
/// The empirical measure is frozen at the pre-step states and the common
/// increment is shared by every particle. Throws BlowUpError if any state
/// becomes non-finite.
StepTerms step(ParticleEnsemble& ensemble, const CoefficientModel& model,
               const ControlParams& control, const NoisePlan& noise, const SimConfig& config,
               std::uint64_t replication);

/// Recorded statistics of one replication at times 0, stride*dt, ..., T.
struct TrajectoryRecord {
  std::uint64_t replication = 0;
  std::vector<double> times;
  std::vector<double> particle_mean_sq;    // (1/N) sum |X^i|^2
  std::vector<Vector> particle_mean;       // (1/N) sum X^i
  std::vector<double> i2_values;           // discretized I2(t), particle-averaged
  std::vector<double> delay_gap_sq;        // (1/N) sum |X^i(t) - X^i(t - tau)|^2
  std::vector<double> generator_integral;  // left-rectangle int_0^t (1/N) sum LU
  std::vector<std::vector<double>> sample_paths;  // [path][time index], component 0
  std::optional<double> aborted_at;        // set if the run blew up

  std::size_t size() const noexcept { return times.size(); }
};

/// Runs one replication; on blow-up returns the recorded prefix with
/// aborted_at set instead of throwing.
TrajectoryRecord simulate_replication(const SimConfig& config, const CoefficientModel& model,
                                      const ControlParams& control,
                                      const InitialCondition& initial,
                                      std::uint64_t replication);

/// Same as simulate_replication but throws BlowUpError on blow-up.
TrajectoryRecord run_replication(const SimConfig& config, const CoefficientModel& model,
                                 const ControlParams& control, const InitialCondition& initial,
                                 std::uint64_t replication);

struct RunOptions {
  std::size_t threads = 1;
};

/// All M replications; record r belongs to replication r regardless of the
/// number of worker threads. Never throws on blow-up (see aborted_at).
std::vector<TrajectoryRecord> run_replications(const SimConfig& config,
                                               const CoefficientModel& model,
                                               const ControlParams& control,
                                               const InitialCondition& initial,
                                               const RunOptions& options = {});

struct MonteCarloResult {
  MeanSquareSeries series;
  std::vector<Vector> grand_mean;  // mean over replications of particle_mean
  std::vector<TrajectoryRecord> records;
};

/// Aggregates complete records; throws BlowUpError naming the lowest
/// aborted replication.
MonteCarloResult aggregate(std::vector<TrajectoryRecord> records);

MonteCarloResult run_monte_carlo(const SimConfig& config, const CoefficientModel& model,
                                 const ControlParams& control, const InitialCondition& initial,
                                 const RunOptions& options = {});

}  // namespace mvsde
