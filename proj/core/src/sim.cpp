// SPDX-License-Identifier: Apache-2.0
#include "mvsde/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mvsde/errors.hpp"
#include "mvsde/functionals.hpp"

namespace mvsde {

std::size_t SimConfig::n_steps() const noexcept {
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  // Treat T/dt within a few ulps of an integer as that integer.
  if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, rounded)) {
    return static_cast<std::size_t>(rounded);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

void validate(const SimConfig& config) {
  if (config.n_particles == 0) throw InputError("sim: n_particles must be >= 1");
  if (config.n_replications == 0) throw InputError("sim: n_replications must be >= 1");
  if (config.n_replications - 1 > NoisePlan::kMaxReplications) {
    throw InputError("sim: too many replications for the noise counter layout");
  }
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw InputError("sim: dt must be > 0");
  if (!(config.horizon >= config.dt) || !std::isfinite(config.horizon)) {
    throw InputError("sim: horizon must be finite and >= dt");
  }
  if (config.record_stride == 0) throw InputError("sim: record_stride must be >= 1");
}

ControlParams make_control(double alpha, const SimConfig& config) noexcept {
  return {alpha, config.tau()};
}

ParticleEnsemble::ParticleEnsemble(std::size_t n_particles, std::size_t dim,
                                   std::size_t delay_steps)
    : n_(n_particles), dim_(dim), k_(delay_steps), ring_((delay_steps + 2) * n_particles * dim) {
  if (n_ == 0 || dim_ == 0) throw InputError("ensemble needs N >= 1 and dim >= 1");
}

// The ring keeps k+2 slots: k+1 live snapshots plus one spare that the next
// step writes into, so the pre-step cloud stays intact while it is read.
std::span<double> ParticleEnsemble::slot(std::size_t index) noexcept {
  return std::span<double>(ring_).subspan(index * n_ * dim_, n_ * dim_);
}

std::span<const double> ParticleEnsemble::snapshot(std::size_t lag) const noexcept {
  const std::size_t slots = k_ + 2;
  const std::size_t index = (head_ + slots - (lag % slots)) % slots;
  return std::span<const double>(ring_).subspan(index * n_ * dim_, n_ * dim_);
}

void ParticleEnsemble::fill_history(std::span<const double> flat_states) {
  if (flat_states.size() != n_ * dim_) throw InputError("fill_history: wrong state size");
  for (std::size_t s = 0; s < k_ + 2; ++s) std::copy(flat_states.begin(), flat_states.end(),
                                                      slot(s).begin());
}

struct StepAccess {
  static std::span<double> spare(ParticleEnsemble& e) noexcept {
    return e.slot((e.head_ + 1) % (e.k_ + 2));
  }
  static void advance(ParticleEnsemble& e) noexcept {
    e.head_ = (e.head_ + 1) % (e.k_ + 2);
    ++e.steps_;
  }
};

ParticleEnsemble init_ensemble(const SimConfig& config, std::size_t dim,
                               std::span<const double> x0) {
  if (x0.size() != dim) throw InputError("initial state has wrong dimension");
  ParticleEnsemble e(config.n_particles, dim, config.delay_steps);
  std::vector<double> flat(config.n_particles * dim);
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    std::copy(x0.begin(), x0.end(), flat.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  e.fill_history(flat);
  return e;
}

ParticleEnsemble init_ensemble(const SimConfig& config, std::size_t dim,
                               const InitialCondition& initial, const NoisePlan& noise,
                               std::uint64_t replication) {
  if (!initial.random) return init_ensemble(config, dim, initial.x0);
  ParticleEnsemble e(config.n_particles, dim, config.delay_steps);
  std::vector<double> flat(config.n_particles * dim);
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    initial.random(replication, i, noise, std::span<double>(flat).subspan(i * dim, dim));
  }
  e.fill_history(flat);
  return e;
}

StepTerms step(ParticleEnsemble& ensemble, const CoefficientModel& model,
               const ControlParams& control, const NoisePlan& noise, const SimConfig& config,
               std::uint64_t replication) {
  const std::size_t d = ensemble.dim();
  const std::size_t n = ensemble.n_particles();
  if (model.dim() != d) throw InputError("step: model and ensemble dimensions differ");
  if (config.delay_steps != ensemble.delay_steps()) {
    throw InputError("step: ensemble history does not match config.delay_steps");
  }
  if (std::abs(control.tau - config.tau()) > 1e-12 * std::max(1.0, config.tau())) {
    throw InputError("step: control.tau must equal delay_steps * dt");
  }

  const auto current = ensemble.current();
  const auto delayed = ensemble.delayed();
  const MeasureView mu(current, d);
  Vector m(d), f(d), g(d), g0(d);
  mean_into(mu, m);

  const std::uint64_t n_step = ensemble.steps_taken();
  const double sqrt_dt = std::sqrt(config.dt);
  const double dw0 = sqrt_dt * noise.common(replication, n_step);
  auto next = StepAccess::spare(ensemble);

  double i2_acc = 0.0;
  double own_acc = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = current.subspan(i * d, d);
    const auto x_del = delayed.subspan(i * d, d);
    model.drift(x, mu, m, f);
    model.diffusion(x, mu, m, g);
    model.common_diffusion(x, mu, m, g0);
    for (std::size_t c = 0; c < d; ++c) f[c] -= control.alpha * x_del[c];

    const ParticleCoefficients pc{f, g, g0};
    i2_acc += i2_integrand_value(pc, control.tau);
    own_acc += generator_own_value(x, pc);

    const double dw = sqrt_dt * noise.idiosyncratic(replication, i, n_step);
    auto out = next.subspan(i * d, d);
    for (std::size_t c = 0; c < d; ++c) {
      out[c] = x[c] + f[c] * config.dt + g[c] * dw + g0[c] * dw0;
      finite = finite && std::isfinite(out[c]);
    }
  }
  StepAccess::advance(ensemble);
  if (!finite) throw BlowUpError(ensemble.time(config.dt), replication);

  const double inv_n = 1.0 / static_cast<double>(n);
  return {i2_acc * inv_n, 2.0 * own_acc * inv_n};
}

namespace {

void append_record(TrajectoryRecord& rec, const ParticleEnsemble& e, const SimConfig& config,
                   double i2, double generator_integral) {
  const std::size_t d = e.dim();
  const MeasureView mu(e.current(), d);
  rec.times.push_back(e.time(config.dt));
  rec.particle_mean_sq.push_back(second_moment(mu));
  rec.particle_mean.push_back(mean(mu));
  rec.i2_values.push_back(i2);
  rec.delay_gap_sq.push_back(squared_distance(e.current(), e.delayed()) /
                             static_cast<double>(e.n_particles()));
  rec.generator_integral.push_back(generator_integral);
  for (std::size_t p = 0; p < rec.sample_paths.size(); ++p) {
    rec.sample_paths[p].push_back(e.current()[p * d]);
  }
}

}  // namespace

TrajectoryRecord simulate_replication(const SimConfig& config, const CoefficientModel& model,
                                      const ControlParams& control,
                                      const InitialCondition& initial,
                                      std::uint64_t replication) {
  validate(config);
  validate_control(control);
  const NoisePlan noise(config.seed);
  const std::size_t d = model.dim();
  ParticleEnsemble e = init_ensemble(config, d, initial, noise, replication);

  TrajectoryRecord rec;
  rec.replication = replication;
  rec.sample_paths.resize(std::min(config.sample_paths, config.n_particles));

  const std::size_t k = config.delay_steps;
  const std::size_t n_steps = config.n_steps();

  // h_j for the last k grid points; before t = 0 the initial segment is
  // constant, so h_j = h_0 for j < 0.
  std::vector<double> window(k, 0.0);
  std::size_t window_pos = 0;
  if (k > 0) {
    const double h0 = i2_integrand(MeasureView(e.current(), d), MeasureView(e.delayed(), d),
                                   model, control);
    std::fill(window.begin(), window.end(), h0);
  }
  auto i2_now = [&] {
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) acc += window[(window_pos + j) % k];
    return config.dt * acc;
  };

  double generator_integral = 0.0;
  append_record(rec, e, config, i2_now(), generator_integral);
  for (std::size_t n = 0; n < n_steps; ++n) {
    StepTerms terms;
    try {
      terms = step(e, model, control, noise, config, replication);
    } catch (const BlowUpError& err) {
      rec.aborted_at = err.time();
      return rec;
    }
    if (k > 0) {
      window[window_pos] = terms.i2_integrand;
      window_pos = (window_pos + 1) % k;
    }
    generator_integral += config.dt * terms.generator;
    if ((n + 1) % config.record_stride == 0 || n + 1 == n_steps) {
      append_record(rec, e, config, i2_now(), generator_integral);
    }
  }
  return rec;
}

TrajectoryRecord run_replication(const SimConfig& config, const CoefficientModel& model,
                                 const ControlParams& control, const InitialCondition& initial,
                                 std::uint64_t replication) {
  auto rec = simulate_replication(config, model, control, initial, replication);
  if (rec.aborted_at) throw BlowUpError(*rec.aborted_at, replication);
  return rec;
}

std::vector<TrajectoryRecord> run_replications(const SimConfig& config,
                                               const CoefficientModel& model,
                                               const ControlParams& control,
                                               const InitialCondition& initial,
                                               const RunOptions& options) {
  validate(config);
  validate_control(control);
  const std::size_t m = config.n_replications;
  std::vector<TrajectoryRecord> records(m);
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, m);

  if (workers == 1) {
    for (std::size_t r = 0; r < m; ++r) {
      records[r] = simulate_replication(config, model, control, initial, r);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < m; r = next.fetch_add(1)) {
          try {
            records[r] = simulate_replication(config, model, control, initial, r);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

MonteCarloResult aggregate(std::vector<TrajectoryRecord> records) {
  if (records.empty()) throw InputError("aggregate: no replications");
  for (const auto& rec : records) {
    if (rec.aborted_at) throw BlowUpError(*rec.aborted_at, rec.replication);
  }
  const std::size_t n = records.front().size();
  std::vector<const std::vector<double>*> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.size() != n) throw InputError("aggregate: records differ in length");
    rows.push_back(&rec.particle_mean_sq);
  }
  auto stats = pointwise_stats(rows);

  MonteCarloResult out;
  out.series.times = records.front().times;
  out.series.values = std::move(stats.mean);
  out.series.std_errors = std::move(stats.std_error);
  out.series.n_replications = records.size();

  const std::size_t d = records.front().particle_mean.front().size();
  out.grand_mean.assign(n, Vector(d, 0.0));
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < d; ++c) out.grand_mean[i][c] += rec.particle_mean[i][c];
    }
  }
  const double inv_m = 1.0 / static_cast<double>(records.size());
  for (auto& v : out.grand_mean) {
    for (double& c : v) c *= inv_m;
  }
  out.records = std::move(records);
  return out;
}

MonteCarloResult run_monte_carlo(const SimConfig& config, const CoefficientModel& model,
                                 const ControlParams& control, const InitialCondition& initial,
                                 const RunOptions& options) {
  return aggregate(run_replications(config, model, control, initial, options));
}

}  // namespace mvsde
