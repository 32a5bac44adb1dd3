// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace mvsde {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11). Stateless:
/// the same (counter, key) always produces the same 128 output bits, which
/// is what makes replications reproducible independent of scheduling.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter counter, Key key) noexcept;
};

/// Maps 64 random bits to a double strictly inside (0, 1).
double to_open_unit(std::uint64_t bits) noexcept;

/// Two independent standard normals from one Philox block (Box-Muller).
std::array<double, 2> normal_pair(const Philox4x32::Counter& counter,
                                  const Philox4x32::Key& key) noexcept;

/// Gaussian noise family for the particle system, keyed by indices rather
/// than draw order:
///   idiosyncratic(rep, particle, step)  ~ N(0, 1), i.i.d. across all keys
///   common(rep, step)                   ~ N(0, 1), shared by every particle
///   initial(rep, particle, component)   ~ N(0, 1), for random initial data
/// Brownian increments are sqrt(dt) times these.
class NoisePlan {
 public:
  explicit NoisePlan(std::uint64_t seed) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

  double idiosyncratic(std::uint64_t replication, std::uint64_t particle,
                       std::uint64_t step) const noexcept;
  double common(std::uint64_t replication, std::uint64_t step) const noexcept;
  double initial(std::uint64_t replication, std::uint64_t particle,
                 std::uint64_t component) const noexcept;

  /// Largest replication index representable in the counter layout.
  static constexpr std::uint64_t kMaxReplications = (std::uint64_t{1} << 30) - 1;

 private:
  double draw(std::uint32_t kind, std::uint64_t replication, std::uint64_t particle,
              std::uint64_t step) const noexcept;

  std::uint64_t seed_;
  Philox4x32::Key key_;
};

/// Sequential stream over Philox blocks, for auxiliary sampling (audits,
/// property tests) where a plain stream is more convenient than keyed draws.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept { return to_open_unit(next_u64()); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal() noexcept;

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace mvsde
