// SPDX-License-Identifier: Apache-2.0
#include "mvsde/rng.hpp"

#include <cmath>
#include <numbers>

namespace mvsde {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
constexpr int kRounds = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// Kinds occupy the top two bits of the fourth counter word.
constexpr std::uint32_t kIdiosyncratic = 0;
constexpr std::uint32_t kCommon = 1;
constexpr std::uint32_t kInitial = 2;

inline std::uint64_t combine(std::uint32_t hi, std::uint32_t lo) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

}  // namespace

Philox4x32::Counter Philox4x32::apply(Counter ctr, Key key) noexcept {
  for (int round = 0; round < kRounds; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

double to_open_unit(std::uint64_t bits) noexcept {
  // 52 bits keep k + 0.5 exactly representable, so 1.0 is never reached.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

std::array<double, 2> normal_pair(const Philox4x32::Counter& counter,
                                  const Philox4x32::Key& key) noexcept {
  const auto out = Philox4x32::apply(counter, key);
  const double u1 = to_open_unit(combine(out[0], out[1]));
  const double u2 = to_open_unit(combine(out[2], out[3]));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

NoisePlan::NoisePlan(std::uint64_t seed) noexcept
    : seed_(seed),
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

double NoisePlan::draw(std::uint32_t kind, std::uint64_t replication, std::uint64_t particle,
                       std::uint64_t step) const noexcept {
  const Philox4x32::Counter ctr{
      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32),
      static_cast<std::uint32_t>(particle),
      (kind << 30) | static_cast<std::uint32_t>(replication & kMaxReplications)};
  return normal_pair(ctr, key_)[0];
}

double NoisePlan::idiosyncratic(std::uint64_t replication, std::uint64_t particle,
                                std::uint64_t step) const noexcept {
  return draw(kIdiosyncratic, replication, particle, step);
}

double NoisePlan::common(std::uint64_t replication, std::uint64_t step) const noexcept {
  return draw(kCommon, replication, 0, step);
}

double NoisePlan::initial(std::uint64_t replication, std::uint64_t particle,
                          std::uint64_t component) const noexcept {
  return draw(kInitial, replication, particle, component);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_id_(stream_id) {}

std::uint64_t CounterStream::next_u64() noexcept {
  if (used_ >= 4) {
    buffer_ = Philox4x32::apply({static_cast<std::uint32_t>(block_),
                                 static_cast<std::uint32_t>(block_ >> 32),
                                 static_cast<std::uint32_t>(stream_id_),
                                 (3u << 30) ^ static_cast<std::uint32_t>(stream_id_ >> 32)},
                                key_);
    ++block_;
    used_ = 0;
  }
  const std::uint64_t v = combine(buffer_[used_], buffer_[used_ + 1]);
  used_ += 2;
  return v;
}

double CounterStream::normal() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace mvsde
