// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvsde {

/// Malformed arguments: dimension mismatch, empty inputs, bad windows.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of a closed-form bound does not hold
/// (e.g. the feedback gain does not exceed the growth constant).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation needs more usable data points than it was given.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical blow-up: a particle state became non-finite.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, std::uint64_t replication)
      : std::runtime_error("non-finite particle state at t=" + std::to_string(time) +
                           " (replication " + std::to_string(replication) + ")"),
        time_(time),
        replication_(replication) {}

  double time() const noexcept { return time_; }
  std::uint64_t replication() const noexcept { return replication_; }

 private:
  double time_;
  std::uint64_t replication_;
};

}  // namespace mvsde
