// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

// Every hard-coded number of the built-in benchmark lives here.
namespace mvsde::cli::example {

// Scalar unstable benchmark system, with y(0) = 1:
//   dy = (3y + E^1 y) dt + (y + E^1 y) dW + (y + E^1 y) dW^0
inline constexpr double kDriftState = 3.0;
inline constexpr double kDriftMean = 1.0;
inline constexpr double kDiffusionState = 1.0;
inline constexpr double kDiffusionMean = 1.0;
inline constexpr double kCommonState = 1.0;
inline constexpr double kCommonMean = 1.0;
inline constexpr double kInitialState = 1.0;

// Structural constants of that system: Lipschitz L, homogeneous growth C,
// homogeneous monotone D (A = C and B = D since the offsets vanish).
inline constexpr double kLipschitz = 3.0;
inline constexpr double kGrowth = 3.0;
inline constexpr double kMonotone = 11.0;

// Delay feedback -22 y(t - tau) with tau = 5e-4.
inline constexpr double kGain = 22.0;
inline constexpr double kDelay = 5e-4;

// Published reference values for the controlled system.
inline constexpr double kReferenceTauDoubleStar = 5.696e-4;
inline constexpr double kReferenceRate = 1.363;

// Uncontrolled run: t in [0, 1], dt = 0.01.
inline constexpr double kUncontrolledDt = 0.01;
inline constexpr double kUncontrolledHorizon = 1.0;

// Controlled run: t in [0, 0.6], dt = tau = 5e-4.
inline constexpr double kControlledDt = 5e-4;
inline constexpr double kControlledHorizon = 0.6;
inline constexpr std::size_t kControlledDelaySteps = 1;

// "50 sample points" is read as 50 particles per common-noise path and 50
// common-noise replications; four sample paths are exported per system.
inline constexpr std::size_t kParticles = 50;
inline constexpr std::size_t kReplications = 50;
inline constexpr std::size_t kSamplePaths = 4;

inline constexpr std::uint64_t kSeed = 20240611;

}  // namespace mvsde::cli::example
