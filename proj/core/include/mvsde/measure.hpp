// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvsde/linalg.hpp"

namespace mvsde {

/// Non-owning view of N uniformly weighted atoms in R^d, stored as a flat
/// N*d row-major buffer (particle i occupies [i*d, (i+1)*d)).
class MeasureView {
 public:
  MeasureView(std::span<const double> flat, std::size_t dim);

  std::size_t size() const noexcept { return flat_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> atom(std::size_t i) const { return flat_.subspan(i * dim_, dim_); }
  std::span<const double> flat() const noexcept { return flat_; }

 private:
  std::span<const double> flat_;
  std::size_t dim_;
};

/// Owning empirical measure (1/N) sum_i delta_{x_i}.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(std::vector<double> flat, std::size_t dim);
  /// 1-D convenience constructor.
  static EmpiricalMeasure scalar(std::vector<double> samples);
  static EmpiricalMeasure from_atoms(const std::vector<Vector>& atoms);

  MeasureView view() const noexcept { return {flat_, dim_}; }
  operator MeasureView() const noexcept { return view(); }  // NOLINT(google-explicit-constructor)

  std::size_t size() const noexcept { return flat_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::vector<double> flat_;
  std::size_t dim_;
};

Vector mean(MeasureView mu);
void mean_into(MeasureView mu, std::span<double> out);

/// (1/N) sum |x_i|^2, which is exactly W_2^2(mu, delta_0).
double second_moment(MeasureView mu) noexcept;

/// Exact W_2 between two equal-size 1-D empirical measures via the sorted
/// (quantile) coupling. Throws InputError for d > 1 or unequal sizes.
double w2_1d(MeasureView mu, MeasureView nu);

}  // namespace mvsde
