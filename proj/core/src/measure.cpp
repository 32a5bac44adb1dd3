// SPDX-License-Identifier: Apache-2.0
#include "mvsde/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvsde/errors.hpp"

namespace mvsde {

MeasureView::MeasureView(std::span<const double> flat, std::size_t dim) : flat_(flat), dim_(dim) {
  if (dim_ == 0) throw InputError("measure dimension must be >= 1");
  if (flat_.empty() || flat_.size() % dim_ != 0) {
    throw InputError("measure needs N >= 1 atoms of dimension " + std::to_string(dim_));
  }
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> flat, std::size_t dim)
    : flat_(std::move(flat)), dim_(dim) {
  (void)MeasureView(flat_, dim_);  // validates
}

EmpiricalMeasure EmpiricalMeasure::scalar(std::vector<double> samples) {
  return EmpiricalMeasure(std::move(samples), 1);
}

EmpiricalMeasure EmpiricalMeasure::from_atoms(const std::vector<Vector>& atoms) {
  if (atoms.empty()) throw InputError("measure needs at least one atom");
  const std::size_t dim = atoms.front().size();
  std::vector<double> flat;
  flat.reserve(atoms.size() * dim);
  for (const auto& a : atoms) {
    if (a.size() != dim) throw InputError("atoms of a measure must share one dimension");
    flat.insert(flat.end(), a.begin(), a.end());
  }
  return EmpiricalMeasure(std::move(flat), dim);
}

void mean_into(MeasureView mu, std::span<double> out) {
  if (out.size() != mu.dim()) throw InputError("mean output has wrong dimension");
  std::fill(out.begin(), out.end(), 0.0);
  const auto flat = mu.flat();
  const std::size_t d = mu.dim();
  for (std::size_t i = 0; i < flat.size(); i += d) {
    for (std::size_t c = 0; c < d; ++c) out[c] += flat[i + c];
  }
  const double inv_n = 1.0 / static_cast<double>(mu.size());
  for (double& v : out) v *= inv_n;
}

Vector mean(MeasureView mu) {
  Vector out(mu.dim());
  mean_into(mu, out);
  return out;
}

double second_moment(MeasureView mu) noexcept {
  return squared_norm(mu.flat()) / static_cast<double>(mu.size());
}

double w2_1d(MeasureView mu, MeasureView nu) {
  if (mu.dim() != 1 || nu.dim() != 1) {
    throw InputError("w2_1d: only one-dimensional measures are supported");
  }
  if (mu.size() != nu.size()) {
    throw InputError("w2_1d: measures must have equal sample counts");
  }
  std::vector<double> a(mu.flat().begin(), mu.flat().end());
  std::vector<double> b(nu.flat().begin(), nu.flat().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::sqrt(squared_distance(a, b) / static_cast<double>(a.size()));
}

}  // namespace mvsde
