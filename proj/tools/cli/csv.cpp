// SPDX-License-Identifier: Apache-2.0
#include "csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace mvsde::cli {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

void write_meansq_csv(std::ostream& out, const MeanSquareSeries& series,
                      std::optional<double> aborted_at) {
  out << "t,mean_sq,std_err,n_reps\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.values[i]) << ','
        << format_double(series.std_errors[i]) << ',' << series.n_replications << '\n';
  }
  if (aborted_at) out << "# ABORTED t=" << format_double(*aborted_at) << '\n';
}

void write_paths_csv(std::ostream& out, std::span<const TrajectoryRecord> records,
                     std::size_t max_replications) {
  out << "t,rep,particle,value\n";
  const std::size_t reps = std::min(max_replications, records.size());
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& rec = records[r];
    for (std::size_t p = 0; p < rec.sample_paths.size(); ++p) {
      const auto& path = rec.sample_paths[p];
      for (std::size_t i = 0; i < path.size(); ++i) {
        out << format_double(rec.times[i]) << ',' << rec.replication << ',' << p << ','
            << format_double(path[i]) << '\n';
      }
    }
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace mvsde::cli
