// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string_view>

#include "mvsde/errors.hpp"

namespace mvsde::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& section, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!section.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : section.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + std::string(where) + "." + key + "'");
  }
}

std::string path_of(std::string_view where, std::string_view key) {
  return std::string(where) + "." + std::string(key);
}

double get_number(const json& section, std::string_view where, std::string_view key) {
  const auto& v = section.at(std::string(key));
  if (!v.is_number()) throw ConfigError(path_of(where, key) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path_of(where, key) + ": must be finite");
  return d;
}

std::uint64_t get_unsigned(const json& section, std::string_view where, std::string_view key) {
  const auto& v = section.at(std::string(key));
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(path_of(where, key) + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& section, std::string_view where, std::string_view key) {
  const auto& v = section.at(std::string(key));
  if (!v.is_boolean()) throw ConfigError(path_of(where, key) + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& section, std::string_view where, std::string_view key) {
  const auto& v = section.at(std::string(key));
  if (!v.is_string()) throw ConfigError(path_of(where, key) + ": expected a string");
  return v.get<std::string>();
}

template <typename T, typename Getter>
void read_optional(const json& section, std::string_view where, std::string_view key, T& out,
                   Getter getter) {
  if (section.contains(std::string(key))) out = getter(section, where, key);
}

Vector get_vector(const json& section, std::string_view where, std::string_view key,
                  std::size_t dim) {
  const auto& v = section.at(std::string(key));
  if (!v.is_array() || v.size() != dim) {
    throw ConfigError(path_of(where, key) + ": expected an array of " + std::to_string(dim) +
                      " numbers");
  }
  Vector out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(path_of(where, key) + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// Row-major: either a flat array of dim*dim numbers or an array of dim rows.
Matrix get_matrix(const json& section, std::string_view where, std::string_view key,
                  std::size_t dim) {
  if (!section.contains(std::string(key))) {
    throw ConfigError("missing key '" + path_of(where, key) + "'");
  }
  const auto& v = section.at(std::string(key));
  std::vector<double> flat;
  auto push = [&](const json& x) {
    if (!x.is_number()) throw ConfigError(path_of(where, key) + ": expected numbers");
    flat.push_back(x.get<double>());
  };
  if (!v.is_array()) throw ConfigError(path_of(where, key) + ": expected a row-major array");
  for (const auto& row : v) {
    if (row.is_array()) {
      if (row.size() != dim) throw ConfigError(path_of(where, key) + ": ragged row");
      for (const auto& x : row) push(x);
    } else {
      push(row);
    }
  }
  if (flat.size() != dim * dim) {
    throw ConfigError(path_of(where, key) + ": expected " + std::to_string(dim * dim) +
                      " entries");
  }
  return Matrix(dim, dim, std::move(flat));
}

const json& require_section(const json& doc, const char* name) {
  if (!doc.contains(name)) throw ConfigError(std::string("missing section '") + name + "'");
  return doc.at(name);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  try {
    reject_unknown(doc, "<root>", {"model", "constants", "control", "sim", "output", "check"});
    RunConfig cfg;

    const json& model = require_section(doc, "model");
    reject_unknown(model, "model", {"dim", "a1", "a2", "b1", "b2", "c1", "c2", "f0", "g0", "g00"});
    if (!model.contains("dim")) throw ConfigError("missing key 'model.dim'");
    const std::size_t dim = get_unsigned(model, "model", "dim");
    if (dim == 0) throw ConfigError("model.dim must be >= 1");
    cfg.model.dim = dim;
    cfg.model.a1 = get_matrix(model, "model", "a1", dim);
    cfg.model.a2 = get_matrix(model, "model", "a2", dim);
    cfg.model.b1 = get_matrix(model, "model", "b1", dim);
    cfg.model.b2 = get_matrix(model, "model", "b2", dim);
    cfg.model.c1 = get_matrix(model, "model", "c1", dim);
    cfg.model.c2 = get_matrix(model, "model", "c2", dim);
    cfg.model.f0 = model.contains("f0") ? get_vector(model, "model", "f0", dim) : Vector(dim, 0.0);
    cfg.model.g0 = model.contains("g0") ? get_vector(model, "model", "g0", dim) : Vector(dim, 0.0);
    cfg.model.g00 =
        model.contains("g00") ? get_vector(model, "model", "g00", dim) : Vector(dim, 0.0);

    if (doc.contains("constants")) {
      const json& c = doc.at("constants");
      reject_unknown(c, "constants", {"L", "A", "B", "C", "D"});
      cfg.has_constants = true;
      auto opt = [&](const char* key, std::optional<double>& out) {
        if (c.contains(key)) out = get_number(c, "constants", key);
      };
      opt("L", cfg.constants.L);
      opt("A", cfg.constants.A);
      opt("B", cfg.constants.B);
      opt("C", cfg.constants.C);
      opt("D", cfg.constants.D);
    }

    const json& control = require_section(doc, "control");
    reject_unknown(control, "control", {"alpha", "delay_steps"});
    if (!control.contains("alpha")) throw ConfigError("missing key 'control.alpha'");
    cfg.alpha = get_number(control, "control", "alpha");
    if (cfg.alpha < 0.0) throw ConfigError("control.alpha must be >= 0");
    read_optional(control, "control", "delay_steps", cfg.sim.delay_steps, get_unsigned);

    const json& sim = require_section(doc, "sim");
    reject_unknown(sim, "sim",
                   {"n_particles", "n_replications", "dt", "horizon", "seed", "record_stride",
                    "x0", "sample_paths", "path_replications", "threads"});
    if (!sim.contains("dt")) throw ConfigError("missing key 'sim.dt'");
    if (!sim.contains("horizon")) throw ConfigError("missing key 'sim.horizon'");
    cfg.sim.dt = get_number(sim, "sim", "dt");
    cfg.sim.horizon = get_number(sim, "sim", "horizon");
    read_optional(sim, "sim", "n_particles", cfg.sim.n_particles, get_unsigned);
    read_optional(sim, "sim", "n_replications", cfg.sim.n_replications, get_unsigned);
    read_optional(sim, "sim", "seed", cfg.sim.seed, get_unsigned);
    read_optional(sim, "sim", "record_stride", cfg.sim.record_stride, get_unsigned);
    read_optional(sim, "sim", "sample_paths", cfg.sim.sample_paths, get_unsigned);
    read_optional(sim, "sim", "path_replications", cfg.path_replications, get_unsigned);
    read_optional(sim, "sim", "threads", cfg.threads, get_unsigned);
    cfg.x0 = sim.contains("x0") ? get_vector(sim, "sim", "x0", dim) : Vector(dim, 1.0);

    if (doc.contains("output")) {
      const json& out = doc.at("output");
      reject_unknown(out, "output", {"directory", "prefix"});
      read_optional(out, "output", "directory", cfg.output.directory, get_string);
      read_optional(out, "output", "prefix", cfg.output.prefix, get_string);
    }

    if (doc.contains("check")) {
      const json& ch = doc.at("check");
      reject_unknown(ch, "check",
                     {"audit", "audit_radius", "audit_samples", "audit_seed", "delay_gap",
                      "dynkin", "boundedness", "burn_in_fraction", "stability",
                      "window_fraction"});
      read_optional(ch, "check", "audit", cfg.check.audit, get_bool);
      read_optional(ch, "check", "audit_radius", cfg.check.audit_radius, get_number);
      read_optional(ch, "check", "audit_samples", cfg.check.audit_samples, get_unsigned);
      read_optional(ch, "check", "audit_seed", cfg.check.audit_seed, get_unsigned);
      read_optional(ch, "check", "delay_gap", cfg.check.delay_gap, get_bool);
      read_optional(ch, "check", "dynkin", cfg.check.dynkin, get_bool);
      read_optional(ch, "check", "boundedness", cfg.check.boundedness, get_bool);
      read_optional(ch, "check", "burn_in_fraction", cfg.check.burn_in_fraction, get_number);
      read_optional(ch, "check", "stability", cfg.check.stability, get_bool);
      read_optional(ch, "check", "window_fraction", cfg.check.window_fraction, get_number);
    }

    // Domain validation reuses the library checks.
    (void)cfg.build_model();
    validate(cfg.sim);
    if (cfg.has_constants) validate_constants(cfg.build_model(), cfg.constants);
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse '" + path.string() + "': " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc;
  const auto& m = cfg.model;
  doc["model"] = {{"dim", m.dim},          {"a1", matrix_json(m.a1)}, {"a2", matrix_json(m.a2)},
                  {"b1", matrix_json(m.b1)}, {"b2", matrix_json(m.b2)}, {"c1", matrix_json(m.c1)},
                  {"c2", matrix_json(m.c2)}, {"f0", m.f0},              {"g0", m.g0},
                  {"g00", m.g00}};
  if (cfg.has_constants) {
    json c = json::object();
    if (cfg.constants.L) c["L"] = *cfg.constants.L;
    if (cfg.constants.A) c["A"] = *cfg.constants.A;
    if (cfg.constants.B) c["B"] = *cfg.constants.B;
    if (cfg.constants.C) c["C"] = *cfg.constants.C;
    if (cfg.constants.D) c["D"] = *cfg.constants.D;
    doc["constants"] = c;
  }
  doc["control"] = {{"alpha", cfg.alpha}, {"delay_steps", cfg.sim.delay_steps}};
  doc["sim"] = {{"n_particles", cfg.sim.n_particles},
                {"n_replications", cfg.sim.n_replications},
                {"dt", cfg.sim.dt},
                {"horizon", cfg.sim.horizon},
                {"seed", cfg.sim.seed},
                {"record_stride", cfg.sim.record_stride},
                {"x0", cfg.x0},
                {"sample_paths", cfg.sim.sample_paths},
                {"path_replications", cfg.path_replications},
                {"threads", cfg.threads}};
  doc["output"] = {{"directory", cfg.output.directory}, {"prefix", cfg.output.prefix}};
  doc["check"] = {{"audit", cfg.check.audit},
                  {"audit_radius", cfg.check.audit_radius},
                  {"audit_samples", cfg.check.audit_samples},
                  {"audit_seed", cfg.check.audit_seed},
                  {"delay_gap", cfg.check.delay_gap},
                  {"dynkin", cfg.check.dynkin},
                  {"boundedness", cfg.check.boundedness},
                  {"burn_in_fraction", cfg.check.burn_in_fraction},
                  {"stability", cfg.check.stability},
                  {"window_fraction", cfg.check.window_fraction}};
  return doc;
}

}  // namespace mvsde::cli
