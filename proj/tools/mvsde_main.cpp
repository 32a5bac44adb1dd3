// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "mvsde/errors.hpp"

namespace {

template <typename Fn>
int guarded(Fn&& fn) {
  using namespace mvsde;
  try {
    return fn();
  } catch (const cli::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const InputError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const PreconditionError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const BlowUpError& e) {
    std::cerr << "numerical blow-up: " << e.what() << '\n';
    return cli::kBlowUp;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-feedback control of mean-field SDEs with common noise"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> threads;
  app.add_option("--seed", seed, "Override sim.seed");
  app.add_option("--out", out_dir, "Output directory (overrides output.directory)");
  app.add_option("--threads", threads, "Worker threads; never changes results");

  auto* bounds = app.add_subcommand("bounds", "Admissible delays and decay-rate bound");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run, CSV output");
  auto* check = app.add_subcommand("check", "Run the configured verifier suite");
  auto* reproduce = app.add_subcommand("reproduce-example", "Regenerate the benchmark runs");
  for (auto* sub : {bounds, simulate, check}) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
  }

  CLI11_PARSE(app, argc, argv);

  using namespace mvsde::cli;
  const Overrides overrides{seed, out_dir, threads};
  auto with_config = [&](auto command) {
    return guarded([&] {
      RunConfig cfg = load_config(config_path);
      apply(cfg, overrides);
      return command(cfg, std::cout);
    });
  };

  if (*bounds) return with_config(cmd_bounds);
  if (*simulate) return with_config(cmd_simulate);
  if (*check) return with_config(cmd_check);
  if (*reproduce) {
    return guarded([&] {
      return cmd_reproduce_example(out_dir.value_or("example_output"), threads.value_or(1),
                                   std::cout);
    });
  }
  return kConfigError;
}
