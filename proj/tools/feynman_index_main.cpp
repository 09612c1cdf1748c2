#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "findex/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for Lorentzian spectral projectors, Feynman kernels, "
               "eta/xi invariants and the cylinder index"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool have_seed = false;

  for (const char* name : {"eta", "xi", "index", "propagator-check", "dist-check", "hadamard",
                           "full-suite"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "RNG seed (overrides the config)")
        ->each([&](const std::string&) { have_seed = true; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = findex::ExperimentConfig::from_file(config_path);
    const std::string sub = app.get_subcommands().front()->get_name();
    if (findex::command_from_string(sub) != cfg.command)
      findex::fail(findex::Errc::config_invalid,
                   "config command '" + std::string(findex::to_string(cfg.command)) +
                       "' does not match subcommand '" + sub + "'");
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (have_seed) {
      cfg.seed = seed;
      cfg.raw["seed"] = seed;
    }
    const auto rep = findex::run(cfg);
    std::printf("%s: %zu checks, %d failures (%.1f ms)\n", findex::to_string(cfg.command),
                rep.checks.size(), rep.failures(), rep.wall_clock_ms);
    for (const auto& c : rep.checks)
      if (!c.pass)
        std::printf("  FAIL %s  value=(%.12g, %.12g) reference=(%.12g, %.12g) tol=%.3g\n",
                    c.name.c_str(), c.value.real(), c.value.imag(), c.reference.real(),
                    c.reference.imag(), c.tolerance);
    std::printf("report: %s\n", (cfg.out_dir / "report.json").string().c_str());
    return rep.failures() == 0 ? 0 : 1;
  } catch (const findex::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
