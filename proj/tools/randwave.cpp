#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "randwave/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"randwave: randomized-data cubic NLS simulation laboratory"};
  app.require_subcommand(1);

  const char* names[] = {"randomize", "expand",        "solve",
                         "tail",      "smooth-fit",    "counterexample",
                         "dispersive", "bilinear",     "gain"};
  struct Shared {
    std::string config;
    long long seed = -1;
    std::string out;
    int workers = 0;
  } shared;

  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", shared.config, "config file (key = value lines)")
        ->required();
    sub->add_option("--seed", shared.seed, "override the master seed");
    sub->add_option("--out", shared.out, "override the output directory");
    sub->add_option("--workers", shared.workers, "worker threads (0 = default)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    randwave::RunConfig cfg = randwave::parse_config_file(shared.config);
    const std::string sub = app.get_subcommands().front()->get_name();
    if (!cfg.experiment.empty() && cfg.experiment != sub)
      throw std::invalid_argument("config names experiment '" + cfg.experiment +
                                  "' but the subcommand is '" + sub + "'");
    cfg.experiment = sub;
    if (shared.seed >= 0) cfg.seed = static_cast<std::uint64_t>(shared.seed);
    if (!shared.out.empty()) cfg.out_dir = shared.out;
    if (shared.workers > 0) cfg.workers = shared.workers;

    for (const std::string& w : cfg.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    const randwave::RunManifest manifest = randwave::run(cfg);
    for (const auto& [name, pass] : manifest.experiment_pass)
      std::printf("%s: %s (%.1fs, %zu files)\n", name.c_str(), pass ? "pass" : "FAIL",
                  manifest.wall_clock_seconds, manifest.file_hashes.size());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
