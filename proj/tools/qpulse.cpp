#include <CLI11.hpp>

#include <cstdio>

#include "qpulse/runconfig.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pulse design and CZ-gate simulation for adiabatic baseband flux control"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  int workers = -1;
  int figure = 0;
  int table = 0;
  std::string family;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--workers", workers, "parallel worker count, 0 = all cores");
  app.add_option("--figure", figure, "reproduce preset figure {3,4,5,12}")
      ->check(CLI::IsMember({3, 4, 5, 12}));
  app.add_option("--table", table, "reproduce preset table {2,3}")
      ->check(CLI::IsMember({2, 3}));
  app.add_option("--family", family, "trajectory family {slepian, chebyshev2}");

  for (const char* name : {"design", "analyze", "simulate", "scan",
                           "hardware-sweep", "reproduce"}) {
    app.add_subcommand(name);
  }

  CLI11_PARSE(app, argc, argv);

  qpulse::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = qpulse::load_config(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  const auto subs = app.get_subcommands();
  if (!subs.empty()) cfg.command = subs.front()->get_name();
  if (!out_dir.empty()) cfg.output = out_dir;
  if (workers >= 0) cfg.workers = workers;
  if (figure) cfg.figure = figure;
  if (table) cfg.table = table;
  if (!family.empty()) cfg.trajectory.family = family;

  return qpulse::run(cfg);
}
