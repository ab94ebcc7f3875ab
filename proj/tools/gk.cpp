#include "toricgk/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"Toric generalized Kahler structures: build and verify"};
  app.require_subcommand(1);

  toricgk::CommandOptions opts;
  std::string out, report;
  std::uint64_t seed = 0;
  int grid = 0, samples = 0;
  double margin = 0;
  std::vector<std::string> tols;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "CSV output path");
    sub->add_option("--report", report, "report output path");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--grid", grid, "grid resolution")->check(CLI::PositiveNumber);
    sub->add_option("--margin", margin, "grid margin")->check(CLI::PositiveNumber);
    sub->add_option("--tol", tols, "tolerance override name=value")->take_all();
  };

  for (const char* name : {"validate", "build", "typemap", "deform", "reduce"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", opts.config_path, "JSON config")->required()->check(CLI::ExistingFile);
    common(sub);
    if (std::string(name) == "reduce") sub->add_option("--samples", samples, "level-set samples")->check(CLI::PositiveNumber);
  }
  auto* ex = app.add_subcommand("example");
  ex->add_option("name", opts.example, "example name (cp1xcp1)")->required();
  ex->add_option("--c", opts.c, "C coefficient");
  ex->add_option("--f", opts.f, "F coefficient");
  common(ex);
  auto* st = app.add_subcommand("selftest");
  common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  opts.command = sub->get_name();
  if (sub->count("--out")) opts.out = out;
  if (sub->count("--report")) opts.report = report;
  if (sub->count("--seed")) opts.seed = seed;
  if (sub->count("--grid")) opts.grid = grid;
  if (sub->count("--margin")) opts.margin = margin;
  if (opts.command == "reduce" && sub->count("--samples")) opts.samples = samples;
  for (const auto& t : tols) {
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--tol expects name=value, got '" << t << "'\n";
      return 2;
    }
    try {
      opts.tol.emplace_back(t.substr(0, eq), std::stod(t.substr(eq + 1)));
    } catch (const std::exception&) {
      std::cerr << "--tol: invalid number in '" << t << "'\n";
      return 2;
    }
  }
  return toricgk::run(opts);
}
