#pragma once

#include "toricgk/config.hpp"
#include "toricgk/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toricgk {

struct CommandOptions {
  std::string command;  // validate|build|typemap|deform|reduce|example|selftest
  std::string config_path;
  std::optional<std::string> config_text;  // used instead of config_path when set
  std::string example = "cp1xcp1";
  std::optional<std::string> out, report;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<double> margin;
  std::vector<std::pair<std::string, double>> tol;
  std::optional<int> samples;
  double c = 0, f = 0;
};

struct CommandResult {
  int status = 0;  // 0 all checks pass, 1 failing checks or module error, 2 usage/config error
  ValidationReport report;
  std::string artifact;  // CSV or typemap rows
};

// Pure: no files touched.
CommandResult execute(const CommandOptions& opts);

// Runs execute and writes the artifact to --out and the report to --report
// (stdout when absent). Returns the exit status.
int run(const CommandOptions& opts);

// CSV with columns x1..xn, frame, tensor, i, j, value.
std::string build_csv(const GKTriple& t, const std::vector<Vec>& points, const std::vector<Frame>& frames,
                      ValidationReport* rep = nullptr);

// Identity suite folded over points.
ValidationReport identity_sweep(const GKTriple& t, const std::vector<Vec>& points, Frame frame, double tol);

}  // namespace toricgk
