#pragma once

#include "toricgk/gk_builder.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/potential.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toricgk {

struct PotentialConfig {
  bool canonical = true;
  std::vector<PolyTerm> poly;
  std::vector<LogTerm> facet_log;
  bool analytic_hessian = true;
};

struct LiftConfig {
  bool minimal = true;
  Mat Fprime;                  // explicit F' (d x d)
  std::optional<Mat> Cprime;   // explicit C'; minimal lift when absent
};

struct RunConfig {
  std::optional<DelzantPolytope> polytope;
  PotentialConfig potential;
  AntisymmetricMatrix C, F;
  int grid_resolution = 16;
  double grid_margin = 0.01;
  Tolerances tol;
  std::uint64_t seed = 0;
  LiftConfig lift;
  int samples = 50;
  std::vector<double> t_values = default_t_sweep();
  std::vector<Frame> frames{Frame::ZetaDmu, Frame::ZetaPlusDmu, Frame::ZetaMinusDmu};
  std::vector<Vec> points;  // explicit evaluation points; grid when empty
};

// Throws Error(ErrorCode::Config) naming the offending field path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

PotentialModel make_potential(const RunConfig& cfg);
GKTriple make_triple(const RunConfig& cfg);
const DelzantPolytope& require_polytope(const RunConfig& cfg);

}  // namespace toricgk
