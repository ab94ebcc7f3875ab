#include "toricgk/commands.hpp"

#include "toricgk/error.hpp"
#include "toricgk/gk_builder.hpp"
#include "toricgk/linalg_corpus.hpp"
#include "toricgk/oracles.hpp"
#include "toricgk/poisson.hpp"
#include "toricgk/potential.hpp"
#include "toricgk/reduction.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

namespace toricgk {

namespace {

constexpr double kReductionTol = 1e-8;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_error(ValidationReport& rep, const std::string& name, const Error& e, const Vec& x = {}) {
  rep.add(name, false, kNaN, x, std::string(to_string(e.code())) + ": " + e.what());
}

RunConfig resolve_config(const CommandOptions& o) {
  RunConfig cfg = o.config_text ? parse_config(*o.config_text) : load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.grid) cfg.grid_resolution = *o.grid;
  if (o.margin) cfg.grid_margin = *o.margin;
  if (o.samples) cfg.samples = *o.samples;
  for (const auto& [name, v] : o.tol) {
    if (!(v > 0)) throw Error(ErrorCode::Config, "config error at --tol " + name + ": must be positive");
    try {
      cfg.tol.set(name, v);
    } catch (const Error&) {
      throw Error(ErrorCode::Config, "config error at --tol " + name + ": unknown tolerance");
    }
  }
  if (cfg.grid_resolution < 1) throw Error(ErrorCode::Config, "config error at --grid: must be positive");
  if (!(cfg.grid_margin > 0)) throw Error(ErrorCode::Config, "config error at --margin: must be positive");
  return cfg;
}

std::vector<Vec> eval_points(const RunConfig& cfg, const InteriorGrid& grid) {
  return cfg.points.empty() ? grid.points : cfg.points;
}

const char* const kTensorNames[] = {"phi_s", "phi", "Xi", "Jplus", "Jminus", "I0", "Iplus",
                                    "Iminus", "J0", "g", "b", "beta1", "beta3", "Omega"};

const Mat& tensor(const FramePointStructures& s, int k) {
  const Mat* all[] = {&s.phi_s, &s.phi, &s.Xi, &s.Jplus, &s.Jminus, &s.I0, &s.Iplus,
                      &s.Iminus, &s.J0, &s.g, &s.b, &s.beta1, &s.beta3, &s.Omega};
  return *all[k];
}

ValidationReport nijenhuis_sweep(const GKTriple& t, const std::vector<Vec>& points, const Tolerances& tol) {
  ValidationReport rep;
  const std::pair<StructureField, const char*> fields[] = {
      {StructureField::Jplus, "nijenhuis_Jplus"}, {StructureField::Jminus, "nijenhuis_Jminus"},
      {StructureField::I0, "nijenhuis_I0"}};
  for (auto [which, name] : fields) {
    WorstTracker w;
    bool ok = true;
    for (const auto& x : points) {
      try {
        w.update(nijenhuis_residual(t, which, x, 1e-4), x);
      } catch (const Error&) {
        ok = false;
        w.update(std::numeric_limits<double>::infinity(), x);
      }
    }
    rep.add(name, ok && w.value <= tol.nijenhuis, w.value, w.location, "h=1e-4");
  }
  return rep;
}

ValidationReport validate_report(const RunConfig& cfg, const GKTriple& t, const InteriorGrid& grid) {
  ValidationReport rep;
  rep.merge(check_potential_class(t.potential, grid, cfg.tol.pd_eig), "potential");
  ValidationReport tri = validate_triple(t, grid, cfg.tol);
  rep.merge(tri, "triple");
  if (!tri.pass()) return rep;
  const auto pts = eval_points(cfg, grid);
  rep.merge(identity_sweep(t, pts, Frame::ZetaDmu, cfg.tol.identity_residual), "identity");
  try {
    rep.merge(smooth_extension_probe(t, grid.boundary_rays), "extension");
  } catch (const Error& e) {
    add_error(rep, "extension", e);
  }
  rep.merge(nijenhuis_sweep(t, pts, cfg.tol), "integrability");
  return rep;
}

std::string csv_number(double v) { return format_double(v); }

CommandResult cmd_validate(const RunConfig& cfg) {
  CommandResult r;
  const GKTriple t = make_triple(cfg);
  const InteriorGrid grid = sample_interior(t.potential.polytope(), cfg.grid_resolution, cfg.grid_margin);
  r.report = validate_report(cfg, t, grid);
  return r;
}

CommandResult cmd_build(const RunConfig& cfg) {
  CommandResult r;
  const GKTriple t = make_triple(cfg);
  const InteriorGrid grid = sample_interior(t.potential.polytope(), cfg.grid_resolution, cfg.grid_margin);
  r.report = validate_report(cfg, t, grid);
  r.artifact = build_csv(t, eval_points(cfg, grid), cfg.frames, &r.report);
  return r;
}

CommandResult cmd_typemap(const RunConfig& cfg) {
  CommandResult r;
  const auto& p = require_polytope(cfg);
  const int n = p.dim();
  auto records = type_map(p, cfg.C, cfg.F);
  std::ostringstream out;
  bool consistent = true, nonneg = true;
  for (const auto& rec : records) {
    out << "face=" << (rec.face_index ? std::to_string(*rec.face_index) : std::string("interior"))
        << " codim=" << rec.codim << " facets=[";
    for (std::size_t k = 0; k < rec.active_facets.size(); ++k) out << (k ? "," : "") << rec.active_facets[k];
    out << "] rank=" << rec.rank_used << " ambient_type=" << rec.type_value
        << " submanifold_type=" << rec.submanifold_type << "\n";
    if (rec.type_value != n - rec.rank_used || rec.submanifold_type != rec.type_value - rec.codim) consistent = false;
    if (rec.submanifold_type < 0) nonneg = false;
  }
  r.artifact = out.str();
  r.report.add("typemap_faces", !records.empty(), static_cast<double>(records.size()), {}, "records");
  r.report.add("typemap_consistency", consistent, 0.0);
  r.report.add("submanifold_type_nonnegative", nonneg, 0.0);
  return r;
}

CommandResult cmd_deform(const RunConfig& cfg) {
  CommandResult r;
  const GKTriple t = make_triple(cfg);
  const InteriorGrid grid = sample_interior(t.potential.polytope(), cfg.grid_resolution, cfg.grid_margin);
  const auto pts = eval_points(cfg, grid);
  r.report.merge(validate_triple(t, grid, cfg.tol), "triple");
  std::ostringstream csv;
  for (int i = 1; i <= t.dim(); ++i) csv << "x" << i << ",";
  csv << "t,route_residual\n";
  WorstTracker route;
  bool route_ok = true;
  double t0 = 0;
  Vec t0_at;
  ValidationReport ids;
  for (double s : cfg.t_values) {
    GKTriple ts{t.potential, t.C, t.F * s};
    ConeResult cone = cone_membership(ts.F, t.potential, grid);
    r.report.add("cone_t=" + format_double(s), cone.member, cone.margin, cone.worst, "min eigenvalue of Id + F_x^2/4");
    for (const auto& x : pts) {
      try {
        DeformResult d = deform(t, s, x);
        route.update(d.route_residual, x);
        if (s == 0.0) {
          double e = std::max(max_abs(Mat(d.Jplus_conjugated - d.direct.Iplus)),
                              max_abs(Mat(d.Jminus_conjugated - d.direct.Iminus)));
          if (e > t0) {
            t0 = e;
            t0_at = x;
          }
        }
        ids.fold_worst(check_identities(d.direct, cfg.tol.identity_residual));
        for (int i = 0; i < x.size(); ++i) csv << csv_number(x[i]) << ",";
        csv << csv_number(s) << "," << csv_number(d.route_residual) << "\n";
      } catch (const Error& e) {
        route_ok = false;
        add_error(r.report, "deform_t=" + format_double(s), e, x);
      }
    }
  }
  r.report.add("route_agreement", route_ok && route.value <= cfg.tol.identity_residual, route.value, route.location,
               "conjugation vs direct");
  r.report.add("t0_identity", t0 == 0.0, t0, t0_at, "t=0 against I+, I-");
  r.report.merge(ids, "identity");
  r.artifact = csv.str();
  return r;
}

CommandResult cmd_reduce(const RunConfig& cfg) {
  CommandResult r;
  const auto seq = build_sequence(require_polytope(cfg));
  const LiftedPair minimal = lift_pair(seq, cfg.C, cfg.F);
  LiftedPair pair = minimal;
  if (!cfg.lift.minimal) {
    Mat cp = cfg.lift.Cprime ? *cfg.lift.Cprime : minimal.Cprime;
    pair = lift_pair_explicit(seq, cfg.C, cfg.F, cp, cfg.lift.Fprime);
  }
  ReductionResult res = reduce_and_compare(seq, pair, cfg.samples, cfg.seed, kReductionTol);
  r.report = res.report;
  if (!cfg.lift.minimal) {
    double d = compare_lifts(seq, minimal, pair, cfg.samples, cfg.seed);
    r.report.add("lift_independence", d <= kReductionTol, d, {}, "explicit vs minimal lift");
  }
  std::ostringstream csv;
  for (int i = 1; i <= seq.n; ++i) csv << "mu" << i << ",";
  csv << "included,residual_Jplus,residual_Jminus,residual_I0,residual_lift_identity,residual_I0_identity\n";
  for (const auto& s : res.samples) {
    for (int i = 0; i < s.mu.size(); ++i) csv << csv_number(s.mu[i]) << ",";
    csv << "1," << csv_number(s.residual_Jplus) << "," << csv_number(s.residual_Jminus) << ","
        << csv_number(s.residual_I0) << "," << csv_number(s.residual_lift_identity) << ","
        << csv_number(s.residual_I0_identity) << "\n";
  }
  for (const auto& mu : res.excluded_mu) {
    for (int i = 0; i < mu.size(); ++i) csv << csv_number(mu[i]) << ",";
    csv << "0,,,,,\n";
  }
  r.artifact = csv.str();
  return r;
}

CommandResult cmd_example(const CommandOptions& o) {
  CommandResult r;
  if (o.example != "cp1xcp1") throw Error(ErrorCode::Config, "config error at example: unknown example '" + o.example + "'");
  Tolerances tol;
  for (const auto& [name, v] : o.tol) tol.set(name, v);
  const int k = o.grid.value_or(10);
  const double margin = o.margin.value_or(0.02);
  r.report = compare_cp1xcp1(o.c, o.f, k, margin, tol.oracle_match);
  if (o.c == 0.0 && o.f != 0.0) {
    std::mt19937_64 rng(o.seed.value_or(0));
    std::uniform_real_distribution<double> rad(0.3, 3.0), ang(0.0, 2 * M_PI);
    WorstTracker w;
    for (int i = 0; i < 20; ++i) {
      Eigen::Vector2cd z(std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng)));
      Vec at(4);
      at << z[0].real(), z[0].imag(), z[1].real(), z[1].imag();
      w.update(symmetric_spinor_identity(o.f, z), at);
    }
    r.report.add("spinor_identity", w.value <= tol.oracle_match, w.value, w.location, "at=(Re z1, Im z1, Re z2, Im z2)");
  }
  return r;
}

CommandResult cmd_selftest(std::uint64_t seed) {
  CommandResult r;
  r.report = run_matrix_fact_suite(seed);
  return r;
}

}  // namespace

ValidationReport identity_sweep(const GKTriple& t, const std::vector<Vec>& points, Frame frame, double tol) {
  ValidationReport rep;
  for (const auto& x : points) {
    try {
      rep.fold_worst(check_identities(build_structures(t, x, frame), tol));
    } catch (const Error& e) {
      ValidationReport bad;
      add_error(bad, "build", e, x);
      rep.fold_worst(bad);
    }
  }
  return rep;
}

std::string build_csv(const GKTriple& t, const std::vector<Vec>& points, const std::vector<Frame>& frames,
                      ValidationReport* rep) {
  std::ostringstream out;
  const int n = t.dim();
  for (int i = 1; i <= n; ++i) out << "x" << i << ",";
  out << "frame,tensor,i,j,value\n";
  int failed = 0;
  Vec fail_at;
  for (const auto& x : points) {
    std::string prefix;
    for (int i = 0; i < n; ++i) prefix += csv_number(x[i]) + ",";
    for (Frame fr : frames) {
      FramePointStructures s;
      try {
        s = build_structures(t, x, fr);
      } catch (const Error&) {
        if (!failed++) fail_at = x;
        continue;
      }
      for (int k = 0; k < static_cast<int>(std::size(kTensorNames)); ++k) {
        const Mat& m = tensor(s, k);
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j)
            out << prefix << to_string(fr) << "," << kTensorNames[k] << "," << i << "," << j << ","
                << csv_number(m(i, j)) << "\n";
      }
    }
  }
  if (rep) rep->add("build_points", failed == 0, failed, fail_at, "points where a frame could not be built");
  return out.str();
}

CommandResult execute(const CommandOptions& o) {
  CommandResult r;
  try {
    if (o.command == "selftest") {
      r = cmd_selftest(o.seed.value_or(0));
    } else if (o.command == "example") {
      r = cmd_example(o);
    } else {
      const RunConfig cfg = resolve_config(o);
      if (o.command == "validate") r = cmd_validate(cfg);
      else if (o.command == "build") r = cmd_build(cfg);
      else if (o.command == "typemap") r = cmd_typemap(cfg);
      else if (o.command == "deform") r = cmd_deform(cfg);
      else if (o.command == "reduce") r = cmd_reduce(cfg);
      else throw Error(ErrorCode::Config, "unknown command '" + o.command + "'");
    }
    r.status = r.report.pass() ? 0 : 1;
  } catch (const Error& e) {
    add_error(r.report, "error", e);
    r.status = e.code() == ErrorCode::Config ? 2 : 1;
  }
  return r;
}

int run(const CommandOptions& o) {
  if (o.command == "build" && !o.out) {
    std::cerr << "gk build: --out <csv> is required\n";
    return 2;
  }
  CommandResult r = execute(o);
  if (o.out) {
    std::ofstream f(*o.out, std::ios::binary);
    f << r.artifact;
    if (!f) {
      std::cerr << "cannot write " << *o.out << "\n";
      r.status = std::max(r.status, 1);
    }
  } else if (o.command == "typemap") {
    std::cout << r.artifact;
  }
  const std::string text = r.report.to_text();
  if (o.report) {
    std::ofstream f(*o.report, std::ios::binary);
    f << text;
    if (!f) {
      std::cerr << "cannot write " << *o.report << "\n";
      r.status = std::max(r.status, 1);
    }
  }
  std::cout << text;
  std::cout << (r.status == 0 ? "OK" : "FAILED") << "\n";
  return r.status;
}

}  // namespace toricgk
