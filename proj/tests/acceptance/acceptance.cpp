// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include "toricgk/commands.hpp"
#include "toricgk/error.hpp"
#include "toricgk/gk_builder.hpp"
#include "toricgk/linalg_corpus.hpp"
#include "toricgk/oracles.hpp"
#include "toricgk/poisson.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/potential.hpp"
#include "toricgk/reduction.hpp"

#include <Eigen/LU>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace toricgk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double kNaN() { return std::numeric_limits<double>::quiet_NaN(); }

Facet facet(std::initializer_list<int> u, double lambda) {
  Facet f;
  f.normal.resize(static_cast<int>(u.size()));
  int i = 0;
  for (int v : u) f.normal[i++] = v;
  f.offset = lambda;
  return f;
}

DelzantPolytope triangle() { return DelzantPolytope(2, {facet({1, 0}, 0), facet({0, 1}, 0), facet({-1, -1}, -1)}); }
DelzantPolytope trapezoid() {
  return DelzantPolytope(2, {facet({1, 0}, 0), facet({0, 1}, 0), facet({-1, 0}, -2), facet({-1, -1}, -3)});
}
DelzantPolytope cube() { return DelzantPolytope::box({0, 0, 0}, {1, 1, 1}); }

GKTriple square_triple(double c, double f) {
  return GKTriple{PotentialModel::canonical(DelzantPolytope::square_half()), AntisymmetricMatrix::planar(c),
                  AntisymmetricMatrix::planar(f)};
}

Vec random_interior(const DelzantPolytope& p, std::mt19937_64& rng, double min_slack = 1e-3) {
  Vec lo = p.vertices()[0].point, hi = lo;
  for (const auto& v : p.vertices()) {
    lo = lo.cwiseMin(v.point);
    hi = hi.cwiseMax(v.point);
  }
  std::uniform_real_distribution<double> u(0, 1);
  for (;;) {
    Vec x(p.dim());
    for (int i = 0; i < p.dim(); ++i) x[i] = lo[i] + u(rng) * (hi[i] - lo[i]);
    if (p.min_slack(x) > min_slack) return x;
  }
}

AntisymmetricMatrix random_antisym(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  AntisymmetricMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, u(rng));
  return m;
}

Outcome criterion1() {
  double worst = 0;
  bool ok = true;
  std::string where;
  for (auto [c, f] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.0, 4.0}, {1.0, 4.0}, {2.0, 7.0}}) {
    auto rep = compare_cp1xcp1(c, f, 10, 0.02, 1e-9);
    for (const auto& ch : rep.checks()) {
      if (ch.name == "oracle_top_form" || ch.name == "oracle_half_difference_inverse") continue;
      ok = ok && ch.pass;
      if (ch.residual > worst) {
        worst = ch.residual;
        where = ch.name + " (c,f)=(" + fmt(c) + "," + fmt(f) + ")";
      }
    }
  }
  return {ok, "max relative residual g,b,Q,b'=" + fmt(worst) + " worst " + where + " tol 1e-9"};
}

Outcome criterion2() {
  auto r = f_admissibility_interval(64);
  bool up = r.upper >= 7.9 && r.upper <= 8.0;
  bool mx = std::abs(r.max_inv_det - 1.0 / 16) <= 1e-6;
  bool loc = std::abs(r.argmax[0] - 0.25) <= r.grid_cell && std::abs(r.argmax[1] - 0.25) <= r.grid_cell;
  std::ostringstream d;
  d << "upper=" << format_double(r.upper) << " in [7.9,8.0]; max 1/det phi_s=" << format_double(r.max_inv_det)
    << " at " << format_vec(r.argmax) << " (grid max " << format_double(r.grid_max_inv_det) << " at "
    << format_vec(r.grid_argmax) << ", cell " << fmt(r.grid_cell) << "); 2/sqrt(m)=" << format_double(r.formula_upper);
  return {up && mx && loc, d.str()};
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  std::vector<DelzantPolytope> polys{DelzantPolytope::square_half(), triangle(), trapezoid(), cube()};
  const char* pre_names[] = {"square", "triangle", "trapezoid", "cube"};
  int samples = 0, triples = 0, rejected = 0;
  ValidationReport folded;
  int per_poly[4] = {0, 0, 0, 0};
  while (samples < 1000) {
    const int k = triples % 4;
    const auto& p = polys[k];
    std::uniform_real_distribution<double> q(0, 0.05);
    std::vector<PolyTerm> poly;
    for (int i = 0; i < p.dim(); ++i) {
      PolyTerm t{q(rng), std::vector<int>(p.dim(), 0)};
      t.powers[i] = 2;
      poly.push_back(t);
    }
    GKTriple t{PotentialModel(p, 1, poly), random_antisym(rng, p.dim(), 2.0), random_antisym(rng, p.dim(), 3.0)};
    ++triples;
    auto grid = sample_interior(p, p.dim() == 3 ? 5 : 8, 0.01);
    if (!validate_triple(t, grid).pass()) {
      ++rejected;
      continue;
    }
    for (int s = 0; s < 10 && samples < 1000; ++s, ++samples, ++per_poly[k])
      folded.fold_worst(check_identities(build_structures(t, random_interior(p, rng)), 1e-10));
  }
  std::string worst;
  double wr = 0;
  const char* listed[] = {"Jplus_squared", "Jminus_squared", "symplectic_adjoint_J", "g_from_J", "b_from_J",
                          "beta3_commutator", "hermitian_Jplus", "hermitian_Jminus", "gualtieri_J1_squared",
                          "gualtieri_J2_squared", "gualtieri_commute", "gualtieri_metric"};
  bool ok = folded.pass();
  for (const char* n : listed) {
    const Check* c = folded.find(n);
    if (!c) ok = false;
    else if (c->residual > wr) {
      wr = c->residual;
      worst = n;
    }
  }
  const Check* gm = folded.find("gualtieri_metric_positive");
  std::ostringstream d;
  d << samples << " samples (";
  for (int i = 0; i < 4; ++i) d << (i ? ", " : "") << pre_names[i] << " " << per_poly[i];
  d << "), " << triples - rejected << " triples; max identity residual=" << fmt(wr) << " (" << worst
    << "); min relative eigenvalue of generalized metric=" << fmt(gm ? gm->residual : kNaN()) << " tol 1e-10";
  if (!ok)
    for (const auto& c : folded.checks())
      if (!c.pass) d << " FAILED " << c.name;
  return {ok, d.str()};
}


Outcome criterion4() {
  std::mt19937_64 rng(4);
  struct Setting {
    PotentialModel model;
    InteriorGrid grid;
    double scale;
  };
  std::vector<Setting> settings;
  settings.push_back({PotentialModel::canonical(DelzantPolytope::square_half()),
                      sample_interior(DelzantPolytope::square_half(), 12, 0.01), 8.0});
  settings.push_back({PotentialModel::canonical(cube()), sample_interior(cube(), 5, 0.02), 4.0});
  settings.push_back({PotentialModel::canonical(triangle()), sample_interior(triangle(), 10, 0.01), 4.0});
  int combos = 0, combo_fail = 0, norm_fail = 0, cont_checked = 0, cont_fail = 0;
  double max_ratio = 0;
  for (int it = 0; combos < 200; ++it) {
    auto& s = settings[it % settings.size()];
    const int n = s.model.dim();
    std::vector<AntisymmetricMatrix> members;
    while (members.size() < 3) {
      auto f = random_antisym(rng, n, s.scale);
      auto r = cone_membership(f, s.model, s.grid);
      if (r.member) {
        members.push_back(f);
        max_ratio = std::max(max_ratio, r.max_norm_sq / (4.0 * n));
        if (!(r.max_norm_sq < 4.0 * n)) ++norm_fail;
        // perturbation continuity
        std::uniform_real_distribution<double> sgn(-1, 1);
        for (double e : {1e-6, -1e-6}) {
          AntisymmetricMatrix g = f;
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.set(i, j, f(i, j) + e * (sgn(rng) < 0 ? -1 : 1));
          auto rg = cone_membership(g, s.model, s.grid);
          if (std::abs(r.margin) > 1e-4) {
            ++cont_checked;
            if ((rg.margin > 0) != (r.margin > 0) || std::abs(rg.margin - r.margin) > 1e-3) ++cont_fail;
          }
        }
      }
    }
    std::uniform_real_distribution<double> w(0, 1);
    double a = w(rng), b = w(rng), c = w(rng), sum = a + b + c;
    auto combo = members[0] * (a / sum) + members[1] * (b / sum) + members[2] * (c / sum);
    auto r = cone_membership(combo, s.model, s.grid);
    ++combos;
    if (!r.member) ++combo_fail;
    if (!(r.max_norm_sq < 4.0 * n)) ++norm_fail;
  }
  std::ostringstream d;
  d << combos << " convex combinations, " << combo_fail << " left the cone; max ||F_x||^2/4n=" << fmt(max_ratio)
    << ", " << norm_fail << " bound violations; " << cont_checked << " perturbations, " << cont_fail
    << " sign changes";
  return {combo_fail == 0 && norm_fail == 0 && cont_fail == 0 && cont_checked > 0, d.str()};
}

Outcome criterion5() {
  std::vector<GKTriple> triples{square_triple(0.5, 4.0), square_triple(0.0, 7.0),
                                GKTriple{PotentialModel::canonical(triangle()), AntisymmetricMatrix::planar(0.3),
                                         AntisymmetricMatrix::planar(1.5)}};
  double route = 0, t0 = 0;
  bool ids = true;
  int count = 0;
  for (const auto& t : triples) {
    auto grid = sample_interior(t.potential.polytope(), 6, 0.02);
    for (double s : default_t_sweep(11))
      for (const auto& x : grid.points) {
        auto d = deform(t, s, x);
        route = std::max(route, d.route_residual);
        if (s == 0.0)
          t0 = std::max({t0, max_abs(Mat(d.Jplus_conjugated - d.direct.Iplus)),
                         max_abs(Mat(d.direct.Jplus - d.direct.Iplus))});
        ids = ids && check_identities(d.direct, 1e-10).pass();
        ++count;
      }
  }
  return {route <= 1e-10 && t0 == 0.0 && ids,
          std::to_string(count) + " (t, point) pairs; max route residual=" + fmt(route) + " tol 1e-10; t=0 deviation=" +
              fmt(t0) + "; identity suite " + (ids ? "passes" : "fails") + " for every intermediate"};
}

Outcome criterion6() {
  auto grid = sample_interior(DelzantPolytope::square_half(), 10, 0.02);
  double rs = 0, rb = 0, sp = 0;
  for (double f : {1.0, 4.0, 7.0}) {
    auto t = square_triple(0, f);
    for (const auto& x : grid.points) {
      auto s = symmetric_factorize(t, x);
      rs = std::max(rs, s.residual_S);
      rb = std::max(rb, s.residual_b);
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(f));
    std::uniform_real_distribution<double> rad(0.2, 4.0), ang(0, 2 * M_PI);
    for (int k = 0; k < 20; ++k) {
      Eigen::Vector2cd z(std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng)));
      sp = std::max(sp, symmetric_spinor_identity(f, z));
    }
  }
  return {rs <= 1e-10 && rb <= 1e-10 && sp <= 1e-9,
          "100 points x f in {1,4,7}: S residual=" + fmt(rs) + ", b residual=" + fmt(rb) +
              " tol 1e-10; spinor identity at 20 off-axis points per f=" + fmt(sp) + " tol 1e-9"};
}

int brute_rank(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

Outcome criterion7() {
  auto sq = DelzantPolytope::square_half();
  const std::complex<double> I(0, 1);
  int records = 0, mismatches = 0, wrong = 0;
  for (auto [c, f] : {std::pair{1.0, 0.0}, {0.0, 4.0}, {1.0, 4.0}, {-2.0, 7.0}, {0.3, -0.1}}) {
    auto C = AntisymmetricMatrix::planar(c), F = AntisymmetricMatrix::planar(f);
    Eigen::MatrixXcd m = 0.5 * F.dense().cast<std::complex<double>>() - I * C.dense().cast<std::complex<double>>();
    for (const auto& rec : type_map(sq, C, F)) {
      ++records;
      // tangent space of the face: kernel of the active normals
      Eigen::MatrixXd normals(rec.active_facets.size(), 2);
      for (std::size_t k = 0; k < rec.active_facets.size(); ++k)
        normals.row(k) = sq.facets()[rec.active_facets[k]].normal.cast<double>().transpose();
      Eigen::MatrixXd tangent = rec.active_facets.empty() ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2))
                                                          : Eigen::MatrixXd(Eigen::FullPivLU<Eigen::MatrixXd>(normals).kernel());
      if (rec.codim == 2) tangent.resize(2, 0);
      Eigen::MatrixXcd tc = tangent.cast<std::complex<double>>();
      int rank = brute_rank(Eigen::MatrixXcd(tc.transpose() * m * tc));
      if (2 - rank != rec.type_value) ++mismatches;
      int expected = rec.codim == 0 ? 0 : 2;
      if (rec.type_value != expected) ++wrong;
    }
  }
  return {mismatches == 0 && wrong == 0 && records == 45,
          std::to_string(records) + " records: interior type 0, edge and vertex ambient type 2; " +
              std::to_string(mismatches) + " brute-force rank mismatches, " + std::to_string(wrong) +
              " unexpected types"};
}

Outcome criterion8() {
  auto rays = boundary_rays(DelzantPolytope::square_half());
  auto rep = smooth_extension_probe(square_triple(0, 4), rays);
  const char* needed[] = {"Xi_inverse_extends", "phi_s_inverse_extends", "Xi_inverse_phi_s_extends",
                          "det_Xi_inverse_phi_s_lower_bound"};
  bool ok = rays.size() == 8;
  std::ostringstream d;
  d << rays.size() << " rays;";
  for (const char* n : needed) {
    const Check* c = rep.find(n);
    ok = ok && c && c->pass;
    d << " " << n << "=" << (c ? fmt(c->residual) : std::string("missing"));
  }
  return {ok, d.str() + " (det bound 1 - 1e-9)"};
}

Mat planar_lift(double f) {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = f;
  m(1, 0) = -f;
  return m;
}

Outcome criterion9() {
  auto seg = build_sequence(DelzantPolytope::segment(0, 0.5));
  const AntisymmetricMatrix z(1);
  double worst = 0;
  bool ok = true;
  for (double f : {0.0, 0.5}) {
    auto pair = lift_pair_explicit(seg, z, z, Mat::Zero(2, 2), planar_lift(f));
    auto r = reduce_and_compare(seg, pair, 50, 0, 1e-8);
    ok = ok && r.report.pass() && r.included == 50;
    for (const char* n : {"horizontal_lift_identity", "I0_lift_identity", "reduced_Jplus", "reduced_Jminus", "reduced_I0"}) {
      const Check* c = r.report.find(n);
      if (!c) ok = false;
      else worst = std::max(worst, c->residual);
    }
  }
  auto a = lift_pair_explicit(seg, z, z, Mat::Zero(2, 2), planar_lift(0.0));
  auto b = lift_pair_explicit(seg, z, z, Mat::Zero(2, 2), planar_lift(0.5));
  double lifts = compare_lifts(seg, a, b, 50, 0);
  ok = ok && lifts <= 1e-8;

  auto r3 = reduce_and_compare(seg, lift_pair_explicit(seg, z, z, Mat::Zero(2, 2), planar_lift(3.0)), 50, 0, 1e-8);
  bool strict = r3.included < r3.sampled;
  auto r5 = reduce_and_compare(seg, lift_pair_explicit(seg, z, z, Mat::Zero(2, 2), planar_lift(5.0)), 50, 0, 1e-8);
  double lo = 1, hi = 0;
  for (const auto& mu : r5.excluded_mu) {
    lo = std::min(lo, mu[0]);
    hi = std::max(hi, mu[0]);
  }
  std::ostringstream d;
  d << "f'=0,0.5: max residual=" << fmt(worst) << " over 50 samples; lift independence=" << fmt(lifts)
    << " tol 1e-8; f'=3: " << r3.included << "/" << r3.sampled << " samples in region, strict subset "
    << (strict ? "yes" : "no") << "; note f'=5: " << r5.included << "/" << r5.sampled << " included, excluded mu in ["
    << fmt(lo) << "," << fmt(hi) << "]";
  return {ok && strict, d.str()};
}

Outcome criterion10() {
  auto rep = run_matrix_fact_suite(0);
  std::ostringstream d;
  for (const auto& c : rep.checks()) d << c.name << "=" << fmt(c.residual) << (c.pass ? "" : "(FAIL)") << " ";
  return {rep.pass() && rep.checks().size() == 5, d.str() + "tol 1e-10"};
}

Outcome criterion11() {
  std::vector<GKTriple> valid{square_triple(1.0, 4.0), square_triple(0.0, 7.0),
                              GKTriple{PotentialModel::canonical(triangle()), AntisymmetricMatrix::planar(0.5),
                                       AntisymmetricMatrix::planar(1.0)},
                              GKTriple{PotentialModel::canonical(trapezoid()), AntisymmetricMatrix::planar(0.3),
                                       AntisymmetricMatrix::planar(1.5)}};
  double worst = 0;
  for (const auto& t : valid)
    for (const auto& x : sample_interior(t.potential.polytope(), 6, 0.02).points)
      for (auto w : {StructureField::Jplus, StructureField::Jminus, StructureField::I0})
        worst = std::max(worst, nijenhuis_residual(t, w, x, 1e-4));
  auto sq = DelzantPolytope::square_half();
  auto model = PotentialModel::canonical(sq);
  auto phi = [&](const Vec& x) {
    Mat m = model.hessian_matrix(x);
    m(0, 1) += x[0];
    m(1, 0) += x[0];
    return m;
  };
  double corrupted = std::numeric_limits<double>::infinity();
  for (const auto& x : sample_interior(sq, 6, 0.02).points)
    for (auto w : {StructureField::Jplus, StructureField::I0}) {
      auto field = structure_field(phi, AntisymmetricMatrix::planar(0.5).dense(), AntisymmetricMatrix::planar(2).dense(), w);
      corrupted = std::min(corrupted, nijenhuis_residual(field, sq, x, 1e-4));
    }
  return {worst <= 1e-4 && corrupted >= 1e-2,
          "valid triples max=" + fmt(worst) + " (<= 1e-4); corrupted field min=" + fmt(corrupted) + " (>= 1e-2), h=1e-4"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle_equivalence", criterion1},     {"admissibility_interval", criterion2},
      {"identity_suite", criterion3},         {"cone_properties", criterion4},
      {"deformation_family", criterion5},     {"symmetric_factorization", criterion6},
      {"type_stratification", criterion7},    {"smooth_extension", criterion8},
      {"reduction", criterion9},              {"matrix_facts", criterion10},
      {"integrability_detection", criterion11}};
  int failed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const Error& e) {
      o = {false, std::string("error ") + to_string(e.code()) + ": " + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", k - failed, k);
  return failed == 0 ? 0 : 1;
}
