#include "toricgk/gk_builder.hpp"

#include "toricgk/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toricgk {

namespace {

Mat zeros(int n) { return Mat::Zero(n, n); }

Mat inverse_of(const Mat& m, const char* what) {
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible()) throw Error(ErrorCode::DegenerateFrame, std::string(what) + " is singular");
  return lu.inverse();
}

double resid(const Mat& a, double scale) { return max_abs(a) / std::max(scale, 1.0); }

double square_resid(const Mat& j) {
  const int m = static_cast<int>(j.rows());
  return resid(Mat(j * j + Mat::Identity(m, m)), m * max_abs(j) * max_abs(j));
}

}  // namespace

const char* to_string(Frame f) {
  switch (f) {
    case Frame::ZetaDmu: return "zeta_dmu";
    case Frame::ZetaPlusDmu: return "zetaplus_dmu";
    case Frame::ZetaMinusDmu: return "zetaminus_dmu";
    case Frame::AdmissibleCoords: return "admissible_coords";
  }
  return "?";
}

Frame frame_from_string(const std::string& s) {
  if (s == "zeta_dmu") return Frame::ZetaDmu;
  if (s == "zetaplus_dmu") return Frame::ZetaPlusDmu;
  if (s == "zetaminus_dmu") return Frame::ZetaMinusDmu;
  if (s == "admissible_coords") return Frame::AdmissibleCoords;
  throw Error(ErrorCode::InvalidArgument, "unknown frame '" + s + "'");
}

void Tolerances::set(const std::string& name, double value) {
  if (name == "pd_eig") pd_eig = value;
  else if (name == "identity_residual") identity_residual = value;
  else if (name == "oracle_match") oracle_match = value;
  else if (name == "nijenhuis") nijenhuis = value;
  else if (name == "fd_step") fd_step = value;
  else throw Error(ErrorCode::InvalidArgument, "unknown tolerance '" + name + "'");
}

Mat canonical_omega(int n) { return block2(zeros(n), -identity(n), identity(n), zeros(n)); }

Mat frame_matrix(const Mat& F, Frame frame) {
  const int n = static_cast<int>(F.rows());
  switch (frame) {
    case Frame::ZetaPlusDmu: return block2(identity(n), -0.5 * F, zeros(n), identity(n));
    case Frame::ZetaMinusDmu: return block2(identity(n), 0.5 * F, zeros(n), identity(n));
    default: return identity(2 * n);
  }
}

FramePointStructures to_frame(const FramePointStructures& s, const Mat& F, Frame frame) {
  Mat t = frame_matrix(F, frame) * frame_matrix(F, s.frame).inverse();
  Mat ti = t.inverse();
  FramePointStructures r = s;
  r.frame = frame;
  auto endo = [&](const Mat& m) { return Mat(t * m * ti); };
  auto form = [&](const Mat& m) { return Mat(ti.transpose() * m * ti); };
  auto bivec = [&](const Mat& m) { return Mat(t * m * t.transpose()); };
  r.Jplus = endo(s.Jplus);
  r.Jminus = endo(s.Jminus);
  r.I0 = endo(s.I0);
  r.Iplus = endo(s.Iplus);
  r.Iminus = endo(s.Iminus);
  r.J0 = endo(s.J0);
  r.g = form(s.g);
  r.b = form(s.b);
  r.Omega = form(s.Omega);
  r.beta1 = bivec(s.beta1);
  r.beta3 = bivec(s.beta3);
  return r;
}

FramePointStructures build_structures(const Mat& phi_s, const Mat& C, const Mat& F, Frame frame, const Vec& x) {
  const int n = static_cast<int>(phi_s.rows());
  if (phi_s.cols() != n || C.rows() != n || C.cols() != n || F.rows() != n || F.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch in structure data");
  auto pd = check_positive_definite(phi_s);
  if (!pd.positive) throw Error(ErrorCode::DegenerateFrame, "phi_s is not positive definite");

  FramePointStructures s;
  s.x = x;
  s.frame = Frame::ZetaDmu;
  s.phi_s = phi_s;
  s.phi = phi_s + C;
  const Mat I = identity(n), Z = zeros(n);
  const Mat phi_s_inv = inverse_of(phi_s, "phi_s");
  const Mat phi_inv = inverse_of(s.phi, "phi");
  s.Xi = phi_s + 0.25 * F * phi_s_inv * F;
  {
    Vec ev = symmetric_eigenvalues(0.5 * (s.Xi + s.Xi.transpose()));
    double scale = std::max(ev.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    if (ev.cwiseAbs().minCoeff() <= 1e-12 * scale) throw Error(ErrorCode::DegenerateFrame, "Xi is singular");
  }

  const Mat Tp = block2(I, -0.5 * F, Z, I), Tp_inv = block2(I, 0.5 * F, Z, I);
  const Mat Tm = block2(I, 0.5 * F, Z, I), Tm_inv = block2(I, -0.5 * F, Z, I);
  s.Iplus = block2(Z, s.phi.transpose(), -phi_inv.transpose(), Z);
  s.Iminus = block2(Z, s.phi, -phi_inv, Z);
  s.I0 = block2(Z, phi_s, -phi_s_inv, Z);
  s.Jplus = Tp_inv * s.Iplus * Tp;
  s.Jminus = Tm_inv * s.Iminus * Tm;
  s.Omega = canonical_omega(n);

  const Mat W = s.Omega, W_inv = W.inverse();
  const Mat sum = s.Jplus + s.Jminus, diff = s.Jplus - s.Jminus;
  s.g = -0.5 * sum.transpose() * W;
  s.b = -0.5 * diff.transpose() * W;
  const Mat g_inv = inverse_of(s.g, "g");
  s.beta1 = -0.5 * g_inv * diff.transpose();
  s.beta3 = -0.5 * W_inv * diff.transpose();

  // J0 sends d/dtheta_j to -g^-1(dmu_j)
  Mat V = Mat::Zero(2 * n, 2 * n);
  V.topLeftCorner(n, n) = I;
  Mat dmu = Mat::Zero(2 * n, n);
  dmu.bottomRows(n) = I;
  V.rightCols(n) = -g_inv * dmu;
  s.J0 = V * block2(Z, -I, I, Z) * inverse_of(V, "J0 frame");

  if (frame == Frame::ZetaDmu || frame == Frame::AdmissibleCoords) {
    s.frame = frame;
    return s;
  }
  return to_frame(s, F, frame);
}

FramePointStructures build_structures(const GKTriple& t, const Vec& x, Frame frame) {
  Mat phi_s = t.potential.hessian_matrix(x);
  return build_structures(phi_s, t.C.dense(), t.F.dense(), frame, x);
}

GualtieriPair gualtieri_pair(const FramePointStructures& s) {
  const Mat& Jp = s.Jplus;
  const Mat& Jm = s.Jminus;
  const Mat wp = s.g * Jp, wm = s.g * Jm;
  const Mat wp_inv = wp.inverse(), wm_inv = wm.inverse();
  GualtieriPair r;
  r.J1 = 0.5 * block2(-(Jp + Jm), wp_inv - wm_inv, -wp + wm, (Jp + Jm).transpose());
  r.J2 = 0.5 * block2(-Jp + Jm, wp_inv + wm_inv, -wp - wm, (Jp - Jm).transpose());
  r.G = -r.J1 * r.J2;
  return r;
}

ValidationReport check_identities(const FramePointStructures& s, double tol) {
  ValidationReport rep;
  const Vec& x = s.x;
  const int m = static_cast<int>(s.Jplus.rows());
  auto add = [&](const std::string& name, double r) { rep.add(name, r <= tol, r, x); };

  add("Jplus_squared", square_resid(s.Jplus));
  add("Jminus_squared", square_resid(s.Jminus));
  add("I0_squared", square_resid(s.I0));
  add("Iplus_squared", square_resid(s.Iplus));
  add("Iminus_squared", square_resid(s.Iminus));
  add("J0_squared", square_resid(s.J0));

  const Mat& W = s.Omega;
  const Mat W_inv = W.inverse();
  const double wscale = m * m * max_abs(W) * max_abs(W_inv);
  add("symplectic_adjoint_J",
      resid(Mat(s.Jminus + W_inv * s.Jplus.transpose() * W), wscale * max_abs(s.Jplus)));
  add("symplectic_adjoint_I",
      resid(Mat(s.Iminus + W_inv * s.Iplus.transpose() * W), wscale * max_abs(s.Iplus)));

  const Mat sum = s.Jplus + s.Jminus, diff = s.Jplus - s.Jminus;
  const double jscale = m * max_abs(sum) * max_abs(W);
  add("g_from_J", resid(Mat(s.g + 0.5 * sum.transpose() * W), jscale));
  add("b_from_J", resid(Mat(s.b + 0.5 * diff.transpose() * W), jscale));
  add("g_symmetric", resid(Mat(s.g - s.g.transpose()), max_abs(s.g)));
  add("b_antisymmetric", resid(Mat(s.b + s.b.transpose()), max_abs(s.b)));
  {
    auto pd = check_positive_definite(s.g, 1e-12, true);
    rep.add("g_positive", pd.positive, pd.min_eig / pd.scale, x, "min relative eigenvalue");
  }

  const Mat g_inv = s.g.inverse();
  const Mat comm = s.Jplus * s.Jminus - s.Jminus * s.Jplus;
  const Mat beta3_comm = (0.25 * comm * g_inv).transpose();
  add("beta3_commutator", resid(Mat(s.beta3 - beta3_comm), m * m * max_abs(s.Jplus) * max_abs(s.Jminus) * max_abs(g_inv)));
  const Mat S = 0.5 * sum;
  const Mat beta1_map = form_map(s.beta1), beta3_map = form_map(s.beta3);
  add("beta1_S_relation", resid(Mat(S * beta1_map - beta3_map), m * max_abs(S) * max_abs(beta1_map)));

  add("anticommutation", resid(Mat(sum * diff + diff * sum), 2 * m * max_abs(sum) * max_abs(diff)));
  add("hermitian_Jplus",
      resid(Mat(s.g * s.Jplus + s.Jplus.transpose() * s.g), 2 * m * max_abs(s.g) * max_abs(s.Jplus)));
  add("hermitian_Jminus",
      resid(Mat(s.g * s.Jminus + s.Jminus.transpose() * s.g), 2 * m * max_abs(s.g) * max_abs(s.Jminus)));

  auto gp = gualtieri_pair(s);
  const int mm = 2 * m;
  const Mat Id2 = Mat::Identity(mm, mm);
  const double s1 = max_abs(gp.J1), s2 = max_abs(gp.J2);
  add("gualtieri_J1_squared", resid(Mat(gp.J1 * gp.J1 + Id2), mm * s1 * s1));
  add("gualtieri_J2_squared", resid(Mat(gp.J2 * gp.J2 + Id2), mm * s2 * s2));
  add("gualtieri_commute", resid(Mat(gp.J1 * gp.J2 - gp.J2 * gp.J1), 2 * mm * s1 * s2));
  const Mat Zm = Mat::Zero(m, m);
  const Mat expected = block2(Zm, g_inv, s.g, Zm);
  add("gualtieri_metric", resid(Mat(gp.G - expected), mm * s1 * s2));
  {
    const Mat pairing = block2(Zm, Mat::Identity(m, m), Mat::Identity(m, m), Zm);
    Mat q = gp.G.transpose() * pairing;
    q = 0.5 * (q + q.transpose());
    auto pd = check_positive_definite(q, 1e-12, true);
    rep.add("gualtieri_metric_positive", pd.positive, pd.min_eig / pd.scale, x, "min relative eigenvalue");
  }
  {
    auto pd = check_positive_definite(s.Xi, 1e-12, true);
    rep.add("Xi_positive", pd.positive, pd.min_eig / pd.scale, x, "min relative eigenvalue");
  }
  return rep;
}

double cone_margin_at(const Mat& F, const Mat& phi_s) {
  const int n = static_cast<int>(F.rows());
  Mat r = inv_sqrt_spd(phi_s);
  Mat fx = r * F * r;
  Mat m = identity(n) + 0.25 * fx * fx;
  return smallest_eigenvalue(0.5 * (m + m.transpose()));
}

Vec minimize_in_interior(const std::function<double(const Vec&)>& f, const DelzantPolytope& p, Vec x0, double step0,
                         double step_min) {
  auto eval = [&](const Vec& y) {
    if (!(p.min_slack(y) > 0)) return std::numeric_limits<double>::infinity();
    try {
      double v = f(y);
      return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  Vec x = std::move(x0);
  double fx = eval(x);
  double step = step0;
  const int n = static_cast<int>(x.size());
  for (int iter = 0; iter < 200000 && step > step_min; ++iter) {
    bool improved = false;
    for (int i = 0; i < n && !improved; ++i)
      for (double sgn : {1.0, -1.0}) {
        Vec y = x;
        y[i] += sgn * step;
        double fy = eval(y);
        if (fy < fx) {
          x = y;
          fx = fy;
          improved = true;
          break;
        }
      }
    if (!improved) step *= 0.5;
  }
  return x;
}

namespace {

double grid_step(const DelzantPolytope& p, const InteriorGrid& g) {
  Vec lo = p.vertices().front().point, hi = lo;
  for (const auto& v : p.vertices()) {
    lo = lo.cwiseMin(v.point);
    hi = hi.cwiseMax(v.point);
  }
  return (hi - lo).maxCoeff() / std::max(1, g.resolution - 1);
}

template <class Fn>
void for_each_sample(const InteriorGrid& g, Fn fn) {
  for (const auto& x : g.points) fn(x);
  for (const auto& r : g.boundary_rays)
    for (const auto& x : r.points) fn(x);
}

}  // namespace

ConeResult cone_membership(const AntisymmetricMatrix& Fa, const PotentialModel& potential, const InteriorGrid& grid,
                           const ConeOptions& opts) {
  const Mat F = Fa.dense();
  ConeResult r;
  r.margin = std::numeric_limits<double>::infinity();
  Vec worst_grid;
  double worst_grid_margin = std::numeric_limits<double>::infinity();
  auto visit = [&](const Vec& x, bool on_grid) {
    Mat phi_s = potential.hessian_matrix(x);
    Mat rt = inv_sqrt_spd(phi_s);
    Mat fx = rt * F * rt;
    r.max_norm_sq = std::max(r.max_norm_sq, -(fx * fx).trace());
    Mat m = identity(F.rows()) + 0.25 * fx * fx;
    double mg = smallest_eigenvalue(0.5 * (m + m.transpose()));
    ++r.samples;
    if (mg < r.margin) {
      r.margin = mg;
      r.worst = x;
    }
    if (on_grid && mg < worst_grid_margin) {
      worst_grid_margin = mg;
      worst_grid = x;
    }
  };
  for (const auto& x : grid.points) visit(x, true);
  for (const auto& ray : grid.boundary_rays)
    for (const auto& x : ray.points) visit(x, false);
  if (opts.refine && worst_grid.size() > 0 && !Fa.is_zero()) {
    Vec xr = minimize_in_interior([&](const Vec& y) { return cone_margin_at(F, potential.hessian_matrix(y)); },
                                  potential.polytope(), worst_grid, grid_step(potential.polytope(), grid));
    visit(xr, false);
  }
  r.member = r.margin > opts.pd_tol;
  return r;
}

ValidationReport validate_triple(const GKTriple& t, const InteriorGrid& grid, const Tolerances& tol) {
  ValidationReport rep;
  const Mat F = t.F.dense();
  const int n = t.dim();
  WorstTracker phi_w(false), xi_w(false), cone_w(false), norm_w(true);
  bool phi_ok = true, xi_ok = true, cone_ok = true;
  Vec worst_grid;
  double worst_grid_margin = std::numeric_limits<double>::infinity();
  auto visit = [&](const Vec& x, bool on_grid) {
    Mat phi_s;
    try {
      phi_s = t.potential.hessian_matrix(x);
    } catch (const Error&) {
      phi_ok = xi_ok = cone_ok = false;
      phi_w.update(-std::numeric_limits<double>::infinity(), x);
      return;
    }
    auto p = check_positive_definite(phi_s, tol.pd_eig, true);
    phi_w.update(p.min_eig, x);
    if (!p.positive) {
      phi_ok = xi_ok = cone_ok = false;
      return;
    }
    Mat xi = phi_s + 0.25 * F * phi_s.inverse() * F;
    auto q = check_positive_definite(xi, tol.pd_eig, true);
    xi_w.update(q.min_eig, x);
    if (!q.positive) xi_ok = false;
    Mat rt = inv_sqrt_spd(phi_s);
    Mat fx = rt * F * rt;
    norm_w.update(-(fx * fx).trace(), x);
    Mat m = identity(n) + 0.25 * fx * fx;
    auto c = check_positive_definite(m, tol.pd_eig, true);
    cone_w.update(c.min_eig, x);
    if (!c.positive) cone_ok = false;
    if (on_grid && c.min_eig < worst_grid_margin) {
      worst_grid_margin = c.min_eig;
      worst_grid = x;
    }
  };
  for (const auto& x : grid.points) visit(x, true);
  for (const auto& ray : grid.boundary_rays)
    for (const auto& x : ray.points) visit(x, false);
  if (worst_grid.size() > 0 && !t.F.is_zero()) {
    Vec xr = minimize_in_interior([&](const Vec& y) { return cone_margin_at(F, t.potential.hessian_matrix(y)); },
                                  t.potential.polytope(), worst_grid, grid_step(t.potential.polytope(), grid));
    visit(xr, false);
  }
  rep.add("phi_s_positive", phi_ok, phi_w.value, phi_w.location, "min eigenvalue");
  rep.add("xi_positive", xi_ok, xi_w.value, xi_w.location, "min eigenvalue of Xi");
  rep.add("cone_condition", cone_ok, cone_w.value, cone_w.location, "min eigenvalue of Id + F_x^2/4");
  const bool norm_ok = !cone_ok || norm_w.value < 4.0 * n;
  rep.add("cone_norm_bound", norm_ok, norm_w.value, norm_w.location, "max ||F_x||^2 vs 4n=" + std::to_string(4 * n));
  return rep;
}

Mat fhat_gram(const Mat& F) {
  const int n = static_cast<int>(F.rows());
  return block2(zeros(n), zeros(n), zeros(n), F);
}

DeformResult deform(const GKTriple& t, double s, const Vec& x) {
  if (s < 0.0 || s > 1.0) throw Error(ErrorCode::InvalidArgument, "deformation parameter outside [0,1]");
  const Mat F = t.F.dense();
  const Mat phi_s = t.potential.hessian_matrix(x);
  DeformResult r;
  r.t = s;
  r.direct = build_structures(phi_s, t.C.dense(), s * F, Frame::ZetaDmu, x);
  const int n = t.dim();
  const Mat W = canonical_omega(n);
  const Mat W_inv_t = W.inverse().transpose();
  const Mat omega_inv_fhat = W_inv_t * fhat_gram(F).transpose();
  const Mat Id = identity(2 * n);
  r.Ft = Id - (s / 2.0) * omega_inv_fhat;
  const Mat Fmt = Id + (s / 2.0) * omega_inv_fhat;
  r.Jplus_conjugated = r.Ft.inverse() * r.direct.Iplus * r.Ft;
  r.Jminus_conjugated = Fmt.inverse() * r.direct.Iminus * Fmt;
  r.route_residual = std::max(rel_diff(r.Jplus_conjugated, r.direct.Jplus), rel_diff(r.Jminus_conjugated, r.direct.Jminus));
  return r;
}

std::vector<double> default_t_sweep(int count) {
  std::vector<double> ts;
  for (int k = 0; k < count; ++k) ts.push_back(count == 1 ? 1.0 : static_cast<double>(k) / (count - 1));
  return ts;
}

ValidationReport smooth_extension_probe(const GKTriple& t, const std::vector<BoundaryRay>& rays) {
  ValidationReport rep;
  const Mat F = t.F.dense(), C = t.C.dense();
  const int n = t.dim();
  const char* names[] = {"Xi_inverse", "phi_s_inverse", "Xi_inverse_phi_s", "phi_inverse", "phi_inverse_phi_transpose"};
  bool ok[5] = {true, true, true, true, true};
  double res[5] = {0, 0, 0, 0, 0};
  Vec at[5];
  bool det_ok = true;
  double det_min = std::numeric_limits<double>::infinity();
  Vec det_at;
  for (const auto& ray : rays) {
    std::vector<Mat> seq[5];
    bool singular = false;
    for (const auto& x : ray.points) {
      Mat phi_s = t.potential.hessian_matrix(x);
      Mat xi = phi_s + 0.25 * F * phi_s.inverse() * F;
      Eigen::FullPivLU<Mat> lu(xi);
      Mat xi_inv = lu.isInvertible() ? Mat(lu.inverse()) : Mat::Constant(n, n, std::numeric_limits<double>::infinity());
      if (!lu.isInvertible()) singular = true;
      Mat phi = phi_s + C;
      Mat phi_inv = phi.inverse();
      seq[0].push_back(xi_inv);
      seq[1].push_back(phi_s.inverse());
      seq[2].push_back(xi_inv * phi_s);
      seq[3].push_back(phi_inv);
      seq[4].push_back(phi_inv * phi.transpose());
      double d = (xi_inv * phi_s).determinant();
      if (!std::isfinite(d)) d = -std::numeric_limits<double>::infinity();
      if (d < det_min) {
        det_min = d;
        det_at = x;
      }
      if (!(d >= 1.0 - 1e-9)) det_ok = false;
    }
    for (int q = 0; q < 5; ++q) {
      auto sc = check_ray_series(seq[q]);
      if (!(sc.bounded && sc.cauchy) || singular) {
        ok[q] = false;
        at[q] = ray.endpoint;
      }
      res[q] = std::max(res[q], sc.last_difference);
    }
  }
  for (int q = 0; q < 5; ++q) rep.add(std::string(names[q]) + "_extends", ok[q], res[q], at[q], "last ray difference");
  rep.add("det_Xi_inverse_phi_s_lower_bound", det_ok, det_min, det_at, "min det over rays, bound 1 - 1e-9");
  return rep;
}

}  // namespace toricgk
