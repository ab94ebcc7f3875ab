#include "toricgk/oracles.hpp"

#include "toricgk/error.hpp"
#include "toricgk/gk_builder.hpp"
#include "toricgk/poisson.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/potential.hpp"

#include <algorithm>
#include <cmath>

namespace toricgk {

namespace {

// Gram matrix of sum over (i<j) coef_ij e^i ^ e^j
Mat two_form(int m, std::initializer_list<std::tuple<int, int, double>> terms) {
  Mat b = Mat::Zero(m, m);
  for (auto [i, j, v] : terms) {
    b(i, j) += v;
    b(j, i) -= v;
  }
  return b;
}

Eigen::MatrixXcd wedge(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return a * b.transpose() - b * a.transpose();
}

}  // namespace

CP1xCP1Oracle::CP1xCP1Oracle(double c, double f) : c_(c), f_(f) {}

Vec CP1xCP1Oracle::moment(const Eigen::Vector2cd& z) {
  Vec mu(2);
  for (int j = 0; j < 2; ++j) {
    double r2 = std::norm(z[j]);
    mu[j] = r2 / (2.0 * (1.0 + r2));
  }
  return mu;
}

CP1xCP1Tensors CP1xCP1Oracle::tensors(const Vec& mu) const {
  if (mu.size() != 2 || !(mu[0] > 0 && mu[0] < 0.5 && mu[1] > 0 && mu[1] < 0.5))
    throw Error(ErrorCode::BoundaryPoint, "oracle needs mu in (0,1/2)^2");
  const double c = c_, f = f_;
  const double a1 = 4 * mu[0] * (0.5 - mu[0]), a2 = 4 * mu[1] * (0.5 - mu[1]);
  const double e1 = 8 * mu[0] * (0.5 - mu[0]), e2 = 8 * mu[1] * (0.5 - mu[1]);
  CP1xCP1Tensors t;
  t.mu = mu;
  t.phi_s = Mat::Zero(2, 2);
  t.phi_s(0, 0) = 1 / a1;
  t.phi_s(1, 1) = 1 / a2;
  t.phi = t.phi_s;
  t.phi(0, 1) = c;
  t.phi(1, 0) = -c;
  t.p = 1 / (16 * mu[0] * (0.5 - mu[0]) * mu[1] * (0.5 - mu[1]));
  t.det_phi = t.p + c * c;
  const double dp = t.det_phi;
  t.phi_inv.resize(2, 2);
  t.phi_inv << 1 / a2, -c, c, 1 / a1;
  t.phi_inv /= dp;

  t.g.resize(4, 4);
  t.g << 1 / a2, 0, c * f / 2, 0,
         0, 1 / a1, 0, c * f / 2,
         c * f / 2, 0, (dp - f * f / 4) / a1, 0,
         0, c * f / 2, 0, (dp - f * f / 4) / a2;
  t.g /= dp;

  t.b.resize(4, 4);
  t.b << 0, -c, 0, f / e2,
         c, 0, -f / e1, 0,
         0, f / e1, 0, c * (dp + f * f / 4),
         -f / e2, 0, -c * (dp + f * f / 4), 0;
  t.b /= dp;

  const double k = c * c + f * f / 4;
  if (k != 0) {
    Mat q = two_form(4, {{0, 1, f / 2}, {0, 3, c / a2}, {1, 2, -c / a1}, {2, 3, (f * c * c + f * f * f / 4 - t.p * f) / 2}});
    t.Q = Mat(q / k);
    const double s = -(f / k - f / dp);
    t.bprime = two_form(4, {{0, 3, s / e2}, {1, 2, -s / e1}, {0, 1, c / k - c / dp}, {2, 3, -c * t.p / k + c * f * f / (4 * dp)}});
    Mat h(4, 4);
    h << 0, f / e2, 0, c,
         -f / e1, 0, -c, 0,
         0, c * (dp + f * f / 4), 0, -f / e1,
         -c * (dp + f * f / 4), 0, f / e2, 0;
    t.half_difference_inverse = Mat(-h / k);
  }
  return t;
}

CP1xCP1Tensors oracle_tensors(double c, double f, const Vec& mu) { return CP1xCP1Oracle(c, f).tensors(mu); }

double pfaffian4(const Mat& b) { return b(0, 1) * b(2, 3) - b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2); }

AdmissibilityInterval f_admissibility_interval(int resolution, double tol) {
  if (resolution < 16) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 16");
  const auto square = DelzantPolytope::square_half();
  const PotentialModel model = PotentialModel::canonical(square);
  const double margin = 0.25 / resolution;
  const InteriorGrid grid = sample_interior(square, resolution, margin);
  AdmissibilityInterval r;

  auto inv_det = [&](const Vec& x) { return 1.0 / model.hessian_matrix(x).determinant(); };
  for (const auto& x : grid.points) {
    double v = inv_det(x);
    if (v > r.grid_max_inv_det) {
      r.grid_max_inv_det = v;
      r.grid_argmax = x;
    }
  }
  r.grid_cell = (0.5 - 2 * margin) / (resolution - 1);
  r.argmax = minimize_in_interior([&](const Vec& x) { return -inv_det(x); }, square, r.grid_argmax, r.grid_cell);
  r.max_inv_det = inv_det(r.argmax);
  r.formula_upper = 2.0 / std::sqrt(r.max_inv_det);

  auto member = [&](double f) { return cone_membership(AntisymmetricMatrix::planar(f), model, grid).member; };
  double lo = 0.0, hi = 1.0;
  while (member(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (member(mid) ? lo : hi) = mid;
  }
  r.upper = lo;
  r.lower = -lo;
  return r;
}

double symmetric_spinor_identity(double f, const Eigen::Vector2cd& z) {
  if (f == 0.0) throw Error(ErrorCode::InvalidArgument, "spinor identity needs f != 0");
  if (z[0] == 0.0 || z[1] == 0.0) throw Error(ErrorCode::BoundaryPoint, "z must be off the coordinate axes");
  const Vec mu = CP1xCP1Oracle::moment(z);
  auto t = CP1xCP1Oracle(0.0, f).tensors(mu);
  if (!(1.0 - f * f / (4.0 * t.p) > 0)) throw Error(ErrorCode::InvalidArgument, "point outside admissibility");
  const std::complex<double> I(0, 1);
  Eigen::MatrixXcd lhs = t.bprime->cast<std::complex<double>>() - t.b.cast<std::complex<double>>() -
                         I * t.Q->cast<std::complex<double>>();
  Eigen::VectorXcd dz[2], dr[2];
  for (int j = 0; j < 2; ++j) {
    double r2 = std::norm(z[j]);
    double w = (1 + r2) * (1 + r2);
    dz[j] = Eigen::VectorXcd::Zero(4);
    dz[j][j] = I * z[j];
    dz[j][2 + j] = z[j] * w / r2;
    dr[j] = Eigen::VectorXcd::Zero(4);
    dr[j][2 + j] = 2.0 * w;
  }
  const double den = (1 + std::norm(z[0])) * (1 + std::norm(z[1]));
  Eigen::MatrixXcd rhs = (2.0 * I / (f * z[0] * z[1])) * wedge(dz[0], dz[1]) -
                         (I * f / (8.0 * den * den)) * wedge(dr[0], dr[1]);
  return max_abs(Eigen::MatrixXcd(lhs - rhs));
}

C2Frames c2_holomorphic_coframes(double c, double f, const Eigen::Vector2cd& z) {
  const std::complex<double> I(0, 1);
  Eigen::VectorXcd dz[2], dr[2];
  for (int j = 0; j < 2; ++j) {
    double r2 = std::norm(z[j]);
    dz[j] = Eigen::VectorXcd::Zero(4);
    dz[j][j] = I * z[j];
    dz[j][2 + j] = z[j] / r2;
    dr[j] = Eigen::VectorXcd::Zero(4);
    dr[j][2 + j] = 2.0;
  }
  const std::complex<double> k = 0.5 * (c + I * f / 2.0);
  C2Frames r;
  r.plus1 = dz[0] - k * z[0] * dr[1];
  r.plus2 = dz[1] + k * z[1] * dr[0];
  r.minus1 = dz[0] + k * z[0] * dr[1];
  r.minus2 = dz[1] - k * z[1] * dr[0];
  return r;
}

Mat c2_metric(double c, double f, const Eigen::Vector2cd& z) {
  const double r1 = std::norm(z[0]), r2 = std::norm(z[1]);
  const double P = r1 * r2;
  const double d = 1 + c * c * P - f * f * P / 4;
  Mat g(4, 4);
  g << r1, 0, c * f * P / 2, 0,
       0, r2, 0, c * f * P / 2,
       c * f * P / 2, 0, d / r1, 0,
       0, c * f * P / 2, 0, d / r2;
  return g / (1 + c * c * P);
}

ValidationReport compare_cp1xcp1(double c, double f, int resolution, double margin, double tol) {
  const auto square = DelzantPolytope::square_half();
  GKTriple t{PotentialModel::canonical(square), AntisymmetricMatrix::planar(c), AntisymmetricMatrix::planar(f)};
  const auto grid = sample_interior(square, resolution, margin);
  CP1xCP1Oracle oracle(c, f);
  WorstTracker wg, wb, wq, wbp, wd, wt;
  bool have_q = c * c + f * f != 0;
  for (const auto& x : grid.points) {
    auto s = build_structures(t, x, Frame::AdmissibleCoords);
    auto o = oracle.tensors(x);
    wg.update(rel_diff(s.g, o.g), x);
    wb.update(rel_diff(s.b, o.b), x);
    wt.update(std::abs(-o.det_phi * pfaffian4(s.b) - (c * c + f * f / 4)), x);
    if (have_q) {
      auto sp = pure_spinor_pair(s);
      wq.update(rel_diff(sp.Q, *o.Q), x);
      wbp.update(rel_diff(sp.bprime, *o.bprime), x);
      Mat dinv = (0.5 * (s.Jplus - s.Jminus)).inverse();
      wd.update(rel_diff(Mat(dinv.transpose()), *o.half_difference_inverse), x);
    }
  }
  ValidationReport rep;
  rep.add("oracle_g", wg.value <= tol, wg.value, wg.location);
  rep.add("oracle_b", wb.value <= tol, wb.value, wb.location);
  rep.add("oracle_top_form", wt.value <= tol, wt.value, wt.location, "-det(phi) Pf(b) vs c^2 + f^2/4");
  if (have_q) {
    rep.add("oracle_Q", wq.value <= tol, wq.value, wq.location);
    rep.add("oracle_bprime", wbp.value <= tol, wbp.value, wbp.location);
    rep.add("oracle_half_difference_inverse", wd.value <= tol, wd.value, wd.location);
  }
  return rep;
}

}  // namespace toricgk
