#include "toricgk/poisson.hpp"

#include "toricgk/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace toricgk {

namespace {

CMat type_matrix(const Mat& C, const Mat& F) {
  return (0.5 * F).cast<std::complex<double>>() - std::complex<double>(0, 1) * C.cast<std::complex<double>>();
}

}  // namespace

TypeRecord interior_type(const AntisymmetricMatrix& C, const AntisymmetricMatrix& F) {
  if (C.n() != F.n()) throw Error(ErrorCode::InvalidArgument, "C and F dimensions differ");
  TypeRecord r;
  r.matrix = type_matrix(C.dense(), F.dense());
  r.rank_used = numerical_rank(r.matrix);
  r.type_value = C.n() - r.rank_used;
  r.submanifold_type = r.type_value;
  return r;
}

TypeRecord face_type(const DelzantPolytope& p, const Face& face, const AntisymmetricMatrix& C,
                     const AntisymmetricMatrix& F) {
  const int n = p.dim();
  TypeRecord r;
  r.codim = face.codim;
  r.active_facets = face.active_facets;
  const Mat& B = face.tangent;
  r.matrix = type_matrix(Mat(B.transpose() * C.dense() * B), Mat(B.transpose() * F.dense() * B));
  r.rank_used = numerical_rank(r.matrix);
  r.type_value = n - r.rank_used;
  r.submanifold_type = r.type_value - face.codim;
  return r;
}

std::vector<TypeRecord> type_map(const DelzantPolytope& p, const AntisymmetricMatrix& C, const AntisymmetricMatrix& F) {
  std::vector<TypeRecord> out{interior_type(C, F)};
  int id = 0;
  for (int k = 1; k <= p.dim(); ++k)
    for (const auto& f : faces(p, k)) {
      auto r = face_type(p, f, C, F);
      r.face_index = id++;
      out.push_back(std::move(r));
    }
  return out;
}

CMat beta_plus_coefficients(const AntisymmetricMatrix& C, const AntisymmetricMatrix& F) {
  return 2.0 * type_matrix(C.dense(), F.dense());
}

double SymmetricFactorization::max() const {
  return std::max({residual_S, residual_b, residual_beta1, residual_omega});
}

SymmetricFactorization symmetric_factorize(const FramePointStructures& s, const Mat& F) {
  const int n = static_cast<int>(F.rows());
  const Mat Z = Mat::Zero(n, n);
  SymmetricFactorization r;
  r.x = s.x;
  r.S = 0.5 * (s.Jplus + s.Jminus);
  r.b1 = block2(Z, Z, Z, -0.5 * F);
  const Mat b1m = form_map(r.b1), beta3m = form_map(s.beta3), beta1m = form_map(s.beta1), bm = form_map(s.b);
  const double sc = std::max(1.0, max_abs(s.I0));
  r.residual_S = max_abs(Mat(r.S - (s.I0 - beta3m * b1m))) / sc;
  const Mat rhs_b = b1m * s.I0 - b1m * beta3m * b1m + s.I0.transpose() * b1m;
  r.residual_b = max_abs(Mat(bm - rhs_b)) / std::max({1.0, max_abs(rhs_b), max_abs(b1m) * sc});
  r.residual_beta1 = max_abs(Mat(beta1m - r.S.inverse() * beta3m)) / std::max(1.0, max_abs(beta1m));
  const Mat wp = s.g * s.Jplus, wm = s.g * s.Jminus;
  const Mat lhs = -0.5 * (wp - wm);
  r.residual_omega = max_abs(Mat(lhs - bm * r.S)) / std::max(1.0, max_abs(lhs));
  return r;
}

SymmetricFactorization symmetric_factorize(const GKTriple& t, const Vec& x) {
  if (!t.C.is_zero()) throw Error(ErrorCode::NotSymmetric, "symmetric factorization needs C = 0");
  return symmetric_factorize(build_structures(t, x), t.F.dense());
}

SpinorPair pure_spinor_pair(const FramePointStructures& s) {
  const Mat D = 0.5 * (s.Jplus - s.Jminus);
  const int m = static_cast<int>(D.rows());
  if (numerical_rank(D) < m) throw Error(ErrorCode::DegenerateDifference, "J+ - J- is singular");
  const Mat D_inv = D.inverse();
  SpinorPair r;
  r.Q = -D_inv.transpose() * s.g;
  r.bprime = -0.5 * (s.Jplus + s.Jminus).transpose() * r.Q;
  const Mat Qm = form_map(r.Q);
  r.inverse_residual = max_abs(Mat(Qm * D * s.g.inverse() + Mat::Identity(m, m)));
  return r;
}

SpinorPair pure_spinor_pair(const GKTriple& t, const Vec& x) { return pure_spinor_pair(build_structures(t, x)); }

double nijenhuis_residual(const EndomorphismField& J, const DelzantPolytope& p, const Vec& x, double h) {
  const int n = static_cast<int>(x.size());
  const int m = 2 * n;
  const double step = h * std::min(1.0, p.min_slack(x));
  const Mat j = J(x);
  // dj[l] = d/dx_l of J; theta directions vanish
  std::vector<Mat> dj(m, Mat::Zero(m, m));
  for (int a = 0; a < n; ++a) {
    Vec e = Vec::Zero(n);
    e[a] = step;
    dj[n + a] = (J(x + e) - J(x - e)) / (2.0 * step);
  }
  double worst = 0;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int jj = i + 1; jj < m; ++jj) {
        double v = 0;
        for (int l = 0; l < m; ++l) {
          v += j(l, i) * dj[l](k, jj) - j(l, jj) * dj[l](k, i);
          v -= j(k, l) * (dj[i](l, jj) - dj[jj](l, i));
        }
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

EndomorphismField structure_field(const std::function<Mat(const Vec&)>& phi_s, const Mat& C, const Mat& F,
                                  StructureField which) {
  return [=](const Vec& y) -> Mat {
    auto s = build_structures(phi_s(y), C, F, Frame::ZetaDmu, y);
    switch (which) {
      case StructureField::Jplus: return s.Jplus;
      case StructureField::Jminus: return s.Jminus;
      case StructureField::I0: return s.I0;
    }
    return s.Jplus;
  };
}

double nijenhuis_residual(const GKTriple& t, StructureField which, const Vec& x, double h) {
  auto field = structure_field([&](const Vec& y) { return t.potential.hessian_matrix(y); }, t.C.dense(), t.F.dense(),
                               which);
  return nijenhuis_residual(field, t.potential.polytope(), x, h);
}

}  // namespace toricgk
