#include "toricgk/reduction.hpp"

#include "toricgk/error.hpp"
#include "toricgk/potential.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace toricgk {

namespace {

using Rational = boost::rational<long long>;

Mat left_null_rows(const Mat& rows_constraint, int cols) {
  // basis (columns) of {v : rows_constraint * v = 0}
  if (rows_constraint.rows() == 0) return Mat::Identity(cols, cols);
  return null_space(rows_constraint, 1e-12);
}

double rel(const Mat& a, const Mat& b) { return max_abs(Mat(a - b)) / std::max(1.0, max_abs(b)); }

}  // namespace

Eigen::MatrixXi integer_kernel(const Eigen::MatrixXi& a, int* rank_out) {
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = Rational(a(i, j));
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c].numerator() == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].numerator() == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (rank_out) *rank_out = r;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
  Eigen::MatrixXi k(static_cast<int>(free_cols.size()), cols);
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    std::vector<Rational> v(cols, Rational(0));
    v[free_cols[f]] = 1;
    for (int i = 0; i < r; ++i) v[pivots[i]] = -m[i][free_cols[f]];
    long long l = 1;
    for (const auto& q : v) l = std::lcm(l, q.denominator());
    std::vector<long long> iv(cols);
    long long g = 0;
    for (int j = 0; j < cols; ++j) {
      iv[j] = (v[j] * l).numerator();
      g = std::gcd(g, std::llabs(iv[j]));
    }
    for (int j = 0; j < cols; ++j) k(static_cast<int>(f), j) = static_cast<int>(iv[j] / (g ? g : 1));
  }
  return k;
}

DelzantSequence build_sequence(const DelzantPolytope& p) {
  DelzantSequence s;
  s.n = p.dim();
  s.d = p.num_facets();
  s.varsigma = p.normal_matrix();
  s.lambda = p.offsets();
  s.polytope = p;
  int rank = 0;
  s.kernel_basis = integer_kernel(s.varsigma, &rank);
  if (rank < s.n) throw Error(ErrorCode::NotSurjective, "facet normals do not span R^n");
  Eigen::MatrixXi check = s.varsigma * s.kernel_basis.transpose();
  if (check.size() && check.cwiseAbs().maxCoeff() != 0) throw Error(ErrorCode::NotSurjective, "inexact kernel");
  return s;
}

Mat pushforward(const DelzantSequence& seq, const Mat& m) {
  Mat sg = seq.varsigma.cast<double>();
  return sg * m * sg.transpose();
}

Mat minimal_lift(const DelzantSequence& seq, const Mat& target) {
  const int n = seq.n, d = seq.d;
  const auto nu = AntisymmetricMatrix::upper_size(n), du = AntisymmetricMatrix::upper_size(d);
  if (nu == 0 || du == 0) return Mat::Zero(d, d);
  Mat sg = seq.varsigma.cast<double>();
  Mat A(static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(du));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1;
      e(j, i) = -1;
      Mat img = sg * e * sg.transpose();
      auto col = static_cast<Eigen::Index>(AntisymmetricMatrix::upper_index(d, i, j));
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) A(static_cast<Eigen::Index>(AntisymmetricMatrix::upper_index(n, a, b)), col) = img(a, b);
    }
  Vec rhs(static_cast<Eigen::Index>(nu));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) rhs[static_cast<Eigen::Index>(AntisymmetricMatrix::upper_index(n, a, b))] = target(a, b);
  Vec x = A.completeOrthogonalDecomposition().solve(rhs);
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double v = x[static_cast<Eigen::Index>(AntisymmetricMatrix::upper_index(d, i, j))];
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

LiftedPair lift_pair(const DelzantSequence& seq, const AntisymmetricMatrix& C, const AntisymmetricMatrix& F) {
  if (C.n() != seq.n || F.n() != seq.n) throw Error(ErrorCode::InvalidArgument, "C, F must be n x n");
  LiftedPair p;
  p.C = C.dense();
  p.F = F.dense();
  p.Cprime = minimal_lift(seq, p.C);
  p.Fprime = minimal_lift(seq, p.F);
  p.residual_C = max_abs(Mat(pushforward(seq, p.Cprime) - p.C));
  p.residual_F = max_abs(Mat(pushforward(seq, p.Fprime) - p.F));
  return p;
}

LiftedPair lift_pair_explicit(const DelzantSequence& seq, const AntisymmetricMatrix& C, const AntisymmetricMatrix& F,
                              const Mat& Cprime, const Mat& Fprime, double tol) {
  AntisymmetricMatrix::from_dense(Cprime);
  AntisymmetricMatrix::from_dense(Fprime);
  if (Cprime.rows() != seq.d || Fprime.rows() != seq.d)
    throw Error(ErrorCode::InvalidArgument, "lifted matrices must be d x d");
  LiftedPair p;
  p.C = C.dense();
  p.F = F.dense();
  p.Cprime = Cprime;
  p.Fprime = Fprime;
  p.residual_C = max_abs(Mat(pushforward(seq, p.Cprime) - p.C));
  p.residual_F = max_abs(Mat(pushforward(seq, p.Fprime) - p.F));
  if (p.residual_C > tol || p.residual_F > tol)
    throw Error(ErrorCode::LiftMismatch, "explicit lift does not push forward to (C, F)");
  return p;
}

AmbientPoint make_ambient_point(const CVec& z, const Vec& lambda) {
  AmbientPoint a;
  a.z = z;
  a.nu = 0.5 * z.cwiseAbs2() + lambda;
  return a;
}

double kf_region_margin(const Mat& Fprime, const CVec& z) {
  // (phi'_s)^(-1/2) = diag |z_j|, zero on coordinate hyperplanes
  Vec r = z.cwiseAbs();
  Mat fx = r.asDiagonal() * Fprime * r.asDiagonal();
  Mat m = Mat::Identity(Fprime.rows(), Fprime.cols()) + 0.25 * fx * fx;
  return smallest_eigenvalue(0.5 * (m + m.transpose()));
}

bool kf_region_contains(const Mat& Fprime, const CVec& z, double pd_tol) {
  return kf_region_margin(Fprime, z) > pd_tol;
}

ReducedSample reduce_at(const DelzantSequence& seq, const LiftedPair& pair, const Vec& mu, const Vec& angles) {
  const int n = seq.n, d = seq.d, k = d - n;
  ReducedSample s;
  s.mu = mu;
  const Mat sg = seq.varsigma.cast<double>();
  Vec slack = sg.transpose() * mu - seq.lambda;
  if (!(slack.minCoeff() > 0)) throw Error(ErrorCode::BoundaryPoint, "level-set point on a coordinate hyperplane");
  CVec z(d);
  for (int j = 0; j < d; ++j) z[j] = std::polar(std::sqrt(2.0 * slack[j]), angles[j]);
  s.point = make_ambient_point(z, seq.lambda);
  const Mat K = seq.kernel_basis.cast<double>();
  s.nu_residual = k ? (K * s.point.nu).cwiseAbs().maxCoeff() : 0.0;
  s.in_region = kf_region_contains(pair.Fprime, z);

  // ambient structures from the orthant potential at nu
  std::vector<double> offs(seq.lambda.data(), seq.lambda.data() + d);
  PotentialModel ambient(DelzantPolytope::orthant(offs));
  const Mat phi_amb = ambient.hessian_matrix(s.point.nu);
  auto amb = build_structures(phi_amb, pair.Cprime, pair.Fprime, Frame::ZetaDmu, s.point.nu);

  PotentialModel quotient(seq.polytope);
  const Mat phi_s = quotient.hessian_matrix(mu);
  auto dir = build_structures(phi_s, pair.C, pair.F, Frame::ZetaDmu, mu);
  s.direct_Jplus = dir.Jplus;
  s.direct_Jminus = dir.Jminus;
  s.direct_I0 = dir.I0;

  // constraint covector rows and orbit fields of N
  Mat dnu = Mat::Zero(k, 2 * d);
  dnu.rightCols(d) = K;
  Mat X = Mat::Zero(2 * d, k);
  X.topRows(d) = K.transpose();
  Mat Q = Mat::Zero(2 * n, 2 * d);
  Q.topLeftCorner(n, d) = sg;
  Q.bottomRightCorner(n, d) = (sg * sg.transpose()).inverse() * sg;

  auto reduce = [&](const Mat& J, const Mat& cons, Mat& out) {
    Mat rows(dnu.rows() + cons.rows(), 2 * d);
    rows << dnu, cons;
    Mat D = left_null_rows(rows, 2 * d);
    if (D.cols() != 2 * n) throw Error(ErrorCode::DegenerateFrame, "horizontal distribution has wrong rank");
    Mat JD = J * D;
    Mat coeff = D.colPivHouseholderQr().solve(JD);
    s.invariance_residual = std::max(s.invariance_residual, max_abs(Mat(JD - D * coeff)) / std::max(1.0, max_abs(JD)));
    Mat QD = Q * D;
    out = (Q * JD) * QD.inverse();
  };
  const Mat gp = amb.g + amb.b, gm = amb.g - amb.b;
  reduce(amb.Jplus, Mat(X.transpose() * gp.transpose()), s.Jplus);
  reduce(amb.Jminus, Mat(X.transpose() * gm.transpose()), s.Jminus);
  reduce(amb.I0, Mat((amb.Omega * amb.I0 * X).transpose()), s.I0);

  s.residual_Jplus = rel(s.Jplus, s.direct_Jplus);
  s.residual_Jminus = rel(s.Jminus, s.direct_Jminus);
  s.residual_I0 = rel(s.I0, s.direct_I0);

  const Mat I = Mat::Identity(n, n), Z = Mat::Zero(n, n);
  Mat lift(2 * n, n), lift_img(2 * n, n), dmu(2 * n, n), dmu_img(2 * n, n);
  lift << 0.5 * pair.F, I;
  lift_img << (phi_s + pair.C).transpose(), Z;
  dmu << Z, I;
  dmu_img << phi_s, Z;
  s.residual_lift_identity = rel(Mat(s.Jplus * lift), lift_img);
  s.residual_I0_identity = rel(Mat(s.I0 * dmu), dmu_img);
  return s;
}

std::vector<Vec> level_set_parameters(const DelzantPolytope& p, int count) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const int n = p.dim();
  if (n > 12) throw Error(ErrorCode::InvalidArgument, "dimension too large for Halton sampling");
  Vec lo = p.vertices().front().point, hi = lo;
  for (const auto& v : p.vertices()) {
    lo = lo.cwiseMin(v.point);
    hi = hi.cwiseMax(v.point);
  }
  const double guard = 1e-3 * (hi - lo).minCoeff();
  std::vector<Vec> out;
  for (long idx = 1; static_cast<int>(out.size()) < count && idx < 1000000; ++idx) {
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      double f = 1.0, r = 0.0;
      long m = idx;
      while (m > 0) {
        f /= primes[i];
        r += f * static_cast<double>(m % primes[i]);
        m /= primes[i];
      }
      x[i] = lo[i] + r * (hi[i] - lo[i]);
    }
    if (p.min_slack(x) >= guard) out.push_back(x);
  }
  return out;
}

ReductionResult reduce_and_compare(const DelzantSequence& seq, const LiftedPair& pair, int sample_count,
                                   std::uint64_t seed, double tol) {
  ReductionResult r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  WorstTracker nu_w, jp_w, jm_w, i0_w, inv_w, e83_w, e84_w;
  for (const auto& mu : level_set_parameters(seq.polytope, sample_count)) {
    Vec th(seq.d);
    for (int j = 0; j < seq.d; ++j) th[j] = angle(rng);
    ++r.sampled;
    auto s = reduce_at(seq, pair, mu, th);
    if (!s.in_region) {
      r.excluded_mu.push_back(mu);
      continue;
    }
    ++r.included;
    nu_w.update(s.nu_residual, mu);
    jp_w.update(s.residual_Jplus, mu);
    jm_w.update(s.residual_Jminus, mu);
    i0_w.update(s.residual_I0, mu);
    inv_w.update(s.invariance_residual, mu);
    e83_w.update(s.residual_lift_identity, mu);
    e84_w.update(s.residual_I0_identity, mu);
    r.samples.push_back(std::move(s));
  }
  if (r.included == 0) throw Error(ErrorCode::EmptyLevelSet, "no level-set sample lies in the admissible region");
  auto& rep = r.report;
  rep.add("lift_pushforward", std::max(pair.residual_C, pair.residual_F) <= 1e-12,
          std::max(pair.residual_C, pair.residual_F));
  rep.add("level_set", nu_w.value <= 1e-12, nu_w.value, nu_w.location, "max |nu_N|");
  rep.add("distribution_invariance", inv_w.value <= tol, inv_w.value, inv_w.location);
  rep.add("reduced_Jplus", jp_w.value <= tol, jp_w.value, jp_w.location);
  rep.add("reduced_Jminus", jm_w.value <= tol, jm_w.value, jm_w.location);
  rep.add("reduced_I0", i0_w.value <= tol, i0_w.value, i0_w.location);
  rep.add("horizontal_lift_identity", e83_w.value <= tol, e83_w.value, e83_w.location);
  rep.add("I0_lift_identity", e84_w.value <= tol, e84_w.value, e84_w.location);
  Check region{"sampled_region", true, static_cast<double>(r.included) / r.sampled, {},
               "included=" + std::to_string(r.included) + "/" + std::to_string(r.sampled)};
  if (!r.excluded_mu.empty()) {
    Vec lo = r.excluded_mu.front(), hi = lo;
    for (const auto& m : r.excluded_mu) {
      lo = lo.cwiseMin(m);
      hi = hi.cwiseMax(m);
    }
    region.detail += " excluded_box=" + format_vec(lo) + ".." + format_vec(hi);
  }
  rep.add(region);
  return r;
}

double compare_lifts(const DelzantSequence& seq, const LiftedPair& a, const LiftedPair& b, int sample_count,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double worst = 0;
  for (const auto& mu : level_set_parameters(seq.polytope, sample_count)) {
    Vec th(seq.d);
    for (int j = 0; j < seq.d; ++j) th[j] = angle(rng);
    auto sa = reduce_at(seq, a, mu, th);
    auto sb = reduce_at(seq, b, mu, th);
    if (!sa.in_region || !sb.in_region) continue;
    worst = std::max({worst, rel(sa.Jplus, sb.Jplus), rel(sa.Jminus, sb.Jminus), rel(sa.I0, sb.I0)});
  }
  return worst;
}

}  // namespace toricgk
