#include "toricgk/linalg.hpp"

#include "toricgk/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toricgk {

AntisymmetricMatrix::AntisymmetricMatrix(int n) : n_(n), upper_(upper_size(n), 0.0) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "antisymmetric matrix needs n >= 1");
}

AntisymmetricMatrix::AntisymmetricMatrix(int n, std::vector<double> upper) : n_(n), upper_(std::move(upper)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "antisymmetric matrix needs n >= 1");
  if (upper_.size() != upper_size(n))
    throw Error(ErrorCode::InvalidArgument, "strict upper triangle of size " + std::to_string(upper_size(n)) +
                                                " expected, got " + std::to_string(upper_.size()));
}

std::size_t AntisymmetricMatrix::upper_index(int n, int i, int j) {
  // i < j
  return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

AntisymmetricMatrix AntisymmetricMatrix::from_dense(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "square matrix expected");
  const int n = static_cast<int>(m.rows());
  double defect = max_abs(Mat(m + m.transpose()));
  if (defect > tol * std::max(1.0, max_abs(m)))
    throw Error(ErrorCode::NotSymmetric, "matrix is not antisymmetric");
  AntisymmetricMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a.upper_[upper_index(n, i, j)] = 0.5 * (m(i, j) - m(j, i));
  return a;
}

AntisymmetricMatrix AntisymmetricMatrix::planar(double v) { return AntisymmetricMatrix(2, {v}); }

double AntisymmetricMatrix::operator()(int i, int j) const {
  if (i == j) return 0.0;
  if (i < j) return upper_[upper_index(n_, i, j)];
  return -upper_[upper_index(n_, j, i)];
}

void AntisymmetricMatrix::set(int i, int j, double v) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "diagonal of antisymmetric matrix is zero");
  if (i < j)
    upper_[upper_index(n_, i, j)] = v;
  else
    upper_[upper_index(n_, j, i)] = -v;
}

Mat AntisymmetricMatrix::dense() const {
  Mat m = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      double v = upper_[upper_index(n_, i, j)];
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

bool AntisymmetricMatrix::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](double v) { return v == 0.0; });
}

AntisymmetricMatrix AntisymmetricMatrix::operator*(double s) const {
  AntisymmetricMatrix r = *this;
  for (auto& v : r.upper_) v *= s;
  return r;
}

AntisymmetricMatrix AntisymmetricMatrix::operator+(const AntisymmetricMatrix& o) const {
  if (o.n_ != n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  AntisymmetricMatrix r = *this;
  for (std::size_t k = 0; k < upper_.size(); ++k) r.upper_[k] += o.upper_[k];
  return r;
}

std::pair<Mat, Mat> sym_antisym_split(const Mat& a) {
  Mat s = 0.5 * (a + a.transpose());
  Mat k = a - s;
  return {s, k};
}

double InversePartResiduals::max() const {
  double m = std::max({fact1_left, fact1_right, fact3_sym, fact3_anti});
  if (fact3_tail) m = std::max(m, *fact3_tail);
  return m;
}

namespace {

bool nearly_singular(const Mat& m, double tol) {
  if (m.size() == 0) return false;
  double scale = max_abs(m);
  if (scale == 0.0) return true;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s[s.size() - 1] <= tol * s[0];
}

}  // namespace

InversePartResiduals verify_inverse_part_identities(const Mat& a, double singular_tol) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "square matrix expected");
  const int n = static_cast<int>(a.rows());
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible() || nearly_singular(a, 1e-14)) throw Error(ErrorCode::Singular, "matrix is not invertible");
  Mat b = lu.inverse();
  auto [as, aa] = sym_antisym_split(a);
  auto [bs, ba] = sym_antisym_split(b);
  const Mat id = Mat::Identity(n, n);
  const double na = max_abs(a), nb = max_abs(b);

  InversePartResiduals r;
  r.fact1_left = max_abs(Mat(as * bs + aa * ba - id)) / std::max(1.0, n * na * nb);
  r.fact1_right = max_abs(Mat(bs * as + ba * aa - id)) / std::max(1.0, n * na * nb);
  const double s3 = std::max(1e-300, n * n * na * na * nb);
  r.fact3_sym = max_abs(Mat(a * bs * a.transpose() - as)) / s3;
  r.fact3_anti = max_abs(Mat(a * ba * a.transpose() + aa)) / s3;

  r.sym_part_singular = nearly_singular(as, singular_tol);
  r.inverse_sym_part_singular = nearly_singular(bs, singular_tol);
  if (r.sym_part_singular || r.inverse_sym_part_singular) {
    r.tail_status = TailStatus::SingularSymPart;
  } else {
    Mat lhs = b.transpose() * bs.inverse() * b;
    Mat rhs = as.inverse();
    r.fact3_tail = max_abs(Mat(lhs - rhs)) / std::max(1e-300, max_abs(rhs));
  }
  return r;
}

bool loewner_geq(const Mat& a, const Mat& b, double tol) {
  Mat d = a - b;
  d = 0.5 * (d + d.transpose());
  return smallest_eigenvalue(d) >= -tol;
}

double antisym_norm(const Mat& f) { return std::sqrt(std::max(0.0, -(f * f).trace())); }

double antisym_norm(const AntisymmetricMatrix& f) { return antisym_norm(f.dense()); }

Vec symmetric_eigenvalues(const Mat& sym) {
  if (sym.size() == 0) return Vec();
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double smallest_eigenvalue(const Mat& sym) {
  if (sym.size() == 0) return std::numeric_limits<double>::infinity();
  return symmetric_eigenvalues(sym)[0];
}

Mat sqrt_spd(const Mat& a, double neg_tol, double clamp) {
  Mat s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  Vec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -neg_tol * scale) throw Error(ErrorCode::NotPSD, "negative eigenvalue " + std::to_string(ev[i]));
    ev[i] = ev[i] < clamp ? 0.0 : std::sqrt(ev[i]);
  }
  Mat v = es.eigenvectors();
  Mat r = v * ev.asDiagonal() * v.transpose();
  return 0.5 * (r + r.transpose());
}

Mat inv_sqrt_spd(const Mat& a) {
  Mat s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  Vec ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] <= 0) throw Error(ErrorCode::NotPSD, "matrix is not positive definite");
    ev[i] = 1.0 / std::sqrt(ev[i]);
  }
  Mat v = es.eigenvectors();
  Mat r = v * ev.asDiagonal() * v.transpose();
  return 0.5 * (r + r.transpose());
}

double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const CMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

double rel_diff(const Mat& a, const Mat& b, double floor) {
  return max_abs(Mat(a - b)) / std::max(max_abs(b), floor);
}

PdCheck check_positive_definite(const Mat& sym, double tol, bool always_eig) {
  PdCheck r;
  r.scale = std::max(max_abs(sym), std::numeric_limits<double>::min());
  Mat s = 0.5 * (sym + sym.transpose());
  Mat shifted = s - tol * r.scale * Mat::Identity(s.rows(), s.cols());
  Eigen::LLT<Mat> llt(shifted);
  r.positive = llt.info() == Eigen::Success;
  if (!r.positive || always_eig) {
    r.min_eig = smallest_eigenvalue(s);
    r.positive = r.min_eig > tol * r.scale;
  }
  return r;
}

int numerical_rank(const Mat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

int numerical_rank(const CMat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& s = svd.singularValues();
  if (s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

Mat null_space(const Mat& a, double rel_tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0 || max_abs(a) == 0.0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return svd.matrixV().rightCols(cols - r);
}

Mat identity(int n) { return Mat::Identity(n, n); }

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  Mat m(a.rows() + c.rows(), a.cols() + b.cols());
  m << a, b, c, d;
  return m;
}

}  // namespace toricgk
