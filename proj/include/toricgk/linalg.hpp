#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace toricgk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Dense n x n real matrix.
using SquareMatrix = Mat;

// Constant antisymmetric matrix stored as its strict upper triangle,
// row-major: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class AntisymmetricMatrix {
 public:
  AntisymmetricMatrix() = default;
  explicit AntisymmetricMatrix(int n);
  AntisymmetricMatrix(int n, std::vector<double> upper);

  // Rejects inputs whose antisymmetry defect exceeds tol * max|M|.
  static AntisymmetricMatrix from_dense(const Mat& m, double tol = 1e-12);
  // n = 2 shorthand for [[0, v], [-v, 0]].
  static AntisymmetricMatrix planar(double v);

  int n() const { return n_; }
  const std::vector<double>& upper() const { return upper_; }
  double operator()(int i, int j) const;
  void set(int i, int j, double v);
  Mat dense() const;
  bool is_zero() const;

  AntisymmetricMatrix operator*(double s) const;
  AntisymmetricMatrix operator+(const AntisymmetricMatrix& o) const;

  static std::size_t upper_size(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }
  static std::size_t upper_index(int n, int i, int j);

 private:
  int n_ = 0;
  std::vector<double> upper_;
};

std::pair<Mat, Mat> sym_antisym_split(const Mat& a);

enum class TailStatus { Ok, SingularSymPart };

struct InversePartResiduals {
  double fact1_left = 0;   // A_s B_s + A_a B_a - I
  double fact1_right = 0;  // B_s A_s + B_a A_a - I
  double fact3_sym = 0;    // A B_s A^T - A_s
  double fact3_anti = 0;   // A B_a A^T + A_a
  std::optional<double> fact3_tail;  // B^T (B_s)^-1 B - (A_s)^-1
  TailStatus tail_status = TailStatus::Ok;
  bool sym_part_singular = false;
  bool inverse_sym_part_singular = false;
  double max() const;
};

// Residuals are scaled by the norms of the factors involved.
InversePartResiduals verify_inverse_part_identities(const Mat& a, double singular_tol = 1e-8);

bool loewner_geq(const Mat& a, const Mat& b, double tol);
double antisym_norm(const AntisymmetricMatrix& f);
double antisym_norm(const Mat& f);

Mat sqrt_spd(const Mat& a, double neg_tol = 1e-12, double clamp = 1e-14);
Mat inv_sqrt_spd(const Mat& a);

double max_abs(const Mat& a);
double max_abs(const CMat& a);
// max|a - b| / max(max|b|, floor)
double rel_diff(const Mat& a, const Mat& b, double floor = 1.0);

double smallest_eigenvalue(const Mat& sym);
Vec symmetric_eigenvalues(const Mat& sym);

struct PdCheck {
  bool positive = false;
  double min_eig = 0;  // filled on the slow path or when requested
  double scale = 0;
};
// Cholesky fast path; smallest eigenvalue reported on failure or when
// always_eig is set. Threshold is tol * scale with scale = max|a|.
PdCheck check_positive_definite(const Mat& sym, double tol = 1e-12, bool always_eig = false);

// Numerical rank via singular values above rel_tol * sigma_max.
int numerical_rank(const Mat& a, double rel_tol = 1e-10);
int numerical_rank(const CMat& a, double rel_tol = 1e-10);

// Orthonormal basis of the null space (columns), via SVD.
Mat null_space(const Mat& a, double rel_tol = 1e-10);

Mat identity(int n);
// [[a, b], [c, d]] from n x n blocks.
Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d);

}  // namespace toricgk
