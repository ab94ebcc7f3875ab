#pragma once

#include "toricgk/linalg.hpp"
#include "toricgk/report.hpp"

#include <complex>
#include <optional>

namespace toricgk {

// Closed forms on [0,1/2]^2 with phi_s = diag(1/(4 mu_j (1/2 - mu_j))),
// C = c e1^e2, F = f e1^e2. Matrices in the ordered basis
// (theta1, theta2, mu1, mu2); 2-forms as Gram matrices with
// (a^b)(e_i, e_j) = a_i b_j - a_j b_i.
struct CP1xCP1Tensors {
  Vec mu;
  Mat phi_s, phi, phi_inv;
  double det_phi = 0;
  double p = 0;  // 1 / (16 mu1 (1/2 - mu1) mu2 (1/2 - mu2))
  Mat g, b;
  std::optional<Mat> Q, bprime;
  // Transpose of the column-image matrix of ((J+ - J-)/2)^-1.
  std::optional<Mat> half_difference_inverse;
};

class CP1xCP1Oracle {
 public:
  CP1xCP1Oracle(double c, double f);
  double c() const { return c_; }
  double f() const { return f_; }
  // Throws BoundaryPoint outside (0,1/2)^2.
  CP1xCP1Tensors tensors(const Vec& mu) const;
  // mu_j = |z_j|^2 / (2 (1 + |z_j|^2))
  static Vec moment(const Eigen::Vector2cd& z);

 private:
  double c_, f_;
};

CP1xCP1Tensors oracle_tensors(double c, double f, const Vec& mu);

// Pfaffian of a 4 x 4 antisymmetric matrix.
double pfaffian4(const Mat& b);

struct AdmissibilityInterval {
  double lower = 0, upper = 0;
  double max_inv_det = 0;  // max 1/det phi_s after local refinement
  Vec argmax;
  double grid_max_inv_det = 0;
  Vec grid_argmax;
  double grid_cell = 0;
  double formula_upper = 0;  // 2 / sqrt(max 1/det phi_s)
};
AdmissibilityInterval f_admissibility_interval(int resolution, double tol = 1e-10);

// max |(b' - b - iQ) - rhs| in the basis (dtheta, dmu), c = 0.
double symmetric_spinor_identity(double f, const Eigen::Vector2cd& z);

// Example on C^2 with phi'_s = diag(1/|z_j|^2), basis (theta1, theta2, nu1, nu2).
struct C2Frames {
  Eigen::VectorXcd plus1, plus2;    // J+ (1,0)-coframe
  Eigen::VectorXcd minus1, minus2;  // J- (1,0)-coframe
};
C2Frames c2_holomorphic_coframes(double c, double f, const Eigen::Vector2cd& z);
// Metric with off-diagonal theta_j nu_j entries c f |z1 z2|^2 / 2.
Mat c2_metric(double c, double f, const Eigen::Vector2cd& z);

// Builder against the closed forms on a resolution x resolution grid.
ValidationReport compare_cp1xcp1(double c, double f, int resolution, double margin = 0.02, double tol = 1e-9);

}  // namespace toricgk
