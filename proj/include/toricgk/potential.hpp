#pragma once

#include "toricgk/linalg.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/report.hpp"

#include <vector>

namespace toricgk {

// coef * prod_i x_i^powers[i], total degree <= 4
struct PolyTerm {
  double coef = 0;
  std::vector<int> powers;
};

// coef * L ln L with L(x) = <normal, x> - offset. facet >= 0 marks a facet
// function l_j - lambda_j; otherwise L must be positive on the closed polytope.
struct LogTerm {
  Vec normal;
  double offset = 0;
  double coef = 0;
  int facet = -1;
};

struct HessianSample {
  Vec point;
  Mat matrix;
  Mat inverse;
  Mat sqrt_inverse;
  double asymmetry = 0;  // raw |H - H^T| before symmetrization
  double min_eig = 0;
};

class PotentialModel {
 public:
  PotentialModel() = default;
  explicit PotentialModel(DelzantPolytope p, int canonical_weight = 1, std::vector<PolyTerm> poly = {},
                          std::vector<LogTerm> logs = {}, bool analytic_hessian = true);

  static PotentialModel canonical(const DelzantPolytope& p) { return PotentialModel(p); }

  const DelzantPolytope& polytope() const { return polytope_; }
  int canonical_weight() const { return canonical_weight_; }
  const std::vector<PolyTerm>& poly() const { return poly_; }
  const std::vector<LogTerm>& logs() const { return logs_; }
  bool analytic_hessian() const { return analytic_; }
  void set_analytic_hessian(bool v) { analytic_ = v; }
  double fd_step() const { return fd_step_; }
  void set_fd_step(double h) { fd_step_ = h; }
  int dim() const { return polytope_.dim(); }

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat analytic_hessian_matrix(const Vec& x) const;
  // Central differences of the analytic gradient with step h * min(1, slack).
  Mat fd_hessian_matrix(const Vec& x, double h, double* asymmetry = nullptr) const;
  // Central differences of values.
  Vec fd_gradient(const Vec& x, double h) const;
  // Hessian in the model's configured mode, symmetrized.
  Mat hessian_matrix(const Vec& x) const;

  // value/gradient of the correction alone (tau - tau_0 when canonical)
  double correction_value(const Vec& x) const;
  Vec correction_gradient(const Vec& x) const;

 private:
  void require_interior(const Vec& x) const;

  DelzantPolytope polytope_;
  int canonical_weight_ = 1;
  std::vector<PolyTerm> poly_;
  std::vector<LogTerm> logs_;
  bool analytic_ = true;
  double fd_step_ = 1e-5;
};

double guillemin_tau(const DelzantPolytope& p, const Vec& x);
Vec guillemin_gradient(const DelzantPolytope& p, const Vec& x);
Mat guillemin_hessian(const DelzantPolytope& p, const Vec& x);

// Throws NotConvex when an eigenvalue is <= pd_tol * scale.
HessianSample hessian(const PotentialModel& model, const Vec& x, double pd_tol = 1e-12);

// max_{j,k,l} |d_l phi_kj - d_k phi_lj| by central differences of the Hessian.
double third_derivative_asymmetry(const PotentialModel& model, const Vec& x, double h = 1e-5);

struct SeriesCheck {
  bool bounded = false;
  bool cauchy = false;
  double max_norm = 0;
  double last_difference = 0;
};
// Boundedness and geometric Cauchy decay of a sequence sampled along a ray
// whose slack halves each step.
SeriesCheck check_ray_series(const std::vector<Mat>& seq, double bound = 1e8, double rel_floor = 1e-9);

ValidationReport check_potential_class(const PotentialModel& model, const InteriorGrid& grid, double pd_tol = 1e-12);

}  // namespace toricgk
