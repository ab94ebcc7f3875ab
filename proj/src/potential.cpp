#include "toricgk/potential.hpp"

#include "toricgk/error.hpp"

#include <algorithm>
#include <cmath>

namespace toricgk {

namespace {

double monomial(const std::vector<int>& p, const Vec& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) v *= std::pow(x[static_cast<Eigen::Index>(i)], p[i]);
  return v;
}

// derivative of the monomial along the multi-index bump
double monomial_derivative(std::vector<int> p, const Vec& x, const std::vector<int>& along) {
  double c = 1.0;
  for (int i : along) {
    if (p[i] == 0) return 0.0;
    c *= p[i];
    --p[i];
  }
  return c * monomial(p, x);
}

double log_arg(const LogTerm& t, const Vec& x) { return t.normal.dot(x) - t.offset; }

}  // namespace

PotentialModel::PotentialModel(DelzantPolytope p, int canonical_weight, std::vector<PolyTerm> poly,
                               std::vector<LogTerm> logs, bool analytic_hessian)
    : polytope_(std::move(p)),
      canonical_weight_(canonical_weight),
      poly_(std::move(poly)),
      logs_(std::move(logs)),
      analytic_(analytic_hessian) {
  const int n = polytope_.dim();
  if (canonical_weight_ != 0 && canonical_weight_ != 1)
    throw Error(ErrorCode::InvalidArgument, "canonical weight must be 0 or 1");
  for (const auto& t : poly_) {
    if (static_cast<int>(t.powers.size()) != n) throw Error(ErrorCode::InvalidArgument, "monomial arity mismatch");
    int deg = 0;
    for (int e : t.powers) {
      if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
      deg += e;
    }
    if (deg > 4) throw Error(ErrorCode::InvalidArgument, "polynomial correction limited to degree 4");
  }
  for (auto& t : logs_) {
    if (t.facet >= 0) {
      if (t.facet >= polytope_.num_facets()) throw Error(ErrorCode::InvalidArgument, "facet index out of range");
      const auto& f = polytope_.facets()[t.facet];
      t.normal = f.normal.cast<double>();
      t.offset = f.offset;
    } else {
      if (t.normal.size() != n) throw Error(ErrorCode::InvalidArgument, "log term normal has wrong length");
      if (polytope_.bounded())
        for (const auto& v : polytope_.vertices())
          if (!(log_arg(t, v.point) > 0))
            throw Error(ErrorCode::InvalidArgument, "log term argument must be positive on the closed polytope");
    }
  }
}

void PotentialModel::require_interior(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  if (!(polytope_.min_slack(x) > 0)) throw Error(ErrorCode::BoundaryPoint, "point is not strictly interior");
}

double guillemin_tau(const DelzantPolytope& p, const Vec& x) {
  double s = 0;
  for (int j = 0; j < p.num_facets(); ++j) {
    double l = p.slack(j, x);
    if (!(l > 0)) throw Error(ErrorCode::BoundaryPoint, "point is not strictly interior");
    s += l * std::log(l);
  }
  return 0.5 * s;
}

Vec guillemin_gradient(const DelzantPolytope& p, const Vec& x) {
  Vec g = Vec::Zero(p.dim());
  for (int j = 0; j < p.num_facets(); ++j) {
    double l = p.slack(j, x);
    if (!(l > 0)) throw Error(ErrorCode::BoundaryPoint, "point is not strictly interior");
    g += 0.5 * (std::log(l) + 1.0) * p.facets()[j].normal.cast<double>();
  }
  return g;
}

Mat guillemin_hessian(const DelzantPolytope& p, const Vec& x) {
  const int n = p.dim();
  Mat h = Mat::Zero(n, n);
  for (int j = 0; j < p.num_facets(); ++j) {
    double l = p.slack(j, x);
    if (!(l > 0)) throw Error(ErrorCode::BoundaryPoint, "point is not strictly interior");
    Vec u = p.facets()[j].normal.cast<double>();
    h += (u * u.transpose()) / (2.0 * l);
  }
  return h;
}

double PotentialModel::correction_value(const Vec& x) const {
  double v = 0;
  for (const auto& t : poly_) v += t.coef * monomial(t.powers, x);
  for (const auto& t : logs_) {
    double l = log_arg(t, x);
    if (!(l > 0)) throw Error(ErrorCode::BoundaryPoint, "log term argument not positive");
    v += t.coef * l * std::log(l);
  }
  return v;
}

Vec PotentialModel::correction_gradient(const Vec& x) const {
  const int n = dim();
  Vec g = Vec::Zero(n);
  for (const auto& t : poly_)
    for (int i = 0; i < n; ++i) g[i] += t.coef * monomial_derivative(t.powers, x, {i});
  for (const auto& t : logs_) {
    double l = log_arg(t, x);
    if (!(l > 0)) throw Error(ErrorCode::BoundaryPoint, "log term argument not positive");
    g += t.coef * (std::log(l) + 1.0) * t.normal;
  }
  return g;
}

double PotentialModel::value(const Vec& x) const {
  require_interior(x);
  double v = correction_value(x);
  if (canonical_weight_) v += guillemin_tau(polytope_, x);
  return v;
}

Vec PotentialModel::gradient(const Vec& x) const {
  require_interior(x);
  Vec g = correction_gradient(x);
  if (canonical_weight_) g += guillemin_gradient(polytope_, x);
  return g;
}

Mat PotentialModel::analytic_hessian_matrix(const Vec& x) const {
  require_interior(x);
  const int n = dim();
  Mat h = canonical_weight_ ? guillemin_hessian(polytope_, x) : Mat::Zero(n, n);
  for (const auto& t : poly_)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = t.coef * monomial_derivative(t.powers, x, {i, j});
        h(i, j) += v;
        if (j != i) h(j, i) += v;
      }
  for (const auto& t : logs_) {
    double l = log_arg(t, x);
    h += (t.coef / l) * (t.normal * t.normal.transpose());
  }
  return h;
}

Mat PotentialModel::fd_hessian_matrix(const Vec& x, double h, double* asymmetry) const {
  require_interior(x);
  const int n = dim();
  const double step = h * std::min(1.0, polytope_.min_slack(x));
  Mat m(n, n);
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = step;
    m.col(k) = (gradient(x + e) - gradient(x - e)) / (2.0 * step);
  }
  if (asymmetry) *asymmetry = max_abs(Mat(m - m.transpose()));
  return 0.5 * (m + m.transpose());
}

Vec PotentialModel::fd_gradient(const Vec& x, double h) const {
  require_interior(x);
  const int n = dim();
  const double step = h * std::min(1.0, polytope_.min_slack(x));
  Vec g(n);
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = step;
    g[k] = (value(x + e) - value(x - e)) / (2.0 * step);
  }
  return g;
}

Mat PotentialModel::hessian_matrix(const Vec& x) const {
  return analytic_ ? analytic_hessian_matrix(x) : fd_hessian_matrix(x, fd_step_);
}

HessianSample hessian(const PotentialModel& model, const Vec& x, double pd_tol) {
  HessianSample s;
  s.point = x;
  if (model.analytic_hessian()) {
    s.matrix = model.analytic_hessian_matrix(x);
    s.asymmetry = max_abs(Mat(s.matrix - s.matrix.transpose()));
  } else {
    s.matrix = model.fd_hessian_matrix(x, model.fd_step(), &s.asymmetry);
  }
  auto pd = check_positive_definite(s.matrix, pd_tol, true);
  s.min_eig = pd.min_eig;
  if (!pd.positive)
    throw Error(ErrorCode::NotConvex, "Hessian not positive definite, smallest eigenvalue " + format_double(pd.min_eig));
  s.inverse = s.matrix.inverse();
  s.inverse = 0.5 * (s.inverse + s.inverse.transpose());
  s.sqrt_inverse = sqrt_spd(s.inverse);
  return s;
}

double third_derivative_asymmetry(const PotentialModel& model, const Vec& x, double h) {
  const int n = model.dim();
  const double step = h * std::min(1.0, model.polytope().min_slack(x));
  std::vector<Mat> d(n);
  for (int l = 0; l < n; ++l) {
    Vec e = Vec::Zero(n);
    e[l] = step;
    d[l] = (model.hessian_matrix(x + e) - model.hessian_matrix(x - e)) / (2.0 * step);
  }
  double worst = 0;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(d[l](k, j) - d[k](l, j)));
  return worst;
}

SeriesCheck check_ray_series(const std::vector<Mat>& seq, double bound, double rel_floor) {
  SeriesCheck r;
  bool finite = true;
  for (const auto& m : seq) {
    if (!m.allFinite()) finite = false;
    else r.max_norm = std::max(r.max_norm, max_abs(m));
  }
  r.bounded = finite && r.max_norm <= bound;
  if (!finite || seq.size() < 6) return r;
  std::vector<double> diff;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) diff.push_back(max_abs(Mat(seq[k + 1] - seq[k])));
  const double floor = rel_floor * std::max(1.0, r.max_norm);
  const std::size_t w = diff.size() - 5;
  bool ok = true;
  for (std::size_t k = w + 1; k < diff.size(); ++k)
    if (diff[k] > diff[k - 1] + floor) ok = false;
  if (diff.back() > 0.5 * diff[w] + floor) ok = false;
  r.cauchy = ok;
  r.last_difference = diff.back();
  return r;
}

ValidationReport check_potential_class(const PotentialModel& model, const InteriorGrid& grid, double pd_tol) {
  ValidationReport rep;
  const auto& p = model.polytope();

  WorstTracker pd(false);
  bool all_pd = true;
  auto probe = [&](const Vec& x) {
    Mat h = model.hessian_matrix(x);
    auto c = check_positive_definite(h, pd_tol, true);
    pd.update(c.min_eig / c.scale, x);
    if (!c.positive) all_pd = false;
  };
  for (const auto& x : grid.points) probe(x);
  for (const auto& r : grid.boundary_rays)
    for (const auto& x : r.points) probe(x);
  rep.add("hessian_positive", all_pd, pd.value, pd.location, "min relative eigenvalue");

  double worst_coef = 0;
  int worst_facet = -1;
  for (int j = 0; j < p.num_facets(); ++j) {
    double total = 0.5 * model.canonical_weight();
    for (const auto& t : model.logs())
      if (t.facet == j) total += t.coef;
    double dev = std::abs(total - 0.5);
    if (dev > worst_coef) {
      worst_coef = dev;
      worst_facet = j;
    }
  }
  rep.add("facet_log_coefficients", worst_coef <= 1e-12, worst_coef, {},
          worst_facet >= 0 ? "facet=" + std::to_string(worst_facet) : "");

  bool val_ok = true, grad_ok = true, det_ok = true;
  double val_res = 0, grad_res = 0, det_res = 0;
  Vec val_at, grad_at, det_at;
  for (const auto& r : grid.boundary_rays) {
    std::vector<Mat> vals, grads;
    std::vector<double> inv_det;
    for (const auto& x : r.points) {
      Mat v(1, 1);
      v(0, 0) = model.value(x) - guillemin_tau(p, x);
      vals.push_back(v);
      grads.push_back(model.gradient(x) - guillemin_gradient(p, x));
      inv_det.push_back(1.0 / model.hessian_matrix(x).determinant());
    }
    auto sv = check_ray_series(vals);
    auto sg = check_ray_series(grads);
    if (!(sv.bounded && sv.cauchy)) {
      val_ok = false;
      val_at = r.endpoint;
    }
    if (!(sg.bounded && sg.cauchy)) {
      grad_ok = false;
      grad_at = r.endpoint;
    }
    val_res = std::max(val_res, sv.last_difference);
    grad_res = std::max(grad_res, sg.last_difference);
    const std::size_t k = inv_det.size();
    for (std::size_t i = k >= 5 ? k - 4 : 1; i < k; ++i)
      if (!(inv_det[i] < inv_det[i - 1])) {
        det_ok = false;
        det_at = r.endpoint;
      }
    if (inv_det.back() > det_res) det_res = inv_det.back();
  }
  rep.add("correction_value_cauchy", val_ok, val_res, val_at, "last ray difference of tau - tau0");
  rep.add("correction_gradient_cauchy", grad_ok, grad_res, grad_at, "last ray difference of grad(tau - tau0)");
  rep.add("inverse_det_decay", det_ok, det_res, det_at, "1/det at the last ray point");
  return rep;
}

}  // namespace toricgk
