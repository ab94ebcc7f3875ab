#include "toricgk/polytope.hpp"

#include "toricgk/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace toricgk {

namespace {

constexpr double kIncidenceTol = 1e-9;

void for_each_subset(int d, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > d) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == d - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Eigen::MatrixXi rows_of(const std::vector<Facet>& facets, const std::vector<int>& idx, int n) {
  Eigen::MatrixXi m(static_cast<int>(idx.size()), n);
  for (std::size_t r = 0; r < idx.size(); ++r) m.row(static_cast<int>(r)) = facets[idx[r]].normal.transpose();
  return m;
}

}  // namespace

long long integer_det(const Eigen::MatrixXi& m0) {
  const int n = static_cast<int>(m0.rows());
  if (n == 0) return 1;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> m = m0.cast<long long>();
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

DelzantPolytope::DelzantPolytope(int dim, std::vector<Facet> facets) : dim_(dim), facets_(std::move(facets)) {
  init(true);
}

DelzantPolytope DelzantPolytope::unbounded(int dim, std::vector<Facet> facets) {
  DelzantPolytope p;
  p.dim_ = dim;
  p.facets_ = std::move(facets);
  p.init(false);
  return p;
}

void DelzantPolytope::init(bool require_bounded) {
  const int n = dim_;
  const int d = num_facets();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "polytope dimension must be >= 1");
  if (d < n) throw Error(ErrorCode::InvalidArgument, "need at least n facets");
  for (const auto& f : facets_) {
    if (f.normal.size() != n) throw Error(ErrorCode::InvalidArgument, "facet normal has wrong length");
    if (f.normal.isZero()) throw Error(ErrorCode::InvalidArgument, "zero facet normal");
  }

  vertices_ = toricgk::vertices(*this);
  if (vertices_.empty()) {
    // no vertex: the normals do not span R^n, so the set is unbounded
    if (require_bounded) throw Error(ErrorCode::Unbounded, "polytope has no vertices");
    bounded_ = false;
    Mat u(d, n);
    Vec rhs(d);
    for (int k = 0; k < d; ++k) {
      u.row(k) = facets_[k].normal.cast<double>().transpose();
      rhs[k] = facets_[k].offset + 1.0;
    }
    Vec probe = u.completeOrthogonalDecomposition().solve(rhs);
    if (!(min_slack(probe) > kIncidenceTol)) throw Error(ErrorCode::EmptyInterior, "interior is empty");
    return;
  }

  bounded_ = true;
  for (const auto& v : vertices_) {
    Mat ns = rows_of(facets_, v.facets, n).cast<double>();
    Mat edges = ns.inverse();  // column i: edge leaving facet i
    for (int i = 0; i < n; ++i) {
      Vec e = edges.col(i);
      bool closes = false;
      for (int k = 0; k < d; ++k) {
        if (std::binary_search(v.facets.begin(), v.facets.end(), k)) continue;
        if (facets_[k].normal.cast<double>().dot(e) < -kIncidenceTol) closes = true;
      }
      if (!closes) bounded_ = false;
    }
  }
  if (require_bounded && !bounded_) throw Error(ErrorCode::Unbounded, "polytope is unbounded");

  Vec probe;
  if (bounded_) {
    probe = vertex_centroid();
  } else {
    const auto& v = vertices_.front();
    Mat ns = rows_of(facets_, v.facets, n).cast<double>();
    probe = v.point + 1e-3 * ns.inverse() * Vec::Ones(n);
  }
  if (!(min_slack(probe) > kIncidenceTol)) throw Error(ErrorCode::EmptyInterior, "interior is empty");
}

DelzantPolytope DelzantPolytope::box(const std::vector<double>& lo, const std::vector<double>& hi) {
  const int n = static_cast<int>(lo.size());
  std::vector<Facet> f;
  for (int i = 0; i < n; ++i) {
    IVec u = IVec::Zero(n);
    u[i] = 1;
    f.push_back({u, lo[i]});
    f.push_back({IVec(-u), -hi[i]});
  }
  return DelzantPolytope(n, std::move(f));
}

DelzantPolytope DelzantPolytope::square_half() { return box({0.0, 0.0}, {0.5, 0.5}); }

DelzantPolytope DelzantPolytope::segment(double lo, double hi) { return box({lo}, {hi}); }

DelzantPolytope DelzantPolytope::standard_simplex(int n, double size) {
  std::vector<Facet> f;
  for (int i = 0; i < n; ++i) {
    IVec u = IVec::Zero(n);
    u[i] = 1;
    f.push_back({u, 0.0});
  }
  f.push_back({IVec::Constant(n, -1), -size});
  return DelzantPolytope(n, std::move(f));
}

DelzantPolytope DelzantPolytope::orthant(const std::vector<double>& offsets) {
  const int n = static_cast<int>(offsets.size());
  std::vector<Facet> f;
  for (int i = 0; i < n; ++i) {
    IVec u = IVec::Zero(n);
    u[i] = 1;
    f.push_back({u, offsets[i]});
  }
  return unbounded(n, std::move(f));
}

double DelzantPolytope::slack(int j, const Vec& x) const {
  return facets_[j].normal.cast<double>().dot(x) - facets_[j].offset;
}

Vec DelzantPolytope::slacks(const Vec& x) const {
  Vec s(num_facets());
  for (int j = 0; j < num_facets(); ++j) s[j] = slack(j, x);
  return s;
}

double DelzantPolytope::min_slack(const Vec& x) const { return slacks(x).minCoeff(); }

bool DelzantPolytope::strictly_inside(const Vec& x) const { return min_slack(x) > 0.0; }

Eigen::MatrixXi DelzantPolytope::normal_matrix() const {
  Eigen::MatrixXi m(dim_, num_facets());
  for (int j = 0; j < num_facets(); ++j) m.col(j) = facets_[j].normal;
  return m;
}

Vec DelzantPolytope::offsets() const {
  Vec v(num_facets());
  for (int j = 0; j < num_facets(); ++j) v[j] = facets_[j].offset;
  return v;
}

Vec DelzantPolytope::vertex_centroid() const {
  Vec c = Vec::Zero(dim_);
  for (const auto& v : vertices_) c += v.point;
  return c / static_cast<double>(vertices_.size());
}

Vec DelzantPolytope::facet_midpoint(int j) const {
  Vec c = Vec::Zero(dim_);
  int count = 0;
  for (const auto& v : vertices_)
    if (std::binary_search(v.facets.begin(), v.facets.end(), j)) {
      c += v.point;
      ++count;
    }
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "facet has no vertices");
  return c / static_cast<double>(count);
}

std::vector<Vertex> vertices(const DelzantPolytope& p) {
  const int n = p.dim();
  const auto& facets = p.facets();
  const int d = static_cast<int>(facets.size());
  std::vector<Vertex> out;
  for_each_subset(d, n, [&](const std::vector<int>& idx) {
    Eigen::MatrixXi ni = rows_of(facets, idx, n);
    if (integer_det(ni) == 0) return;
    Vec rhs(n);
    for (int r = 0; r < n; ++r) rhs[r] = facets[idx[r]].offset;
    Vec x = ni.cast<double>().fullPivLu().solve(rhs);
    const double tol = kIncidenceTol * std::max(1.0, x.cwiseAbs().maxCoeff());
    std::vector<int> incident;
    for (int j = 0; j < d; ++j) {
      double s = facets[j].normal.cast<double>().dot(x) - facets[j].offset;
      if (s < -tol) return;
      if (std::abs(s) <= tol) incident.push_back(j);
    }
    for (const auto& v : out)
      if ((v.point - x).cwiseAbs().maxCoeff() <= tol) return;
    out.push_back({x, incident});
  });
  for (const auto& v : out) {
    if (static_cast<int>(v.facets.size()) > n)
      throw Error(ErrorCode::NonSimpleVertex, std::to_string(v.facets.size()) + " facets meet at a vertex");
    long long det = integer_det(rows_of(facets, v.facets, n));
    if (det != 1 && det != -1)
      throw Error(ErrorCode::NotDelzant, "incident normals have determinant " + std::to_string(det));
  }
  return out;
}

std::vector<Face> faces(const DelzantPolytope& p, int codim) {
  const int n = p.dim();
  if (codim < 0 || codim > n) throw Error(ErrorCode::InvalidArgument, "codim out of range");
  std::set<std::vector<int>> subsets;
  if (codim == 0) {
    subsets.insert(std::vector<int>{});
  } else {
    for (const auto& v : p.vertices())
      for_each_subset(n, codim, [&](const std::vector<int>& idx) {
        std::vector<int> s;
        for (int i : idx) s.push_back(v.facets[i]);
        subsets.insert(s);
      });
  }
  std::vector<Face> out;
  for (const auto& s : subsets) {
    Face f;
    f.codim = codim;
    f.active_facets = s;
    if (codim == 0) {
      f.tangent = Mat::Identity(n, n);
    } else {
      Mat u = rows_of(p.facets(), s, n).cast<double>();
      f.tangent = null_space(u);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BoundaryRay> boundary_rays(const DelzantPolytope& p, int ray_steps) {
  if (!p.bounded()) throw Error(ErrorCode::Unbounded, "boundary rays need a bounded polytope");
  std::vector<BoundaryRay> rays;
  const Vec c = p.vertex_centroid();
  auto make = [&](BoundaryRay::Target t, int index, const Vec& end, double s0) {
    BoundaryRay r;
    r.target = t;
    r.index = index;
    r.endpoint = end;
    for (int k = 0; k < ray_steps; ++k) {
      double w = std::ldexp(1.0, -k);
      r.points.push_back(end + w * (c - end));
      r.slack.push_back(w * s0);
    }
    rays.push_back(std::move(r));
  };
  for (int j = 0; j < p.num_facets(); ++j) make(BoundaryRay::Target::Facet, j, p.facet_midpoint(j), p.slack(j, c));
  const auto& vs = p.vertices();
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) {
    double s0 = INFINITY;
    for (int j : vs[i].facets) s0 = std::min(s0, p.slack(j, c));
    make(BoundaryRay::Target::Vertex, i, vs[i].point, s0);
  }
  return rays;
}

InteriorGrid sample_interior(const DelzantPolytope& p, int resolution, double margin, int ray_steps) {
  if (!(margin > 0)) throw Error(ErrorCode::InvalidArgument, "margin must be positive");
  if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 2");
  if (!p.bounded()) throw Error(ErrorCode::Unbounded, "sampling needs a bounded polytope");
  const int n = p.dim();
  Vec lo = p.vertices().front().point, hi = lo;
  for (const auto& v : p.vertices()) {
    lo = lo.cwiseMin(v.point);
    hi = hi.cwiseMax(v.point);
  }
  InteriorGrid g;
  g.margin = margin;
  g.resolution = resolution;
  // lattice inset slightly beyond the margin so the slack bound holds exactly
  const double inset = margin * (1.0 + 1e-12);
  std::vector<std::vector<double>> axes(n);
  for (int i = 0; i < n; ++i) {
    double a = lo[i] + inset, b = hi[i] - inset;
    if (b < a) throw Error(ErrorCode::EmptyGrid, "margin exceeds half-width");
    for (int k = 0; k < resolution; ++k) {
      double t = static_cast<double>(k) / (resolution - 1);
      axes[i].push_back(k == resolution - 1 ? b : a + t * (b - a));
    }
  }
  std::vector<int> idx(n, 0);
  while (true) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = axes[i][idx[i]];
    if (p.min_slack(x) >= margin) g.points.push_back(x);
    int i = n - 1;
    while (i >= 0 && ++idx[i] == resolution) idx[i--] = 0;
    if (i < 0) break;
  }
  if (g.points.empty()) throw Error(ErrorCode::EmptyGrid, "no lattice point has the required slack");
  g.boundary_rays = boundary_rays(p, ray_steps);
  return g;
}

}  // namespace toricgk
