#pragma once

#include "toricgk/linalg.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace toricgk {

using IVec = Eigen::VectorXi;

struct Facet {
  IVec normal;    // u_j, integer
  double offset;  // lambda_j
};

struct Vertex {
  Vec point;
  std::vector<int> facets;  // incident facet indices, sorted
};

struct Face {
  int codim = 0;
  std::vector<int> active_facets;  // sorted
  Mat tangent;                     // n x (n - codim), orthonormal columns spanning V_P
};

struct BoundaryRay {
  enum class Target { Facet, Vertex } target = Target::Facet;
  int index = 0;             // facet or vertex index
  Vec endpoint;              // facet midpoint or vertex
  std::vector<Vec> points;   // x_k, k = 0..K-1
  std::vector<double> slack; // target slack of x_k (halves each step)
};

struct InteriorGrid {
  std::vector<Vec> points;
  double margin = 0;
  std::vector<BoundaryRay> boundary_rays;
  int resolution = 0;
};

class DelzantPolytope {
 public:
  DelzantPolytope() = default;
  // Validates shape, boundedness, nonempty interior and the Delzant condition.
  DelzantPolytope(int dim, std::vector<Facet> facets);
  // Skips the boundedness requirement (the orthant model of C^d).
  static DelzantPolytope unbounded(int dim, std::vector<Facet> facets);

  static DelzantPolytope box(const std::vector<double>& lo, const std::vector<double>& hi);
  static DelzantPolytope square_half();  // [0, 1/2]^2
  static DelzantPolytope segment(double lo, double hi);
  static DelzantPolytope standard_simplex(int n, double size = 1.0);  // x_i >= 0, sum x_i <= size
  static DelzantPolytope orthant(const std::vector<double>& offsets);  // x_j >= lambda_j

  int dim() const { return dim_; }
  int num_facets() const { return static_cast<int>(facets_.size()); }
  const std::vector<Facet>& facets() const { return facets_; }
  bool bounded() const { return bounded_; }

  double slack(int j, const Vec& x) const;  // <u_j, x> - lambda_j
  Vec slacks(const Vec& x) const;
  double min_slack(const Vec& x) const;
  bool strictly_inside(const Vec& x) const;

  // Integer n x d matrix whose columns are the normals.
  Eigen::MatrixXi normal_matrix() const;
  Vec offsets() const;

  const std::vector<Vertex>& vertices() const { return vertices_; }
  Vec vertex_centroid() const;
  Vec facet_midpoint(int j) const;

 private:
  void init(bool require_bounded);

  int dim_ = 0;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
  bool bounded_ = false;
};

// Brute force over n-subsets of facets.
std::vector<Vertex> vertices(const DelzantPolytope& p);
std::vector<Face> faces(const DelzantPolytope& p, int codim);
InteriorGrid sample_interior(const DelzantPolytope& p, int resolution, double margin, int ray_steps = 20);
std::vector<BoundaryRay> boundary_rays(const DelzantPolytope& p, int ray_steps = 20);

// Exact integer determinant (Bareiss).
long long integer_det(const Eigen::MatrixXi& m);

}  // namespace toricgk
