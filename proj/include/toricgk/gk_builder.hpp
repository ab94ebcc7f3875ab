#pragma once

#include "toricgk/linalg.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/potential.hpp"
#include "toricgk/report.hpp"

#include <functional>
#include <string>

namespace toricgk {

// Matrix conventions (all 2n x 2n, basis ordered theta_1..theta_n, mu_1..mu_n):
//   endomorphisms: column k is the image of the k-th frame vector;
//   2-forms:       Gram matrix B_ij = b(e_i, e_j);
//   bivectors:     Gram matrix P_ij = p(e^i, e^j) on the coframe.
// The coframe for ZetaDmu (= AdmissibleCoords) is (dtheta, dmu); the
// ZetaPlusDmu / ZetaMinusDmu coframes are (dtheta -+ F dmu / 2, dmu).

struct GKTriple {
  PotentialModel potential;
  AntisymmetricMatrix C;
  AntisymmetricMatrix F;
  int dim() const { return potential.dim(); }
};

enum class Frame { ZetaDmu, ZetaPlusDmu, ZetaMinusDmu, AdmissibleCoords };
const char* to_string(Frame f);
Frame frame_from_string(const std::string& s);

struct FramePointStructures {
  Vec x;
  Frame frame = Frame::ZetaDmu;
  Mat phi_s, phi, Xi;  // n x n
  Mat Jplus, Jminus, I0, Iplus, Iminus, J0;
  Mat g, b;            // Gram matrices
  Mat beta1, beta3;    // bivector Gram matrices
  Mat Omega;           // Gram matrix of sum dmu_j ^ zeta_j in this frame
};

// Coframe change (zeta, dmu) -> frame: [[I, -F/2], [0, I]] for zeta+,
// [[I, F/2], [0, I]] for zeta-, identity otherwise.
Mat frame_matrix(const Mat& F, Frame frame);
FramePointStructures to_frame(const FramePointStructures& s, const Mat& F, Frame frame);

// Throws DegenerateFrame when phi_s is not positive definite or Xi is singular.
FramePointStructures build_structures(const Mat& phi_s, const Mat& C, const Mat& F, Frame frame = Frame::ZetaDmu,
                                      const Vec& x = {});
FramePointStructures build_structures(const GKTriple& t, const Vec& x, Frame frame = Frame::ZetaDmu);

// Canonical Omega: [[0, -I], [I, 0]].
Mat canonical_omega(int n);

// Map matrices (column-image of X -> iota_X form) for 2-forms / bivectors.
inline Mat form_map(const Mat& gram) { return gram.transpose(); }

struct GualtieriPair {
  Mat J1, J2, G;  // 4n x 4n on T + T*
};
GualtieriPair gualtieri_pair(const FramePointStructures& s);

struct Tolerances {
  double pd_eig = 1e-12;
  double identity_residual = 1e-10;
  double oracle_match = 1e-9;
  double nijenhuis = 1e-4;
  double fd_step = 1e-5;
  void set(const std::string& name, double value);
};

// Algebraic identity suite at one point; residuals are relative.
ValidationReport check_identities(const FramePointStructures& s, double tol = 1e-10);

struct ConeOptions {
  bool refine = true;
  double pd_tol = 1e-12;
};
struct ConeResult {
  bool member = false;
  double margin = 0;        // min eigenvalue of Id + F_x^2 / 4
  Vec worst;                // where the margin is attained
  double max_norm_sq = 0;   // max ||F_x||^2
  int samples = 0;
};
double cone_margin_at(const Mat& F, const Mat& phi_s);
ConeResult cone_membership(const AntisymmetricMatrix& F, const PotentialModel& potential, const InteriorGrid& grid,
                           const ConeOptions& opts = {});

ValidationReport validate_triple(const GKTriple& t, const InteriorGrid& grid, const Tolerances& tol = {});

struct DeformResult {
  double t = 0;
  FramePointStructures direct;  // built with F replaced by tF
  Mat Ft;                       // Id - (t/2) Omega^-1 Fhat, acting on vectors
  Mat Jplus_conjugated;         // Ft^-1 I+ Ft
  Mat Jminus_conjugated;        // F_{-t}^-1 I- F_{-t}
  double route_residual = 0;
};
// Gram matrix of Fhat = (1/2) sum F_jk dmu_j ^ dmu_k.
Mat fhat_gram(const Mat& F);
DeformResult deform(const GKTriple& t, double s, const Vec& x);
std::vector<double> default_t_sweep(int count = 11);

ValidationReport smooth_extension_probe(const GKTriple& t, const std::vector<BoundaryRay>& rays);

// Bounded pattern search for a local minimizer of f over the open polytope.
Vec minimize_in_interior(const std::function<double(const Vec&)>& f, const DelzantPolytope& p, Vec x0, double step0,
                         double step_min = 1e-11);

}  // namespace toricgk
