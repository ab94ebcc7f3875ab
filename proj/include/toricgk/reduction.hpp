#pragma once

#include "toricgk/gk_builder.hpp"
#include "toricgk/linalg.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/report.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace toricgk {

using CVec = Eigen::VectorXcd;

struct DelzantSequence {
  int d = 0, n = 0;
  Eigen::MatrixXi varsigma;      // n x d, columns u_j
  Eigen::MatrixXi kernel_basis;  // (d - n) x d, rows span ker varsigma
  Vec lambda;
  DelzantPolytope polytope;
};

DelzantSequence build_sequence(const DelzantPolytope& p);

// Integer basis of the rational null space, each row gcd-reduced.
Eigen::MatrixXi integer_kernel(const Eigen::MatrixXi& a, int* rank = nullptr);

struct LiftedPair {
  Mat Cprime, Fprime;  // d x d
  Mat C, F;            // n x n targets
  double residual_C = 0, residual_F = 0;
};

// varsigma M' varsigma^T
Mat pushforward(const DelzantSequence& seq, const Mat& m);
// Minimal Frobenius norm antisymmetric preimage.
Mat minimal_lift(const DelzantSequence& seq, const Mat& m);
LiftedPair lift_pair(const DelzantSequence& seq, const AntisymmetricMatrix& C, const AntisymmetricMatrix& F);
// Throws LiftMismatch when a pushforward residual exceeds tol.
LiftedPair lift_pair_explicit(const DelzantSequence& seq, const AntisymmetricMatrix& C, const AntisymmetricMatrix& F,
                              const Mat& Cprime, const Mat& Fprime, double tol = 1e-12);

struct AmbientPoint {
  CVec z;
  Vec nu;  // |z_j|^2 / 2 + lambda_j
};
AmbientPoint make_ambient_point(const CVec& z, const Vec& lambda);

bool kf_region_contains(const Mat& Fprime, const CVec& z, double pd_tol = 1e-12);
double kf_region_margin(const Mat& Fprime, const CVec& z);

struct ReducedSample {
  Vec mu;
  AmbientPoint point;
  bool in_region = false;
  double nu_residual = 0;
  Mat Jplus, Jminus, I0;                      // reduced, basis (theta_bar, mu)
  Mat direct_Jplus, direct_Jminus, direct_I0;  // built on the polytope at mu
  double invariance_residual = 0;  // J D subset D for the three distributions
  double residual_Jplus = 0, residual_Jminus = 0, residual_I0 = 0;
  double residual_lift_identity = 0;  // J+ (dmu_i + F_ji dtheta_j / 2) = phi_ik dtheta_k
  double residual_I0_identity = 0;    // I0 dmu_i = (phi_s)_ji dtheta_j
};

// Level-set point over mu with torus angles theta.
ReducedSample reduce_at(const DelzantSequence& seq, const LiftedPair& pair, const Vec& mu, const Vec& angles);

struct ReductionResult {
  ValidationReport report;
  int sampled = 0;
  int included = 0;
  std::vector<Vec> excluded_mu;
  std::vector<ReducedSample> samples;  // included samples only
};

// Deterministic Halton points in the polytope interior.
std::vector<Vec> level_set_parameters(const DelzantPolytope& p, int count);

ReductionResult reduce_and_compare(const DelzantSequence& seq, const LiftedPair& pair, int sample_count,
                                   std::uint64_t seed = 0, double tol = 1e-8);

// Max difference of reduced J+, J-, I0 for two lifts at common samples.
double compare_lifts(const DelzantSequence& seq, const LiftedPair& a, const LiftedPair& b, int sample_count,
                     std::uint64_t seed = 0);

}  // namespace toricgk
