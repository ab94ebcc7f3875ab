#pragma once

#include "toricgk/gk_builder.hpp"
#include "toricgk/linalg.hpp"
#include "toricgk/polytope.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace toricgk {

struct TypeRecord {
  std::optional<int> face_index;  // empty for the interior
  int codim = 0;
  std::vector<int> active_facets;
  int rank_used = 0;
  int type_value = 0;        // n - rank on mu^-1(P)
  int submanifold_type = 0;  // type_value - codim
  CMat matrix;               // F/2 - i C restricted to V_P
};

TypeRecord interior_type(const AntisymmetricMatrix& C, const AntisymmetricMatrix& F);
TypeRecord face_type(const DelzantPolytope& p, const Face& face, const AntisymmetricMatrix& C,
                     const AntisymmetricMatrix& F);
// All faces of every codimension, interior first.
std::vector<TypeRecord> type_map(const DelzantPolytope& p, const AntisymmetricMatrix& C, const AntisymmetricMatrix& F);

// 2 (F/2 - i C)
CMat beta_plus_coefficients(const AntisymmetricMatrix& C, const AntisymmetricMatrix& F);

struct SymmetricFactorization {
  Vec x;
  Mat S;   // (J+ + J-)/2
  Mat b1;  // Gram matrix, mu-mu block -F/2
  double residual_S = 0;      // S - (I0 - beta3 b1)
  double residual_b = 0;      // b - (b1 I0 - b1 beta3 b1 + I0^T b1)
  double residual_beta1 = 0;  // beta1 - S^-1 beta3
  double residual_omega = 0;  // -(omega+ - omega-)/2 - b S
  double max() const;
};
SymmetricFactorization symmetric_factorize(const GKTriple& t, const Vec& x);
SymmetricFactorization symmetric_factorize(const FramePointStructures& s, const Mat& F);

struct SpinorPair {
  Mat Q;       // Gram matrix
  Mat bprime;  // Gram matrix
  double inverse_residual = 0;  // |Q ((J+ - J-)/2) g^-1 + Id|
};
SpinorPair pure_spinor_pair(const FramePointStructures& s);
SpinorPair pure_spinor_pair(const GKTriple& t, const Vec& x);

enum class StructureField { Jplus, Jminus, I0 };

// Complex structure field in admissible coordinates as a function of mu.
using EndomorphismField = std::function<Mat(const Vec&)>;

// max |N^k_ij| with central differences in the mu directions, step
// h * min(1, min slack).
double nijenhuis_residual(const EndomorphismField& J, const DelzantPolytope& p, const Vec& x, double h);
double nijenhuis_residual(const GKTriple& t, StructureField which, const Vec& x, double h = 1e-4);

// Field built from an arbitrary symmetric matrix field in place of Hess(tau).
EndomorphismField structure_field(const std::function<Mat(const Vec&)>& phi_s, const Mat& C, const Mat& F,
                                  StructureField which);

}  // namespace toricgk
