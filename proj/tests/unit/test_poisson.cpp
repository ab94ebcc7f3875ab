#include "toricgk/error.hpp"
#include "toricgk/poisson.hpp"

#include <gtest/gtest.h>

#include <complex>

using namespace toricgk;

namespace {
Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}
GKTriple square_triple(double c, double f) {
  return GKTriple{PotentialModel::canonical(DelzantPolytope::square_half()), AntisymmetricMatrix::planar(c),
                  AntisymmetricMatrix::planar(f)};
}
}  // namespace

TEST(Type, Interior) {
  EXPECT_EQ(interior_type(AntisymmetricMatrix(2), AntisymmetricMatrix(2)).type_value, 2);
  auto r = interior_type(AntisymmetricMatrix(2), AntisymmetricMatrix::planar(3));
  EXPECT_EQ(r.rank_used, 2);
  EXPECT_EQ(r.type_value, 0);
  EXPECT_EQ(interior_type(AntisymmetricMatrix::planar(1), AntisymmetricMatrix::planar(-2)).type_value, 0);
  EXPECT_EQ(interior_type(AntisymmetricMatrix(3), AntisymmetricMatrix(3, {1, 0, 0})).type_value, 1);
}

TEST(Type, SquareFaces) {
  auto sq = DelzantPolytope::square_half();
  auto recs = type_map(sq, AntisymmetricMatrix::planar(1), AntisymmetricMatrix::planar(4));
  ASSERT_EQ(recs.size(), 9u);
  EXPECT_FALSE(recs[0].face_index.has_value());
  EXPECT_EQ(recs[0].type_value, 0);
  for (std::size_t k = 1; k < recs.size(); ++k) {
    EXPECT_EQ(recs[k].type_value, 2);
    EXPECT_EQ(recs[k].rank_used, 0);
    EXPECT_EQ(recs[k].submanifold_type, 2 - recs[k].codim);
  }
  auto interior = faces(sq, 0).front();
  EXPECT_EQ(face_type(sq, interior, AntisymmetricMatrix::planar(1), AntisymmetricMatrix::planar(4)).type_value, 0);
}

TEST(BetaPlus, Coefficients) {
  const std::complex<double> I(0, 1);
  auto a = beta_plus_coefficients(AntisymmetricMatrix(2), AntisymmetricMatrix::planar(3));
  EXPECT_EQ(a(0, 1), std::complex<double>(3, 0));
  auto b = beta_plus_coefficients(AntisymmetricMatrix::planar(2), AntisymmetricMatrix(2));
  EXPECT_EQ(b(0, 1), -2.0 * I * 2.0);
  auto c = beta_plus_coefficients(AntisymmetricMatrix::planar(1), AntisymmetricMatrix::planar(2));
  EXPECT_LE(std::abs(c(0, 1) - 2.0 * (1.0 - I)), 1e-15);
  EXPECT_LE(std::abs(c(1, 0) + 2.0 * (1.0 - I)), 1e-15);
}

TEST(SymmetricFactorization, KahlerCase) {
  auto s = symmetric_factorize(square_triple(0, 0), v2(0.2, 0.1));
  EXPECT_EQ(max_abs(s.b1), 0.0);
  EXPECT_LE(s.max(), 1e-14);
}

TEST(SymmetricFactorization, CentreOfSquare) {
  auto s = symmetric_factorize(square_triple(0, 4), v2(0.25, 0.25));
  EXPECT_LE(s.max(), 1e-10);
  EXPECT_EQ(s.b1(3, 2), 2.0);
  EXPECT_EQ(s.b1(2, 3), -2.0);
}

TEST(SymmetricFactorization, RejectsNonzeroC) {
  try {
    symmetric_factorize(square_triple(0.5, 4), v2(0.25, 0.25));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(SpinorPair, DegenerateWhenKahler) {
  try {
    pure_spinor_pair(square_triple(0, 0), v2(0.25, 0.2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDifference);
  }
}

TEST(SpinorPair, InverseRelation) {
  auto sp = pure_spinor_pair(square_triple(1.3, 2.0), v2(0.1, 0.35));
  EXPECT_LE(sp.inverse_residual, 1e-12);
  EXPECT_LE(max_abs(Mat(sp.Q + sp.Q.transpose())), 1e-12);
  EXPECT_LE(max_abs(Mat(sp.bprime + sp.bprime.transpose())), 1e-12);
}

TEST(Nijenhuis, KahlerBaseline) {
  auto t = square_triple(0, 0);
  for (Vec x : {v2(0.25, 0.25), v2(0.1, 0.4), v2(0.05, 0.2)})
    for (auto w : {StructureField::Jplus, StructureField::I0}) EXPECT_LE(nijenhuis_residual(t, w, x, 1e-4), 1e-5);
}

TEST(Nijenhuis, ValidTriple) {
  auto t = square_triple(1.0, 5.0);
  for (Vec x : {v2(0.25, 0.25), v2(0.1, 0.4), v2(0.05, 0.2)})
    for (auto w : {StructureField::Jplus, StructureField::Jminus, StructureField::I0})
      EXPECT_LE(nijenhuis_residual(t, w, x, 1e-4), 1e-4);
}

TEST(Nijenhuis, NonHessianFieldDetected) {
  auto sq = DelzantPolytope::square_half();
  auto model = PotentialModel::canonical(sq);
  // d_2 phi_12 != d_1 phi_22 type defect: phi_12 = mu_1
  auto phi = [&](const Vec& x) {
    Mat m = model.hessian_matrix(x);
    m(0, 1) += x[0];
    m(1, 0) += x[0];
    return m;
  };
  auto field = structure_field(phi, Mat::Zero(2, 2), Mat::Zero(2, 2), StructureField::I0);
  EXPECT_GE(nijenhuis_residual(field, sq, v2(0.25, 0.25), 1e-4), 1e-2);
}
