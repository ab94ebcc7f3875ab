#include "toricgk/error.hpp"
#include "toricgk/gk_builder.hpp"
#include "toricgk/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

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

TEST(Build, KahlerCase) {
  auto t = square_triple(0, 0);
  Vec x = v2(0.15, 0.3);
  auto s = build_structures(t, x);
  Mat phi = t.potential.hessian_matrix(x);
  for (const Mat* m : {&s.Jminus, &s.Iplus, &s.Iminus, &s.I0, &s.J0}) EXPECT_LE(max_abs(Mat(*m - s.Jplus)), 1e-14);
  Mat g = Mat::Zero(4, 4);
  g.topLeftCorner(2, 2) = phi.inverse();
  g.bottomRightCorner(2, 2) = phi;
  EXPECT_LE(rel_diff(s.g, g), 1e-14);
  EXPECT_EQ(max_abs(s.b), 0.0);
}

TEST(Build, SymmetricCaseMetricIsBlockDiagonal) {
  auto t = square_triple(0, 3);
  Vec x = v2(0.2, 0.33);
  auto s = build_structures(t, x);
  Mat phi = t.potential.hessian_matrix(x);
  Mat F = t.F.dense();
  Mat xi = phi + 0.25 * F * phi.inverse() * F;
  EXPECT_LE(rel_diff(Mat(s.g.topLeftCorner(2, 2)), Mat(phi.inverse())), 1e-13);
  EXPECT_LE(rel_diff(Mat(s.g.bottomRightCorner(2, 2)), xi), 1e-13);
  EXPECT_LE(max_abs(Mat(s.g.topRightCorner(2, 2))), 1e-14);
}

TEST(Build, MatchesClosedFormOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cu(-3, 3), fu(-7, 7), mu(0.01, 0.49);
  for (int k = 0; k < 100; ++k) {
    double c = cu(rng), f = fu(rng);
    Vec x = v2(mu(rng), mu(rng));
    auto s = build_structures(square_triple(c, f), x, Frame::AdmissibleCoords);
    auto o = oracle_tensors(c, f, x);
    EXPECT_LE(rel_diff(s.g, o.g), 1e-9);
    EXPECT_LE(rel_diff(s.b, o.b), 1e-9);
  }
}

TEST(Build, IdentitySuiteInAllFrames) {
  auto t = square_triple(0.7, 5);
  for (Frame fr : {Frame::ZetaDmu, Frame::ZetaPlusDmu, Frame::ZetaMinusDmu}) {
    auto rep = check_identities(build_structures(t, v2(0.12, 0.41), fr));
    EXPECT_TRUE(rep.pass()) << to_string(fr) << "\n" << rep.to_text();
  }
}

TEST(Build, FrameChangeDoesNotChangeMetricInvariants) {
  auto t = square_triple(1.1, 2.5);
  Vec x = v2(0.3, 0.2);
  auto a = build_structures(t, x, Frame::ZetaDmu);
  auto b = build_structures(t, x, Frame::ZetaPlusDmu);
  EXPECT_NEAR(a.g.determinant() / a.Omega.determinant(), b.g.determinant() / b.Omega.determinant(), 1e-9);
  EXPECT_NEAR(a.Jplus.trace(), b.Jplus.trace(), 1e-12);
}

TEST(Cone, SquareExamples) {
  auto m = PotentialModel::canonical(DelzantPolytope::square_half());
  auto g = sample_interior(DelzantPolytope::square_half(), 16, 0.01);
  auto zero = cone_membership(AntisymmetricMatrix(2), m, g);
  EXPECT_TRUE(zero.member);
  EXPECT_NEAR(zero.margin, 1.0, 1e-12);
  auto a = cone_membership(AntisymmetricMatrix::planar(7.9), m, g);
  EXPECT_TRUE(a.member);
  // 1 - f^2/64 at (1/4, 1/4)
  EXPECT_NEAR(a.margin, 1 - 7.9 * 7.9 / 64, 1e-9);
  EXPECT_LT(a.max_norm_sq, 8.0);
  auto b = cone_membership(AntisymmetricMatrix::planar(8.1), m, g);
  EXPECT_FALSE(b.member);
  EXPECT_NEAR(b.worst[0], 0.25, 1e-4);
  EXPECT_NEAR(b.worst[1], 0.25, 1e-4);
}

TEST(Validate, AdmissibleAndInadmissible) {
  auto g = sample_interior(DelzantPolytope::square_half(), 12, 0.01);
  EXPECT_TRUE(validate_triple(square_triple(0.4, 4), g).pass());
  EXPECT_TRUE(validate_triple(square_triple(2, 0), g).pass());
  auto bad = validate_triple(square_triple(0, 8), g);
  EXPECT_FALSE(bad.pass());
  const Check* c = bad.find("cone_condition");
  ASSERT_NE(c, nullptr);
  EXPECT_NEAR(c->location[0], 0.25, 1e-4);
  EXPECT_NEAR(c->location[1], 0.25, 1e-4);
}

TEST(Deform, EndpointsAndMidpoint) {
  auto t = square_triple(0.3, 4);
  Vec x = v2(0.17, 0.29);
  auto d0 = deform(t, 0, x);
  EXPECT_EQ(max_abs(Mat(d0.Jplus_conjugated - d0.direct.Iplus)), 0.0);
  auto d1 = deform(t, 1, x);
  auto s = build_structures(t, x);
  EXPECT_LE(max_abs(Mat(d1.direct.Jplus - s.Jplus)), 1e-14);
  auto dh = deform(square_triple(0.0, 4), 0.5, x);
  EXPECT_LE(dh.route_residual, 1e-10);
  EXPECT_THROW(deform(t, 1.5, x), Error);
}

TEST(Extension, SquareRaysWithAdmissibleF) {
  auto rays = boundary_rays(DelzantPolytope::square_half());
  auto rep = smooth_extension_probe(square_triple(0, 4), rays);
  EXPECT_TRUE(rep.pass()) << rep.to_text();
  auto kahler = smooth_extension_probe(square_triple(0, 0), rays);
  ASSERT_NE(kahler.find("det_Xi_inverse_phi_s_lower_bound"), nullptr);
  EXPECT_NEAR(kahler.find("det_Xi_inverse_phi_s_lower_bound")->residual, 1.0, 1e-14);
  // toward mu1 = 0: (phi_s^-1)_11 = 4 mu1 (1/2 - mu1)
  auto m = PotentialModel::canonical(DelzantPolytope::square_half());
  const auto& ray = rays[0];
  Vec x = ray.points.back();
  EXPECT_NEAR(m.hessian_matrix(x).inverse()(0, 0), 4 * x[0] * (0.5 - x[0]), 1e-12);
}

TEST(Extension, InadmissibleFFails) {
  auto rep = smooth_extension_probe(square_triple(0, 8), boundary_rays(DelzantPolytope::square_half()));
  EXPECT_FALSE(rep.pass());
}

TEST(Tolerances, Overrides) {
  Tolerances t;
  EXPECT_EQ(t.pd_eig, 1e-12);
  EXPECT_EQ(t.identity_residual, 1e-10);
  EXPECT_EQ(t.oracle_match, 1e-9);
  EXPECT_EQ(t.nijenhuis, 1e-4);
  EXPECT_EQ(t.fd_step, 1e-5);
  t.set("nijenhuis", 1e-3);
  EXPECT_EQ(t.nijenhuis, 1e-3);
  EXPECT_THROW(t.set("bogus", 1), Error);
}
