#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "minnet/geometry.hpp"
#include "minnet/mobius.hpp"
#include "minnet/quaternion.hpp"
#include "oracles.hpp"

using namespace minnet;

namespace {

Vec3 random_vec(std::mt19937_64& g, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(g), u(g), u(g)};
}

Quat random_quat(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(g), u(g), u(g), u(g)};
}

double quat_dist(const Quat& a, const Quat& b) { return (a - b).norm(); }

Mat3 random_rotation(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  return Eigen::Quaterniond(Eigen::Vector4d(n(g), n(g), n(g), n(g)).normalized()).toRotationMatrix();
}

/// Four points in cyclic order on a random circle in space.
std::array<Vec3, 4> random_concircular(std::mt19937_64& g, double* c_out = nullptr) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vec3 center = random_vec(g, -3, 3);
  const Mat3 R = random_rotation(g);
  const double r = 0.2 + 2.0 * u(g);
  double t = 2.0 * std::numbers::pi * u(g);
  std::array<Vec3, 4> p;
  std::array<std::complex<double>, 4> z;
  for (int i = 0; i < 4; ++i) {
    t += 0.15 + 1.2 * u(g);
    z[i] = std::polar(r, t);
    p[i] = center + R * Vec3(z[i].real(), z[i].imag(), 0.0);
  }
  if (c_out) *c_out = oracle::cross_ratio(z[0], z[1], z[2], z[3]).real();
  return p;
}

}  // namespace

TEST(Quaternion, ProductIsAssociativeAndDistributive) {
  auto g = oracle::rng(1);
  for (int i = 0; i < 200; ++i) {
    const Quat a = random_quat(g), b = random_quat(g), c = random_quat(g);
    const double scale = a.norm() * b.norm() * c.norm();
    EXPECT_LE(quat_dist((a * b) * c, a * (b * c)), 1e-12 * scale);
    EXPECT_LE(quat_dist(a * (b + c), a * b + a * c), 1e-12 * scale);
  }
}

TEST(Quaternion, ProductMatchesMatrixModel) {
  auto g = oracle::rng(2);
  for (int i = 0; i < 100; ++i) {
    const Quat a = random_quat(g), b = random_quat(g);
    const Quat p = a * b;
    const oracle::M2 m = oracle::quat_matrix(a.w, a.x, a.y, a.z) * oracle::quat_matrix(b.w, b.x, b.y, b.z);
    const oracle::M2 ref = oracle::quat_matrix(p.w, p.x, p.y, p.z);
    EXPECT_LE((m - ref).norm(), 1e-12 * a.norm() * b.norm());
  }
}

TEST(Quaternion, InverseIsTwoSided) {
  auto g = oracle::rng(3);
  for (int i = 0; i < 200; ++i) {
    const Quat a = random_quat(g);
    if (a.norm() <= 1e-9) continue;
    EXPECT_LE(quat_dist(a * a.inverse(), Quat{1, 0, 0, 0}), 1e-12);
    EXPECT_LE(quat_dist(a.inverse() * a, Quat{1, 0, 0, 0}), 1e-12);
  }
}

TEST(CrossRatioQuat, UnitSquare) {
  const auto c = cross_ratio_quat({0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0});
  EXPECT_NEAR(c.re, -1.0, 1e-15);
  EXPECT_NEAR(c.im_mag, 0.0, 1e-15);
}

TEST(CrossRatioQuat, CollinearPointsMatchOracle) {
  const auto c = cross_ratio_quat({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0});
  const auto [re, im] = oracle::cross_ratio({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0});
  EXPECT_NEAR(re, -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.re, re, 1e-15);
  EXPECT_NEAR(c.im_mag, im, 1e-15);
}

TEST(CrossRatioQuat, InvariantUnderSphereInversion) {
  std::array<Vec3, 4> sq{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  for (auto& p : sq) p = invert_in_sphere(p, {5, 5, 5}, 1.0);
  const auto c = cross_ratio_quat(sq[0], sq[1], sq[2], sq[3]);
  EXPECT_NEAR(c.re, -1.0, 1e-9);
  EXPECT_LE(c.im_mag, 1e-9);
}

TEST(CrossRatioQuat, NonConcircularPointsHaveImaginaryPart) {
  const Vec3 a(0, 0, 0), b(1, 0, 0), c(1, 1, 0.3), d(0, 1, 0);
  const auto q = cross_ratio_quat(a, b, c, d);
  const auto [re, im] = oracle::cross_ratio(a, b, c, d);
  EXPECT_NEAR(q.re, re, 1e-13);
  EXPECT_NEAR(q.im_mag, im, 1e-13);
  EXPECT_GT(q.im_mag, 1e-3);
  EXPECT_FALSE(q.is_real());
}

TEST(CrossRatioQuat, DegenerateQuadThrows) {
  try {
    (void)cross_ratio_quat({0, 0, 0}, {0, 0, 0}, {1, 1, 0}, {0, 1, 0});
    FAIL() << "expected DegenerateQuad";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_quad);
  }
}

TEST(CrossRatioQuat, SimilarityInvariance) {
  auto g = oracle::rng(4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_concircular(g);
    const Mat3 R = random_rotation(g);
    const Vec3 t = random_vec(g, -5, 5);
    const double s = u(g);
    const auto c1 = cross_ratio_quat(p[0], p[1], p[2], p[3]);
    std::array<Vec3, 4> q;
    for (int k = 0; k < 4; ++k) q[k] = s * (R * p[k]) + t;
    const auto c2 = cross_ratio_quat(q[0], q[1], q[2], q[3]);
    EXPECT_NEAR(c1.re, c2.re, 1e-9 * std::max(1.0, std::abs(c1.re)));
    EXPECT_LE(c2.im_mag, 1e-9 * std::max(1.0, std::abs(c2.re)));
  }
}

TEST(CrossRatioQuat, AgreesWithComplexVersionOnPlanarQuads) {
  auto g = oracle::rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double t0 = u(g);
    std::array<Complex, 4> z;
    for (int k = 0; k < 4; ++k) z[k] = std::polar(2.0, t0 + 1.4 * k + 0.2 * u(g));
    const auto q = cross_ratio_quat({z[0].real(), z[0].imag(), 0}, {z[1].real(), z[1].imag(), 0},
                                    {z[2].real(), z[2].imag(), 0}, {z[3].real(), z[3].imag(), 0});
    const CInf c = cross_ratio_complex(z[0], z[1], z[2], z[3]);
    EXPECT_NEAR(q.re, c.z.real(), 1e-10);
    EXPECT_LE(std::abs(c.z.imag()), 1e-10);
  }
}

TEST(CrossRatioComplex, Examples) {
  const CInf a = cross_ratio_complex(0.0, 1.0, Complex(1, 1), Complex(0, 1));
  EXPECT_NEAR(std::abs(a.z - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.z - oracle::cross_ratio(0.0, 1.0, Complex(1, 1), Complex(0, 1))), 0.0, 1e-15);

  const CInf b = cross_ratio_complex(0.0, 1.0, 2.0, 3.0);
  EXPECT_NEAR(b.z.real(), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(b.z.real(), cross_ratio_quat({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}).re, 1e-15);

  // With g3 = ∞ the factors (g2 - g3)^-1 (g3 - g4) tend to -1, leaving
  // -(g1 - g2) / (g4 - g1) = -(0 - 1) / (i - 0) = -i.
  const CInf c = cross_ratio_complex(0.0, 1.0, CInf::infinity(), Complex(0, 1));
  EXPECT_FALSE(c.inf);
  EXPECT_NEAR(std::abs(c.z - Complex(0, -1)), 0.0, 1e-15);
  // The same limit approached numerically.
  const Complex big(1e9, 0.0);
  EXPECT_NEAR(std::abs(c.z - oracle::cross_ratio(0.0, 1.0, big, Complex(0, 1))), 0.0, 1e-8);
}

TEST(CrossRatioComplex, DegenerateInputs) {
  EXPECT_THROW((void)cross_ratio_complex(0.0, 0.0, 1.0, 2.0), Error);
  EXPECT_THROW((void)cross_ratio_complex(0.0, CInf::infinity(), CInf::infinity(), 2.0), Error);
}

TEST(Stereographic, Examples) {
  EXPECT_LE((stereographic_lift(0.0) - Vec3(0, 0, -1)).norm(), 1e-15);
  EXPECT_LE((stereographic_lift(1.0) - Vec3(1, 0, 0)).norm(), 1e-15);
  EXPECT_LE((stereographic_lift(CInf::infinity()) - Vec3(0, 0, 1)).norm(), 1e-15);
}

TEST(Stereographic, UnitNormAndInjectiveOnGrid) {
  std::vector<Vec3> pts;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j) pts.push_back(stereographic_lift(Complex(1e-6 * i, 1e-6 * j)));
  for (int i = -5; i <= 5; ++i)
    for (int j = -5; j <= 5; ++j) pts.push_back(stereographic_lift(Complex(3.0 + 1e-6 * i, -2.0 + 1e-6 * j)));
  for (const auto& p : pts) EXPECT_NEAR(p.norm(), 1.0, 1e-12);
  double min_gap = 1.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) min_gap = std::min(min_gap, (pts[a] - pts[b]).norm());
  EXPECT_GT(min_gap, 1e-8);
}

TEST(Stereographic, ProjectInvertsLift) {
  auto g = oracle::rng(6);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const Complex z(u(g), u(g));
    EXPECT_LE(std::abs(stereographic_project(stereographic_lift(z)).z - z), 1e-12 * std::max(1.0, std::norm(z)));
  }
  EXPECT_TRUE(stereographic_project({0, 0, 1}).inf);
}

TEST(Isometry, Examples) {
  const auto refl = Isometry::reflection(PlaneR3::through({0, 0, 0}, {0, 0, 1}));
  EXPECT_LE((refl.apply({1, 2, 3}) - Vec3(1, 2, -3)).norm(), 1e-15);
  const auto rot = Isometry::rotation_180(LineR3::through({0, 0, 0}, {0, 0, 1}));
  EXPECT_LE((rot.apply({1, 0, 0}) - Vec3(-1, 0, 0)).norm(), 1e-15);
}

TEST(Isometry, OrthogonalInvolutionsWithExpectedDeterminant) {
  auto g = oracle::rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto refl = Isometry::reflection(PlaneR3::through(random_vec(g, -3, 3), random_vec(g)));
    const auto rot = Isometry::rotation_180(LineR3::through(random_vec(g, -3, 3), random_vec(g)));
    EXPECT_NEAR(refl.determinant(), -1.0, 1e-12);
    EXPECT_NEAR(rot.determinant(), 1.0, 1e-12);
    for (const auto* iso : {&refl, &rot}) {
      EXPECT_LE((iso->linear.transpose() * iso->linear - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
      const Vec3 p = random_vec(g, -10, 10), q = random_vec(g, -10, 10);
      EXPECT_LE((iso->apply(iso->apply(p)) - p).norm(), 1e-12 * std::max(1.0, p.norm()));
      EXPECT_NEAR((iso->apply(p) - iso->apply(q)).norm(), (p - q).norm(), 1e-12 * (p - q).norm() + 1e-13);
    }
  }
}

TEST(Isometry, FixedSets) {
  const PlaneR3 plane = PlaneR3::through({1, 2, 3}, {1, 1, 0});
  const auto refl = Isometry::reflection(plane);
  const Vec3 on = Vec3(1, 2, 3) + Vec3(1, -1, 0) * 2.0 + Vec3(0, 0, 1) * 5.0;
  EXPECT_LE((refl.apply(on) - on).norm(), 1e-12);
  EXPECT_GT((refl.apply({0, 0, 0}) - Vec3(0, 0, 0)).norm(), 1.0);

  const LineR3 line = LineR3::through({1, 0, 0}, {0, 1, 1});
  const auto rot = Isometry::rotation_180(line);
  const Vec3 p = Vec3(1, 0, 0) + 3.0 * line.direction;
  EXPECT_LE((rot.apply(p) - p).norm(), 1e-12);
  EXPECT_GT((rot.apply({0, 0, 0}) - Vec3(0, 0, 0)).norm(), 1.0);
}

TEST(FitPlane, Examples) {
  const std::vector<Vec3> square{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  const auto f = fit_plane(square);
  EXPECT_NEAR(std::abs(f.plane.normal.z()), 1.0, 1e-15);
  EXPECT_NEAR(f.max_residual, 0.0, 1e-15);

  // Lifting one vertex by h: to first order the fitted plane leaves residuals
  // of +-h/4 alternating around the square.
  const double h = 1e-3;
  auto lifted = square;
  lifted[2].z() = h;
  const auto fl = fit_plane(lifted);
  EXPECT_NEAR(fl.max_residual, h / 4.0, h * h);
  EXPECT_GE(fl.max_residual, 1e-4);
  EXPECT_LE(fl.max_residual, 1e-3);

  const auto tri = fit_plane(std::vector<Vec3>{{0, 0, 0}, {2, 1, 0.5}, {-1, 3, 2}});
  EXPECT_NEAR(tri.max_residual, 0.0, 1e-14);
}

TEST(FitPlane, CollinearPointsThrow) {
  try {
    (void)fit_plane(std::vector<Vec3>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
    FAIL() << "expected DegenerateFit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_fit);
  }
  EXPECT_THROW((void)fit_plane(std::vector<Vec3>{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), Error);
}

TEST(FitLine, RecoversDirection) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(Vec3(1, 2, 3) + i * Vec3(0, 0, 2));
  const auto f = fit_line(pts);
  EXPECT_NEAR(std::abs(f.line.direction.z()), 1.0, 1e-14);
  EXPECT_NEAR(f.max_residual, 0.0, 1e-13);
}
