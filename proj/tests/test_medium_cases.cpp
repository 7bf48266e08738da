#include "darcy/cases.hpp"
#include "darcy/elliptic.hpp"
#include "darcy/errors.hpp"
#include "darcy/medium.hpp"
#include "darcy/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace darcy {
namespace {

constexpr double pi = std::numbers::pi;

// Reference values from an independent arbitrary-precision evaluation.
constexpr double kQuarterPeriod = 1.8540746773013719;
struct JacobiSample {
  double u, sn, cn, dn;
};
constexpr JacobiSample kJacobi[] = {
    {0.3, 0.293412733168455377, 0.955985861827787077, 0.978240504174361205},
    {0.7, 0.624340090966217345, 0.781152642453634314, 0.897273495321324938},
    {1.2, 0.887715488619278141, 0.460392453527896417, 0.778447561260691555},
    {2.5, 0.890615188226094356, -0.454757722860204455, 0.776789735546562987},
    {-0.9, -0.750478180389836617, 0.660895226763486203, 0.847579642499381839},
    {5.0, -0.918008184790241311, -0.396561436171151369, 0.760677649421266407},
};

TEST(Medium, Values) {
  const MediumModel m1(1.0, 1.0);
  EXPECT_DOUBLE_EQ(m1.kappa({1.0, 1.0}), 2.0);
  const MediumModel m10(10.0, 1.0);
  EXPECT_DOUBLE_EQ(m10.kappa({1.0, 1.0}), 11.0);
  EXPECT_DOUBLE_EQ(m10.kappa({1.0, 0.5}), 8.5);
  EXPECT_DOUBLE_EQ(m10.kappa_min(), 1.0);
  EXPECT_DOUBLE_EQ(m10.kappa_max(), 11.0);
  EXPECT_DOUBLE_EQ(m10.lambda_min(), 1.0 / 11.0);
  EXPECT_TRUE(MediumModel(0.0, 3.0).is_constant());
}

TEST(Medium, RejectsInvalid) {
  EXPECT_THROW(MediumModel(-1.0, 1.0), InvalidArgument);
  EXPECT_THROW(MediumModel(1.0, 0.0), InvalidArgument);
}

TEST(Medium, SampledInvariants) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const double step = 1e-5;
  for (double k1 : {0.0, 1.0, 10.0}) {
    const MediumModel m(k1, 1.0);
    for (int t = 0; t < 1000; ++t) {
      const Point2 x{u(rng), u(rng)};
      const double k = m.kappa(x);
      EXPECT_NEAR(k * m.lambda(x), 1.0, 1e-14);
      EXPECT_GE(k, m.kappa_min());
      EXPECT_LE(k, m.kappa_max());
      if (t < 50) {
        const Vec2 g = m.grad_lambda(x);
        const double fx = (m.lambda({x.x + step, x.y}) - m.lambda({x.x - step, x.y})) / (2 * step);
        const double fy = (m.lambda({x.x, x.y + step}) - m.lambda({x.x, x.y - step})) / (2 * step);
        EXPECT_NEAR(g.x, fx, 1e-7 * (1.0 + std::abs(fx)));
        EXPECT_NEAR(g.y, fy, 1e-7 * (1.0 + std::abs(fy)));
      }
    }
  }
}

TEST(Elliptic, QuarterPeriod) {
  const JacobiElliptic e(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(e.quarter_period(), kQuarterPeriod, 1e-15);
  EXPECT_NEAR(e.quarter_period(), 1.854075, 5e-7);
  EXPECT_NEAR(pi / (2.0 * agm(1.0, 1.0 / std::sqrt(2.0))), 1.854075, 5e-7);
}

TEST(Elliptic, ReferenceValues) {
  const JacobiElliptic e(1.0 / std::sqrt(2.0));
  for (const auto &s : kJacobi) {
    const auto v = e(s.u);
    EXPECT_NEAR(v.sn, s.sn, 1e-14) << s.u;
    EXPECT_NEAR(v.cn, s.cn, 1e-14) << s.u;
    EXPECT_NEAR(v.dn, s.dn, 1e-14) << s.u;
  }
}

TEST(Elliptic, SpecialPoints) {
  const JacobiElliptic e(1.0 / std::sqrt(2.0));
  const double K = e.quarter_period();
  EXPECT_DOUBLE_EQ(e.cn(0.0), 1.0);
  EXPECT_LE(std::abs(e.cn(K)), 1e-10);
  EXPECT_NEAR(e.cn(K / 2), std::sqrt(std::sqrt(2.0) - 1.0), 1e-14);
  EXPECT_NEAR(e.cn(K / 2), 0.6435942529055826, 1e-14);
}

TEST(Elliptic, IdentitiesAndPeriodicity) {
  const JacobiElliptic e(1.0 / std::sqrt(2.0));
  const double K = e.quarter_period();
  const double m2 = 0.5;
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int t = 0; t < 100; ++t) {
    const double x = u(rng);
    const auto v = e(x);
    EXPECT_NEAR(v.cn * v.cn + v.sn * v.sn, 1.0, 1e-12);
    EXPECT_NEAR(v.dn * v.dn + m2 * v.sn * v.sn, 1.0, 1e-12);
    EXPECT_NEAR(e.cn(-x), v.cn, 1e-13);
    EXPECT_NEAR(e.cn(x + 4 * K), v.cn, 1e-12);
  }
}

TEST(Elliptic, DegenerateModuli) {
  const JacobiElliptic circular(0.0);
  EXPECT_NEAR(circular.quarter_period(), pi / 2, 1e-15);
  EXPECT_NEAR(circular.cn(0.8), std::cos(0.8), 1e-15);
  EXPECT_THROW(JacobiElliptic(1.0), InvalidArgument);
}

TEST(ManufacturedCase, PointValues) {
  const auto homo = make_manufactured(0.0, 1.0);
  EXPECT_NEAR(homo->pressure({0.5, 0.5}), 1.0 / (2 * pi * pi), 1e-16);
  EXPECT_NEAR(homo->source({0.5, 0.5}), 1.0, 1e-15);
  const auto c10 = make_manufactured(10.0, 1.0);
  const Vec2 u = c10->velocity({1.0, 0.5});
  EXPECT_NEAR(u.x, 8.5 / (2 * pi), 1e-14);
  EXPECT_NEAR(u.x, 1.35282, 5e-6);
  EXPECT_NEAR(u.y, 0.0, 1e-15);
}

class ManufacturedConsistency : public ::testing::TestWithParam<double> {};

TEST_P(ManufacturedConsistency, DarcyAndMassBalance) {
  const auto c = make_manufactured(GetParam(), 1.0);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const double step = 1e-5;
  for (int t = 0; t < 200; ++t) {
    const Point2 x{u(rng), u(rng)};
    const Vec2 darcy = -c->medium().kappa(x) * c->pressure_gradient(x);
    const Vec2 v = c->velocity(x);
    EXPECT_NEAR(darcy.x, v.x, 1e-12);
    EXPECT_NEAR(darcy.y, v.y, 1e-12);
    EXPECT_NEAR(c->velocity_divergence(x), c->source(x), 1e-10);

    const Vec2 vxp = c->velocity({x.x + step, x.y}), vxm = c->velocity({x.x - step, x.y});
    const Vec2 vyp = c->velocity({x.x, x.y + step}), vym = c->velocity({x.x, x.y - step});
    const Mat2 g = c->velocity_gradient(x);
    EXPECT_NEAR(g[0][0], (vxp.x - vxm.x) / (2 * step), 1e-7);
    EXPECT_NEAR(g[0][1], (vyp.x - vym.x) / (2 * step), 1e-7);
    EXPECT_NEAR(g[1][0], (vxp.y - vxm.y) / (2 * step), 1e-7);
    EXPECT_NEAR(g[1][1], (vyp.y - vym.y) / (2 * step), 1e-7);
    // Darcy velocity is a gradient field scaled by kappa, so rot(lambda u) = 0.
    EXPECT_NEAR(c->rot_lambda_velocity(x), 0.0, 1e-12);
  }
}

TEST_P(ManufacturedConsistency, Integrals) {
  const auto c = make_manufactured(GetParam(), 1.0);
  const QuadratureRule rule(8);
  double f_total = 0.0, p_total = 0.0;
  const int n = 8;
  const double h = 2.0 / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int q = 0; q < rule.size(); ++q) {
        const Point2 &xi = rule.points()[static_cast<std::size_t>(q)];
        const Point2 x{(i + 0.5 * (xi.x + 1)) * h, (j + 0.5 * (xi.y + 1)) * h};
        const double w = rule.weights()[static_cast<std::size_t>(q)] * h * h / 4;
        f_total += w * c->source(x);
        p_total += w * c->pressure(x);
      }
    }
  }
  EXPECT_NEAR(f_total, 0.0, 1e-10);
  EXPECT_NEAR(p_total, 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Media, ManufacturedConsistency, ::testing::Values(0.0, 1.0, 10.0));

TEST(ManufacturedCase, RejectsInvalid) { EXPECT_THROW(make_manufactured(1.0, -1.0), InvalidArgument); }

TEST(FiveSpotCase, Geometry) {
  const auto c = make_five_spot();
  EXPECT_NEAR(c->side(), kQuarterPeriod, 1e-15);
  EXPECT_NEAR(c->exclusion_radius(), 0.1 * std::sqrt(2.0) * kQuarterPeriod, 1e-15);
  EXPECT_TRUE(c->medium().is_constant());
  EXPECT_DOUBLE_EQ(c->medium().kappa({0.3, 0.4}), 1.0);
}

TEST(FiveSpotCase, ReferenceValues) {
  const auto c = make_five_spot();
  const double L = c->side();
  EXPECT_NEAR(c->pressure({L / 2, L / 2}), 0.0, 1e-15);
  EXPECT_NEAR(c->pressure({0.1 * L, 0.1 * L}), -0.26818899812039990, 1e-14);
  EXPECT_LT(c->pressure({0.1 * L, 0.1 * L}), 0.0);
  EXPECT_NEAR(c->pressure({0.3, 1.1}), -0.037586328565193174, 1e-14);
  const Vec2 g = c->pressure_gradient({0.3, 1.1});
  EXPECT_NEAR(g.x, 0.053000295242942893, 1e-13);
  EXPECT_NEAR(g.y, 0.11804577371280913, 1e-13);
}

TEST(FiveSpotCase, Symmetries) {
  const auto c = make_five_spot();
  const double L = c->side();
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.05 * L, 0.95 * L);
  for (int t = 0; t < 100; ++t) {
    const Point2 x{u(rng), u(rng)};
    EXPECT_NEAR(c->pressure(x), c->pressure({x.y, x.x}), 1e-12);
    EXPECT_NEAR(c->pressure({L - x.x, L - x.y}), -c->pressure(x), 1e-12);
  }
}

TEST(FiveSpotCase, HarmonicWithNoFlowWalls) {
  const auto c = make_five_spot();
  const double L = c->side();
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(0.1 * L, 0.9 * L);
  const double step = 1e-5;
  for (int t = 0; t < 50; ++t) {
    const Point2 x{u(rng), u(rng)};
    EXPECT_NEAR(c->velocity_divergence(x), 0.0, 1e-9);
    EXPECT_NEAR(c->rot_lambda_velocity(x), 0.0, 1e-9);
    const Vec2 up = c->velocity({x.x + step, x.y}), um = c->velocity({x.x - step, x.y});
    EXPECT_NEAR(c->velocity_gradient(x)[0][0], (up.x - um.x) / (2 * step), 1e-6);
    const double s = u(rng);
    EXPECT_NEAR(c->velocity({0.0, s}).x, 0.0, 1e-12);
    EXPECT_NEAR(c->velocity({L, s}).x, 0.0, 1e-10);
    EXPECT_NEAR(c->velocity({s, 0.0}).y, 0.0, 1e-12);
    EXPECT_NEAR(c->velocity({s, L}).y, 0.0, 1e-10);
  }
}

TEST(FiveSpotCase, RegularizedSourceBalances) {
  const auto c = make_five_spot();
  for (int n : {8, 20, 64}) {
    const Mesh mesh(c->side(), c->side(), n, n);
    const auto f = c->discrete_source(mesh);
    const double h = mesh.hx();
    EXPECT_NEAR(f({0.5 * h, 0.5 * h}) * h * h, -0.25, 1e-14);
    EXPECT_NEAR(f({c->side() - 0.5 * h, c->side() - 0.5 * h}) * h * h, 0.25, 1e-14);
    EXPECT_EQ(f({1.5 * h, 0.5 * h}), 0.0);
    EXPECT_EQ(f({c->side() / 2, c->side() / 2}), 0.0);
  }
}

} // namespace
} // namespace darcy
