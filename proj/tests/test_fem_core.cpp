#include "darcy/dof_map.hpp"
#include "darcy/errors.hpp"
#include "darcy/lagrange.hpp"
#include "darcy/quadrature.hpp"
#include "darcy/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

namespace darcy {
namespace {

double integrate(const QuadratureRule &rule, const auto &f) {
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    s += rule.weights()[static_cast<std::size_t>(q)] * f(rule.points()[static_cast<std::size_t>(q)]);
  }
  return s;
}

TEST(Quadrature, LowOrderRules) {
  const QuadratureRule one(1);
  ASSERT_EQ(one.size(), 1);
  EXPECT_EQ(one.points()[0], (Point2{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(one.weights()[0], 4.0);

  const auto two = gauss_legendre(2);
  EXPECT_NEAR(two[0].x, -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(two[1].x, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(two[0].w, 1.0, 1e-15);

  const auto three = gauss_legendre(3);
  EXPECT_NEAR(three[0].x, -std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(three[1].x, 0.0, 1e-15);
  EXPECT_NEAR(three[0].w, 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(three[1].w, 8.0 / 9.0, 1e-15);
}

TEST(Quadrature, WeightsSumToFour) {
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule rule(n);
    double s = 0.0;
    for (double w : rule.weights()) s += w;
    EXPECT_NEAR(s, 4.0, 1e-14) << n;
  }
}

TEST(Quadrature, ExactForRandomPolynomials) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule rule(n);
    const int deg = 2 * n - 1;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::vector<double>> c(static_cast<std::size_t>(deg + 1), std::vector<double>(static_cast<std::size_t>(deg + 1)));
      double exact = 0.0;
      for (int i = 0; i <= deg; ++i) {
        for (int j = 0; j <= deg; ++j) {
          const double a = coef(rng);
          c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
          const double ix = (i % 2 == 0) ? 2.0 / (i + 1) : 0.0;
          const double iy = (j % 2 == 0) ? 2.0 / (j + 1) : 0.0;
          exact += a * ix * iy;
        }
      }
      const double approx = integrate(rule, [&](const Point2 &p) {
        double s = 0.0;
        for (int i = 0; i <= deg; ++i) {
          for (int j = 0; j <= deg; ++j) {
            s += c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * std::pow(p.x, i) * std::pow(p.y, j);
          }
        }
        return s;
      });
      EXPECT_NEAR(approx, exact, 1e-12) << "n=" << n;
    }
  }
}

TEST(Quadrature, NotExactBeyondDegree) {
  const QuadratureRule rule(2);
  const double approx = integrate(rule, [](const Point2 &p) { return std::pow(p.x, 4); });
  EXPECT_GT(std::abs(approx - 0.8), 1e-3);
}

TEST(Quadrature, RejectsOrder) {
  EXPECT_THROW(gauss_rule(0), InvalidArgument);
  EXPECT_THROW(gauss_rule(9), InvalidArgument);
}

TEST(Lagrange, BilinearValues) {
  const ReferenceElement q1(1);
  const auto corner = q1.eval({-1.0, -1.0});
  EXPECT_EQ(corner.values, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  const auto centre = q1.eval({0.0, 0.0});
  for (double v : centre.values) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Lagrange, KroneckerProperty) {
  for (int k = 1; k <= 3; ++k) {
    const ReferenceElement e(k);
    for (int j = 0; j < e.size(); ++j) {
      const auto s = e.eval(e.node(j));
      for (int i = 0; i < e.size(); ++i) {
        EXPECT_NEAR(s.values[static_cast<std::size_t>(i)], i == j ? 1.0 : 0.0, 1e-14);
      }
    }
  }
}

TEST(Lagrange, PartitionOfUnity) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    const ReferenceElement e(k);
    for (int t = 0; t < 20; ++t) {
      const auto s = e.eval({u(rng), u(rng)});
      double sum = 0.0;
      Vec2 g;
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        sum += s.values[i];
        g += s.gradients[i];
      }
      EXPECT_NEAR(sum, 1.0, 1e-14);
      EXPECT_NEAR(g.x, 0.0, 1e-12);
      EXPECT_NEAR(g.y, 0.0, 1e-12);
    }
  }
}

TEST(Lagrange, GradientsMatchFiniteDifferences) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  const double step = 1e-5;
  for (int k = 1; k <= 3; ++k) {
    const ReferenceElement e(k);
    for (int t = 0; t < 20; ++t) {
      const Point2 xi{u(rng), u(rng)};
      const auto s = e.eval(xi);
      const auto xp = e.eval({xi.x + step, xi.y});
      const auto xm = e.eval({xi.x - step, xi.y});
      const auto yp = e.eval({xi.x, xi.y + step});
      const auto ym = e.eval({xi.x, xi.y - step});
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        EXPECT_NEAR(s.gradients[i].x, (xp.values[i] - xm.values[i]) / (2 * step), 1e-8);
        EXPECT_NEAR(s.gradients[i].y, (yp.values[i] - ym.values[i]) / (2 * step), 1e-8);
        EXPECT_NEAR(s.hessians[i][0], (xp.gradients[i].x - xm.gradients[i].x) / (2 * step), 1e-7);
        EXPECT_NEAR(s.hessians[i][1], (yp.gradients[i].x - ym.gradients[i].x) / (2 * step), 1e-7);
        EXPECT_NEAR(s.hessians[i][2], (yp.gradients[i].y - ym.gradients[i].y) / (2 * step), 1e-7);
      }
    }
  }
}

TEST(Lagrange, ReproducesPolynomials) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    const ReferenceElement e(k);
    std::vector<double> c(static_cast<std::size_t>((k + 1) * (k + 1)));
    for (double &v : c) v = u(rng);
    auto poly = [&](const Point2 &p) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= k; ++j) s += c[static_cast<std::size_t>(i * (k + 1) + j)] * std::pow(p.x, i) * std::pow(p.y, j);
      }
      return s;
    };
    for (int t = 0; t < 20; ++t) {
      const Point2 xi{u(rng), u(rng)};
      const auto s = e.eval(xi);
      double v = 0.0;
      for (int i = 0; i < e.size(); ++i) v += s.values[static_cast<std::size_t>(i)] * poly(e.node(i));
      EXPECT_NEAR(v, poly(xi), 1e-11);
    }
  }
}

TEST(Lagrange, RejectsDegree) {
  EXPECT_THROW(ReferenceElement(0), InvalidArgument);
  EXPECT_THROW(ReferenceElement(4), InvalidArgument);
}

TEST(DofMap, Counts) {
  const Mesh m8(2.0, 2.0, 8, 8);
  EXPECT_EQ(DofMap(m8, 1, FieldKind::Scalar).size(), 81);
  const Mesh m4(2.0, 2.0, 4, 4);
  EXPECT_EQ(DofMap(m4, 2, FieldKind::Scalar).size(), 81);
  EXPECT_EQ(DofMap(m4, 3, FieldKind::Vector).size(), 338);
  const Mesh rect(1.0, 2.0, 3, 5);
  EXPECT_EQ(DofMap(rect, 2, FieldKind::Scalar).size(), 7 * 11);
}

TEST(DofMap, SharedNodesAgree) {
  const Mesh mesh(2.0, 1.0, 3, 2);
  for (int k = 1; k <= 3; ++k) {
    for (FieldKind kind : {FieldKind::Scalar, FieldKind::Vector}) {
      const DofMap map(mesh, k, kind);
      const ReferenceElement ref(k);
      std::map<int, Point2> position;
      for (int q = 0; q < mesh.num_quads(); ++q) {
        const auto dofs = map.cell_dofs(q);
        ASSERT_EQ(static_cast<int>(dofs.size()), map.dofs_per_cell());
        for (int a = 0; a < ref.size(); ++a) {
          const Point2 x = reference_to_physical(mesh, q, ref.node(a));
          for (int c = 0; c < map.components(); ++c) {
            const int d = dofs[static_cast<std::size_t>(a * map.components() + c)];
            EXPECT_EQ(map.component_of(d), c);
            const auto [it, inserted] = position.emplace(d, x);
            EXPECT_NEAR(it->second.x, x.x, 1e-14);
            EXPECT_NEAR(it->second.y, x.y, 1e-14);
            EXPECT_NEAR(map.lattice_position(map.lattice_node_of(d)).x, x.x, 1e-14);
          }
        }
      }
      EXPECT_EQ(static_cast<int>(position.size()), map.size());
    }
  }
}

TEST(DofMap, BoundaryClassification) {
  const Mesh mesh(2.0, 2.0, 4, 4);
  const DofMap map(mesh, 2, FieldKind::Scalar);
  int boundary = 0, corners = 0;
  for (int n = 0; n < map.num_lattice_nodes(); ++n) {
    if (map.boundary_sides(n) != 0) ++boundary;
    if (map.is_corner(n)) ++corners;
  }
  EXPECT_EQ(boundary, 32);
  EXPECT_EQ(corners, 4);
}

std::shared_ptr<const Mesh> unit_mesh(int n) { return std::make_shared<const Mesh>(1.0, 1.0, n, n); }

TEST(DiscreteSolution, LinearPotential) {
  const auto mesh = unit_mesh(4);
  const FormulationSpec spec(Method::Cgls, 1, 1);
  const DofMap pot(*mesh, 1, FieldKind::Scalar);
  std::vector<double> p(static_cast<std::size_t>(pot.size()));
  for (int n = 0; n < pot.num_lattice_nodes(); ++n) p[static_cast<std::size_t>(n)] = pot.lattice_position(n).x;
  const DiscreteSolution s(spec, mesh, MediumModel(0.0, 1.0), std::vector<double>(2 * p.size(), 0.0), p);
  const FieldValues f = s.evaluate({0.3, 0.7});
  EXPECT_NEAR(f.p, 0.3, 1e-14);
  EXPECT_NEAR(f.grad_p.x, 1.0, 1e-13);
  EXPECT_NEAR(f.grad_p.y, 0.0, 1e-13);
}

TEST(DiscreteSolution, ZeroCoefficients) {
  const auto mesh = unit_mesh(3);
  const FormulationSpec spec(Method::Cgls, 2, 2);
  const DiscreteSolution s(spec, mesh, MediumModel(0.0, 1.0), std::vector<double>(2 * 49, 0.0),
                           std::vector<double>(49, 0.0));
  const FieldValues f = s.evaluate({0.41, 0.77});
  EXPECT_EQ(f.p, 0.0);
  EXPECT_EQ(f.u, (Vec2{0.0, 0.0}));
  EXPECT_EQ(f.div_u, 0.0);
  EXPECT_EQ(f.rot_u, 0.0);
}

TEST(DiscreteSolution, RotatingVelocity) {
  const auto mesh = unit_mesh(4);
  const FormulationSpec spec(Method::Cgls, 1, 1);
  const DofMap vel(*mesh, 1, FieldKind::Vector);
  std::vector<double> u(static_cast<std::size_t>(vel.size()));
  for (int n = 0; n < vel.num_lattice_nodes(); ++n) {
    const Point2 x = vel.lattice_position(n);
    u[static_cast<std::size_t>(2 * n)] = x.y;
    u[static_cast<std::size_t>(2 * n + 1)] = -x.x;
  }
  const DiscreteSolution s(spec, mesh, MediumModel(0.0, 1.0), u, std::vector<double>(25, 0.0));
  for (const Point2 x : {Point2{0.3, 0.7}, Point2{0.61, 0.12}}) {
    const FieldValues f = s.evaluate(x);
    EXPECT_NEAR(f.div_u, 0.0, 1e-13);
    EXPECT_NEAR(f.rot_u, -2.0, 1e-13);
    EXPECT_NEAR(f.u.x, x.y, 1e-14);
  }
}

TEST(DiscreteSolution, InterpolationReproducesPolynomials) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int k = 1; k <= 3; ++k) {
    const auto mesh = std::make_shared<const Mesh>(2.0, 2.0, 3, 3);
    const DofMap pot(*mesh, k, FieldKind::Scalar);
    std::vector<double> c(static_cast<std::size_t>((k + 1) * (k + 1)));
    for (double &v : c) v = u(rng) - 1.0;
    auto poly = [&](const Point2 &p) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= k; ++j) s += c[static_cast<std::size_t>(i * (k + 1) + j)] * std::pow(p.x, i) * std::pow(p.y, j);
      }
      return s;
    };
    std::vector<double> p(static_cast<std::size_t>(pot.size()));
    for (int n = 0; n < pot.num_lattice_nodes(); ++n) p[static_cast<std::size_t>(n)] = poly(pot.lattice_position(n));
    const DiscreteSolution s(FormulationSpec(Method::Primal, 0, k), mesh, MediumModel(0.0, 1.0), {}, p);
    for (int t = 0; t < 20; ++t) {
      const Point2 x{u(rng), u(rng)};
      EXPECT_NEAR(s.evaluate(x).p, poly(x), 1e-11);
    }
  }
}

} // namespace
} // namespace darcy
