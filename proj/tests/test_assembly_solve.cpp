#include "darcy/assembly.hpp"
#include "darcy/errors.hpp"
#include "darcy/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

namespace darcy {
namespace {

const NormalFlux kNoFlow = [](const Point2 &, const Vec2 &) { return 0.0; };
const ScalarField kNoSource = [](const Point2 &) { return 0.0; };

std::shared_ptr<const Mesh> square(int n, double side = 2.0) { return std::make_shared<const Mesh>(side, side, n, n); }

LinearSystem assemble_case(const FormulationSpec &spec, const ExactSolution &exact, int n,
                           const AssemblyOptions &options = {}) {
  const auto mesh = square(n, exact.lx());
  return assemble(spec, mesh, exact.medium(), exact.discrete_source(*mesh), exact.boundary_flux(), options);
}

TEST(Assembly, SingleCellDimension) {
  const LinearSystem s =
      assemble(FormulationSpec(Method::Cgls, 1, 1), square(1), MediumModel(0.0, 1.0), kNoSource, kNoFlow);
  EXPECT_EQ(s.velocity_dofs->size(), 8);
  EXPECT_EQ(s.num_free_velocity, 0);
  EXPECT_EQ(s.num_potential_unknowns, 4);
  EXPECT_EQ(s.multiplier, 4);
  EXPECT_EQ(s.size(), 5);
}

TEST(Assembly, PrimalDimension) {
  const LinearSystem s =
      assemble(FormulationSpec(Method::Primal, 0, 1), square(8), MediumModel(0.0, 1.0), kNoSource, kNoFlow);
  EXPECT_FALSE(s.velocity_dofs.has_value());
  EXPECT_EQ(s.size(), 82);
}

TEST(Assembly, BiquadraticDimension) {
  const LinearSystem s =
      assemble(FormulationSpec(Method::Cgls, 2, 2), square(4), MediumModel(0.0, 1.0), kNoSource, kNoFlow);
  EXPECT_EQ(s.velocity_dofs->size(), 162);
  EXPECT_EQ(s.num_free_velocity, 162 - 36);
  EXPECT_EQ(s.potential_dofs.size(), 81);
  EXPECT_EQ(s.size(), 208);
}

TEST(Assembly, PinnedGaugeDimension) {
  AssemblyOptions pin;
  pin.gauge = PotentialGauge::PinFirstNode;
  const LinearSystem s =
      assemble(FormulationSpec(Method::Cgls, 1, 1), square(4), MediumModel(0.0, 1.0), kNoSource, kNoFlow, pin);
  EXPECT_EQ(s.multiplier, -1);
  EXPECT_EQ(s.size(), s.num_free_velocity + 24);
}

TEST(Assembly, CornerFluxIsIllPosed) {
  const NormalFlux uniform = [](const Point2 &, const Vec2 &) { return 1.0; };
  EXPECT_THROW(assemble(FormulationSpec(Method::Cgls, 1, 1), square(2), MediumModel(0.0, 1.0), kNoSource, uniform),
               IllPosedBoundary);
  const NormalFlux tiny = [](const Point2 &, const Vec2 &) { return 1e-13; };
  EXPECT_NO_THROW(assemble(FormulationSpec(Method::Cgls, 1, 1), square(2), MediumModel(0.0, 1.0), kNoSource, tiny));
  EXPECT_NO_THROW(
      assemble(FormulationSpec(Method::Primal, 0, 1), square(2), MediumModel(0.0, 1.0), kNoSource, uniform));
}

TEST(Assembly, NullMesh) {
  EXPECT_THROW(assemble(FormulationSpec(Method::Cgls, 1, 1), nullptr, MediumModel(0.0, 1.0), kNoSource, kNoFlow),
               InvalidArgument);
}

TEST(Assembly, CsrRowsSorted) {
  const auto exact = make_manufactured(1.0, 1.0);
  const LinearSystem s = assemble_case(FormulationSpec(Method::Hvm, 2, 2), *exact, 3);
  const CsrMatrix &m = s.matrix;
  ASSERT_EQ(static_cast<int>(m.row_ptr.size()), m.rows + 1);
  for (int r = 0; r < m.rows; ++r) {
    for (int k = m.row_ptr[static_cast<std::size_t>(r)] + 1; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      EXPECT_LT(m.col[static_cast<std::size_t>(k) - 1], m.col[static_cast<std::size_t>(k)]);
    }
  }
  EXPECT_EQ(m.find(0, m.rows + 5), -1);
  EXPECT_EQ(m.at(0, m.rows + 5), 0.0);
}

class GlobalSymmetry : public ::testing::TestWithParam<Method> {};

TEST_P(GlobalSymmetry, MatchesFlag) {
  const Method m = GetParam();
  const auto exact = make_manufactured(10.0, 1.0);
  for (int k = 1; k <= 2; ++k) {
    const FormulationSpec spec = m == Method::Primal       ? FormulationSpec(m, 0, k)
                                 : m == Method::StokesComp ? FormulationSpec(m, k + 1, k)
                                                           : FormulationSpec(m, k, k);
    const LinearSystem s = assemble_case(spec, *exact, 4);
    if (spec.symmetric()) {
      EXPECT_LT(s.matrix.asymmetry(), 1e-12) << method_name(m);
    } else {
      EXPECT_GT(s.matrix.asymmetry(), 1e-3) << method_name(m);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllMethods, GlobalSymmetry,
                         ::testing::Values(Method::Primal, Method::Cgls, Method::GlsHdiv, Method::Mgls, Method::Hvm,
                                           Method::Shvm, Method::Dgls, Method::StokesComp));

TEST(Assembly, ConstraintRowHoldsBasisIntegrals) {
  const auto exact = make_manufactured(0.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    const LinearSystem s = assemble_case(FormulationSpec(Method::Cgls, k, k), *exact, 3);
    double total = 0.0;
    for (int d = 0; d < s.potential_dofs.size(); ++d) {
      const int r = s.potential_unknown(d);
      const double w = s.potential_weights[static_cast<std::size_t>(d)];
      total += w;
      EXPECT_DOUBLE_EQ(s.matrix.at(s.multiplier, r), w);
      EXPECT_DOUBLE_EQ(s.matrix.at(r, s.multiplier), w);
    }
    EXPECT_NEAR(total, 4.0, 1e-13);
    EXPECT_EQ(s.matrix.at(s.multiplier, s.multiplier), 0.0);
    EXPECT_EQ(s.rhs[static_cast<std::size_t>(s.multiplier)], 0.0);
  }
}

TEST(Assembly, HvmRowsAreNegatedShvmRows) {
  const auto exact = make_manufactured(10.0, 1.0);
  for (int k = 1; k <= 2; ++k) {
    const LinearSystem hvm = assemble_case(FormulationSpec(Method::Hvm, k, k), *exact, 4);
    const LinearSystem shvm = assemble_case(FormulationSpec(Method::Shvm, k, k), *exact, 4);
    ASSERT_EQ(hvm.size(), shvm.size());
    const double scale = shvm.matrix.max_abs();
    double worst = 0.0;
    for (int r = 0; r < hvm.size(); ++r) {
      const bool potential_row = r >= hvm.potential_offset && r < hvm.multiplier;
      const double sign = potential_row ? -1.0 : 1.0;
      for (int c = 0; c < hvm.size(); ++c) {
        if (c == hvm.multiplier || r == hvm.multiplier) continue;
        worst = std::max(worst, std::abs(hvm.matrix.at(r, c) - sign * shvm.matrix.at(r, c)));
      }
      worst = std::max(worst, std::abs(hvm.rhs[static_cast<std::size_t>(r)] - sign * shvm.rhs[static_cast<std::size_t>(r)]));
    }
    EXPECT_LT(worst / scale, 1e-12);
  }
}

TEST(Solver, Identity) {
  CsrMatrix eye;
  eye.rows = eye.cols = 3;
  eye.row_ptr = {0, 1, 2, 3};
  eye.col = {0, 1, 2};
  eye.val = {1.0, 1.0, 1.0};
  const std::vector<double> b{1.0, 0.0, 0.0};
  for (bool sym : {true, false}) {
    const auto x = solve_linear(eye, b, sym);
    EXPECT_EQ(x, b);
  }
}

TEST(Solver, SingularMatrixThrows) {
  CsrMatrix zero;
  zero.rows = zero.cols = 2;
  zero.row_ptr = {0, 1, 2};
  zero.col = {0, 1};
  zero.val = {0.0, 0.0};
  const std::vector<double> b{1.0, 1.0};
  EXPECT_THROW((void)solve_linear(zero, b, true), SingularSystem);
  EXPECT_THROW((void)solve_linear(zero, b, false), SingularSystem);
}

TEST(Solver, DimensionMismatch) {
  CsrMatrix eye;
  eye.rows = eye.cols = 1;
  eye.row_ptr = {0, 1};
  eye.col = {0};
  eye.val = {1.0};
  const std::vector<double> b{1.0, 2.0};
  EXPECT_THROW((void)solve_linear(eye, b, true), InvalidArgument);
}

TEST(Solver, ManufacturedSolveMeetsTolerances) {
  const auto exact = make_manufactured(0.0, 1.0);
  const LinearSystem s = assemble_case(FormulationSpec(Method::Cgls, 1, 1), *exact, 8);
  const DiscreteSolution sol = solve(s);
  EXPECT_LE(sol.stats().relative_residual, 1e-10);
  EXPECT_LE(std::abs(sol.stats().potential_mean), 1e-9);
  EXPECT_LE(std::abs(sol.potential_integral()), 1e-9);
  const auto x = to_unknowns(s, sol);
  const auto ax = s.matrix.multiply(x);
  double r2 = 0.0, b2 = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    if (i == s.multiplier) continue;
    const double d = ax[static_cast<std::size_t>(i)] - s.rhs[static_cast<std::size_t>(i)];
    r2 += d * d;
    b2 += s.rhs[static_cast<std::size_t>(i)] * s.rhs[static_cast<std::size_t>(i)];
  }
  // The multiplier itself is discarded, so only a loose check is possible here.
  EXPECT_LT(std::sqrt(r2 / b2), 1e-6);
}

TEST(Solver, HvmMatchesShvm) {
  for (double k1 : {0.0, 10.0}) {
    const auto exact = make_manufactured(k1, 1.0);
    for (int n : {4, 8, 16}) {
      const DiscreteSolution hvm = solve(assemble_case(FormulationSpec(Method::Hvm, 1, 1), *exact, n));
      const DiscreteSolution shvm = solve(assemble_case(FormulationSpec(Method::Shvm, 1, 1), *exact, n));
      for (std::size_t i = 0; i < hvm.velocity().size(); ++i) {
        ASSERT_NEAR(hvm.velocity()[i], shvm.velocity()[i], 1e-9);
      }
      for (std::size_t i = 0; i < hvm.potential().size(); ++i) {
        ASSERT_NEAR(hvm.potential()[i], shvm.potential()[i], 1e-9);
      }
    }
  }
}

TEST(Solver, BoundaryNormalsReproduced) {
  const auto exact = make_manufactured(1.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    const LinearSystem s = assemble_case(FormulationSpec(Method::Cgls, k, k), *exact, 4);
    const DiscreteSolution sol = solve(s);
    const DofMap &vel = *sol.velocity_dofs();
    for (int n = 0; n < vel.num_lattice_nodes(); ++n) {
      const auto sides = vel.boundary_sides(n);
      if (sides == 0) continue;
      const Point2 x = vel.lattice_position(n);
      const Vec2 u = exact->velocity(x);
      for (int side = 0; side < 4; ++side) {
        if ((sides & side_bit(static_cast<BoundarySide>(side))) == 0) continue;
        const Vec2 nrm = outward_normal(static_cast<BoundarySide>(side));
        const Vec2 uh{sol.velocity()[static_cast<std::size_t>(2 * n)], sol.velocity()[static_cast<std::size_t>(2 * n + 1)]};
        EXPECT_EQ(dot(uh, nrm), dot(u, nrm));
      }
    }
  }
}

TEST(Solver, PinnedGaugeAgreesWithMultiplier) {
  AssemblyOptions pin;
  pin.gauge = PotentialGauge::PinFirstNode;
  for (Method m : {Method::Cgls, Method::Hvm, Method::Primal}) {
    const auto exact = make_manufactured(10.0, 1.0);
    const FormulationSpec spec = m == Method::Primal ? FormulationSpec(m, 0, 2) : FormulationSpec(m, 2, 2);
    const DiscreteSolution a = solve(assemble_case(spec, *exact, 6));
    const DiscreteSolution b = solve(assemble_case(spec, *exact, 6, pin));
    for (std::size_t i = 0; i < a.potential().size(); ++i) {
      EXPECT_NEAR(a.potential()[i], b.potential()[i], 1e-8);
    }
  }
}

TEST(Solver, MinresAgreesWithDirect) {
  const auto exact = make_manufactured(1.0, 1.0);
  const LinearSystem s = assemble_case(FormulationSpec(Method::Cgls, 1, 1), *exact, 8);
  SolveOptions iterative;
  iterative.kind = SolverKind::Minres;
  const DiscreteSolution a = solve(s);
  const DiscreteSolution b = solve(s, iterative);
  EXPECT_EQ(b.stats().backend, "minres");
  EXPECT_GT(b.stats().iterations, 0);
  for (std::size_t i = 0; i < a.potential().size(); ++i) EXPECT_NEAR(a.potential()[i], b.potential()[i], 1e-7);
  const LinearSystem nonsym = assemble_case(FormulationSpec(Method::Hvm, 1, 1), *exact, 4);
  EXPECT_THROW(solve(nonsym, iterative), InvalidArgument);
}

TEST(Solver, ReportsBackend) {
  const auto exact = make_manufactured(0.0, 1.0);
  EXPECT_EQ(solve(assemble_case(FormulationSpec(Method::Cgls, 1, 1), *exact, 4)).stats().backend, "sparse-ldlt");
  EXPECT_NE(solve(assemble_case(FormulationSpec(Method::Dgls, 1, 1), *exact, 4)).stats().backend, "sparse-ldlt");
}

TEST(Solver, InterpolantRoundTrip) {
  const auto exact = make_manufactured(0.0, 1.0);
  const auto mesh = square(4);
  const FormulationSpec spec(Method::Cgls, 2, 2);
  const DiscreteSolution interp = interpolate(spec, mesh, *exact);
  const Point2 node{0.5, 1.0};
  EXPECT_NEAR(interp.evaluate(node).p, exact->pressure(node), 1e-15);
  EXPECT_NEAR(interp.evaluate(node).u.x, exact->velocity(node).x, 1e-15);
}

TEST(WriteSystem, CoordinateFormat) {
  const LinearSystem s =
      assemble(FormulationSpec(Method::Cgls, 1, 1), square(2), MediumModel(0.0, 1.0), kNoSource, kNoFlow);
  std::ostringstream mat, rhs;
  write_system(mat, rhs, s);
  std::istringstream in(mat.str());
  int r = 0, c = 0, lines = 0;
  double v = 0.0;
  while (in >> r >> c >> v) {
    EXPECT_DOUBLE_EQ(v, s.matrix.at(r, c));
    ++lines;
  }
  EXPECT_EQ(lines, s.matrix.nnz());
  std::istringstream rin(rhs.str());
  int values = 0;
  while (rin >> v) ++values;
  EXPECT_EQ(values, s.size());
}

} // namespace
} // namespace darcy
