#include "pinch/curvature.hpp"
#include "pinch/errors.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace pinch;

BlockGenerator construction(int n) {
  return assemble_generator(roots_closed_form(PolySpec::for_dimension(n)));
}

TangentVector random_tangent(std::mt19937_64& rng, int n) {
  return TangentVector::from_stacked(oracle::gaussian(rng, n + 1));
}

BlockGenerator random_skew(std::mt19937_64& rng, int pairs) {
  std::uniform_real_distribution<double> phi(0.1, 3.0);
  std::vector<GeneratorBlock> blocks;
  for (int i = 0; i < pairs; ++i) blocks.push_back(GeneratorBlock::rot2(0.0, phi(rng)));
  return BlockGenerator(std::move(blocks));
}

TEST(Bracket, Substitution) {
  const BlockGenerator a = construction(4);
  std::mt19937_64 rng(1);
  TangentVector x = random_tangent(rng, 4), y = random_tangent(rng, 4);
  x.x0 = y.x0 = 0.0;
  EXPECT_LT(bracket(x, y, a).stacked().norm(), 1e-16);

  const TangentVector base{Vec::Zero(4), 1.0};
  TangentVector fiber = random_tangent(rng, 4);
  fiber.x0 = 0.0;
  const TangentVector b = bracket(base, fiber, a);
  EXPECT_LT((b.xp - a.dense() * fiber.xp).norm(), 1e-15);
  EXPECT_EQ(b.x0, 0.0);
}

TEST(Bracket, NormBoundForDiagonalGenerator) {
  std::mt19937_64 rng(2);
  for (int n : {2, 4, 5, 8}) {
    const BlockGenerator a = construction(n).diagonal_part();
    const double lmax = a.lambda_max();
    for (int i = 0; i < 2500; ++i) {
      const auto x = random_tangent(rng, n), y = random_tangent(rng, n);
      EXPECT_LE(bracket(x, y, a).stacked().norm(),
                lmax * x.stacked().norm() * y.stacked().norm() * (1 + 1e-12));
    }
  }
}

TEST(AdStar, ZeroForZeroVector) {
  const BlockGenerator a = construction(4);
  EXPECT_EQ(ad_star({Vec::Zero(4), 0.0}, a).norm(), 0.0);
}

TEST(AdStar, AdjointIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 7;
    const BlockGenerator a = construction(n);
    const auto x = random_tangent(rng, n), y = random_tangent(rng, n), z = random_tangent(rng, n);
    const double lhs = (ad_star(x, a) * y.stacked()).dot(z.stacked());
    const double rhs = y.stacked().dot(bracket(x, z, a).stacked());
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(AdStar, OperatorNormBound) {
  std::mt19937_64 rng(4);
  for (int n : {2, 3, 6}) {
    const BlockGenerator a = construction(n).diagonal_part();
    for (int i = 0; i < 200; ++i) {
      const auto x = random_tangent(rng, n);
      const double op = Eigen::JacobiSVD<Mat>(ad_star(x, a)).singularValues()(0);
      EXPECT_LE(op, a.lambda_max() * x.stacked().norm() + 1e-9);
    }
  }
}

TEST(Numerator, ParallelVectorsGiveZero) {
  std::mt19937_64 rng(5);
  const BlockGenerator a = construction(5);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_tangent(rng, 5);
    TangentVector y{2.5 * x.xp, 2.5 * x.x0};
    EXPECT_NEAR(curvature_numerator(x, x, a), 0.0, 1e-12);
    EXPECT_NEAR(curvature_numerator(x, y, a), 0.0, 1e-11);
  }
}

TEST(Numerator, FlatForSkewGenerator) {
  std::mt19937_64 rng(6);
  const BlockGenerator a = random_skew(rng, 3);
  for (int i = 0; i < 200; ++i) {
    EXPECT_NEAR(curvature_numerator(random_tangent(rng, 6), random_tangent(rng, 6), a), 0.0, 1e-10);
  }
}

TEST(Numerator, TwoDimensionalGroup) {
  for (double lambda : {0.1, 0.5, 0.7, 0.962423650119207}) {
    const BlockGenerator a({GeneratorBlock::scal1(lambda)});
    const TangentVector e1{Vec::Ones(1), 0.0}, e0{Vec::Zero(1), 1.0};
    EXPECT_NEAR(curvature_numerator(e1, e0, a), -lambda * lambda, 1e-15);

    oracle::FiniteDifferenceCurvature fd(oracle::solvgroup_metric(a), 2);
    EXPECT_NEAR(fd.sectional(Vec::Unit(2, 0), Vec::Unit(2, 1)), -lambda * lambda, 1e-9);
  }
}

TEST(Numerator, AgreesWithMetricOracleOnConstructions) {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4, 5}) {
    const BlockGenerator full = construction(n);
    oracle::FiniteDifferenceCurvature fd(oracle::solvgroup_metric(full), n + 1);
    for (int i = 0; i < 20; ++i) {
      const Plane p = Plane::orthonormalized(oracle::gaussian(rng, n + 1), oracle::gaussian(rng, n + 1));
      const double expected = fd.sectional(p.u, p.w);
      EXPECT_NEAR(sectional_curvature(p, full.diagonal_part()), expected, 1e-8);
      EXPECT_NEAR(sectional_curvature(p, full), expected, 1e-8);
    }
  }
}

TEST(Model, MatchesReferenceFormula) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 9;
    std::vector<GeneratorBlock> blocks;
    std::normal_distribution<double> g;
    int size = 0;
    while (size < n) {
      if (n - size >= 2 && trial % 2 == 0) {
        blocks.push_back(GeneratorBlock::rot2(g(rng), g(rng)));
        size += 2;
      } else {
        blocks.push_back(GeneratorBlock::scal1(g(rng)));
        size += 1;
      }
    }
    const BlockGenerator a(blocks);
    const CurvatureModel model(a);
    const Vec x = oracle::gaussian(rng, n + 1), y = oracle::gaussian(rng, n + 1);
    const double ref = curvature_numerator(TangentVector::from_stacked(x), TangentVector::from_stacked(y), a);
    EXPECT_NEAR(model.numerator(x.data(), y.data()), ref, 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Sectional, OracleAndRebasing) {
  const BlockGenerator a({GeneratorBlock::scal1(0.7)});
  const Plane p{Vec::Unit(2, 0), Vec::Unit(2, 1)};
  EXPECT_NEAR(sectional_curvature(p, a), -0.49, 1e-10);

  std::mt19937_64 rng(9);
  const BlockGenerator b = construction(6);
  std::uniform_real_distribution<double> angle(0.0, 6.3);
  for (int i = 0; i < 100; ++i) {
    const Plane q = Plane::orthonormalized(oracle::gaussian(rng, 7), oracle::gaussian(rng, 7));
    const double th = angle(rng);
    const Plane r{std::cos(th) * q.u + std::sin(th) * q.w, -std::sin(th) * q.u + std::cos(th) * q.w};
    EXPECT_NEAR(sectional_curvature(q, b), sectional_curvature(r, b), 1e-10);
  }
}

TEST(Sectional, FlatSkewPlanes) {
  std::mt19937_64 rng(10);
  const BlockGenerator a = random_skew(rng, 2);
  for (int i = 0; i < 1000; ++i) {
    const Plane p = Plane::orthonormalized(oracle::gaussian(rng, 5), oracle::gaussian(rng, 5));
    EXPECT_NEAR(sectional_curvature(p, a), 0.0, 1e-10);
  }
}

TEST(Sectional, RejectsNonOrthonormal) {
  const BlockGenerator a = construction(2);
  const Plane bad{Vec::Unit(3, 0) * 2.0, Vec::Unit(3, 1)};
  EXPECT_THROW(sectional_curvature(bad, a), InvalidArgument);
  EXPECT_THROW(Plane::orthonormalized(Vec::Unit(3, 0), Vec::Unit(3, 0) * 3.0), InvalidArgument);
}

TEST(Sectional, IsometricGroupsShareCurvature) {
  std::mt19937_64 rng(12);
  for (int n : {4, 6, 7}) {
    const BlockGenerator full = construction(n);
    const BlockGenerator diag = full.diagonal_part();
    for (int i = 0; i < 200; ++i) {
      const Plane p = Plane::orthonormalized(oracle::gaussian(rng, n + 1), oracle::gaussian(rng, n + 1));
      EXPECT_NEAR(sectional_curvature(p, full), sectional_curvature(p, diag), 1e-12);
    }
  }
}

TEST(AnalyticBound, Values) {
  EXPECT_EQ(analytic_bound(0.0), 0.0);
  EXPECT_NEAR(analytic_bound(roots_closed_form(PolySpec::for_dimension(4))), 0.636803256587284579, 1e-14);
  EXPECT_NEAR(analytic_bound(roots_closed_form(PolySpec::for_dimension(2))), 2.547213026349138317, 1e-14);
}

TEST(Maximizer, TwoDimensionalGroup) {
  const BlockGenerator a({GeneratorBlock::scal1(0.7)});
  const CurvatureReport r = max_abs_curvature(a, 16, 1);
  EXPECT_NEAR(r.max_abs, 0.49, 1e-8);
  EXPECT_NEAR(r.value_at_max, -0.49, 1e-8);
  EXPECT_NEAR(r.analytic_bound, 2.75 * 0.49, 1e-15);
  EXPECT_EQ(r.samples_used, 16);
  EXPECT_EQ(r.coordinate_seeds, 1);
}

TEST(Maximizer, FlatSkewGenerator) {
  std::mt19937_64 rng(13);
  const CurvatureReport r = max_abs_curvature(random_skew(rng, 3), 256, 5);
  EXPECT_LT(r.max_abs, 1e-9);
}

TEST(Maximizer, RespectsAnalyticBound) {
  for (int n : {2, 3, 4, 5}) {
    const BlockGenerator a = construction(n).diagonal_part();
    const CurvatureReport r = max_abs_curvature(a, 512, 42);
    EXPECT_LE(r.max_abs, r.analytic_bound * (1 + 1e-6));
    // The coordinate plane (e_0, e_i) with the largest |lambda_i| already
    // reaches lambda_max^2.
    EXPECT_GE(r.max_abs, a.lambda_max() * a.lambda_max() * (1 - 1e-12));
    EXPECT_NEAR(std::abs(sectional_curvature(r.argmax_plane, a)), r.max_abs, 1e-10);
  }
}

TEST(Maximizer, DeterministicAndBudgetChecked) {
  const BlockGenerator a = construction(4).diagonal_part();
  const auto r1 = max_abs_curvature(a, 200, 77);
  const auto r2 = max_abs_curvature(a, 200, 77);
  EXPECT_EQ(r1.max_abs, r2.max_abs);
  EXPECT_EQ(r1.argmax_plane.u, r2.argmax_plane.u);
  EXPECT_THROW(max_abs_curvature(a, 9, 1), InvalidArgument);  // 10 coordinate planes
}

}  // namespace
