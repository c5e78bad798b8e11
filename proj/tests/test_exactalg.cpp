#include "pinch/errors.hpp"
#include "pinch/exactalg.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace pinch;

std::vector<long> to_longs(const IntPoly& p) {
  std::vector<long> out;
  for (const auto& c : p.coeffs()) out.push_back(c.get_si());
  return out;
}

TEST(BuildPolynomial, FamilyEvenDegree) {
  EXPECT_EQ(to_longs(build_polynomial({2, 1, false})), (std::vector<long>{1, 0, 3, 0, 1}));
  EXPECT_EQ(to_longs(build_polynomial({1, 1, false})), (std::vector<long>{1, 3, 1}));
}

TEST(BuildPolynomial, OddFactorMatchesConvolution) {
  const auto expected = oracle::convolve({1, -1}, {1, -3, 1});
  EXPECT_EQ(expected, (std::vector<long>{1, -4, 4, -1}));
  EXPECT_EQ(to_longs(build_polynomial({1, -1, true})), expected);

  const auto k3 = oracle::convolve({1, -1}, {1, 0, 0, -3, 0, 0, 1});
  EXPECT_EQ(to_longs(build_polynomial({3, -1, true})), k3);
}

TEST(BuildPolynomial, RejectsBadSpec) {
  EXPECT_THROW(build_polynomial({0, 1, false}), InvalidArgument);
  EXPECT_THROW(build_polynomial({2, 0, false}), InvalidArgument);
}

TEST(BuildPolynomial, DefaultSignByParity) {
  EXPECT_EQ(PolySpec::for_dimension(2), (PolySpec{1, -1, false}));
  EXPECT_EQ(PolySpec::for_dimension(3), (PolySpec{1, -1, true}));
  EXPECT_EQ(PolySpec::for_dimension(4), (PolySpec{2, 1, false}));
  EXPECT_EQ(PolySpec::for_dimension(7), (PolySpec{3, -1, true}));
  EXPECT_THROW(PolySpec::for_dimension(1), InvalidArgument);
}

TEST(Companion, FrobeniusLayout) {
  const IntMatrix c = companion_matrix(IntPoly{1, -3, 1});
  EXPECT_EQ(c, (IntMatrix{{0, -1}, {1, 3}}));
  EXPECT_THROW(companion_matrix(IntPoly{2, 1}), InvalidArgument);
  EXPECT_THROW(companion_matrix(IntPoly{1}), InvalidArgument);
}

TEST(Companion, DeterminantAndRoundTrip) {
  const IntPoly p{1, 0, 3, 0, 1};
  const IntMatrix c = companion_matrix(p);
  EXPECT_EQ(charpoly_exact(c), p);
  EXPECT_EQ(det_exact(c), 1);

  const IntMatrix odd = companion_matrix(IntPoly{1, -4, 4, -1});
  EXPECT_EQ(det_exact(odd), 1);  // (-1)^3 * c_0 = (-1)(-1)
}

TEST(DetExact, SmallCases) {
  EXPECT_EQ(det_exact(IntMatrix::identity(5)), 1);
  EXPECT_EQ(det_exact(IntMatrix{{2, 0}, {0, 1}}), 2);
  EXPECT_FALSE(is_unimodular(IntMatrix{{2, 0}, {0, 1}}));
  // Needs a row swap in the first column.
  EXPECT_EQ(det_exact(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det_exact(IntMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(DetExact, AgreesWithCofactorExpansion) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<std::vector<long>> rows(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n)));
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        // Sprinkle zeros so pivoting paths are exercised.
        const long v = (trial % 3 == 0 && (i + j) % 3 == 0) ? 0 : entry(rng);
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        m(i, j) = v;
      }
    }
    EXPECT_EQ(det_exact(m), oracle::cofactor_det(rows)) << "trial " << trial;
  }
}

TEST(CharpolyExact, KnownMatrices) {
  EXPECT_EQ(charpoly_exact(IntMatrix::identity(2)), (IntPoly{1, -2, 1}));
  EXPECT_EQ(charpoly_exact(IntMatrix(3)), (IntPoly{1, 0, 0, 0}));
  EXPECT_EQ(charpoly_exact(companion_matrix(IntPoly{1, 3, 1})), (IntPoly{1, 3, 1}));
}

TEST(CharpolyExact, ConstantTermIsSignedDeterminant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 7;
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
    const IntPoly p = charpoly_exact(m);
    const BigInt expected = (n % 2 == 0) ? det_exact(m) : BigInt(-det_exact(m));
    EXPECT_EQ(p.constant(), expected);
    BigInt trace = 0;
    for (int i = 0; i < n; ++i) trace += m(i, i);
    EXPECT_EQ(p.coeffs()[1], -trace);
  }
}

TEST(FamilyProperties, ExactForAllK) {
  for (int k = 1; k <= 16; ++k) {
    for (bool odd : {false, true}) {
      for (int sign : {-1, 1}) {
        const PolySpec spec{k, sign, odd};
        const IntPoly p = build_polynomial(spec);
        ASSERT_TRUE(p.is_monic());
        ASSERT_TRUE(p.constant() == 1 || p.constant() == -1);
        const IntMatrix c = companion_matrix(p);
        EXPECT_EQ(charpoly_exact(c), p) << "k=" << k << " odd=" << odd;
        EXPECT_TRUE(is_unimodular(c));
        if (!odd) {
          const auto& cs = p.coeffs();
          for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs[i], cs[cs.size() - 1 - i]);
        }
      }
    }
  }
}

TEST(InverseUnimodular, ProductIsIdentity) {
  for (int n = 2; n <= 9; ++n) {
    const IntMatrix c = companion_matrix(build_polynomial(PolySpec::for_dimension(n)));
    EXPECT_EQ(c * inverse_unimodular(c), IntMatrix::identity(n));
  }
  EXPECT_THROW(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), InvalidArgument);
}

}  // namespace
