#include <gtest/gtest.h>

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "oracles.hpp"
#include "pdk/errors.hpp"
#include "pdk/linalg.hpp"
#include "pdk/validation.hpp"

using namespace pdk;

TEST(SymEigExtremes, Examples) {
  const auto id = sym_eig_extremes(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(id.min, 1.0);
  EXPECT_EQ(id.max, 1.0);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto e = sym_eig_extremes(swap);
  EXPECT_NEAR(e.min, -1.0, 1e-15);
  EXPECT_NEAR(e.max, 1.0, 1e-15);
}

TEST(SymEigExtremes, Errors) {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(1, 2) = bad(2, 1) = NAN;
  EXPECT_THROW(sym_eig_extremes(bad), NumericError);
  EXPECT_THROW(sym_eig_extremes(Eigen::MatrixXd::Identity(513, 513)), ArgumentError);
  EXPECT_THROW(jacobi_eigenvalues(Eigen::MatrixXd::Zero(2, 3)), ArgumentError);
}

TEST(SymEigExtremes, MatchesInertiaBisectionOracle) {
  for (unsigned seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const Eigen::MatrixXd a = oracle::random_symmetric(n, seed);
    const auto got = sym_eig_extremes(a);
    const auto [lo, hi] = oracle::eigen_extremes(a);
    EXPECT_NEAR(got.min, lo, 1e-10) << "seed " << seed;
    EXPECT_NEAR(got.max, hi, 1e-10) << "seed " << seed;
  }
}

TEST(SymEigExtremes, RootsOfCharacteristicPolynomial) {
  // Every Jacobi eigenvalue must annihilate det(xI - A) up to the
  // conditioning of the polynomial near that root.
  for (unsigned seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Eigen::MatrixXd a = oracle::random_symmetric(n, 1000 + seed);
    const auto coeffs = oracle::characteristic_polynomial(a);
    const auto eig = jacobi_eigenvalues(a).eigenvalues;
    for (int i = 0; i < n; ++i) {
      oracle::Real deriv = 1;
      for (int j = 0; j < n; ++j) {
        if (j != i) deriv *= oracle::Real(eig[i]) - oracle::Real(eig[j]);
      }
      const oracle::Real p = oracle::polynomial_value(coeffs, oracle::Real(eig[i]));
      EXPECT_LE(static_cast<double>(abs(p)), 1e-11 * (1.0 + static_cast<double>(abs(deriv))))
          << "seed " << seed;
    }
  }
}

TEST(SymEigExtremes, CenteredMatricesAgreeWithOracle) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Eigen::MatrixXd b = double_centered(oracle::random_symmetric(n, 500 + seed));
    EXPECT_LE((b - oracle::centered(oracle::random_symmetric(n, 500 + seed))).cwiseAbs().maxCoeff(), 1e-14);
    const auto got = sym_eig_extremes(b);
    const auto [lo, hi] = oracle::eigen_extremes(b);
    EXPECT_NEAR(got.min, lo, 1e-10);
    EXPECT_NEAR(got.max, hi, 1e-10);
  }
}

TEST(Jacobi, WorksInExtendedPrecision) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  Eigen::Matrix<Real, 3, 3> a;
  a << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const auto r = jacobi_eigenvalues(a, Real("1e-40"));
  const Real root2 = sqrt(Real(2));
  EXPECT_LT(static_cast<double>(abs(r.eigenvalues[0] - (2 - root2))), 1e-35);
  EXPECT_LT(static_cast<double>(abs(r.eigenvalues[2] - (2 + root2))), 1e-35);
}

TEST(Jacobi, DeterministicAndSorted) {
  const Eigen::MatrixXd a = oracle::random_symmetric(40, 3);
  const auto r1 = jacobi_eigenvalues(a);
  const auto r2 = jacobi_eigenvalues(a);
  EXPECT_EQ(r1.eigenvalues, r2.eigenvalues);
  for (Eigen::Index i = 1; i < r1.eigenvalues.size(); ++i) {
    EXPECT_LE(r1.eigenvalues[i - 1], r1.eigenvalues[i]);
  }
  EXPECT_NEAR(r1.eigenvalues.sum(), a.trace(), 1e-12);
}
