#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "pdk/cnd.hpp"
#include "pdk/errors.hpp"
#include "pdk/models.hpp"

using namespace pdk;
using std::numbers::pi;

namespace {

const BernsteinFunction kOneMinusExp(0.0, 0.0, DiscreteMeasure({{1.0, 1.0}}));

double eval2(const CNDFunction& phi, double t, double u) {
  const double d[] = {t, u};
  return phi(d);
}

std::vector<ProductPoint> line_points(std::initializer_list<double> xs) {
  std::vector<ProductPoint> pts;
  for (double x : xs) pts.push_back({Eigen::VectorXd::Constant(1, x)});
  return pts;
}

// Max eigenvalue of P A P from the oracle, with A assembled independently.
double oracle_projected_max(const CNDFunction& phi, const ProductSpace& spaces,
                            const std::vector<ProductPoint>& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) a(j, k) = phi(component_distances(spaces, pts[j], pts[k]));
  return oracle::eigen_extremes(oracle::centered(a)).second;
}

}  // namespace

TEST(Atoms, ParameterRanges) {
  EXPECT_THROW(power(0.0), ParameterError);
  EXPECT_THROW(power(2.5), ParameterError);
  EXPECT_NO_THROW(power(2.0));
  EXPECT_THROW(minus_cos(0.5), ParameterError);
  EXPECT_THROW(constant(-1.0), ParameterError);
  EXPECT_THROW(shift(-0.1, linear()), ParameterError);
}

TEST(Atoms, ValuesAndFlags) {
  EXPECT_DOUBLE_EQ(power(1.5)(4.0), 8.0);
  EXPECT_DOUBLE_EQ(minus_cos(3.0)(pi), 4.0);
  EXPECT_DOUBLE_EQ(sine()(pi / 2), 1.0);
  EXPECT_DOUBLE_EQ(constant(2.0)(7.0), 2.0);
  EXPECT_DOUBLE_EQ(shift(1.0, linear())(2.0), 3.0);

  EXPECT_TRUE(minus_cos(3.0).flags().positive_valued);
  EXPECT_FALSE(minus_cos(1.0).flags().positive_valued);
  EXPECT_TRUE(linear().flags().strict_at_zero);
  EXPECT_FALSE(constant(2.0).flags().strict_at_zero);
  EXPECT_TRUE(constant(2.0).flags().positive_valued);
  EXPECT_TRUE(shift(1.0, sine()).flags().positive_valued);
  EXPECT_TRUE(shift(1.0, sine()).flags().strict_at_zero);
  for (const auto& phi : {power(1.0), linear(), sine(), constant(0.0), minus_cos(1.0)}) {
    EXPECT_TRUE(!phi.flags().positive_valued || phi.flags().nonnegative_valued);
  }
}

TEST(Atoms, DomainChecksOnSpaces) {
  const ProductSpace sphere{SphereGeodesic{2}}, line{Euclidean{1}}, wide{Interval{2.0}},
      narrow{Interval{pi / 2}}, circle{Circle{}};
  EXPECT_NO_THROW(minus_cos().check_domain(sphere));
  EXPECT_NO_THROW(minus_cos().check_domain(circle));
  EXPECT_THROW(minus_cos().check_domain(line), ConstructionError);
  EXPECT_NO_THROW(sine().check_domain(narrow));
  EXPECT_THROW(sine().check_domain(wide), ConstructionError);
  EXPECT_THROW(power(1.5).check_domain(sphere), ConstructionError);
  EXPECT_NO_THROW(power(1.0).check_domain(sphere));
  EXPECT_NO_THROW(power(2.0).check_domain(line));
  EXPECT_THROW(linear().check_domain(ProductSpace{Euclidean{1}, Euclidean{1}}), ConstructionError);
}

TEST(BernsteinCompose, IdentityReproducesSumBitwise) {
  const auto phi = bernstein_compose(BernsteinFunction::identity(), power(2.0), linear());
  EXPECT_EQ(phi.arity(), 2u);
  for (double t = 0.0; t < 3.0; t += 0.37)
    for (double u = 0.0; u < 3.0; u += 0.41) EXPECT_EQ(eval2(phi, t, u), t * t + u);
}

TEST(BernsteinCompose, ZeroInnerFunctionsGiveZero) {
  const auto phi = bernstein_compose(kOneMinusExp, constant(0.0), constant(0.0));
  for (double t : {0.0, 1.0, 2.0}) EXPECT_EQ(eval2(phi, t, 2 * t), 0.0);
  EXPECT_FALSE(phi.flags().strict_at_zero);
}

TEST(BernsteinCompose, FlagPropagation) {
  EXPECT_TRUE(bernstein_compose(kOneMinusExp, linear(), linear()).flags().strict_at_zero);
  EXPECT_FALSE(bernstein_compose(BernsteinFunction(1.0, 0.0), linear(), linear()).flags().strict_at_zero);
  EXPECT_FALSE(bernstein_compose(kOneMinusExp, linear(), constant(1.0)).flags().strict_at_zero);
  EXPECT_TRUE(bernstein_compose(kOneMinusExp, linear(), constant(1.0)).flags().positive_valued);
  EXPECT_TRUE(bernstein_compose(BernsteinFunction(1.0, 0.0), linear(), linear()).flags().positive_valued);
}

TEST(BernsteinCompose, OneMinusExpIsCndOnSpheres) {
  const auto phi = bernstein_compose(kOneMinusExp, linear(), linear());
  const ProductSpace spaces{SphereGeodesic{2}, SphereGeodesic{2}};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pts = sample_distinct(spaces, 20, seed);
    const auto v = check_cnd_empirical(phi, spaces, pts, 1e-9, seed);
    EXPECT_TRUE(v.pass);
    EXPECT_NEAR(v.max_eig, oracle_projected_max(phi, spaces, pts), 1e-12);
    EXPECT_EQ(v.n, 20u);
    EXPECT_EQ(v.seed, seed);
  }
}

TEST(EuclideanCross, OriginAndReduction) {
  const auto h = shift(1.0, sine());
  const BernsteinFunction f(0.5, 1.0);
  const auto phi = euclidean_cross(f, h, 1);
  EXPECT_NEAR(phi.at_origin(), 1.0 * (1 - std::exp(-0.5)), 1e-15);
  EXPECT_GE(phi.at_origin(), 0.0);

  const auto gauss = euclidean_cross(BernsteinFunction::identity(), constant(1.0), 2);
  for (double t : {0.0, 0.5, 1.0, 2.5}) EXPECT_NEAR(eval2(gauss, t, 0.7), 1 - std::exp(-t * t), 1e-15);
}

TEST(EuclideanCross, ConstructionErrors) {
  EXPECT_THROW(euclidean_cross(BernsteinFunction::identity(), sine(), 1), ConstructionError);
  EXPECT_THROW(euclidean_cross(BernsteinFunction(0.0, 0.0), constant(1.0), 1), ConstructionError);
  EXPECT_THROW(euclidean_cross(BernsteinFunction::identity(), constant(1.0), 0), ParameterError);
  const auto phi = euclidean_cross(BernsteinFunction::identity(), constant(1.0), 2);
  EXPECT_THROW(phi.check_domain(ProductSpace{Euclidean{1}, Interval{1.0}}), ConstructionError);
  EXPECT_NO_THROW(phi.check_domain(ProductSpace{Euclidean{2}, Interval{1.0}}));
}

TEST(EuclideanCross, CndOnRTimesInterval) {
  const auto phi = euclidean_cross(BernsteinFunction(0.5, 1.0), shift(1.0, sine()), 1);
  const ProductSpace spaces{Euclidean{1}, Interval{pi / 2}};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pts = sample_distinct(spaces, 20, seed);
    const auto v = check_cnd_empirical(phi, spaces, pts, 1e-9);
    EXPECT_TRUE(v.pass);
    EXPECT_NEAR(v.max_eig, oracle_projected_max(phi, spaces, pts), 1e-12);
  }
}

TEST(BoundedComplement, VanishesAtOriginWhenBoundIsPeak) {
  const TwoSpaceGneiting model{StieltjesFunction(1.0, 0.0, 0.0, DiscreteMeasure({{1.0, 1.0}})), linear(),
                               shift(1.0, linear()), 1.0};
  const double zeros[] = {0.0, 0.0};
  const double peak = eval_Fr(model, zeros);
  EXPECT_DOUBLE_EQ(peak, 1.0);
  const auto phi = bounded_complement(peak, model);
  EXPECT_EQ(phi.at_origin(), 0.0);
  for (double t = 0.0; t <= pi; t += 0.3)
    for (double u = 0.0; u < 5.0; u += 0.4) EXPECT_GE(eval2(phi, t, u), 0.0);
  EXPECT_THROW(bounded_complement(0.99, model), PreconditionError);
}

TEST(BoundedComplement, ConstantModelGivesZero) {
  const TwoSpaceGneiting model{StieltjesFunction(1.0, 2.0, 0.0), linear(), constant(1.0), 1.0};
  const auto phi = bounded_complement(2.0, model);
  for (double t : {0.0, 0.5, 3.0}) EXPECT_EQ(eval2(phi, t, t), 0.0);
}

TEST(BoundedComplement, RejectsUnboundedGenerator) {
  const TwoSpaceGneiting model{StieltjesFunction(1.0, 0.0, 1.0), minus_cos(3.0), constant(1.0), 1.0};
  EXPECT_THROW(bounded_complement(10.0, model), ConstructionError);
}

TEST(BoundedComplement, CndOnSphereTimesLine) {
  const TwoSpaceGneiting model{StieltjesFunction(1.0, 0.0, 0.0, DiscreteMeasure({{1.0, 1.0}})), linear(),
                               shift(1.0, linear()), 1.0};
  const auto phi = bounded_complement(1.0, model);
  const ProductSpace spaces{SphereGeodesic{2}, Euclidean{1}};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pts = sample_distinct(spaces, 20, seed);
    EXPECT_TRUE(check_cnd_empirical(phi, spaces, pts, 1e-9).pass);
  }
}

TEST(CheckCndEmpirical, ConstantGivesZero) {
  const ProductSpace spaces{Euclidean{1}};
  const auto v = check_cnd_empirical(constant(3.0), spaces, line_points({0.0, 1.0, 2.5, 4.0}), 1e-9);
  EXPECT_NEAR(v.max_eig, 0.0, 1e-14);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.scale, 3.0);
}

TEST(CheckCndEmpirical, CollinearPoints) {
  // A = [[0,1,2],[1,0,1],[2,1,0]]; every eigenvalue of P A P is <= 0.
  const ProductSpace spaces{Euclidean{1}};
  const auto pts = line_points({0.0, 1.0, 2.0});
  const auto v = check_cnd_empirical(linear(), spaces, pts, 1e-12);
  Eigen::MatrixXd a(3, 3);
  a << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  const double expected = oracle::eigen_extremes(oracle::centered(a)).second;
  EXPECT_NEAR(v.max_eig, expected, 1e-14);
  EXPECT_LE(v.max_eig, 1e-14);
  EXPECT_TRUE(v.pass);
}

TEST(CheckCndEmpirical, SquaredDistanceOnLine) {
  const ProductSpace spaces{Euclidean{1, 5.0}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pts = sample_distinct(spaces, 10, seed);
    const auto v = check_cnd_empirical(power(2.0), spaces, pts, 1e-9);
    EXPECT_TRUE(v.pass);
    EXPECT_NEAR(v.max_eig, oracle_projected_max(power(2.0), spaces, pts), 1e-10 * v.scale);
  }
}

TEST(CheckCndEmpirical, DetectsNonCndFunction) {
  // Squared arc length on the circle is not CND: four equally spaced points
  // give a positive projected eigenvalue.
  const ProductSpace spaces{Circle{}};
  std::vector<ProductPoint> pts;
  for (int k = 0; k < 4; ++k) pts.push_back({k * pi / 2});
  const auto v = check_cnd_empirical(power(2.0), spaces, pts, 1e-9);
  EXPECT_FALSE(v.pass);
  EXPECT_GT(v.max_eig, 0.1);
}

TEST(CheckCndEmpirical, Preconditions) {
  const ProductSpace spaces{Euclidean{1}};
  EXPECT_THROW(check_cnd_empirical(linear(), spaces, line_points({0.0}), 1e-9), ArgumentError);
  const ProductSpace two{Euclidean{1}, Euclidean{1}};
  EXPECT_THROW(check_cnd_empirical(linear(), two, line_points({0.0, 1.0}), 1e-9), ArgumentError);
}

TEST(StrictnessCheck, MinusCosPasses) {
  const ProductSpace spaces{SphereGeodesic{2}};
  const auto axes = diameter_axes(spaces);
  const auto v = strictness_check(minus_cos(3.0), axes);
  EXPECT_TRUE(v.pass);
  double expected = INFINITY;
  for (double t : axes[0]) {
    if (t > 0) expected = std::min(expected, 1 - std::cos(t));
  }
  // margin is phi(t) - phi(0) with phi up to 4, so rounding is absolute
  EXPECT_NEAR(v.min_margin, expected, 8 * std::numeric_limits<double>::epsilon());
  EXPECT_EQ(v.evaluated, axes[0].size() - 1);
}

TEST(StrictnessCheck, FunctionIgnoringASlotFails) {
  const auto phi = bernstein_compose(BernsteinFunction::identity(), linear(), constant(0.0));
  const auto v = strictness_check(phi, {{0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}});
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.min_margin, 0.0);
  ASSERT_EQ(v.witness.size(), 2u);
  EXPECT_EQ(v.witness[0], 0.0);
  EXPECT_GT(v.witness[1], 0.0);
}

TEST(StrictnessCheck, FirstExampleHOnLargeGrid) {
  const auto h = shift(1.0, bernstein_compose(BernsteinFunction::identity(), sine(), power(1.5)));
  std::vector<double> us(50), vs(50);
  for (int i = 0; i < 50; ++i) {
    us[i] = (pi / 2) * i / 49;
    vs[i] = 10.0 * i / 49;
  }
  const auto v = strictness_check(h, {us, vs});
  EXPECT_TRUE(v.pass);
  double expected = INFINITY;
  for (double u : us)
    for (double w : vs)
      if (u > 0 || w > 0) expected = std::min(expected, std::sin(u) + std::pow(w, 1.5));
  EXPECT_NEAR(v.min_margin, expected, 1e-15);
  EXPECT_EQ(v.evaluated, 50u * 50u - 1);
}

TEST(DiameterAxes, Shapes) {
  const ProductSpace spaces{Discrete{{"a", "b"}}, Interval{0.0}, Euclidean{2, 1.0}, SphereGeodesic{2}};
  const auto axes = diameter_axes(spaces, 5);
  EXPECT_EQ(axes[0], (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(axes[1], (std::vector<double>{0.0}));
  EXPECT_EQ(axes[2].size(), 5u);
  EXPECT_NEAR(axes[2].back(), 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(axes[3].back(), pi, 1e-15);
  EXPECT_THROW(diameter_axes(spaces, 1), ArgumentError);
}

TEST(CndFunction, Describe) {
  const auto phi = bernstein_compose(kOneMinusExp, minus_cos(3.0), shift(1.0, sine()));
  EXPECT_FALSE(phi.describe().empty());
  EXPECT_EQ(phi.arity(), 2u);
}
