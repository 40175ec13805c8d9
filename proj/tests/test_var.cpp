#include <gtest/gtest.h>

#include <cmath>

#include "spillover/error.hpp"
#include "spillover/var.hpp"
#include "support.hpp"

using namespace spillover;
using spillover::testing::mat2;

TEST(IsStable, TriangularAndIdentity) {
  const auto a = make_var({mat2(0.5, 0.2, 0.0, 0.3)}, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(is_stable(a).stable);
  EXPECT_NEAR(is_stable(a).spectral_radius, 0.5, 1e-12);

  const auto id = make_var({Eigen::MatrixXd::Identity(2, 2)}, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_FALSE(is_stable(id).stable);
  EXPECT_NEAR(is_stable(id).spectral_radius, 1.0, 1e-12);

  const auto jordan = make_var({mat2(0.9, 0.9, 0.0, 0.9)}, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(is_stable(jordan).stable);
  EXPECT_NEAR(is_stable(jordan).spectral_radius, 0.9, 1e-6);  // defective eigenvalue: O(sqrt(eps)) accuracy
}

TEST(Vma, ZeroCoefficientsAndVar1Powers) {
  const auto zero = make_var({Eigen::MatrixXd::Zero(3, 3)}, Eigen::MatrixXd::Identity(3, 3));
  const auto a = vma_coefficients(zero, 5);
  EXPECT_EQ(a[0], Eigen::MatrixXd::Identity(3, 3));
  for (int h = 1; h < 5; ++h) EXPECT_EQ(a[static_cast<std::size_t>(h)].norm(), 0.0);

  const Eigen::MatrixXd b = mat2(0.5, 0.1, 0.2, 0.3);
  const auto v = vma_coefficients(make_var({b}, Eigen::MatrixXd::Identity(2, 2)), 6);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(2, 2);
  for (int h = 0; h < 6; ++h) {
    EXPECT_LE((v[static_cast<std::size_t>(h)] - power).cwiseAbs().maxCoeff(), 1e-15);
    power = power * b;
  }
}

TEST(Vma, Var2SecondCoefficientByHand) {
  // B1^2 + B2 = [[0.27, 0.08], [0.16, 0.11]] + 0.1 I
  const auto model = make_var({mat2(0.5, 0.1, 0.2, 0.3), mat2(0.1, 0.0, 0.0, 0.1)}, Eigen::MatrixXd::Identity(2, 2));
  const auto a = vma_coefficients(model, 3);
  EXPECT_LE((a[2] - mat2(0.37, 0.08, 0.16, 0.21)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Vma, DecaysForStableModel) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = spillover::testing::random_stable_var(3, 2, seed);
    const auto a = vma_coefficients(m, 41);
    EXPECT_LT(a[40].cwiseAbs().maxCoeff(), a[10].cwiseAbs().maxCoeff() + 1e-300) << seed;
  }
}

TEST(Simulate, DeterministicAndWhiteNoiseCovariance) {
  const auto wn = make_var({Eigen::MatrixXd::Zero(2, 2)}, Eigen::MatrixXd::Identity(2, 2));
  const auto a = simulate(wn, 100000, 42), b = simulate(wn, 100000, 42);
  EXPECT_EQ(a.returns(), b.returns());
  const Eigen::MatrixXd centered = a.returns().rowwise() - a.returns().colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / 99999.0;
  EXPECT_LE((cov - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(Simulate, Lag1Autocorrelation) {
  const auto model = make_var({mat2(0.5, 0.0, 0.0, 0.5)}, Eigen::MatrixXd::Identity(2, 2));
  const auto y = simulate(model, 100000, 7).returns();
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd x = y.col(c).array() - y.col(c).mean();
    const double rho = x.tail(x.size() - 1).dot(x.head(x.size() - 1)) / x.squaredNorm();
    EXPECT_NEAR(rho, 0.5, 0.02);
  }
}

TEST(Simulate, Errors) {
  const auto unstable = make_var({Eigen::MatrixXd::Identity(2, 2)}, Eigen::MatrixXd::Identity(2, 2));
  try {
    simulate(unstable, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnstableModel);
  }
  const auto bad_sigma = make_var({Eigen::MatrixXd::Zero(2, 2)}, mat2(1.0, 2.0, 2.0, 1.0));
  try {
    simulate(bad_sigma, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveDefiniteCovariance);
  }
}

TEST(FitOls, RecoversKnownVar1) {
  const Eigen::MatrixXd b = mat2(0.5, 0.2, -0.1, 0.3);
  const auto truth = make_var({b}, mat2(1.0, 0.3, 0.3, 1.0), Eigen::Vector2d(0.1, -0.2));
  const auto fit = fit_ols(simulate(truth, 5000, 3), 1);
  EXPECT_LE((fit.lags[0] - b).cwiseAbs().maxCoeff(), 0.03);
  EXPECT_LE((fit.sigma - truth.sigma).cwiseAbs().maxCoeff(), 0.06);
  EXPECT_LE((fit.sigma - fit.sigma.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FitOls, ErrorShrinksWithSampleSize) {
  const Eigen::MatrixXd b = mat2(0.5, 0.2, -0.1, 0.3);
  const auto truth = make_var({b}, Eigen::MatrixXd::Identity(2, 2));
  double err_small = 0.0, err_large = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    err_small += (fit_ols(simulate(truth, 500, s), 1).lags[0] - b).norm();
    err_large += (fit_ols(simulate(truth, 5000, 100 + s), 1).lags[0] - b).norm();
  }
  EXPECT_LT(err_large, err_small);
}

TEST(FitOls, WhiteNoiseCoefficientsWithinTwoStandardErrors) {
  const auto wn = make_var({Eigen::MatrixXd::Zero(3, 3)}, Eigen::MatrixXd::Identity(3, 3));
  const auto panel = simulate(wn, 2000, 99);
  const auto fit = fit_ols_rows(panel.returns(), 1, 1, panel.rows());
  int outside = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double se = std::sqrt(fit.model.sigma(i, i) * fit.xtx_inverse(1 + j, 1 + j));
      if (std::abs(fit.model.lags[0](i, j)) > 2.0 * se) ++outside;
    }
  EXPECT_LE(outside, 2);  // ~5% of 9 expected; allow sampling noise
}

TEST(FitOls, SaturatedIsInsufficient) {
  const auto wn = make_var({Eigen::MatrixXd::Zero(2, 2)}, Eigen::MatrixXd::Identity(2, 2));
  // M = 2, r = 2: T = M r + r = 6
  const auto panel = simulate(wn, 6, 1);
  try {
    fit_ols(panel, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
  }
}

TEST(SelectLag, SingleCandidateAndPermutationInvariance) {
  const auto truth = spillover::testing::random_stable_var(3, 2, 5);
  const auto panel = simulate(truth, 400, 5);
  EXPECT_EQ(select_lag_aic(panel, 1), 1);
  const std::vector<std::string> perm{"y3", "y1", "y2"};
  EXPECT_EQ(select_lag_aic(panel, 4), select_lag_aic(panel.select(perm), 4));
}

TEST(SelectLag, PicksTrueOrderMostOfTheTime) {
  // Three series: with M = 2 the AIC overfit rate alone is ~12%.
  Eigen::MatrixXd b1(3, 3), b2(3, 3), c1(3, 3);
  c1 << 0.5, 0.1, 0.0, 0.1, 0.4, 0.1, 0.0, 0.1, 0.3;
  b1 << 0.2, 0.0, 0.1, 0.1, 0.2, 0.0, 0.0, 0.1, 0.2;
  b2 << 0.5, 0.1, 0.0, 0.0, -0.4, 0.1, 0.1, 0.0, 0.4;
  const auto var1 = make_var({c1}, Eigen::MatrixXd::Identity(3, 3));
  const auto var2 = make_var({b1, b2}, Eigen::MatrixXd::Identity(3, 3));
  ASSERT_TRUE(is_stable(var2).stable);
  int hit1 = 0, hit2 = 0;
  const int reps = 100;
  for (int s = 0; s < reps; ++s) {
    if (select_lag_aic(simulate(var1, 2000, 10 + s), 4) == 1) ++hit1;
    if (select_lag_aic(simulate(var2, 2000, 900 + s), 4) == 2) ++hit2;
  }
  EXPECT_GE(hit1, 90);
  EXPECT_GE(hit2, 90);
}
