#include "spillover/var.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ols.hpp"
#include "spillover/error.hpp"

namespace spillover {

namespace {

std::vector<std::string> default_names(Eigen::Index m) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < m; ++i) out.push_back("y" + std::to_string(i + 1));
  return out;
}

// Rows [first, end) of the regression y_t on [1, y_{t-1}', ..., y_{t-r}'].
void lagged_design(const Eigen::MatrixXd& data, int r, Eigen::Index first, Eigen::Index end, Eigen::MatrixXd& x,
                   Eigen::MatrixXd& y) {
  const Eigen::Index m = data.cols(), n = end - first;
  x.resize(n, m * r + 1);
  y = data.middleRows(first, n);
  x.col(0).setOnes();
  for (int i = 1; i <= r; ++i) x.middleCols(1 + (i - 1) * m, m) = data.middleRows(first - i, n);
}

}  // namespace

void VarModel::validate() const {
  const auto m = sigma.rows();
  if (sigma.cols() != m || m == 0) throw std::invalid_argument("VarModel: sigma must be square and non-empty");
  if (intercept.size() != m) throw std::invalid_argument("VarModel: intercept size mismatch");
  if (static_cast<Eigen::Index>(names.size()) != m) throw std::invalid_argument("VarModel: names size mismatch");
  for (const auto& b : lags)
    if (b.rows() != m || b.cols() != m) throw std::invalid_argument("VarModel: lag matrix shape mismatch");
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("VarModel: sigma is not symmetric");
}

VarModel make_var(std::vector<Eigen::MatrixXd> lags, Eigen::MatrixXd sigma, Eigen::VectorXd intercept,
                  std::vector<std::string> names) {
  VarModel m;
  const auto dim = sigma.rows();
  m.lags = std::move(lags);
  m.sigma = std::move(sigma);
  m.intercept = intercept.size() == 0 ? Eigen::VectorXd::Zero(dim) : std::move(intercept);
  m.names = names.empty() ? default_names(dim) : std::move(names);
  m.validate();
  return m;
}

OlsVarFit fit_ols_rows(const Eigen::MatrixXd& data, int lag_order, Eigen::Index first_row, Eigen::Index end_row,
                       std::vector<std::string> names) {
  if (lag_order < 1) throw std::invalid_argument("fit_ols: lag order must be positive");
  if (first_row < lag_order || end_row > data.rows() || end_row <= first_row)
    throw Error(ErrorCode::InsufficientData, "regression rows out of range");
  const Eigen::Index m = data.cols();
  const Eigen::Index k = m * lag_order + 1;
  const Eigen::Index n = end_row - first_row;
  // one residual degree of freedom at minimum so sigma is defined
  if (n - k < 1)
    throw Error(ErrorCode::InsufficientData, std::to_string(n) + " usable rows for " + std::to_string(k) +
                                                 " regressors per equation");

  Eigen::MatrixXd x, y;
  lagged_design(data, lag_order, first_row, end_row, x, y);
  auto fit = detail::ols(x, y, ErrorCode::SingularDesign);

  OlsVarFit out;
  out.model.intercept = fit.coefficients.row(0).transpose();
  for (int i = 0; i < lag_order; ++i)
    out.model.lags.push_back(fit.coefficients.middleRows(1 + i * m, m).transpose());
  Eigen::MatrixXd sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(n - k);
  out.model.sigma = 0.5 * (sigma + sigma.transpose());
  out.model.names = names.empty() ? default_names(m) : std::move(names);
  out.xtx_inverse = std::move(fit.xtx_inverse);
  out.residuals = std::move(fit.residuals);
  out.observations = n;
  return out;
}

VarModel fit_ols(const ReturnPanel& panel, int lag_order) {
  if (lag_order < 1) throw std::invalid_argument("fit_ols: lag order must be positive");
  if (panel.rows() <= lag_order) throw Error(ErrorCode::InsufficientData, "fewer rows than the lag order");
  return fit_ols_rows(panel.returns(), lag_order, lag_order, panel.rows(), panel.names()).model;
}

int select_lag_aic(const ReturnPanel& panel, int max_lag) {
  if (max_lag < 1) throw std::invalid_argument("select_lag_aic: max_lag must be positive");
  const Eigen::Index m = panel.cols();
  const Eigen::Index t_eff = panel.rows() - max_lag;
  if (t_eff - (m * max_lag + 1) < 1)
    throw Error(ErrorCode::InsufficientData, "max_lag " + std::to_string(max_lag) + " infeasible for T=" +
                                                 std::to_string(panel.rows()));
  int best = 1;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= max_lag; ++r) {
    const auto fit = fit_ols_rows(panel.returns(), r, max_lag, panel.rows());
    const Eigen::MatrixXd ml_sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(t_eff);
    Eigen::LLT<Eigen::MatrixXd> llt(ml_sigma);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularDesign, "residual covariance is singular");
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double aic =
        log_det + 2.0 * static_cast<double>(r * m * m + m) / static_cast<double>(t_eff);
    if (aic < best_aic) {
      best_aic = aic;
      best = r;
    }
  }
  return best;
}

Eigen::MatrixXd companion_matrix(const VarModel& model) {
  const Eigen::Index m = model.dimension();
  const int r = model.lag_order();
  if (r == 0) return Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m * r, m * r);
  for (int i = 0; i < r; ++i) c.block(0, i * m, m, m) = model.lags[static_cast<std::size_t>(i)];
  if (r > 1) c.block(m, 0, m * (r - 1), m * (r - 1)).setIdentity();
  return c;
}

Stability is_stable(const VarModel& model) {
  const Eigen::MatrixXd c = companion_matrix(model);
  if (!c.allFinite()) return {false, std::numeric_limits<double>::infinity()};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  const double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
  return {radius < 1.0 - 1e-10, radius};
}

std::vector<Eigen::MatrixXd> vma_coefficients(const VarModel& model, int horizon) {
  if (horizon < 1) throw std::invalid_argument("vma_coefficients: horizon must be positive");
  const Eigen::Index m = model.dimension();
  const int r = model.lag_order();
  std::vector<Eigen::MatrixXd> a;
  a.reserve(static_cast<std::size_t>(horizon));
  a.push_back(Eigen::MatrixXd::Identity(m, m));
  for (int h = 1; h < horizon; ++h) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i <= std::min(h, r); ++i)
      next.noalias() += model.lags[static_cast<std::size_t>(i - 1)] * a[static_cast<std::size_t>(h - i)];
    a.push_back(std::move(next));
  }
  return a;
}

ReturnPanel simulate(const VarModel& model, Eigen::Index observations, std::uint64_t seed, int burn_in) {
  model.validate();
  if (observations < 1 || burn_in < 0) throw std::invalid_argument("simulate: bad length");
  if (!is_stable(model).stable) throw Error(ErrorCode::UnstableModel, "cannot simulate an unstable VAR");
  Eigen::LLT<Eigen::MatrixXd> llt(model.sigma);
  if (llt.info() != Eigen::Success || (llt.matrixLLT().diagonal().array() <= 0.0).any())
    throw Error(ErrorCode::NonPositiveDefiniteCovariance, "sigma has no Cholesky factor");
  const Eigen::MatrixXd chol = llt.matrixL();

  const Eigen::Index m = model.dimension();
  const int r = model.lag_order();
  const Eigen::Index total = observations + burn_in + r;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(total, m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(m);
  for (Eigen::Index t = r; t < total; ++t) {
    for (Eigen::Index i = 0; i < m; ++i) z(i) = normal(rng);
    Eigen::VectorXd next = model.intercept + chol * z;
    for (int i = 1; i <= r; ++i) next.noalias() += model.lags[static_cast<std::size_t>(i - 1)] * y.row(t - i).transpose();
    y.row(t) = next.transpose();
  }
  return ReturnPanel(month_range({2000, 1}, static_cast<std::size_t>(observations)), model.names,
                     y.bottomRows(observations));
}

}  // namespace spillover
