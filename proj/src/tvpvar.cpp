#include "spillover/tvpvar.hpp"

#include <stdexcept>

#include "spillover/error.hpp"

namespace spillover {

namespace {

void symmetrize(Eigen::MatrixXd& a) { a = 0.5 * (a + a.transpose()).eval(); }

}  // namespace

void TvpConfig::validate(Eigen::Index series) const {
  if (!(kappa1 > 0.0 && kappa1 <= 1.0)) throw std::invalid_argument("TvpConfig: kappa1 must lie in (0, 1]");
  if (!(kappa2 > 0.0 && kappa2 <= 1.0)) throw std::invalid_argument("TvpConfig: kappa2 must lie in (0, 1]");
  if (lag_order < 1) throw std::invalid_argument("TvpConfig: lag_order must be positive");
  if (!(prior_scale > 0.0)) throw std::invalid_argument("TvpConfig: prior_scale must be positive");
  if (prior_window < series * lag_order + series + 1)
    throw std::invalid_argument("TvpConfig: prior_window must be at least M r + M + 1");
}

Eigen::VectorXd pack_state(const VarModel& model) {
  const Eigen::Index m = model.dimension();
  const int r = model.lag_order();
  const Eigen::Index k = m * r + 1;
  Eigen::VectorXd state(m * k);
  for (Eigen::Index i = 0; i < m; ++i) {
    state(i * k) = model.intercept(i);
    for (int l = 0; l < r; ++l) state.segment(i * k + 1 + l * m, m) = model.lags[static_cast<std::size_t>(l)].row(i).transpose();
  }
  return state;
}

VarModel unpack_state(const Eigen::VectorXd& state, Eigen::Index series, int lag_order,
                      std::vector<std::string> names) {
  const Eigen::Index m = series, k = m * lag_order + 1;
  if (state.size() != m * k) throw std::invalid_argument("unpack_state: state length mismatch");
  VarModel model;
  model.intercept.resize(m);
  model.lags.assign(static_cast<std::size_t>(lag_order), Eigen::MatrixXd(m, m));
  for (Eigen::Index i = 0; i < m; ++i) {
    model.intercept(i) = state(i * k);
    for (int l = 0; l < lag_order; ++l)
      model.lags[static_cast<std::size_t>(l)].row(i) = state.segment(i * k + 1 + l * m, m).transpose();
  }
  model.names = std::move(names);
  return model;
}

TvpVarPath fit_tvp(const ReturnPanel& panel, const TvpConfig& config) {
  const Eigen::Index m = panel.cols();
  config.validate(m);
  const int r = config.lag_order;
  const Eigen::Index t_total = panel.rows();
  if (t_total < config.prior_window + 1)
    throw Error(ErrorCode::InsufficientData, "T=" + std::to_string(t_total) + " leaves nothing after the " +
                                                 std::to_string(config.prior_window) + "-row prior window");

  const Eigen::MatrixXd& y = panel.returns();
  const auto prior = fit_ols_rows(y, r, r, config.prior_window, panel.names());
  const Eigen::Index k = m * r + 1;

  Eigen::VectorXd beta = pack_state(prior.model);
  // Cov(vec B) for B stacked by equation: sigma (x) (X'X)^-1
  Eigen::MatrixXd p(m * k, m * k);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      p.block(i * k, j * k, k, k) = config.prior_scale * prior.model.sigma(i, j) * prior.xtx_inverse;
  symmetrize(p);
  Eigen::MatrixXd s = prior.model.sigma;

  TvpVarPath path;
  path.names = panel.names();
  path.lag_order = r;
  path.config = config;
  path.first_filtered = static_cast<std::size_t>(config.prior_window - r);
  const auto length = static_cast<std::size_t>(t_total - r);
  path.beta.reserve(length);
  path.measurement_cov.reserve(length);
  path.state_cov.reserve(length);
  for (Eigen::Index t = r; t < config.prior_window; ++t) {
    path.dates.push_back(panel.dates()[static_cast<std::size_t>(t)]);
    path.beta.push_back(beta);
    path.measurement_cov.push_back(s);
    path.state_cov.push_back(p);
  }

  Eigen::VectorXd x(k);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(m, m * k);
  for (Eigen::Index t = config.prior_window; t < t_total; ++t) {
    x(0) = 1.0;
    for (int l = 1; l <= r; ++l) x.segment(1 + (l - 1) * m, m) = y.row(t - l).transpose();
    for (Eigen::Index i = 0; i < m; ++i) z.block(i, i * k, 1, k) = x.transpose();

    if (config.kappa1 != 1.0) p /= config.kappa1;
    const Eigen::VectorXd innovation = y.row(t).transpose() - z * beta;
    const Eigen::MatrixXd pz = p * z.transpose();
    Eigen::MatrixXd f = z * pz + s;
    symmetrize(f);
    Eigen::LDLT<Eigen::MatrixXd> f_ldlt(f);
    if (f_ldlt.info() != Eigen::Success)
      throw Error(ErrorCode::NumericalBreakdown, "innovation covariance singular at t=" + std::to_string(t));
    const Eigen::MatrixXd gain = f_ldlt.solve(pz.transpose()).transpose();  // P Z' F^-1
    beta += gain * innovation;
    p -= gain * pz.transpose();
    symmetrize(p);
    s = config.kappa2 * s + (1.0 - config.kappa2) * innovation * innovation.transpose();
    symmetrize(s);

    if (!beta.allFinite() || !p.allFinite() || !s.allFinite())
      throw Error(ErrorCode::NumericalBreakdown, "non-finite filter state at t=" + std::to_string(t) + " (" +
                                                     panel.dates()[static_cast<std::size_t>(t)].str() + ")");
    path.dates.push_back(panel.dates()[static_cast<std::size_t>(t)]);
    path.beta.push_back(beta);
    path.measurement_cov.push_back(s);
    path.state_cov.push_back(p);
  }
  return path;
}

VarModel model_at(const TvpVarPath& path, std::size_t index) {
  if (index >= path.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(index) + " outside path of length " + std::to_string(path.size()));
  const auto m = static_cast<Eigen::Index>(path.names.size());
  VarModel model = unpack_state(path.beta[index], m, path.lag_order, path.names);
  model.sigma = path.measurement_cov[index];
  return model;
}

}  // namespace spillover
