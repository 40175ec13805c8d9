#include "spillover/connectedness.hpp"

#include <stdexcept>

#include "spillover/error.hpp"

namespace spillover {

FevdTable gfevd(const VarModel& model, int horizon) {
  if (horizon < 1) throw std::invalid_argument("gfevd: horizon must be positive");
  if (!is_stable(model).stable) throw Error(ErrorCode::UnstableModel, "companion spectral radius >= 1");
  const Eigen::Index m = model.dimension();
  const Eigen::VectorXd sigma_diag = model.sigma.diagonal();
  for (Eigen::Index j = 0; j < m; ++j)
    if (!(sigma_diag(j) > 0.0)) throw Error(ErrorCode::ZeroVariance, "sigma_jj <= 0 for j=" + std::to_string(j));

  const auto a = vma_coefficients(model, horizon);
  Eigen::MatrixXd numerator = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd denominator = Eigen::VectorXd::Zero(m);
  for (const auto& ah : a) {
    const Eigen::MatrixXd c = ah * model.sigma;
    numerator += c.cwiseAbs2();
    denominator += (c * ah.transpose()).diagonal();
  }
  numerator = numerator * sigma_diag.cwiseInverse().asDiagonal();

  FevdTable out;
  out.horizon = horizon;
  out.names = model.names;
  out.raw = denominator.cwiseInverse().asDiagonal() * numerator;
  out.normalized = out.raw.rowwise().sum().cwiseInverse().asDiagonal() * out.raw;
  return out;
}

SpilloverSummary summarize_shares(const Eigen::MatrixXd& shares, std::vector<std::string> names,
                                  std::optional<std::string> band) {
  const Eigen::Index m = shares.rows();
  SpilloverSummary s;
  s.band = std::move(band);
  s.names = std::move(names);
  s.table = 100.0 * shares;
  const Eigen::VectorXd diag = s.table.diagonal();
  s.from = s.table.rowwise().sum() - diag;
  s.to = s.table.colwise().sum().transpose() - diag;
  s.net = s.to - s.from;
  s.tsi = m == 0 ? 0.0 : s.from.sum() / static_cast<double>(m);
  s.npdc = s.table - s.table.transpose();
  s.npdc.diagonal().setZero();
  return s;
}

SpilloverSummary spillover_summary(const FevdTable& fevd) { return summarize_shares(fevd.normalized, fevd.names); }

}  // namespace spillover
