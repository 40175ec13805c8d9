#pragma once

#include <Eigen/Dense>

#include "spillover/error.hpp"

namespace spillover::detail {

struct OlsResult {
  Eigen::MatrixXd coefficients;  // k x m
  Eigen::MatrixXd residuals;     // n x m
  Eigen::MatrixXd xtx_inverse;   // k x k
};

/// Multi-response least squares Y = X B + E via a rank-revealing QR.
inline OlsResult ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, ErrorCode on_singular) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-12);
  if (qr.rank() < x.cols()) throw Error(on_singular, "design matrix is rank deficient");
  OlsResult out;
  out.coefficients = qr.solve(y);
  out.residuals = y - x * out.coefficients;
  const Eigen::MatrixXd xtx = x.transpose() * x;
  out.xtx_inverse = xtx.ldlt().solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
  return out;
}

}  // namespace spillover::detail
