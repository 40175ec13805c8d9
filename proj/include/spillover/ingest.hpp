#pragma once

#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace spillover {

/// Calendar month, written YYYY-MM.
struct YearMonth {
  int year = 2000;
  int month = 1;

  static YearMonth parse(std::string_view text);  // throws std::invalid_argument
  std::string str() const;
  YearMonth next() const;

  auto operator<=>(const YearMonth&) const = default;
};

/// T x M panel of strictly positive index levels on strictly increasing months.
class PricePanel {
 public:
  PricePanel(std::vector<YearMonth> dates, std::vector<std::string> names, Eigen::MatrixXd values);

  const std::vector<YearMonth>& dates() const { return dates_; }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  bool operator==(const PricePanel&) const;

 private:
  std::vector<YearMonth> dates_;
  std::vector<std::string> names_;
  Eigen::MatrixXd values_;
};

/// Log returns on the later date of each consecutive pair of months.
class ReturnPanel {
 public:
  ReturnPanel(std::vector<YearMonth> dates, std::vector<std::string> names, Eigen::MatrixXd returns);

  const std::vector<YearMonth>& dates() const { return dates_; }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& returns() const { return returns_; }
  Eigen::Index rows() const { return returns_.rows(); }
  Eigen::Index cols() const { return returns_.cols(); }

  /// Columns picked by label, in the order given.
  ReturnPanel select(std::span<const std::string> names) const;

 private:
  std::vector<YearMonth> dates_;
  std::vector<std::string> names_;
  Eigen::MatrixXd returns_;
};

PricePanel load_csv(const std::filesystem::path& path, std::string_view date_column);

/// Same file format, but cells are already returns (any finite value accepted).
ReturnPanel load_returns_csv(const std::filesystem::path& path, std::string_view date_column);

ReturnPanel to_log_returns(const PricePanel& panel);

/// Inner join on dates; columns concatenated in input order.
PricePanel align(std::span<const PricePanel> panels);

/// Evenly spaced month labels starting at `start`; used for synthetic panels.
std::vector<YearMonth> month_range(YearMonth start, std::size_t count);

}  // namespace spillover
