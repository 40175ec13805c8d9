#include "spillover/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "spillover/error.hpp"

namespace spillover {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void check_unique_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw Error(ErrorCode::DuplicateSeriesName, "series '" + n + "' appears twice");
}

void check_dates(const std::vector<YearMonth>& dates) {
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (dates[i] == dates[i - 1]) throw Error(ErrorCode::DuplicateDate, dates[i].str());
    if (dates[i] < dates[i - 1])
      throw std::invalid_argument("dates must be strictly increasing (" + dates[i].str() + ")");
  }
}

struct RawTable {
  std::vector<YearMonth> dates;
  std::vector<std::string> names;
  Eigen::MatrixXd values;
};

RawTable read_table(const std::filesystem::path& path, std::string_view date_column, bool require_positive) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());

  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) throw Error(ErrorCode::MalformedHeader, "empty file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  auto header = split(line);
  auto date_it = std::find(header.begin(), header.end(), date_column);
  if (date_it == header.end())
    throw Error(ErrorCode::MalformedHeader, "no date column '" + std::string(date_column) + "'");
  const auto date_idx = static_cast<std::size_t>(date_it - header.begin());
  if (header.size() < 2) throw Error(ErrorCode::MalformedHeader, "no series columns");

  RawTable table;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == date_idx) continue;
    if (header[c].empty()) throw Error(ErrorCode::MalformedHeader, "empty column name at " + std::to_string(c + 1));
    table.names.emplace_back(header[c]);
  }
  check_unique_names(table.names);

  std::vector<std::pair<YearMonth, std::vector<double>>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (cells.size() != header.size())
      throw Error(ErrorCode::UnparseableCell, "row " + std::to_string(line_no) + ": expected " +
                                                  std::to_string(header.size()) + " cells, got " +
                                                  std::to_string(cells.size()));
    YearMonth ym;
    try {
      ym = YearMonth::parse(cells[date_idx]);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::UnparseableCell,
                  "row " + std::to_string(line_no) + ", col " + std::to_string(date_idx + 1));
    }
    std::vector<double> vals;
    vals.reserve(table.names.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == date_idx) continue;
      double v = 0.0;
      const std::string where = "row " + std::to_string(line_no) + ", col " + std::to_string(c + 1);
      if (!parse_double(cells[c], v) || !std::isfinite(v)) throw Error(ErrorCode::UnparseableCell, where);
      if (require_positive && !(v > 0.0)) throw Error(ErrorCode::NonPositivePrice, where);
      vals.push_back(v);
    }
    rows.emplace_back(ym, std::move(vals));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].first == rows[i - 1].first) throw Error(ErrorCode::DuplicateDate, rows[i].first.str());

  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    table.dates.push_back(rows[r].first);
    for (std::size_t c = 0; c < table.names.size(); ++c)
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r].second[c];
  }
  return table;
}

}  // namespace

YearMonth YearMonth::parse(std::string_view text) {
  text = trim(text);
  int y = 0, m = 0;
  if (text.size() != 7 || text[4] != '-') throw std::invalid_argument("expected YYYY-MM");
  auto r1 = std::from_chars(text.data(), text.data() + 4, y);
  auto r2 = std::from_chars(text.data() + 5, text.data() + 7, m);
  if (r1.ec != std::errc() || r1.ptr != text.data() + 4 || r2.ec != std::errc() || r2.ptr != text.data() + 7 ||
      m < 1 || m > 12)
    throw std::invalid_argument("expected YYYY-MM");
  return {y, m};
}

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

YearMonth YearMonth::next() const { return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1}; }

std::vector<YearMonth> month_range(YearMonth start, std::size_t count) {
  std::vector<YearMonth> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i, start = start.next()) out.push_back(start);
  return out;
}

PricePanel::PricePanel(std::vector<YearMonth> dates, std::vector<std::string> names, Eigen::MatrixXd values)
    : dates_(std::move(dates)), names_(std::move(names)), values_(std::move(values)) {
  if (values_.rows() != static_cast<Eigen::Index>(dates_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(names_.size()))
    throw std::invalid_argument("PricePanel: values shape does not match dates x names");
  check_dates(dates_);
  check_unique_names(names_);
  for (Eigen::Index c = 0; c < values_.cols(); ++c)
    for (Eigen::Index r = 0; r < values_.rows(); ++r)
      if (!(values_(r, c) > 0.0) || !std::isfinite(values_(r, c)))
        throw Error(ErrorCode::NonPositivePrice, "row " + std::to_string(r) + ", col " + std::to_string(c));
}

bool PricePanel::operator==(const PricePanel& o) const {
  return dates_ == o.dates_ && names_ == o.names_ && values_.rows() == o.values_.rows() &&
         values_.cols() == o.values_.cols() && values_ == o.values_;
}

ReturnPanel::ReturnPanel(std::vector<YearMonth> dates, std::vector<std::string> names, Eigen::MatrixXd returns)
    : dates_(std::move(dates)), names_(std::move(names)), returns_(std::move(returns)) {
  if (returns_.rows() != static_cast<Eigen::Index>(dates_.size()) ||
      returns_.cols() != static_cast<Eigen::Index>(names_.size()))
    throw std::invalid_argument("ReturnPanel: returns shape does not match dates x names");
  check_dates(dates_);
  check_unique_names(names_);
  if (!returns_.allFinite()) throw std::invalid_argument("ReturnPanel: non-finite return");
}

ReturnPanel ReturnPanel::select(std::span<const std::string> names) const {
  Eigen::MatrixXd out(returns_.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto it = std::find(names_.begin(), names_.end(), names[k]);
    if (it == names_.end()) throw Error(ErrorCode::ConfigError, "unknown series '" + names[k] + "'");
    out.col(static_cast<Eigen::Index>(k)) = returns_.col(it - names_.begin());
  }
  return ReturnPanel(dates_, {names.begin(), names.end()}, std::move(out));
}

PricePanel load_csv(const std::filesystem::path& path, std::string_view date_column) {
  auto t = read_table(path, date_column, true);
  return PricePanel(std::move(t.dates), std::move(t.names), std::move(t.values));
}

ReturnPanel load_returns_csv(const std::filesystem::path& path, std::string_view date_column) {
  auto t = read_table(path, date_column, false);
  return ReturnPanel(std::move(t.dates), std::move(t.names), std::move(t.values));
}

ReturnPanel to_log_returns(const PricePanel& panel) {
  if (panel.rows() < 2) throw Error(ErrorCode::TooFewObservations, "need at least 2 price rows");
  const Eigen::MatrixXd logs = panel.values().array().log().matrix();
  const auto n = panel.rows() - 1;
  Eigen::MatrixXd r = logs.bottomRows(n) - logs.topRows(n);
  std::vector<YearMonth> dates(panel.dates().begin() + 1, panel.dates().end());
  return ReturnPanel(std::move(dates), panel.names(), std::move(r));
}

PricePanel align(std::span<const PricePanel> panels) {
  if (panels.empty()) throw Error(ErrorCode::EmptyIntersection, "no panels");

  std::vector<YearMonth> common = panels[0].dates();
  for (std::size_t p = 1; p < panels.size(); ++p) {
    std::vector<YearMonth> next;
    std::set_intersection(common.begin(), common.end(), panels[p].dates().begin(), panels[p].dates().end(),
                          std::back_inserter(next));
    common.swap(next);
  }
  if (common.empty()) throw Error(ErrorCode::EmptyIntersection, "panels share no dates");

  std::vector<std::string> names;
  for (const auto& p : panels) names.insert(names.end(), p.names().begin(), p.names().end());
  check_unique_names(names);

  Eigen::MatrixXd values(static_cast<Eigen::Index>(common.size()), static_cast<Eigen::Index>(names.size()));
  Eigen::Index col = 0;
  for (const auto& p : panels) {
    std::size_t src = 0;
    for (std::size_t r = 0; r < common.size(); ++r) {
      while (p.dates()[src] < common[r]) ++src;
      values.block(static_cast<Eigen::Index>(r), col, 1, p.cols()) = p.values().row(static_cast<Eigen::Index>(src));
    }
    col += p.cols();
  }
  return PricePanel(std::move(common), std::move(names), std::move(values));
}

}  // namespace spillover
