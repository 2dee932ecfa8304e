#include "swarm_svr/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "swarm_svr/errors.hpp"

namespace swarm_svr {
namespace {

constexpr std::array<std::string_view, 18> kExpectedHeader = {
    "No",   "year", "month", "day",  "hour", "PM2.5", "PM10", "SO2", "NO2",
    "CO",   "O3",   "TEMP",  "PRES", "DEWP", "RAIN",  "wd",   "WSPM", "station"};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_missing(std::string_view cell) {
  cell = trim(cell);
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan";
}

double parse_number(std::string_view cell, std::size_t row, std::string_view column) {
  cell = trim(cell);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw ParseError(row, "cannot parse " + std::string(column) + " value '" +
                              std::string(cell) + "'");
  }
  return value;
}

int parse_int(std::string_view cell, std::size_t row, std::string_view column) {
  double v = parse_number(cell, row, column);
  if (v != std::floor(v)) {
    throw ParseError(row, std::string(column) + " must be an integer");
  }
  return static_cast<int>(v);
}

std::optional<double> parse_optional(std::string_view cell, std::size_t row,
                                     std::string_view column) {
  if (is_missing(cell)) return std::nullopt;
  return parse_number(cell, row, column);
}

template <typename T>
void fill_with_mode(std::vector<std::optional<T>>& column) {
  std::map<T, std::size_t> counts;
  for (const auto& v : column) {
    if (v) ++counts[*v];
  }
  if (counts.empty()) return;
  // std::map iterates in ascending order, so the first maximum is the
  // smallest (or lexicographically first) mode.
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  for (auto& v : column) {
    if (!v) v = best->first;
  }
}

}  // namespace

std::string_view parameter_name(Parameter p) {
  switch (p) {
    case Parameter::kPm25: return "PM2.5";
    case Parameter::kPm10: return "PM10";
    case Parameter::kSo2: return "SO2";
    case Parameter::kNo2: return "NO2";
    case Parameter::kCo: return "CO";
    case Parameter::kO3: return "O3";
    case Parameter::kTemp: return "TEMP";
    case Parameter::kPres: return "PRES";
    case Parameter::kDewp: return "DEWP";
    case Parameter::kRain: return "RAIN";
    case Parameter::kWd: return "wd";
    case Parameter::kWspm: return "WSPM";
  }
  return "?";
}

std::optional<double>* numeric_field(RawRecord& r, Parameter p) {
  switch (p) {
    case Parameter::kPm25: return &r.pm25;
    case Parameter::kPm10: return &r.pm10;
    case Parameter::kSo2: return &r.so2;
    case Parameter::kNo2: return &r.no2;
    case Parameter::kCo: return &r.co;
    case Parameter::kO3: return &r.o3;
    case Parameter::kTemp: return &r.temp;
    case Parameter::kPres: return &r.pres;
    case Parameter::kDewp: return &r.dewp;
    case Parameter::kRain: return &r.rain;
    case Parameter::kWspm: return &r.wspm;
    case Parameter::kWd: return nullptr;
  }
  return nullptr;
}

const std::optional<double>* numeric_field(const RawRecord& r, Parameter p) {
  return numeric_field(const_cast<RawRecord&>(r), p);
}

bool in_year(const RawRecord& r, int year, YearWindow window) {
  if (window == YearWindow::kCalendar) return r.year == year;
  if (r.year == year) return r.month >= 3;
  if (r.year == year + 1) {
    if (r.month < 3) return true;
    return r.month == 3 && r.day == 1 && r.hour == 0;
  }
  return false;
}

std::vector<RawRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(0, "missing header row");
  auto header = split_csv_line(line);
  if (header.size() != kExpectedHeader.size()) {
    throw ParseError(0, "expected " + std::to_string(kExpectedHeader.size()) +
                            " header columns, found " + std::to_string(header.size()));
  }
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[std::string(trim(header[i]))] = i;
  std::array<std::size_t, 18> pos{};
  for (std::size_t k = 0; k < kExpectedHeader.size(); ++k) {
    auto it = column.find(std::string(kExpectedHeader[k]));
    if (it == column.end()) {
      throw ParseError(0, "header lacks column " + std::string(kExpectedHeader[k]));
    }
    pos[k] = it->second;
  }

  std::vector<RawRecord> records;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line == "\r") continue;
    ++row;
    auto cells = split_csv_line(line);
    if (cells.size() != kExpectedHeader.size()) {
      throw ParseError(row, "expected " + std::to_string(kExpectedHeader.size()) +
                                " columns, found " + std::to_string(cells.size()));
    }
    auto cell = [&](std::size_t k) -> std::string_view { return cells[pos[k]]; };
    RawRecord r;
    r.row_index = row;
    r.year = parse_int(cell(1), row, "year");
    r.month = parse_int(cell(2), row, "month");
    r.day = parse_int(cell(3), row, "day");
    r.hour = parse_int(cell(4), row, "hour");
    if (r.month < 1 || r.month > 12) throw ParseError(row, "month out of range");
    if (r.hour < 0 || r.hour > 23) throw ParseError(row, "hour out of range");
    r.pm25 = parse_optional(cell(5), row, "PM2.5");
    r.pm10 = parse_optional(cell(6), row, "PM10");
    r.so2 = parse_optional(cell(7), row, "SO2");
    r.no2 = parse_optional(cell(8), row, "NO2");
    r.co = parse_optional(cell(9), row, "CO");
    r.o3 = parse_optional(cell(10), row, "O3");
    r.temp = parse_optional(cell(11), row, "TEMP");
    r.pres = parse_optional(cell(12), row, "PRES");
    r.dewp = parse_optional(cell(13), row, "DEWP");
    r.rain = parse_optional(cell(14), row, "RAIN");
    if (!is_missing(cell(15))) r.wd = std::string(trim(cell(15)));
    r.wspm = parse_optional(cell(16), row, "WSPM");
    r.station = std::string(trim(cell(17)));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RawRecord> load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_csv(in);
}

std::vector<RawRecord> select_year(const std::vector<RawRecord>& records, int year,
                                   YearWindow window) {
  std::vector<RawRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const RawRecord& r) { return in_year(r, year, window); });
  if (out.empty()) throw EmptyReportError("no records for year " + std::to_string(year));
  return out;
}

const MissingEntry& MissingReport::at(Parameter p) const {
  for (const auto& e : entries) {
    if (e.parameter == p) return e;
  }
  throw InvalidArgument("parameter not in report");
}

MissingReport count_missing(const std::vector<RawRecord>& records, int year,
                            YearWindow window) {
  if (records.empty()) throw EmptyReportError("no records");
  auto rows = select_year(records, year, window);
  MissingReport report;
  report.year = year;
  report.total_rows = rows.size();
  for (Parameter p : kAllParameters) {
    std::size_t count = 0;
    for (const auto& r : rows) {
      bool missing = p == Parameter::kWd ? !r.wd.has_value() : !numeric_field(r, p)->has_value();
      count += missing ? 1 : 0;
    }
    report.entries.push_back(
        {p, count, static_cast<double>(count) / static_cast<double>(rows.size())});
  }
  return report;
}

void impute_column_mode(std::vector<std::optional<double>>& column) { fill_with_mode(column); }

void impute_column_mode(std::vector<std::optional<std::string>>& column) {
  fill_with_mode(column);
}

std::vector<RawRecord> impute_mode(const std::vector<RawRecord>& records, int year,
                                   YearWindow window) {
  auto rows = select_year(records, year, window);
  for (Parameter p : kAllParameters) {
    if (p == Parameter::kWd) {
      std::vector<std::optional<std::string>> column;
      column.reserve(rows.size());
      for (const auto& r : rows) column.push_back(r.wd);
      if (std::none_of(column.begin(), column.end(), [](const auto& v) { return v.has_value(); })) {
        throw ImputationError("wd", "wd has no observed value in year " + std::to_string(year));
      }
      impute_column_mode(column);
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].wd = column[i];
    } else {
      std::vector<std::optional<double>> column;
      column.reserve(rows.size());
      for (const auto& r : rows) column.push_back(*numeric_field(r, p));
      if (std::none_of(column.begin(), column.end(), [](const auto& v) { return v.has_value(); })) {
        std::string name(parameter_name(p));
        throw ImputationError(name,
                              name + " has no observed value in year " + std::to_string(year));
      }
      impute_column_mode(column);
      for (std::size_t i = 0; i < rows.size(); ++i) *numeric_field(rows[i], p) = column[i];
    }
  }
  return rows;
}

double wind_direction_degrees(std::string_view direction) {
  static constexpr std::array<std::string_view, 16> kPoints = {
      "N", "NNE", "NE", "ENE", "E", "ESE", "SE", "SSE",
      "S", "SSW", "SW", "WSW", "W", "WNW", "NW", "NNW"};
  for (std::size_t i = 0; i < kPoints.size(); ++i) {
    if (kPoints[i] == direction) return 22.5 * static_cast<double>(i);
  }
  throw EncodingError("unknown wind direction '" + std::string(direction) + "'");
}

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = {"PM10", "SO2",  "NO2",  "CO",
                                                 "O3",   "TEMP", "PRES", "DEWP",
                                                 "RAIN", "WSPM", "wd_sin", "wd_cos"};
  return names;
}

Dataset encode_features(const std::vector<RawRecord>& records) {
  Dataset out;
  out.x.feature_names = feature_names();
  out.x.values = Matrix(records.size(), kFeatureCount);
  out.y.reserve(records.size());
  auto need = [](const std::optional<double>& v, const RawRecord& r, std::string_view name) {
    if (!v) {
      throw EncodingError("row " + std::to_string(r.row_index) + ": " + std::string(name) +
                          " is missing; impute before encoding");
    }
    return *v;
  };
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.wd) throw EncodingError("row " + std::to_string(r.row_index) + ": wd is missing");
    double angle = wind_direction_degrees(*r.wd) * std::numbers::pi / 180.0;
    auto row = out.x.values.row(i);
    row[0] = need(r.pm10, r, "PM10");
    row[1] = need(r.so2, r, "SO2");
    row[2] = need(r.no2, r, "NO2");
    row[3] = need(r.co, r, "CO");
    row[4] = need(r.o3, r, "O3");
    row[5] = need(r.temp, r, "TEMP");
    row[6] = need(r.pres, r, "PRES");
    row[7] = need(r.dewp, r, "DEWP");
    row[8] = need(r.rain, r, "RAIN");
    row[9] = need(r.wspm, r, "WSPM");
    row[10] = std::sin(angle);
    row[11] = std::cos(angle);
    out.y.push_back(need(r.pm25, r, "PM2.5"));
  }
  return out;
}

void ScalerParams::transform_row(std::span<double> row) const {
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - feature_mean[c]) / feature_std[c];
}

void ScalerParams::inverse_row(std::span<double> row) const {
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = row[c] * feature_std[c] + feature_mean[c];
}

namespace {

// Population mean and std; std is reported as 1 for a constant column.
std::pair<double, double> column_stats(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / n);
  bool constant = std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  if (constant || sd == 0.0) return {v.front(), 1.0};
  return {mean, sd};
}

}  // namespace

StandardizedDataset standardize(const FeatureMatrix& x, const TargetVector& y) {
  if (x.rows() != y.size()) throw DimensionError("standardize: X and y lengths differ");
  if (x.rows() < 2) throw InvalidArgument("standardize: need at least 2 rows");
  StandardizedDataset out;
  out.data.x = x;
  out.data.y = y;
  auto& s = out.scaler;
  std::vector<double> col(x.rows());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    for (std::size_t r = 0; r < x.rows(); ++r) col[r] = x.values(r, c);
    auto [mean, sd] = column_stats(col);
    s.feature_mean.push_back(mean);
    s.feature_std.push_back(sd);
  }
  std::tie(s.target_mean, s.target_std) = column_stats(y);
  for (std::size_t r = 0; r < x.rows(); ++r) s.transform_row(out.data.x.values.row(r));
  for (double& v : out.data.y) v = s.transform_target(v);
  return out;
}

namespace {

Partition take(const Dataset& d, std::vector<std::size_t> idx) {
  Partition p;
  p.data.x.feature_names = d.x.feature_names;
  p.data.x.values = d.x.values.select_rows(idx);
  p.data.y.reserve(idx.size());
  for (auto i : idx) p.data.y.push_back(d.y[i]);
  p.indices = std::move(idx);
  return p;
}

}  // namespace

SplitResult split(const FeatureMatrix& x, const TargetVector& y, double ratio,
                  std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw SplitError("split ratio must be in (0, 1)");
  if (x.rows() != y.size()) throw DimensionError("split: X and y lengths differ");
  const std::size_t n = x.rows();
  const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) throw SplitError("split leaves an empty partition");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Dataset whole{x, y};
  SplitResult out;
  out.train = take(whole, {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train)});
  out.test = take(whole, {order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end()});
  return out;
}

Dataset subsample(const Dataset& data, std::size_t count, std::uint64_t seed) {
  const std::size_t n = data.x.rows();
  if (count >= n) return data;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(count);
  return take(data, std::move(order)).data;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& name : data.x.feature_names) out << name << ',';
  out << "PM2.5\n";
  out.precision(17);
  for (std::size_t r = 0; r < data.x.rows(); ++r) {
    for (double v : data.x.row(r)) out << v << ',';
    out << data.y[r] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(0, "missing header row");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "PM2.5") {
    throw ParseError(0, "processed dataset must end with a PM2.5 column");
  }
  Dataset d;
  d.x.feature_names.assign(header.begin(), header.end() - 1);
  std::vector<double> row(d.x.feature_names.size());
  std::size_t r = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++r;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw ParseError(r, "wrong column count");
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = parse_number(cells[c], r, header[c]);
    d.x.values.append_row(row);
    d.y.push_back(parse_number(cells.back(), r, "PM2.5"));
  }
  if (d.x.values.cols() == 0) d.x.values = Matrix(0, row.size());
  return d;
}

}  // namespace swarm_svr
