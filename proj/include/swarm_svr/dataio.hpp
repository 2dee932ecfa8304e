#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarm_svr/matrix.hpp"

namespace swarm_svr {

/// One hourly row of the UCI Beijing multi-site air-quality CSV. Missing
/// cells ("NA") are empty optionals, never zero.
struct RawRecord {
  std::size_t row_index = 0;  // 1-based data row in the source file
  int year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;
  std::optional<double> pm25, pm10, so2, no2, co, o3;
  std::optional<double> temp, pres, dewp, rain;
  std::optional<std::string> wd;
  std::optional<double> wspm;
  std::string station;
};

/// Parameters tracked by missing-value accounting and imputation, in the
/// column order of the source file.
enum class Parameter { kPm25, kPm10, kSo2, kNo2, kCo, kO3, kTemp, kPres, kDewp, kRain, kWd, kWspm };

inline constexpr std::array<Parameter, 12> kAllParameters = {
    Parameter::kPm25, Parameter::kPm10, Parameter::kSo2,  Parameter::kNo2,
    Parameter::kCo,   Parameter::kO3,   Parameter::kTemp, Parameter::kPres,
    Parameter::kDewp, Parameter::kRain, Parameter::kWd,   Parameter::kWspm};

/// Column name as it appears in the CSV header ("PM2.5", "wd", ...).
std::string_view parameter_name(Parameter p);

/// Numeric field accessor; returns nullptr for the categorical wd column.
std::optional<double>* numeric_field(RawRecord& r, Parameter p);
const std::optional<double>* numeric_field(const RawRecord& r, Parameter p);

/// Which rows count as "year Y".
///  - kMeasurementYear: 1 March 00:00 of Y through 1 March 00:00 of Y+1
///    inclusive (8761 hourly rows when complete). The station files start on
///    2013-03-01, and this window reproduces the published missing-value
///    fractions.
///  - kCalendar: rows whose year column equals Y.
enum class YearWindow { kMeasurementYear, kCalendar };

bool in_year(const RawRecord& r, int year, YearWindow window);

std::vector<RawRecord> parse_csv(std::istream& in);
std::vector<RawRecord> load_csv(const std::filesystem::path& path);

/// Rows of `year` under `window`, in file order. Throws EmptyReportError when
/// no row matches.
std::vector<RawRecord> select_year(const std::vector<RawRecord>& records, int year,
                                   YearWindow window = YearWindow::kMeasurementYear);

struct MissingEntry {
  Parameter parameter;
  std::size_t count = 0;
  double fraction = 0.0;
};

struct MissingReport {
  int year = 0;
  std::size_t total_rows = 0;
  std::vector<MissingEntry> entries;  // one per kAllParameters, same order

  const MissingEntry& at(Parameter p) const;
};

MissingReport count_missing(const std::vector<RawRecord>& records, int year,
                            YearWindow window = YearWindow::kMeasurementYear);

/// Fills missing cells with the column mode. Ties go to the smallest value.
void impute_column_mode(std::vector<std::optional<double>>& column);
/// Categorical variant; ties go to the lexicographically first string.
void impute_column_mode(std::vector<std::optional<std::string>>& column);

/// Selects the rows of `year` and fills every missing cell with that year's
/// column mode. Throws ImputationError when a column has no observed value.
std::vector<RawRecord> impute_mode(const std::vector<RawRecord>& records, int year,
                                   YearWindow window = YearWindow::kMeasurementYear);

/// Compass bearing in degrees for a 16-point direction ("N" = 0, "E" = 90).
double wind_direction_degrees(std::string_view direction);

inline constexpr std::size_t kFeatureCount = 12;
const std::vector<std::string>& feature_names();

struct Dataset {
  FeatureMatrix x;
  TargetVector y;
};

/// Features [PM10, SO2, NO2, CO, O3, TEMP, PRES, DEWP, RAIN, WSPM, sin(wd),
/// cos(wd)], target PM2.5. Records must be fully imputed.
Dataset encode_features(const std::vector<RawRecord>& records);

struct ScalerParams {
  std::vector<double> feature_mean;
  std::vector<double> feature_std;
  double target_mean = 0.0;
  double target_std = 1.0;

  void transform_row(std::span<double> row) const;
  void inverse_row(std::span<double> row) const;
  double transform_target(double v) const { return (v - target_mean) / target_std; }
  double inverse_target(double v) const { return v * target_std + target_mean; }
};

struct StandardizedDataset {
  Dataset data;
  ScalerParams scaler;
};

/// Z-scores every column and the target with population statistics. A
/// constant column becomes all zeros with std recorded as 1.
StandardizedDataset standardize(const FeatureMatrix& x, const TargetVector& y);

struct Partition {
  Dataset data;
  std::vector<std::size_t> indices;  // rows of the input, in partition order
};

struct SplitResult {
  Partition train;
  Partition test;
};

inline constexpr double kDefaultSplitRatio = 0.8;

/// Seeded uniform shuffle; train receives floor(ratio * n) rows.
SplitResult split(const FeatureMatrix& x, const TargetVector& y, double ratio,
                  std::uint64_t seed);

/// Seeded sample of `count` rows without replacement (all rows if count >= n).
Dataset subsample(const Dataset& data, std::size_t count, std::uint64_t seed);

/// Processed-dataset CSV: header of feature names plus "PM2.5".
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace swarm_svr
