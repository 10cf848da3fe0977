#pragma once

#include "hypergrowth/timeseries.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace hypergrowth {

/// Column selection and unit conversion for ingest_csv.
///
/// Empty column names select the first (year) and second (value) columns.
/// Every parsed value is multiplied by scale_factor, e.g. 1e-6 turns
/// thousands of persons into billions.
struct CsvOptions {
  std::string year_column;
  std::string value_column;
  Unit unit = Unit::Dimensionless;
  double scale_factor = 1.0;
  std::string label;
};

/// Reads a comma-separated table with a mandatory header row. Lines starting
/// with '#' and blank lines are skipped. Rows are sorted by year.
///
/// Line numbers in error messages count every physical line of the source,
/// header included, starting at 1.
TimeSeries ingest_csv(std::istream& source, const CsvOptions& options = {});
TimeSeries ingest_csv_file(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes "year,value" rows using the shortest representation that parses
/// back to the identical double.
void write_csv(std::ostream& sink, const TimeSeries& series, const std::string& year_header = "year",
               const std::string& value_header = "value");

/// Shortest round-trip decimal form of a double.
std::string format_shortest(double value);

}  // namespace hypergrowth
