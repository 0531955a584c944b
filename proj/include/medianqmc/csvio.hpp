#pragma once

#include <cstdint>
#include <string>

namespace mqmc {

// Every output file starts with this schema marker.
inline constexpr const char* kCsvSchemaLine = "# median-qmc v1";

// %.17g: round-trippable binary64 serialization.
std::string format_csv_double(double v);

// Accumulates a complete CSV in memory and publishes it atomically:
// commit() writes "<path>.tmp" and renames it over path, so a reader
// never observes a partial file. Without commit() nothing is written.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);

  void raw_line(const std::string& line);

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(const char* s);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::uint64_t v);
  CsvWriter& cell(int v);
  void end_row();

  // Throws std::runtime_error on I/O failure; the temp file is removed
  // on the failure path.
  void commit();

 private:
  std::string path_;
  std::string buf_;
  bool row_open_ = false;
  bool committed_ = false;
};

}  // namespace mqmc
