#include "medianqmc/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace mqmc {

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {
  buf_ = kCsvSchemaLine;
  buf_ += '\n';
}

void CsvWriter::raw_line(const std::string& line) {
  if (row_open_) end_row();
  buf_ += line;
  buf_ += '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (row_open_) buf_ += ',';
  buf_ += s;
  row_open_ = true;
  return *this;
}

CsvWriter& CsvWriter::cell(const char* s) { return cell(std::string(s)); }

CsvWriter& CsvWriter::cell(double v) { return cell(format_csv_double(v)); }

CsvWriter& CsvWriter::cell(std::uint64_t v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(int v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
  buf_ += '\n';
  row_open_ = false;
}

void CsvWriter::commit() {
  if (committed_) throw std::runtime_error("CsvWriter: already committed");
  if (row_open_) end_row();
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    out.flush();
    if (!out.good()) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path_.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path_);
  }
  committed_ = true;
}

}  // namespace mqmc
