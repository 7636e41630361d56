#include "rhex/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "rhex/errors.hpp"

namespace rhex {

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  out_ << header << "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError("write failure on " + path_.string());
  out_.close();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_field(const std::string& field, const std::filesystem::path& path, int row,
                   std::size_t col) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(path.string(), row,
                     "column " + std::to_string(col + 1) + ": not a number: '" + field + "'");
  }
  return v;
}

}  // namespace

CsvTable read_numeric_csv(const std::filesystem::path& path, const std::string& expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path.string(), 1, "empty file, expected a header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_fields(line);
  if (!expected_header.empty() && line != expected_header) {
    throw ParseError(path.string(), 1,
                     "unexpected header '" + line + "', expected '" + expected_header + "'");
  }

  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      throw ParseError(path.string(), row,
                       "expected " + std::to_string(table.header.size()) + " columns, got " +
                           std::to_string(fields.size()));
    }
    std::vector<double> values(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      values[c] = parse_field(fields[c], path, row, c);
    }
    table.rows.push_back(std::move(values));
  }
  return table;
}

void write_signal_csv(const std::filesystem::path& path, const ExcitationSignal& signal) {
  CsvWriter w(path, kSignalHeader);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    w.row({std::to_string(i + 1), format_double(signal[i])});
  }
  w.close();
}

ExcitationSignal read_signal_csv(const std::filesystem::path& path) {
  const CsvTable table = read_numeric_csv(path, kSignalHeader);
  ExcitationSignal s;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (r[0] != static_cast<double>(i + 1)) {
      throw ParseError(path.string(), static_cast<int>(i + 2),
                       "column 1: expected k=" + std::to_string(i + 1));
    }
    if (!std::isfinite(r[1])) {
      throw ParseError(path.string(), static_cast<int>(i + 2), "column 2: non-finite sample");
    }
    s.append(r[1]);
  }
  return s;
}

void write_distribution_csv(const std::filesystem::path& path, const Distribution& d) {
  if (d.dim() != 2) throw IoError("distribution csv writer expects 2-dimensional points");
  CsvWriter w(path, kDistributionHeader);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto pt = d[i];
    w.row({std::to_string(i), format_double(pt[0]), format_double(pt[1])});
  }
  w.close();
}

Distribution read_distribution_csv(const std::filesystem::path& path) {
  const CsvTable table = read_numeric_csv(path, kDistributionHeader);
  Distribution d(2);
  for (const auto& r : table.rows) {
    const std::array<double, 2> pt{r[1], r[2]};
    d.append(pt);
  }
  return d;
}

}  // namespace rhex
