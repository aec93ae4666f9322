#include "segscan/cli.hpp"

#include "segscan/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace segscan::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_field(std::string_view field, const std::string& source, std::size_t line) {
  field = trim(field);
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
    field = trim(field.substr(1, field.size() - 2));
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw IoError(source + ": line " + std::to_string(line) + ": cannot parse '" +
                  std::string(field) + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw IoError(source + ": line " + std::to_string(line) + ": non-finite value '" +
                  std::string(field) + "'");
  }
  return value;
}

}  // namespace

Signal read_csv(std::istream& in, bool header, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t number = 0;
  std::size_t blank_at = 0;  // first blank line seen, to reject data after it
  while (std::getline(in, line)) {
    ++number;
    if (header && number == 1) continue;
    if (trim(line).empty()) {
      if (blank_at == 0) blank_at = number;
      continue;
    }
    if (blank_at != 0) {
      throw IoError(source + ": line " + std::to_string(blank_at) + ": blank line inside data");
    }
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_field(rest.substr(0, comma), source, number));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError(source + ": line " + std::to_string(number) + ": expected " +
                    std::to_string(rows.front().size()) + " fields, found " +
                    std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError(source + ": read error");
  try {
    return validate_signal(rows);
  } catch (const Error& e) {
    throw IoError(source + ": " + e.what());
  }
}

Signal read_csv(const std::filesystem::path& path, bool header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in, header, path.string());
}

void write_csv(std::ostream& out, const Signal& signal, bool header) {
  if (header) {
    for (Index k = 0; k < signal.n_dims(); ++k) out << (k ? "," : "") << "dim" << k;
    out << '\n';
  }
  char buffer[64];
  for (Index t = 0; t < signal.n_samples(); ++t) {
    for (Index k = 0; k < signal.n_dims(); ++k) {
      const auto res = std::to_chars(buffer, buffer + sizeof buffer, signal.data()(t, k));
      if (k) out << ',';
      out.write(buffer, res.ptr - buffer);
    }
    out << '\n';
  }
}

}  // namespace segscan::cli
