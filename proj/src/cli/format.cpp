#include "pmod/cli/format.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "pmod/cli/graph_source.hpp"

namespace pmod::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || std::isnan(value)) {
    throw InputError("invalid number '" + owned + "'");
  }
  return value;
}

std::vector<double> parse_real_list(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty number list");
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    const std::size_t first = text.find(':');
    const std::size_t second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
      throw InputError("grid must look like lo:hi:count, got '" + std::string(text) + "'");
    }
    const double lo = parse_real(text.substr(0, first));
    const double hi = parse_real(text.substr(first + 1, second - first - 1));
    const double count = parse_real(text.substr(second + 1));
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw InputError("grid bounds must be finite with lo <= hi");
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e6) throw InputError("grid count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t k = 0; k < n; ++k) {
      values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    return values;
  }
  for (const std::string& field : split_csv_line(text)) values.push_back(parse_real(field));
  return values;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw InputError("unterminated quote in CSV line");
  return fields;
}

std::string metadata_line(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string line = fmt::format("# pmod {}", kVersion);
  for (const auto& [key, value] : fields) line += fmt::format(" {}={}", key, value);
  return line;
}

std::string matrix_csv(const DistanceMatrix& m, std::string_view metadata) {
  std::string out(metadata);
  if (!out.empty()) out += '\n';
  for (const std::string& label : m.labels) out += "," + csv_field(label);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += csv_field(m.labels[i]);
    for (std::size_t j = 0; j < m.size(); ++j) out += "," + format_real(m(i, j));
    out += '\n';
  }
  return out;
}

DistanceMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    rows.push_back(split_csv_line(view));
    line_numbers.push_back(number);
  }
  if (rows.empty()) throw InputError("matrix CSV is empty");

  const std::size_t n = rows.front().size() - 1;
  if (n == 0) throw InputError("matrix CSV header lists no nodes");
  if (rows.size() != n + 1) {
    throw InputError(fmt::format("matrix CSV has {} labels but {} data rows", n, rows.size() - 1));
  }
  DistanceMatrix m;
  m.labels.assign(rows.front().begin() + 1, rows.front().end());
  m.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    const std::size_t line_no = line_numbers[i + 1];
    if (row.size() != n + 1) throw InputError(fmt::format("line {}: expected {} fields, got {}", line_no, n + 1, row.size()));
    if (row.front() != m.labels[i]) {
      throw InputError(fmt::format("line {}: row label '{}' does not match column '{}'", line_no, row.front(), m.labels[i]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      double value = 0.0;
      try {
        value = parse_real(row[j + 1]);
      } catch (const InputError& e) {
        throw InputError(fmt::format("line {}: {}", line_no, e.what()));
      }
      if (i == j ? value != 0.0 : !(value > 0.0 && std::isfinite(value))) {
        throw InputError(fmt::format("line {}: entry ({}, {}) = {} is not a valid distance", line_no, m.labels[i],
                                     m.labels[j], row[j + 1]));
      }
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (std::abs(a - b) > 1e-12 * std::max(a, b)) {
        throw InputError(fmt::format("matrix is not symmetric at ({}, {})", m.labels[i], m.labels[j]));
      }
    }
  }
  return m;
}

}  // namespace pmod::cli
