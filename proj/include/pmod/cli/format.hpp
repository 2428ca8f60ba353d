#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmod/metrics.hpp"

namespace pmod::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest round-trip decimal; "inf" / "-inf" / "nan" for non-finite values.
std::string format_real(double x);

/// Accepts decimal numbers and "inf".
double parse_real(std::string_view text);

/// "a,b,c" or an inclusive linear grid "lo:hi:count".
std::vector<double> parse_real_list(std::string_view text);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);
std::vector<std::string> split_csv_line(std::string_view line);

/// "# pmod 0.1.0 key=value ..." metadata comment.
std::string metadata_line(const std::vector<std::pair<std::string, std::string>>& fields);

/// Square CSV with the node labels as header row and first column.
std::string matrix_csv(const DistanceMatrix& m, std::string_view metadata);

/// Inverse of matrix_csv. Lines starting with '#' are skipped. Requires a
/// symmetric matrix with zero diagonal and positive finite off-diagonal entries.
DistanceMatrix parse_matrix_csv(std::string_view text);

}  // namespace pmod::cli
