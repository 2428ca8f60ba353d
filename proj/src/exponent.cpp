#include "pmod/exponent.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pmod {

Exponent::Exponent(double value) : value_(value) {
  if (std::isnan(value) || value < 1.0) {
    throw std::invalid_argument("exponent must satisfy p >= 1, got " + std::to_string(value));
  }
}

Exponent Exponent::infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
    return infinity();
  }
  std::string owned(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(owned, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse exponent '" + owned + "'");
  }
  if (used != owned.size()) {
    throw std::invalid_argument("cannot parse exponent '" + owned + "'");
  }
  return Exponent(value);
}

bool Exponent::is_infinite() const noexcept { return std::isinf(value_); }

double Exponent::conjugate() const noexcept {
  if (is_infinite()) return 1.0;
  if (value_ == 1.0) return std::numeric_limits<double>::infinity();
  return value_ / (value_ - 1.0);
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream out;
  out.precision(12);
  out << value_;
  return out.str();
}

}  // namespace pmod
