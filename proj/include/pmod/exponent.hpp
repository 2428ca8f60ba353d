#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace pmod {

/// Modulus exponent p in [1, inf]. The string "inf" denotes p = infinity.
class Exponent {
public:
  /// Throws std::invalid_argument when value < 1 or NaN.
  Exponent(double value);  // NOLINT(google-explicit-constructor)

  static Exponent infinity();
  static Exponent parse(std::string_view text);

  double value() const noexcept { return value_; }
  bool is_infinite() const noexcept;
  bool is_one() const noexcept { return value_ == 1.0; }
  bool is_interior() const noexcept { return value_ > 1.0 && !is_infinite(); }

  /// Hölder conjugate p/(p-1); +inf for p = 1, 1 for p = inf.
  double conjugate() const noexcept;

  std::string to_string() const;

  friend auto operator<=>(const Exponent&, const Exponent&) = default;

private:
  double value_;
};

}  // namespace pmod
