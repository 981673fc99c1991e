#pragma once

#include <mpfr.h>

#include <span>
#include <string>
#include <string_view>

#include "scalecascade/ratio.hpp"

namespace scalecascade {

class Poly;
class Jet;

/// Binary floating-point value with an explicit precision in bits.
/// Arithmetic between values of different precision rounds to the coarser
/// precision; every rounding is to nearest.
class BigFloat {
 public:
  explicit BigFloat(long precision_bits);
  BigFloat(const Ratio& value, long precision_bits);
  BigFloat(long value, long precision_bits);
  /// Decimal literal, e.g. "0.25" or "1e-3". Throws DomainError on junk.
  BigFloat(std::string_view decimal, long precision_bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  BigFloat abs() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant decimal digits; 0 picks
  /// enough digits to identify the value at its precision.
  std::string to_string(std::size_t digits = 0) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return mpfr_less_p(a.value_, b.value_) != 0;
  }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) {
    return mpfr_lessequal_p(a.value_, b.value_) != 0;
  }

  mpfr_srcptr raw() const { return value_; }

 private:
  mpfr_t value_;
};

/// Horner evaluation with every coefficient rounded to x's precision first.
BigFloat float_eval(std::span<const Ratio> coefficients, const BigFloat& x);
BigFloat float_eval(const Poly& p, const BigFloat& x);
BigFloat float_eval(const Jet& p, const BigFloat& x);

}  // namespace scalecascade
