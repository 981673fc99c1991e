#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace scalecascade {

/// Exact rational number in canonical form: positive denominator and
/// gcd(|num|, den) = 1 after every operation.
class Ratio {
 public:
  Ratio() = default;

  template <std::signed_integral I>
  Ratio(I value) : value_(static_cast<long>(value)) {}

  template <std::unsigned_integral I>
  Ratio(I value) : value_(static_cast<unsigned long>(value)) {}

  /// Throws DomainError if `den` is zero.
  Ratio(const mpz_class& num, const mpz_class& den);

  explicit Ratio(const mpq_class& value);

  /// Accepts "p/q" or "p" with optional leading sign. Whitespace, empty
  /// components and zero denominators are rejected with DomainError.
  static Ratio parse(std::string_view text);

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& get_mpq() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Ratio abs() const;
  /// Throws DomainError on zero.
  Ratio reciprocal() const;
  Ratio pow(unsigned long exponent) const;

  double to_double() const { return value_.get_d(); }

  /// Always "p/q", including integers ("3/1") and zero ("0/1").
  std::string str() const;

  Ratio& operator+=(const Ratio& rhs);
  Ratio& operator-=(const Ratio& rhs);
  Ratio& operator*=(const Ratio& rhs);
  Ratio& operator/=(const Ratio& rhs);

  friend Ratio operator+(Ratio lhs, const Ratio& rhs) { return lhs += rhs; }
  friend Ratio operator-(Ratio lhs, const Ratio& rhs) { return lhs -= rhs; }
  friend Ratio operator*(Ratio lhs, const Ratio& rhs) { return lhs *= rhs; }
  friend Ratio operator/(Ratio lhs, const Ratio& rhs) { return lhs /= rhs; }
  Ratio operator-() const;

  friend bool operator==(const Ratio& lhs, const Ratio& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Ratio& lhs, const Ratio& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Ratio& r);

}  // namespace scalecascade
