#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scalecascade/ratio.hpp"

namespace scalecascade {

/// Dense univariate polynomial in eta0 over Ratio. Coefficient i multiplies
/// eta0^i; the top stored coefficient is nonzero, and zero is the empty list.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Ratio> coefficients);

  static Poly constant(const Ratio& c);
  /// c * eta0^power
  static Poly monomial(const Ratio& c, std::size_t power);
  /// The polynomial eta0.
  static Poly variable();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  std::span<const Ratio> coefficients() const { return coeffs_; }
  /// Zero past the degree.
  Ratio coeff(std::size_t i) const;

  Ratio evaluate(const Ratio& x) const;
  Poly derivative() const;
  /// p(-eta0).
  Poly reflected() const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(const Ratio& s, const Poly& p);
  friend Poly operator+(Poly p, const Ratio& c) { return p += Poly::constant(c); }
  friend Poly operator-(Poly p, const Ratio& c) { return p -= Poly::constant(c); }
  friend Poly operator+(const Ratio& c, Poly p) { return p += Poly::constant(c); }
  friend Poly operator-(const Ratio& c, const Poly& p) { return Poly::constant(c) - p; }
  Poly operator-() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();

  std::vector<Ratio> coeffs_;
};

Poly poly_mul(const Poly& a, const Poly& b);
Ratio poly_eval(const Poly& p, const Ratio& x);

/// A rational function kept as an explicit (numerator, denominator) pair.
/// No reduction is attempted; equality is decided by cross-multiplication.
struct RationalFunction {
  Poly numerator;
  Poly denominator;

  bool is_identically_zero() const { return numerator.is_zero(); }
  /// n1 * d2 == n2 * d1
  bool equivalent_to(const RationalFunction& other) const;
};

}  // namespace scalecascade
