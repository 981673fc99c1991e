#pragma once

// Truncated Taylor series at eta0 = 0 with exact rational coefficients.
//
// A Jet of order K stores c_0..c_K. Every operation truncates at the order
// of its result, so coefficients that are reported are always exact: a
// product of two order-K jets agrees with the product of the underlying
// functions through eta0^K. Binary operations on jets of different order
// return a jet of the smaller order.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scalecascade/poly.hpp"
#include "scalecascade/ratio.hpp"

namespace scalecascade {

class Jet {
 public:
  /// Zero jet of the given order.
  explicit Jet(std::size_t order = 0);
  /// Coefficients beyond `order` are dropped; missing ones are zero.
  Jet(std::size_t order, std::vector<Ratio> coefficients);

  static Jet constant(std::size_t order, const Ratio& c);
  static Jet variable(std::size_t order);
  static Jet from_poly(const Poly& p, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const Ratio> coefficients() const { return coeffs_; }
  const Ratio& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Index of the first nonzero coefficient, if any.
  std::optional<std::size_t> leading_order() const;
  bool is_zero() const { return !leading_order().has_value(); }

  /// Same series, cut at a lower order. Throws DomainError if `order` is
  /// larger than the current one.
  Jet truncated(std::size_t order) const;
  /// a(-eta0).
  Jet reflected() const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator*(const Ratio& s, const Jet& a);
  friend Jet operator+(Jet a, const Ratio& c);
  friend Jet operator-(Jet a, const Ratio& c) { return a + (-c); }
  friend Jet operator+(const Ratio& c, Jet a) { return std::move(a) + c; }
  friend Jet operator-(const Ratio& c, const Jet& a) { return -a + c; }
  Jet operator-() const;

  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  std::vector<Ratio> coeffs_;
};

Jet jet_mul(const Jet& a, const Jet& b);

/// Throws DomainError if c_0 == 0.
Jet jet_recip(const Jet& a);

/// c_i -> i * c_i shifted down; the result has order K - 1 (order 0 maps to
/// the order-0 zero jet).
Jet jet_derive(const Jet& a);

/// Requires c_0 == 1, otherwise DomainError.
Jet jet_log(const Jet& a);

}  // namespace scalecascade
