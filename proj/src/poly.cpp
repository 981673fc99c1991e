#include "scalecascade/poly.hpp"

#include <algorithm>

#include "scalecascade/kernels.hpp"

namespace scalecascade {

Poly::Poly(std::vector<Ratio> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly Poly::constant(const Ratio& c) { return Poly(std::vector<Ratio>{c}); }

Poly Poly::monomial(const Ratio& c, std::size_t power) {
  std::vector<Ratio> v(power + 1);
  v[power] = c;
  return Poly(std::move(v));
}

Poly Poly::variable() { return monomial(Ratio(1), 1); }

Ratio Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Ratio(); }

Ratio Poly::evaluate(const Ratio& x) const {
  Ratio acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Ratio> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = coeffs_[i] * Ratio(i);
  }
  return Poly(std::move(d));
}

Poly Poly::reflected() const {
  Poly out = *this;
  for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return Poly();
  std::vector<Ratio> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  kernels::convolve(lhs.coeffs_, rhs.coeffs_, out);
  return Poly(std::move(out));
}

Poly operator*(const Ratio& s, const Poly& p) {
  if (s.is_zero()) return Poly();
  Poly out = p;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

Poly Poly::operator-() const { return Ratio(-1) * *this; }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

Ratio poly_eval(const Poly& p, const Ratio& x) { return p.evaluate(x); }

bool RationalFunction::equivalent_to(const RationalFunction& other) const {
  return numerator * other.denominator == other.numerator * denominator;
}

}  // namespace scalecascade
