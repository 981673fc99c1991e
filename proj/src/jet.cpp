#include "scalecascade/jet.hpp"

#include <algorithm>

#include "scalecascade/errors.hpp"
#include "scalecascade/kernels.hpp"

namespace scalecascade {

Jet::Jet(std::size_t order) : coeffs_(order + 1) {}

Jet::Jet(std::size_t order, std::vector<Ratio> coefficients) : coeffs_(std::move(coefficients)) {
  coeffs_.resize(order + 1);
}

Jet Jet::constant(std::size_t order, const Ratio& c) {
  Jet j(order);
  j.coeffs_[0] = c;
  return j;
}

Jet Jet::variable(std::size_t order) {
  Jet j(order);
  if (order >= 1) j.coeffs_[1] = Ratio(1);
  return j;
}

Jet Jet::from_poly(const Poly& p, std::size_t order) {
  const auto c = p.coefficients();
  const std::size_t n = std::min(c.size(), order + 1);
  return Jet(order, std::vector<Ratio>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::optional<std::size_t> Jet::leading_order() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return i;
  }
  return std::nullopt;
}

Jet Jet::truncated(std::size_t order) const {
  if (order > this->order()) throw DomainError("cannot raise the order of a jet");
  return Jet(order, std::vector<Ratio>(coeffs_.begin(),
                                       coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
}

Jet Jet::reflected() const {
  Jet out = *this;
  for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  Jet out(std::min(lhs.order(), rhs.order()));
  kernels::convolve(lhs.coeffs_, rhs.coeffs_, out.coeffs_);
  return out;
}

Jet operator*(const Ratio& s, const Jet& a) {
  Jet out = a;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

Jet operator+(Jet a, const Ratio& c) {
  a.coeffs_[0] += c;
  return a;
}

Jet Jet::operator-() const { return Ratio(-1) * *this; }

Jet jet_mul(const Jet& a, const Jet& b) { return a * b; }

Jet jet_recip(const Jet& a) {
  const auto c = a.coefficients();
  if (c[0].is_zero()) {
    throw DomainError("reciprocal of a series with zero constant term");
  }
  const Ratio inv0 = c[0].reciprocal();
  std::vector<Ratio> b(c.size());
  b[0] = inv0;
  mpq_class acc;
  mpq_class tmp;
  for (std::size_t n = 1; n < c.size(); ++n) {
    acc = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (c[j].is_zero() || b[n - j].is_zero()) continue;
      mpq_mul(tmp.get_mpq_t(), c[j].get_mpq().get_mpq_t(), b[n - j].get_mpq().get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
    }
    b[n] = -(Ratio(acc) * inv0);
  }
  return Jet(a.order(), std::move(b));
}

Jet jet_derive(const Jet& a) {
  const auto c = a.coefficients();
  if (c.size() == 1) return Jet(0);
  std::vector<Ratio> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Ratio(i);
  return Jet(a.order() - 1, std::move(d));
}

Jet jet_log(const Jet& a) {
  const auto c = a.coefficients();
  if (c[0] != Ratio(1)) {
    throw DomainError("logarithm requires constant term 1, got " + c[0].str());
  }
  // n*l_n = n*a_n - sum_{j=1}^{n-1} j*l_j*a_{n-j}, from l' * a = a'.
  std::vector<Ratio> l(c.size());
  for (std::size_t n = 1; n < c.size(); ++n) {
    Ratio acc = c[n] * Ratio(n);
    for (std::size_t j = 1; j < n; ++j) {
      if (l[j].is_zero() || c[n - j].is_zero()) continue;
      acc -= Ratio(j) * l[j] * c[n - j];
    }
    l[n] = acc / Ratio(n);
  }
  return Jet(a.order(), std::move(l));
}

}  // namespace scalecascade
