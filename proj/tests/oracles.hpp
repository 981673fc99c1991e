#pragma once

// Test-only oracles, independent of the jet pipeline under test.

#include <vector>

#include "scalecascade/jet.hpp"
#include "scalecascade/poly.hpp"
#include "scalecascade/ratio.hpp"

namespace scalecascade::testing {

/// Taylor coefficients of num/den through x^order by power-series long
/// division on full polynomials.
inline std::vector<Ratio> series_division(const RationalFunction& f, std::size_t order) {
  const Ratio d0 = f.denominator.coeff(0);
  std::vector<Ratio> q(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Ratio acc = f.numerator.coeff(n);
    for (std::size_t j = 1; j <= n; ++j) acc -= f.denominator.coeff(j) * q[n - j];
    q[n] = acc / d0;
  }
  return q;
}

/// d^2/dx^2 (N/D) at x = 0 by the quotient rule on full polynomials.
inline Ratio second_derivative_at_zero(const RationalFunction& f) {
  const Poly& n = f.numerator;
  const Poly& d = f.denominator;
  const Ratio n0 = n.evaluate(Ratio(0)), n1 = n.derivative().evaluate(Ratio(0)),
              n2 = n.derivative().derivative().evaluate(Ratio(0));
  const Ratio d0 = d.evaluate(Ratio(0)), d1 = d.derivative().evaluate(Ratio(0)),
              d2 = d.derivative().derivative().evaluate(Ratio(0));
  // (N/D)'' = (N'' D - N D'')/D^2 - 2 D' (N' D - N D')/D^3
  return (n2 * d0 - n0 * d2) / (d0 * d0) - Ratio(2) * d1 * (n1 * d0 - n0 * d1) / (d0 * d0 * d0);
}

inline Poly poly_of(std::initializer_list<long> c) {
  std::vector<Ratio> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

}  // namespace scalecascade::testing
