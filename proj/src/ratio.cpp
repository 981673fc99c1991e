#include "scalecascade/ratio.hpp"

#include <ostream>

#include "scalecascade/errors.hpp"

namespace scalecascade {

namespace {

bool is_digit_run(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Ratio::Ratio(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_.get_num() = num;
  value_.get_den() = den;
  value_.canonicalize();
}

Ratio::Ratio(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Ratio Ratio::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                         : body.substr(slash + 1);
  if (!is_digit_run(num) || !is_digit_run(den)) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw DomainError("rational '" + std::string(text) + "' has zero denominator");
  }
  if (negative) n = -n;
  return Ratio(n, d);
}

Ratio Ratio::abs() const {
  Ratio out;
  mpq_abs(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

Ratio Ratio::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  Ratio out;
  mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

Ratio Ratio::pow(unsigned long exponent) const {
  Ratio out;
  mpz_pow_ui(out.value_.get_num_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.value_.get_den_mpz_t(), value_.get_den_mpz_t(), exponent);
  return out;
}

std::string Ratio::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Ratio& Ratio::operator+=(const Ratio& rhs) {
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Ratio& Ratio::operator-=(const Ratio& rhs) {
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Ratio& Ratio::operator*=(const Ratio& rhs) {
  mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Ratio& Ratio::operator/=(const Ratio& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Ratio Ratio::operator-() const {
  Ratio out;
  mpq_neg(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

}  // namespace scalecascade
