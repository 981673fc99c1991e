#include "scalecascade/bigfloat.hpp"

#include <algorithm>
#include <cmath>

#include "scalecascade/errors.hpp"
#include "scalecascade/jet.hpp"
#include "scalecascade/poly.hpp"

namespace scalecascade {

namespace {

mpfr_prec_t checked(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 24) {
    throw DomainError("unsupported floating precision " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

long coarser(const BigFloat& a, const BigFloat& b) { return std::min(a.precision(), b.precision()); }

}  // namespace

BigFloat::BigFloat(long precision_bits) {
  mpfr_init2(value_, checked(precision_bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Ratio& value, long precision_bits) {
  mpfr_init2(value_, checked(precision_bits));
  mpfr_set_q(value_, value.get_mpq().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long value, long precision_bits) {
  mpfr_init2(value_, checked(precision_bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(std::string_view decimal, long precision_bits) {
  mpfr_init2(value_, checked(precision_bits));
  const std::string text(decimal);
  char* end = nullptr;
  if (!text.empty()) mpfr_strtofr(value_, text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end == nullptr || *end != '\0') {
    mpfr_clear(value_);
    throw DomainError("malformed decimal '" + text + "'");
  }
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::abs() const {
  BigFloat out(precision());
  mpfr_abs(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string BigFloat::to_string(std::size_t digits) const {
  if (digits == 0) {
    digits = static_cast<std::size_t>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 1;
  }
  if (mpfr_zero_p(value_)) return "0";
  const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt.c_str(), value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(coarser(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(coarser(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(coarser(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat out(coarser(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat float_eval(std::span<const Ratio> coefficients, const BigFloat& x) {
  const long prec = x.precision();
  BigFloat acc(prec);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + BigFloat(*it, prec);
  }
  return acc;
}

BigFloat float_eval(const Poly& p, const BigFloat& x) { return float_eval(p.coefficients(), x); }

BigFloat float_eval(const Jet& p, const BigFloat& x) { return float_eval(p.coefficients(), x); }

}  // namespace scalecascade
