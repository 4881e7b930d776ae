#include "rmf/rational.hpp"

#include <ostream>

#include "rmf/errors.hpp"

namespace rmf {

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) {
  if (v_.get_den() == 0) throw DomainError("Rational: zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw DomainError("Rational: empty string");
  s = s.substr(first, last - first + 1);
  const auto slash = s.find('/');
  mpz_class num;
  mpz_class den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0)
    throw DomainError("Rational: cannot parse '" + std::string(text) + "'");
  if (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0)
    throw DomainError("Rational: cannot parse '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class n;
  mpz_class d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("Rational: division by zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (!o.im_.is_zero()) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (!o.im_.is_zero()) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) {
    re_ += a.re_ * b.re_;
    return;
  }
  *this += a * b;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("GaussianRational: division by zero");
  const Rational n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GaussianRational result(1);
  GaussianRational base = *this;
  for (auto e = static_cast<unsigned long>(exponent); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  if (re_.is_zero()) return im_.str() + "*i";
  return re_.str() + (im_.sign() < 0 ? " - " : " + ") + (im_.sign() < 0 ? (-im_).str() : im_.str()) + "*i";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

}  // namespace rmf
