#ifndef RMF_QSERIES_HPP
#define RMF_QSERIES_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rmf/arith.hpp"
#include "rmf/check.hpp"
#include "rmf/rational.hpp"

namespace rmf {

/// Truncated power series q^e * sum_{n < T} c_n q^n with exact coefficients.
///
/// The prefactor exponent e is kept as a rational so that intermediate eta
/// products with fractional q-powers stay exact. Series that represent modular
/// forms at infinity have e = 0 and real coefficients; see require_modular().
class QSeries {
 public:
  QSeries() : QSeries(1) {}
  explicit QSeries(std::size_t truncation, Rational prefactor = Rational(0));
  QSeries(std::vector<GaussianRational> coeffs, Rational prefactor = Rational(0));

  static QSeries constant(const GaussianRational& value, std::size_t truncation);
  static QSeries one(std::size_t truncation) { return constant(GaussianRational(1), truncation); }

  std::size_t truncation() const { return coeffs_.size(); }
  const Rational& prefactor() const { return prefactor_; }
  std::span<const GaussianRational> coeffs() const { return coeffs_; }

  /// Coefficient of q^{e+n}; throws StructuralError when n >= truncation().
  const GaussianRational& operator[](std::size_t n) const;
  void set(std::size_t n, GaussianRational value);

  /// Index of the first nonzero coefficient, if any.
  std::optional<std::size_t> leading_index() const;
  bool is_zero() const { return !leading_index().has_value(); }

  QSeries truncated(std::size_t truncation) const;

  /// q -> q^m; the truncation grows to m*(T-1)+1 and the prefactor scales by m.
  QSeries dilate(long m) const;

  /// Folds an integral, non-negative prefactor into the coefficient offsets.
  /// The absolute truncation order e+T is preserved.
  QSeries with_integral_exponents() const;

  /// Throws StructuralError unless the prefactor is zero and all coefficients real.
  const QSeries& require_modular() const;

  std::vector<Rational> real_coefficients() const;

  QSeries inverse() const;
  QSeries pow(long exponent) const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const GaussianRational& s);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator/(const QSeries& a, const QSeries& b) { return a * b.inverse(); }
  friend QSeries operator*(QSeries a, const GaussianRational& s) { return a *= s; }
  friend QSeries operator*(const GaussianRational& s, QSeries a) { return a *= s; }
  QSeries operator-() const;

  friend bool operator==(const QSeries& a, const QSeries& b) = default;

 private:
  std::vector<GaussianRational> coeffs_;
  Rational prefactor_;
};

/// First exponent below min(a.T, b.T) where two series with equal prefactor differ.
std::optional<std::size_t> first_difference(const QSeries& a, const QSeries& b);

/// Finite product prod_delta eta(delta*tau)^{r_delta}.
class EtaQuotientSpec {
 public:
  EtaQuotientSpec() = default;
  EtaQuotientSpec(std::initializer_list<std::pair<const long, long>> terms);
  explicit EtaQuotientSpec(std::map<long, long> terms);

  const std::map<long, long>& terms() const { return terms_; }
  long exponent(long delta) const;

  Rational weight() const;
  /// sum delta*r_delta / 24, the order of the quotient at infinity.
  Rational order_at_infinity() const;

  EtaQuotientSpec& operator*=(const EtaQuotientSpec& o);
  friend EtaQuotientSpec operator*(EtaQuotientSpec a, const EtaQuotientSpec& b) { return a *= b; }
  EtaQuotientSpec pow(long exponent) const;

  friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;

 private:
  void prune();
  std::map<long, long> terms_;
};

/// phi(tau) = sum_{n in Z} q^{n^2}.
QSeries theta_phi(std::size_t truncation);

/// eta^5(2t) / (eta^2(t) eta^2(4t)), equal to phi(t) by the triple product.
EtaQuotientSpec phi_eta_spec(long dilation = 1);

/// Expansion with prefactor sum delta*r/24 and T coefficients, leading coefficient 1.
QSeries eta_expand(const EtaQuotientSpec& spec, std::size_t truncation);

/// Order of the quotient at the cusp with denominator c on Gamma_0(N):
/// N / (24 gcd(c^2, N)) * sum gcd(c, delta)^2 r_delta / delta.
Rational ligozat_order(const EtaQuotientSpec& spec, long level, long c);

struct LigozatReport {
  bool cusp_form = false;
  std::vector<Check> checks;
};

/// Ligozat criteria for membership of the quotient in S_weight(Gamma_0(N), chi).
LigozatReport is_cusp_form(const EtaQuotientSpec& spec, long level, const Rational& weight,
                           Character chi);

std::vector<long> divisors(long n);

}  // namespace rmf

#endif  // RMF_QSERIES_HPP
