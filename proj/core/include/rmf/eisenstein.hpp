#ifndef RMF_EISENSTEIN_HPP
#define RMF_EISENSTEIN_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <string>

#include "rmf/qseries.hpp"

namespace rmf {

// Even: E_k(tau). Odd1/Odd2: the chi_{-4} twisted series with
// (chi_1, chi_{-4}) resp. (chi_{-4}, chi_1) divisor sums. L: E_2(tau) - d E_2(d tau).
enum class EisensteinKind { Even, Odd1, Odd2, L };

std::string to_string(EisensteinKind kind);

/// One Eisenstein series E(d*tau) of a given kind and weight.
struct EisensteinGenerator {
  EisensteinKind kind = EisensteinKind::Even;
  int weight = 2;
  long dilation = 1;

  friend auto operator<=>(const EisensteinGenerator&, const EisensteinGenerator&) = default;
};

std::string to_string(const EisensteinGenerator& g);

/// Exact linear combination of Eisenstein generators. L-kind generators are
/// expanded to their two E_2 terms on insertion, so equal forms compare equal.
class EisensteinCombination {
 public:
  EisensteinCombination() = default;

  void add(const EisensteinGenerator& g, const GaussianRational& coeff);
  const std::map<EisensteinGenerator, GaussianRational>& terms() const { return terms_; }
  GaussianRational coefficient(const EisensteinGenerator& g) const;

  QSeries expand(std::size_t truncation) const;

  /// sum over weight-2 Even terms of coefficient/dilation; zero iff the E_2
  /// part is a genuine modular form.
  GaussianRational weight2_dilation_sum() const;

  EisensteinCombination& operator+=(const EisensteinCombination& o);
  EisensteinCombination& operator*=(const GaussianRational& s);
  friend EisensteinCombination operator+(EisensteinCombination a, const EisensteinCombination& b) {
    return a += b;
  }
  friend EisensteinCombination operator*(const GaussianRational& s, EisensteinCombination a) {
    return a *= s;
  }

  friend bool operator==(const EisensteinCombination&, const EisensteinCombination&) = default;

  std::string str() const;

 private:
  std::map<EisensteinGenerator, GaussianRational> terms_;
};

/// E_{weight}(d tau); constant term 1, coefficient of q^{dn} is -(2 weight / B_weight) sigma_{weight-1}(n).
QSeries eis_even(int weight, long d, std::size_t truncation);

/// E^{(1)} or E^{(2)} of odd weight, dilated by d.
QSeries eis_odd(EisensteinKind kind, int weight, long d, std::size_t truncation);

/// L_d = E_2(tau) - d E_2(d tau), d > 1.
QSeries L_series(long d, std::size_t truncation);
EisensteinCombination L_combination(long d);

QSeries eisenstein_series(const EisensteinGenerator& g, std::size_t truncation);

/// Coefficient of q^n in E(d tau) without building the series.
Rational eisenstein_coefficient(const EisensteinGenerator& g, long n);

/// The main-term building block F_p(k, j; a tau) for a in {1, p}.
EisensteinCombination F_p_combination(long p, int k, int j, long a);
QSeries F_p_series(long p, int k, int j, long a, std::size_t truncation);

}  // namespace rmf

#endif  // RMF_EISENSTEIN_HPP
