#ifndef RMF_ORACLE_HPP
#define RMF_ORACLE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rmf {

/// Diagonal quadratic form sum_i a_i (x_1^2 + ... + x_{m_i}^2), m_i even.
struct FormSpec {
  // (coefficient a_i >= 1, variable count m_i)
  std::vector<std::pair<long, int>> parts;

  int variables() const;

  /// x_1^2 + ... + x_{2k-2j}^2 + p (y_1^2 + ... + y_{2j}^2).
  static FormSpec theta_power(long p, int k, int j);
};

/// Default enumeration budget for repnum_bruteforce, in visited lattice points.
inline constexpr double kBruteforceBudget = 2e8;

/// Counts integer vectors with form value n by bounded enumeration.
/// Throws ResourceError beyond 8 variables, n > 10^4, or when the
/// enumeration box exceeds the budget.
mpz_class repnum_bruteforce(const FormSpec& spec, long n, double budget = kBruteforceBudget);

/// Coefficients 0..n_max of prod_i theta(a_i q)^{m_i}, by integer convolution.
std::vector<mpz_class> repnum_convolution(const FormSpec& spec, std::size_t n_max);

/// "n,count" rows with a header line.
std::string repnum_csv(const std::vector<mpz_class>& counts);

}  // namespace rmf

#endif  // RMF_ORACLE_HPP
