#ifndef RMF_FORMULA_HPP
#define RMF_FORMULA_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "rmf/check.hpp"
#include "rmf/eisenstein.hpp"
#include "rmf/qseries.hpp"

namespace rmf {

// Everything here concerns z^{k-j} z_p^j = phi^{2k-2j}(tau) phi^{2j}(p tau), a
// modular form of weight k on Gamma_0(4p) (character chi_{-4} for odd k), and
// its split into the explicit Eisenstein main terms plus a cusp form.

/// Throws DomainError unless p is an odd prime, k >= 2 and 0 <= j <= k.
void validate_parameters(long p, int k, int j);

/// ceil(weight * index(Gamma_0(4p)) / 12) with index 6(p+1).
std::size_t sturm_bound(long p, int weight);

/// max(101, sturm_bound + 1).
std::size_t default_truncation(long p, int k);

/// z^{k-j} z_p^j as an eta quotient, via phi = eta^5(2t)/(eta^2(t) eta^2(4t)).
EtaQuotientSpec theta_power_spec(long p, int k, int j);

/// Product of theta series; no eta machinery involved.
QSeries theta_product_series(long p, int k, int j, std::size_t truncation);

/// Theta product, asserted equal to the eta-quotient expansion.
/// Throws ConsistencyError if the two routes disagree.
QSeries theta_power_series(long p, int k, int j, std::size_t truncation);

struct MainTermWeights {
  Rational at_tau;    // (p_chi^{k-j} - 1) / (p_chi^k - 1)
  Rational at_p_tau;  // (p_chi^k - p_chi^{k-j}) / (p_chi^k - 1)
};

MainTermWeights main_term_weights(long p, int k, int j);
EisensteinCombination main_terms_combination(long p, int k, int j);
QSeries main_terms_series(long p, int k, int j, std::size_t truncation);

/// Coefficient of q^n in the main terms, straight from divisor sums and Bernoulli numbers.
Rational main_term_coefficient(long p, int k, int j, long n);

/// theta power minus main terms; a cusp form.
QSeries cusp_residual(long p, int k, int j, std::size_t truncation);

struct VerifyOptions {
  std::size_t truncation = 0;     // 0 selects default_truncation()
  std::size_t oracle_budget = 0;  // highest n compared against the oracle; 0 means T-1
  bool decompose = true;          // p = 5 only
};

struct FormulaReport {
  long p = 0;
  int k = 0;
  int j = 0;
  std::size_t truncation = 0;
  MainTermWeights weights;
  QSeries theta;
  QSeries main_terms;
  QSeries residual;
  std::optional<std::vector<Rational>> alpha;
  std::vector<Check> checks;
  std::optional<std::size_t> first_offending_exponent;

  bool passed() const { return all_pass(checks); }
};

FormulaReport verify_identity(long p, int k, int j, const VerifyOptions& options = {});

}  // namespace rmf

#endif  // RMF_FORMULA_HPP
