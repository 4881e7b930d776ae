#include "rmf/formula.hpp"

#include <algorithm>
#include <sstream>

#include "rmf/basis20.hpp"
#include "rmf/cusps.hpp"
#include "rmf/errors.hpp"
#include "rmf/oracle.hpp"

namespace rmf {

void validate_parameters(long p, int k, int j) {
  require_odd_prime(p);
  if (k < 2) throw DomainError("weight k must be at least 2, got " + std::to_string(k));
  if (j < 0 || j > k) throw DomainError("j must lie in 0..k, got " + std::to_string(j));
}

std::size_t sturm_bound(long p, int weight) {
  const long num = static_cast<long>(weight) * (p + 1);
  return static_cast<std::size_t>((num + 1) / 2);
}

std::size_t default_truncation(long p, int k) {
  return std::max<std::size_t>(101, sturm_bound(p, k) + 1);
}

EtaQuotientSpec theta_power_spec(long p, int k, int j) {
  validate_parameters(p, k, j);
  return phi_eta_spec(1).pow(2L * (k - j)) * phi_eta_spec(p).pow(2L * j);
}

QSeries theta_product_series(long p, int k, int j, std::size_t truncation) {
  validate_parameters(p, k, j);
  const QSeries phi = theta_phi(truncation);
  const QSeries phi_p = phi.dilate(p).truncated(truncation);
  return phi.pow(2L * (k - j)) * phi_p.pow(2L * j);
}

QSeries theta_power_series(long p, int k, int j, std::size_t truncation) {
  QSeries product = theta_product_series(p, k, j, truncation);
  const QSeries eta = eta_expand(theta_power_spec(p, k, j), truncation);
  if (const auto n = first_difference(product, eta))
    throw ConsistencyError("theta product and eta form differ at q^" + std::to_string(*n));
  return product;
}

MainTermWeights main_term_weights(long p, int k, int j) {
  validate_parameters(p, k, j);
  const Rational pchi(signed_prime(p));
  const Rational full = pchi.pow(k);
  const Rational part = pchi.pow(k - j);
  const Rational denom = full - Rational(1);
  return {(part - Rational(1)) / denom, (full - part) / denom};
}

EisensteinCombination main_terms_combination(long p, int k, int j) {
  const MainTermWeights w = main_term_weights(p, k, j);
  return GaussianRational(w.at_tau) * F_p_combination(p, k, j, 1) +
         GaussianRational(w.at_p_tau) * F_p_combination(p, k, j, p);
}

QSeries main_terms_series(long p, int k, int j, std::size_t truncation) {
  return main_terms_combination(p, k, j).expand(truncation);
}

namespace {

// n/d when d | n, otherwise -1 (so that divisor sums vanish).
long exact_quotient(long n, long d) { return n % d == 0 ? n / d : -1; }

Rational even_coeff(int k, long m) {
  if (m < 0) return Rational(0);
  if (m == 0) return Rational(1);
  const Character one = Character::trivial();
  return -Rational(2L * k) / bernoulli(static_cast<unsigned>(k)) *
         twisted_sigma(static_cast<unsigned>(k - 1), one, one, m);
}

// Odd-weight F_p(k, j; a tau) coefficient at n.
Rational odd_block(long p, int k, int j, long a, long n) {
  const long m = exact_quotient(n, a);
  if (m < 0) return Rational(0);
  const Character one = Character::trivial();
  const Character chi = Character::chi_minus4();
  const Rational norm = -Rational(2L * k) / bernoulli_chi4(static_cast<unsigned>(k));
  const Rational e2 = m == 0 ? Rational(1) : norm * twisted_sigma(static_cast<unsigned>(k - 1), chi, one, m);
  const Rational e1 = m == 0 ? Rational(0) : norm * twisted_sigma(static_cast<unsigned>(k - 1), one, chi, m);
  const Rational twist = Rational(chi(a)) * Rational(chi(p)).pow(j) * Rational(-4).pow((k - 1) / 2);
  return e2 + twist * e1;
}

Rational even_block(long p, int k, int j, long n) {
  if (n < 0) return Rational(0);
  const Rational x = Rational(kronecker(-4, p)).pow(j);
  const Rational s((k / 2) % 2 == 0 ? 1 : -1);
  const Rational two_k = Rational(2).pow(k);
  return x / (two_k - Rational(1)) *
         (s * even_coeff(k, n) - (s + x) * even_coeff(k, exact_quotient(n, 2)) +
          x * two_k * even_coeff(k, exact_quotient(n, 4)));
}

void add_check(FormulaReport& r, std::string name, bool pass, std::string detail,
               std::optional<std::size_t> offending = std::nullopt) {
  if (!pass && offending && !r.first_offending_exponent) r.first_offending_exponent = offending;
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

std::string at_exponent(std::size_t n) { return "first mismatch at q^" + std::to_string(n); }

}  // namespace

Rational main_term_coefficient(long p, int k, int j, long n) {
  const MainTermWeights w = main_term_weights(p, k, j);
  if (n < 0) return Rational(0);
  if (k % 2 == 0)
    return w.at_tau * even_block(p, k, j, n) + w.at_p_tau * even_block(p, k, j, exact_quotient(n, p));
  return w.at_tau * odd_block(p, k, j, 1, n) + w.at_p_tau * odd_block(p, k, j, p, n);
}

QSeries cusp_residual(long p, int k, int j, std::size_t truncation) {
  return theta_power_series(p, k, j, truncation) - main_terms_series(p, k, j, truncation);
}

FormulaReport verify_identity(long p, int k, int j, const VerifyOptions& options) {
  validate_parameters(p, k, j);
  FormulaReport r;
  r.p = p;
  r.k = k;
  r.j = j;
  r.truncation = options.truncation ? options.truncation : default_truncation(p, k);
  const std::size_t t = r.truncation;
  r.weights = main_term_weights(p, k, j);

  r.theta = theta_product_series(p, k, j, t);
  const QSeries eta = eta_expand(theta_power_spec(p, k, j), t);
  const auto eta_diff = first_difference(r.theta, eta);
  add_check(r, "theta_matches_eta_form", !eta_diff,
            eta_diff ? at_exponent(*eta_diff) : "agree to q^" + std::to_string(t - 1), eta_diff);

  const EisensteinCombination main_combo = main_terms_combination(p, k, j);
  r.main_terms = main_combo.expand(t);
  r.residual = r.theta - r.main_terms;

  bool real = true;
  for (const auto& c : r.main_terms.coeffs()) real = real && c.is_real();
  add_check(r, "main_terms_real", real, "coefficients at infinity lie in Q");

  add_check(r, "residual_constant_term_zero", r.residual[0].is_zero(),
            "[0] residual = " + r.residual[0].str(), std::size_t{0});

  std::optional<std::size_t> closed_diff;
  for (std::size_t n = 0; n < t && !closed_diff; ++n)
    if (r.main_terms[n] != GaussianRational(main_term_coefficient(p, k, j, static_cast<long>(n))))
      closed_diff = n;
  add_check(r, "main_terms_match_closed_form", !closed_diff,
            closed_diff ? at_exponent(*closed_diff) : "series and direct divisor-sum formula agree",
            closed_diff);

  const std::size_t budget = std::min(t - 1, options.oracle_budget ? options.oracle_budget : t - 1);
  const auto oracle = repnum_convolution(FormSpec::theta_power(p, k, j), budget);
  std::optional<std::size_t> oracle_diff;
  for (std::size_t n = 0; n <= budget && !oracle_diff; ++n) {
    const GaussianRational want(Rational(oracle[n]));
    const GaussianRational cusp_part(Rational(oracle[n]) - main_term_coefficient(p, k, j, static_cast<long>(n)));
    if (r.theta[n] != want || r.residual[n] != cusp_part) oracle_diff = n;
  }
  add_check(r, "oracle_agreement", !oracle_diff,
            oracle_diff ? at_exponent(*oracle_diff)
                        : "N(1^" + std::to_string(2 * (k - j)) + ", " + std::to_string(p) + "^" +
                              std::to_string(2 * j) + "; n) matches for n <= " + std::to_string(budget),
            oracle_diff);

  const std::string component_check =
      k == 2 ? "weight2_component_matches_main_terms" : "eisenstein_component_matches_main_terms";
  try {
    const CuspConstantVector consts = const_phi_vector(p, k, j);
    const EisensteinComponent closed = eisenstein_component(consts, k);
    const EisensteinComponent solved = eisenstein_component_by_elimination(consts, k);
    const bool agree = closed == solved;
    const bool matches = closed.combination() == main_combo;
    add_check(r, component_check, agree && matches,
              !agree ? "closed form and elimination disagree"
                     : (matches ? "cusp-constant solution equals the main terms exactly"
                                : "solution " + closed.combination().str() + " differs from " + main_combo.str()));
    if (k == 2) {
      const GaussianRational s = main_combo.weight2_dilation_sum();
      add_check(r, "weight2_dilation_sum_zero", s.is_zero(), "sum c_m/m = " + s.str());
    }
  } catch (const std::exception& e) {
    add_check(r, component_check, false, e.what());
  }

  if (p == 5 && options.decompose) {
    const Character chi = k % 2 == 0 ? Character::trivial() : Character::chi_minus4();
    try {
      std::vector<Rational> alpha = decompose(r.residual, k, chi);
      const QSeries back = reassemble(alpha, k, chi, t);
      const auto diff = first_difference(back, r.residual);
      add_check(r, "level20_decomposition", !diff,
                diff ? at_exponent(*diff)
                     : std::to_string(alpha.size()) + " coefficients; reassembly exact to q^" +
                           std::to_string(t - 1) + " (Sturm bound " + std::to_string(3 * k) + ")",
                diff);
      r.alpha = std::move(alpha);
    } catch (const NotInSpanError& e) {
      add_check(r, "level20_decomposition", false, e.what(), e.exponent());
    } catch (const std::exception& e) {
      add_check(r, "level20_decomposition", false, e.what());
    }
  }
  return r;
}

}  // namespace rmf
