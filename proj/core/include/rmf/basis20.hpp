#ifndef RMF_BASIS20_HPP
#define RMF_BASIS20_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "rmf/qseries.hpp"

namespace rmf {

// Eta-quotient bases for S_k(Gamma_0(20)) (even k, trivial character) and
// S_k(Gamma_0(20), chi_{-4}) (odd k). The weight-0 building blocks are
//   S_a(m, l) = (phi(5t)/phi(t))^m * U^l * G_a,   a = 1, 2, 3,
// with U and G_a fixed eta quotients of orders 3 and a at infinity, so
// S_a(m, l) starts with q^{3l+a}.

inline constexpr long kLevel20 = 20;

/// The shared factor U = eta^3(2t) eta^5(5t) eta^10(20t) / (eta(t) eta^2(4t) eta^15(10t)).
EtaQuotientSpec family_step_spec();
/// The family-specific tail G_a.
EtaQuotientSpec family_tail_spec(int family);
/// S_a(m, l) as a single eta quotient.
EtaQuotientSpec family_eta_spec(int family, int m, int l);

/// S_a(m, l) with the phi ratio computed by exact series division.
/// Throws ConsistencyError if it disagrees with the eta-quotient expansion.
QSeries family_series(int family, int m, int l, std::size_t truncation);

/// One block {S_a(m, l) : 0 <= l <= l_max} of a basis listing; l_max < 0 means empty.
struct FamilyRange {
  int family = 1;
  int m = 0;
  int l_max = -1;
};

struct BasisElement {
  int family = 1;
  int m = 0;
  int l = 0;
  int z_power = 0;
  EtaQuotientSpec spec;  // z^{z_power} S_a(m, l) as one quotient
  QSeries expansion;     // integral exponents, truncation as requested
  std::size_t leading_exponent = 0;
};

struct CuspBasis {
  int weight = 2;
  Character chi = Character::trivial();
  std::vector<BasisElement> elements;  // sorted by order at infinity
  std::vector<LigozatReport> ligozat;  // parallel to elements
};

/// Dimension of S_k(Gamma_0(20)) / S_k(Gamma_0(20), chi_{-4}); even k pairs with
/// the trivial character and odd k with chi_{-4}.
int dim_cusp(int weight, Character chi);

/// The basis blocks for a weight, read off in terms of weight = 4K, 4K-1, 4K-2, 4K-3.
std::vector<FamilyRange> basis_layout(int weight, Character chi);

/// Validated, sorted basis with expansions to the given truncation. Memoized.
std::shared_ptr<const CuspBasis> cusp_basis(int weight, Character chi, std::size_t truncation);

/// 3 * weight, from index(Gamma_0(20)) = 36.
std::size_t sturm_bound_level20(int weight);

/// Coefficients of g in basis order. Requires truncation >= sturm_bound_level20 + 1.
/// Throws NotInSpanError when the forward substitution leaves a nonzero remainder.
std::vector<Rational> decompose(const QSeries& g, int weight, Character chi);

/// sum alpha_i * basis element i.
QSeries reassemble(const std::vector<Rational>& alpha, int weight, Character chi, std::size_t truncation);

/// The weight-0 blocks used to write A_5(k, j) for weight k > 2, from k mod 4.
std::vector<FamilyRange> a5_layout(int k);

/// A_5(k, j) itself (weight 0): the closed form for k = 2, otherwise the
/// combination of a5_layout() families with coefficients from decompose().
QSeries a5_closed_form(int k, int j, std::size_t truncation);

}  // namespace rmf

#endif  // RMF_BASIS20_HPP
