#ifndef RMF_CUSPS_HPP
#define RMF_CUSPS_HPP

#include <array>
#include <map>
#include <vector>

#include "rmf/eisenstein.hpp"

namespace rmf {

// Cusps of Gamma_0(4p) are labelled by the denominator c of 1/c, with c = 4p
// standing for infinity: {1, 2, 4, p, 2p, 4p}.
enum class Parity { Even, Odd };

std::string to_string(Parity parity);

std::vector<long> cusp_labels(long p);
/// {1, 4, p, 4p}; the cusps 1/2 and 1/2p are irregular in odd weight.
std::vector<long> regular_cusp_labels(long p);
std::vector<long> labels_for(long p, Parity parity);

/// Constant terms [0]_c f of one form at the cusps of Gamma_0(4p).
class CuspConstantVector {
 public:
  CuspConstantVector(long p, Parity parity);

  long p() const { return p_; }
  Parity parity() const { return parity_; }
  const std::map<long, GaussianRational>& entries() const { return entries_; }

  /// Throws DomainError for a label that does not exist for this parity.
  void set(long c, GaussianRational value);
  bool has(long c) const { return entries_.contains(c); }
  /// Throws StructuralError if the entry is missing.
  const GaussianRational& at(long c) const;
  bool complete() const;

  friend bool operator==(const CuspConstantVector&, const CuspConstantVector&) = default;

 private:
  long p_;
  Parity parity_;
  std::map<long, GaussianRational> entries_;
};

/// Constant term of E_weight(d tau) at 1/c: (gcd(c, d)/d)^weight.
Rational const_even(int weight, long p, long d, long c);

/// Constant term of E^{(1)} or E^{(2)} (odd weight) at a regular cusp, a in {1, p}.
GaussianRational const_odd(EisensteinKind kind, int weight, long p, long a, long c);

/// Constant term of L_d at 1/c: 1 - gcd(c, d)^2 / d.
Rational const_L(long p, long d, long c);

/// Constant term of phi^{2k-2j}(tau) phi^{2j}(p tau) at 1/c.
GaussianRational const_phi(long p, int k, int j, long c);
CuspConstantVector const_phi_vector(long p, int k, int j);

/// Constant terms of a single generator, or of a whole combination.
CuspConstantVector generator_constants(const EisensteinGenerator& g, long p);
CuspConstantVector combination_constants(const EisensteinCombination& combo, long p, Parity parity);

enum class ABSelector { A, B };

/// A_k(p, t, f) or B_k(p, t, f) for t | 4.
GaussianRational ab_coeff(ABSelector selector, long p, int k, long t, const CuspConstantVector& f);

/// Eisenstein part of a modular form recovered from its cusp constants.
struct EisensteinComponent {
  enum class Kind { Even, Odd, Weight2 };

  Kind kind = Kind::Even;
  long p = 3;
  int weight = 4;
  // Even: d | 4p multiplying E_k(d tau). Weight2: 1 < d | 4p multiplying L_d.
  std::map<long, GaussianRational> b;
  // Odd: multipliers of E^{(2)}(tau), E^{(2)}(p tau), E^{(1)}(tau), E^{(1)}(p tau).
  std::array<GaussianRational, 4> a;

  EisensteinCombination combination() const;
  CuspConstantVector constants() const;

  friend bool operator==(const EisensteinComponent&, const EisensteinComponent&) = default;
};

/// Closed-form solution (weight >= 3); weight 2 is forwarded to weight2_component.
/// Throws ConsistencyError if the solution does not reproduce the input constants.
EisensteinComponent eisenstein_component(const CuspConstantVector& f, int k);

/// Same result obtained by eliminating the constant-term linear system directly.
EisensteinComponent eisenstein_component_by_elimination(const CuspConstantVector& f, int k);

/// Solves [0]_c f = sum_{1<d|4p} b_d (1 - gcd(c,d)^2/d) on cusps {2,4,p,2p,4p}
/// and checks the equation at cusp 1.
EisensteinComponent weight2_component(const CuspConstantVector& f);

/// Exact Gaussian elimination with first-nonzero pivoting. Throws
/// ConsistencyError if the matrix is singular.
std::vector<GaussianRational> solve_exact(std::vector<std::vector<GaussianRational>> matrix,
                                          std::vector<GaussianRational> rhs);

}  // namespace rmf

#endif  // RMF_CUSPS_HPP
