#ifndef RMF_ARITH_HPP
#define RMF_ARITH_HPP

#include "rmf/rational.hpp"

namespace rmf {

/// Kronecker symbol chi_t for the supported discriminants t = 1 and t = -4.
class Character {
 public:
  static Character trivial() { return Character(1); }
  static Character chi_minus4() { return Character(-4); }

  /// Throws DomainError unless t is 1 or -4.
  explicit Character(long discriminant);

  long discriminant() const { return t_; }
  int operator()(long n) const;

  friend bool operator==(Character, Character) = default;

 private:
  long t_;
};

/// chi_t(n) for t in {1, -4}.
int kronecker(long t, long n);

/// B_k from x/(e^x - 1). Memoized; safe for concurrent callers.
Rational bernoulli(unsigned k);

/// B_{k,chi_{-4}} from sum_{a=1}^{4} chi_{-4}(a) x e^{ax} / (e^{4x} - 1).
Rational bernoulli_chi4(unsigned k);

/// sum_{d | n, d > 0} chi(d) psi(n/d) d^k; zero for n < 1.
Rational twisted_sigma(unsigned k, Character chi, Character psi, long n);

/// Plain sigma_k(n) as an integer; zero for n < 1.
mpz_class sigma(unsigned k, long n);

bool is_prime(long n);
bool is_odd_prime(long n);

/// p_chi = chi_{-4}(p) * p.
long signed_prime(long p);

/// Throws DomainError unless p is an odd prime.
void require_odd_prime(long p);

}  // namespace rmf

#endif  // RMF_ARITH_HPP
