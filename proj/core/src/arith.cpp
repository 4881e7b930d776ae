#include "rmf/arith.hpp"

#include <mutex>
#include <vector>

#include "rmf/errors.hpp"

namespace rmf {

Character::Character(long discriminant) : t_(discriminant) {
  if (t_ != 1 && t_ != -4)
    throw DomainError("unsupported character discriminant " + std::to_string(t_));
}

int Character::operator()(long n) const {
  if (t_ == 1) return 1;
  const long r = ((n % 4) + 4) % 4;
  if (r == 1) return 1;
  if (r == 3) return -1;
  return 0;
}

int kronecker(long t, long n) { return Character(t)(n); }

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Grows a shared table of exact values on demand.
class BernoulliTable {
 public:
  Rational get(unsigned k) {
    std::lock_guard lock(mu_);
    while (values_.size() <= k) extend();
    return values_[k];
  }

 private:
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
  void extend() {
    const auto m = static_cast<unsigned>(values_.size());
    if (m == 0) {
      values_.emplace_back(1);
      return;
    }
    Rational acc;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * values_[j];
    values_.push_back(-acc / Rational(static_cast<long>(m) + 1));
  }

  std::mutex mu_;
  std::vector<Rational> values_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace

Rational bernoulli(unsigned k) { return bernoulli_table().get(k); }

// The generating function factors as (1/4) * sum_a chi(a) e^{ax} * (4x)/(e^{4x}-1),
// so the coefficient of x^k/k! is sum_a chi(a) sum_m C(k,m) a^{k-m} 4^{m-1} B_m.
Rational bernoulli_chi4(unsigned k) {
  static std::mutex mu;
  static std::vector<Rational> memo;
  {
    std::lock_guard lock(mu);
    if (k < memo.size()) return memo[k];
  }
  const Character chi = Character::chi_minus4();
  Rational total;
  for (long a = 1; a <= 4; ++a) {
    const int c = chi(a);
    if (c == 0) continue;
    for (unsigned m = 0; m <= k; ++m) {
      Rational term = Rational(binomial(k, m)) * Rational(a).pow(k - m) *
                      Rational(4).pow(static_cast<long>(m) - 1) * bernoulli(m);
      if (c > 0) total += term; else total -= term;
    }
  }
  std::lock_guard lock(mu);
  if (memo.size() <= k) memo.resize(k + 1);
  memo[k] = total;
  return total;
}

Rational twisted_sigma(unsigned k, Character chi, Character psi, long n) {
  if (n < 1) return Rational(0);
  mpz_class acc = 0;
  mpz_class dk;
  auto add = [&](long d) {
    const int s = chi(d) * psi(n / d);
    if (s == 0) return;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
    if (s > 0) acc += dk; else acc -= dk;
  };
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    add(d);
    if (d * d != n) add(n / d);
  }
  return Rational(acc);
}

mpz_class sigma(unsigned k, long n) {
  return twisted_sigma(k, Character::trivial(), Character::trivial(), n).num();
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_odd_prime(long n) { return n != 2 && is_prime(n); }

long signed_prime(long p) { return kronecker(-4, p) * p; }

void require_odd_prime(long p) {
  if (!is_odd_prime(p)) throw DomainError(std::to_string(p) + " is not an odd prime");
}

}  // namespace rmf
