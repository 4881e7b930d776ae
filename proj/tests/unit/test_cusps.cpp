#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rmf/cusps.hpp"
#include "rmf/errors.hpp"
#include "rmf/formula.hpp"

using rmf::CuspConstantVector;
using rmf::EisensteinKind;
using rmf::GaussianRational;
using rmf::Parity;
using rmf::Rational;

namespace {

const long kPrimes[] = {3, 5, 7, 11, 13};

long chi(long p) { return rmf::kronecker(-4, p); }
Rational chi_pow(long p, long e) { return Rational(chi(p)).pow(e); }
Rational sgn_pow(long e) { return Rational(-1).pow(e); }
GaussianRational im(const Rational& r) { return {Rational(0), r}; }

// Even-weight constant table, cell by cell: each entry is base^{2K} with the base below.
Rational table1_base(long p, long cusp, long d) {
  const long cs[] = {1, 2, 4, p, 2 * p, 4 * p};
  const long ds[] = {1, 2, 4, p, 2 * p, 4 * p};
  // rows: 1, 1/2, 1/4, 1/p, 1/2p, infinity; columns: d = 1, 2, 4, p, 2p, 4p
  const Rational rows[6][6] = {
      {1, Rational(1, 2), Rational(1, 4), Rational(1, p), Rational(1, 2 * p), Rational(1, 4 * p)},
      {1, 1, Rational(1, 2), Rational(1, p), Rational(1, p), Rational(1, 2 * p)},
      {1, 1, 1, Rational(1, p), Rational(1, p), Rational(1, p)},
      {1, Rational(1, 2), Rational(1, 4), 1, Rational(1, 2), Rational(1, 4)},
      {1, 1, Rational(1, 2), 1, 1, Rational(1, 2)},
      {1, 1, 1, 1, 1, 1}};
  int r = -1, c = -1;
  for (int i = 0; i < 6; ++i) {
    if (cs[i] == cusp) r = i;
    if (ds[i] == d) c = i;
  }
  return rows[r][c];
}

// Odd-weight Eisenstein constant table, cell by cell, for weight 2K-1.
GaussianRational table3(long p, int weight, int column, long cusp) {
  const Rational fw = Rational(4).pow(weight);
  const Rational pw = Rational(p).pow(weight);
  if (cusp == 1) {
    const GaussianRational cells[] = {0, 0, im(Rational(-2) / fw), im(Rational(-2) / (fw * pw))};
    return cells[column];
  }
  if (cusp == 4) {
    const GaussianRational cells[] = {1, Rational(chi(p)) / pw, 0, 0};
    return cells[column];
  }
  if (cusp == p) {
    const GaussianRational cells[] = {0, 0, im(Rational(-2 * chi(p)) / fw), im(Rational(-2) / fw)};
    return cells[column];
  }
  const GaussianRational cells[] = {1, 1, 0, 0};
  return cells[column];
}

// Theta-power constant table, cell by cell; the rows are phi^{4K-2j-2} phi^{2j}(p) (weight 2K-1) and
// phi^{4K-2j} phi^{2j}(p) (weight 2K).
GaussianRational table4(long p, int weight, int j, long cusp) {
  const Rational pj = Rational(p).pow(j);
  if (weight % 2 == 1) {
    const int K = (weight + 1) / 2;
    const Rational two = Rational(2).pow(2 * K - 1);
    if (cusp == 1) return im(sgn_pow(K) / (two * pj));
    if (cusp == 4) return chi_pow(p, j) / pj;
    if (cusp == p) return im(sgn_pow(K) * chi_pow(p, j - 1) / two);
    return 1;
  }
  const int K = weight / 2;
  const Rational two = Rational(2).pow(2 * K);
  if (cusp == 1) return sgn_pow(K) / (two * pj);
  if (cusp == 4) return chi_pow(p, j) / pj;
  if (cusp == p) return sgn_pow(K) * chi_pow(p, j) / two;
  if (cusp == 4 * p) return 1;
  return 0;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  return Rational(num(rng), den(rng));
}

rmf::EisensteinGenerator odd_generator(int column, int weight, long p) {
  const EisensteinKind kind = column < 2 ? EisensteinKind::Odd2 : EisensteinKind::Odd1;
  return {kind, weight, column % 2 == 0 ? 1 : p};
}

}  // namespace

TEST_CASE("const_even examples") {
  CHECK(rmf::const_even(4, 5, 2, 1) == Rational(1, 16));
  for (int w : {4, 6, 10}) CHECK(rmf::const_even(w, 7, 4, 4) == Rational(1));
  CHECK(rmf::const_even(4, 5, 20, 2) == Rational(2, 20).pow(4));
  CHECK_THROWS_AS(rmf::const_even(4, 5, 3, 1), rmf::DomainError);
  CHECK_THROWS_AS(rmf::const_even(4, 5, 2, 3), rmf::DomainError);
}

TEST_CASE("even Eisenstein constant table") {
  for (long p : kPrimes)
    for (int w : {4, 6, 8})
      for (long c : rmf::cusp_labels(p))
        for (long d : rmf::cusp_labels(p)) {
          CAPTURE(p);
          CAPTURE(c);
          CAPTURE(d);
          CHECK(rmf::const_even(w, p, d, c) == table1_base(p, c, d).pow(w));
          CHECK(rmf::const_even(w, p, d, c) == Rational(std::gcd(c, d), d).pow(w));
        }
}

TEST_CASE("const_odd examples") {
  CHECK(rmf::const_odd(EisensteinKind::Odd1, 3, 5, 1, 1) == im(Rational(-2, 64)));
  CHECK(rmf::const_odd(EisensteinKind::Odd2, 5, 7, 1, 1) == GaussianRational(0));
  CHECK(rmf::const_odd(EisensteinKind::Odd2, 3, 5, 5, 4) == GaussianRational(Rational(1, 125)));
  CHECK_THROWS_AS(rmf::const_odd(EisensteinKind::Odd1, 3, 5, 1, 2), rmf::DomainError);
  CHECK_THROWS_AS(rmf::const_odd(EisensteinKind::Odd1, 3, 5, 1, 10), rmf::DomainError);
}

TEST_CASE("odd Eisenstein constant table") {
  for (long p : kPrimes)
    for (int K = 2; K <= 5; ++K)
      for (int column = 0; column < 4; ++column)
        for (long c : rmf::regular_cusp_labels(p)) {
          const int w = 2 * K - 1;
          const auto g = odd_generator(column, w, p);
          CAPTURE(p);
          CAPTURE(w);
          CAPTURE(column);
          CAPTURE(c);
          CHECK(rmf::const_odd(g.kind, w, p, g.dilation, c) == table3(p, w, column, c));
        }
}

TEST_CASE("const_phi examples") {
  CHECK(rmf::const_phi(5, 4, 2, 4) == GaussianRational(Rational(1, 25)));
  for (int j = 0; j <= 4; ++j) {
    CHECK(rmf::const_phi(5, 4, j, 2).is_zero());
    CHECK(rmf::const_phi(5, 4, j, 10).is_zero());
  }
  for (long p : kPrimes)
    for (int k = 2; k <= 7; ++k)
      for (int j = 0; j <= k; ++j) CHECK(rmf::const_phi(p, k, j, 4 * p) == GaussianRational(1));
  CHECK_THROWS_AS(rmf::const_phi(5, 3, 1, 2), rmf::DomainError);
}

TEST_CASE("theta-power constant table") {
  for (long p : kPrimes)
    for (int w = 2; w <= 10; ++w)
      for (int j = 0; j <= w; ++j)
        for (long c : rmf::labels_for(p, w % 2 == 0 ? Parity::Even : Parity::Odd)) {
          CAPTURE(p);
          CAPTURE(w);
          CAPTURE(j);
          CAPTURE(c);
          CHECK(rmf::const_phi(p, w, j, c) == table4(p, w, j, c));
        }
}

TEST_CASE("theta-power constants are multiplicative") {
  // The slash action is multiplicative, so constants of a product are products
  // of constants; an even factor may multiply either parity.
  for (long p : kPrimes)
    for (int k1 = 2; k1 <= 6; k1 += 2)
      for (int j1 = 0; j1 <= k1; ++j1)
        for (int k2 = 2; k2 <= 5; ++k2)
          for (int j2 = 0; j2 <= k2; ++j2)
            for (long c : rmf::labels_for(p, k2 % 2 == 0 ? Parity::Even : Parity::Odd))
              CHECK(rmf::const_phi(p, k1, j1, c) * rmf::const_phi(p, k2, j2, c) ==
                    rmf::const_phi(p, k1 + k2, j1 + j2, c));
}

TEST_CASE("ab_coeff") {
  CHECK(rmf::signed_prime(7) == -7);
  for (long p : kPrimes)
    for (int k = 3; k <= 8; ++k)
      for (int j = 0; j <= k; ++j) {
        const auto f = rmf::const_phi_vector(p, k, j);
        const Rational pk = Rational(rmf::signed_prime(p)).pow(k);
        const Rational pkj = Rational(rmf::signed_prime(p)).pow(k - j);
        const Rational want = (pkj - 1) / ((Rational(2).pow(k) - 1) * (pk - 1));
        CHECK(rmf::ab_coeff(rmf::ABSelector::B, p, k, 4, f) == GaussianRational(want));
      }
  CuspConstantVector flat(5, Parity::Even);
  for (long c : rmf::cusp_labels(5)) flat.set(c, Rational(3, 7));
  CHECK(rmf::ab_coeff(rmf::ABSelector::A, 5, 4, 2, flat).is_zero());
  CuspConstantVector partial(5, Parity::Even);
  partial.set(1, 1);
  CHECK_THROWS_AS(rmf::ab_coeff(rmf::ABSelector::A, 5, 4, 1, partial), rmf::StructuralError);
}

TEST_CASE("solver returns indicators on single generators") {
  for (long p : kPrimes) {
    for (int k : {4, 6}) {
      for (long d : rmf::cusp_labels(p)) {
        const auto comp = rmf::eisenstein_component(
            rmf::generator_constants({EisensteinKind::Even, k, d}, p), k);
        for (const auto& [dd, b] : comp.b) CHECK(b == GaussianRational(dd == d ? 1 : 0));
      }
    }
    for (int k : {3, 5, 7}) {
      for (int column = 0; column < 4; ++column) {
        const auto comp = rmf::eisenstein_component(rmf::generator_constants(odd_generator(column, k, p), p), k);
        for (int i = 0; i < 4; ++i) CHECK(comp.a[i] == GaussianRational(i == column ? 1 : 0));
      }
    }
  }
}

TEST_CASE("Eisenstein solver round trip on random combinations") {
  std::mt19937_64 rng(4141);
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    for (int trial = 0; trial < 100; ++trial) {
      const long p = kPrimes[trial % 5];
      const int k = parity == Parity::Even ? 4 + 2 * (trial % 3) : 3 + 2 * (trial % 3);
      rmf::EisensteinComponent want;
      want.p = p;
      want.weight = k;
      if (parity == Parity::Even) {
        want.kind = rmf::EisensteinComponent::Kind::Even;
        for (long d : rmf::cusp_labels(p)) want.b[d] = random_rational(rng);
      } else {
        want.kind = rmf::EisensteinComponent::Kind::Odd;
        for (auto& a : want.a) a = random_rational(rng);
      }
      const auto f = rmf::combination_constants(want.combination(), p, parity);
      CHECK(f == want.constants());
      const auto closed = rmf::eisenstein_component(f, k);
      const auto elim = rmf::eisenstein_component_by_elimination(f, k);
      CHECK(closed == want);
      CHECK(elim == want);
    }
  }
}

TEST_CASE("theta-power Eisenstein parts are the main terms") {
  for (long p : kPrimes)
    for (int k = 2; k <= 8; ++k)
      for (int j = 0; j <= k; ++j) {
        CAPTURE(p);
        CAPTURE(k);
        CAPTURE(j);
        const auto f = rmf::const_phi_vector(p, k, j);
        const auto comp = rmf::eisenstein_component(f, k);
        CHECK(comp.combination() == rmf::main_terms_combination(p, k, j));
        if (k > 2) CHECK(rmf::eisenstein_component_by_elimination(f, k) == comp);
      }
}

TEST_CASE("weight-2 solver") {
  for (long p : kPrimes) {
    for (long d : rmf::cusp_labels(p)) {
      if (d == 1) continue;
      const auto comp = rmf::weight2_component(rmf::generator_constants({EisensteinKind::L, 2, d}, p));
      for (const auto& [dd, b] : comp.b) CHECK(b == GaussianRational(dd == d ? 1 : 0));
    }
    CuspConstantVector zero(p, Parity::Even);
    for (long c : rmf::cusp_labels(p)) zero.set(c, 0);
    for (const auto& [d, b] : rmf::weight2_component(zero).b) CHECK(b.is_zero());

    // constant 1 at every cusp is not in the span: sum b_d (1 - g^2/d) forces a mismatch at cusp 1
    CuspConstantVector ones(p, Parity::Even);
    for (long c : rmf::cusp_labels(p)) ones.set(c, 1);
    CHECK_THROWS_AS(rmf::weight2_component(ones), rmf::ConsistencyError);
  }

  const auto four_squares = rmf::weight2_component(rmf::const_phi_vector(5, 2, 0)).combination().expand(80);
  for (long n = 1; n < 80; ++n) {
    const mpz_class want = 8 * oracle::sigma(1, n) - 32 * (n % 4 == 0 ? oracle::sigma(1, n / 4) : mpz_class(0));
    CHECK(four_squares[n] == GaussianRational(Rational(want)));
  }
  CHECK(four_squares[0] == GaussianRational(1));
}

TEST_CASE("L_d constants agree with the series at infinity") {
  for (long p : kPrimes)
    for (long d : rmf::cusp_labels(p)) {
      if (d == 1) continue;
      CHECK(rmf::const_L(p, d, 4 * p) == Rational(1 - d));
      CHECK(rmf::L_series(d, 3)[0] == GaussianRational(rmf::const_L(p, d, 4 * p)));
    }
}

TEST_CASE("constant vector validation") {
  CuspConstantVector v(7, Parity::Odd);
  CHECK_THROWS_AS(v.set(2, 1), rmf::DomainError);
  CHECK_THROWS_AS(v.at(4), rmf::StructuralError);
  CHECK_FALSE(v.complete());
  CHECK_THROWS_AS(CuspConstantVector(9, Parity::Even), rmf::DomainError);
  CHECK_THROWS_AS(rmf::eisenstein_component(rmf::const_phi_vector(7, 4, 1), 5), rmf::DomainError);
}
