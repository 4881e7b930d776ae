// One PASS/FAIL line per acceptance criterion. Each criterion is checked
// against values computed independently of the code path under test: lattice
// counts, divisor sums, and literal transcriptions of the constant-term tables.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rmf/basis20.hpp"
#include "rmf/cusps.hpp"
#include "rmf/errors.hpp"
#include "rmf/formula.hpp"
#include "rmf/oracle.hpp"

using namespace rmf;

namespace {

const long kPrimes[] = {3, 5, 7, 11, 13};

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Character chi_for(int weight) { return weight % 2 == 0 ? Character::trivial() : Character::chi_minus4(); }

std::string triple(long p, int k, int j) {
  return "(p=" + std::to_string(p) + ", k=" + std::to_string(k) + ", j=" + std::to_string(j) + ")";
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

mpz_class sigma1(long n) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// 1. residual constant term is zero and theta coefficients match the convolution oracle.
Outcome grid_identity() {
  struct Job {
    long p;
    int k;
    int j;
  };
  std::vector<Job> jobs;
  for (long p : kPrimes)
    for (int k = 2; k <= 6; ++k)
      for (int j = 0; j <= k; ++j) jobs.push_back({p, k, j});
  std::vector<std::string> failures(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto [p, k, j] = jobs[i];
    try {
      const std::size_t n_max = std::max<std::size_t>(100, sturm_bound(p, k));
      const QSeries theta = theta_power_series(p, k, j, n_max + 1);
      const QSeries residual = cusp_residual(p, k, j, n_max + 1);
      if (!residual[0].is_zero()) {
        failures[i] = triple(p, k, j) + " residual constant term " + residual[0].str();
        return;
      }
      const auto oracle = repnum_convolution(FormSpec::theta_power(p, k, j), n_max);
      for (std::size_t n = 0; n <= n_max; ++n)
        if (theta[n] != GaussianRational(Rational(oracle[n]))) {
          failures[i] = triple(p, k, j) + " theta coefficient differs from oracle at n=" + std::to_string(n);
          return;
        }
      const FormulaReport r = verify_identity(p, k, j, {.truncation = n_max + 1});
      if (!r.passed())
        for (const auto& c : r.checks)
          if (!c.pass) {
            failures[i] = triple(p, k, j) + " check " + c.name + ": " + c.detail;
            return;
          }
    } catch (const std::exception& e) {
      failures[i] = triple(p, k, j) + " threw: " + e.what();
    }
  });
  Outcome o;
  for (const auto& f : failures)
    if (!f.empty()) o.fail(f);
  if (o.pass) o.detail = std::to_string(jobs.size()) + " triples, exact to n <= max(100, Sturm bound)";
  return o;
}

// 2. level-20 decomposition of every cusp residual, reassembled to exponent 100.
Outcome decomposition_certificate() {
  Outcome o;
  int count = 0;
  for (int k = 2; k <= 8; ++k)
    for (int j = 0; j <= k; ++j) {
      try {
        const QSeries g = cusp_residual(5, k, j, 101);
        const auto alpha = decompose(g, k, chi_for(k));
        if (reassemble(alpha, k, chi_for(k), 101) != g) o.fail(triple(5, k, j) + " reassembly differs");
        if (101 < sturm_bound_level20(k) + 1) o.fail(triple(5, k, j) + " truncation below the Sturm bound");
        if (k == 2) {
          const Rational want = j % 2 == 0 ? Rational(0) : Rational(8, 3);
          if (alpha.size() != 1 || alpha[0] != want) o.fail(triple(5, k, j) + " alpha differs from 4/3 (1 - (-1)^j)");
        }
        ++count;
      } catch (const std::exception& e) {
        o.fail(triple(5, k, j) + " threw: " + e.what());
      }
    }
  if (o.pass) o.detail = std::to_string(count) + " instances certified to exponent 100";
  return o;
}

// 3. constant-term tables transcribed cell by cell, instantiated over k and p.
Outcome table_reproduction() {
  Outcome o;
  int cells = 0;
  const auto im = [](const Rational& r) { return GaussianRational(Rational(0), r); };
  for (long p : kPrimes) {
    const Rational chi(kronecker(-4, p));
    const long labels[] = {1, 2, 4, p, 2 * p, 4 * p};
    // even Eisenstein bases, row = cusp, column = dilation; each entry is base^{2k}
    const Rational t1[6][6] = {
        {1, Rational(1, 2), Rational(1, 4), Rational(1, p), Rational(1, 2 * p), Rational(1, 4 * p)},
        {1, 1, Rational(1, 2), Rational(1, p), Rational(1, p), Rational(1, 2 * p)},
        {1, 1, 1, Rational(1, p), Rational(1, p), Rational(1, p)},
        {1, Rational(1, 2), Rational(1, 4), 1, Rational(1, 2), Rational(1, 4)},
        {1, 1, Rational(1, 2), 1, 1, Rational(1, 2)},
        {1, 1, 1, 1, 1, 1}};
    for (int K = 2; K <= 5; ++K) {
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c, ++cells)
          if (const_even(2 * K, p, labels[c], labels[r]) != t1[r][c].pow(2 * K))
            o.fail("even Eisenstein table p=" + std::to_string(p) + " K=" + std::to_string(K));

      const int w = 2 * K - 1;
      const Rational fw = Rational(4).pow(w), pw = Rational(p).pow(w);
      const long rows3[] = {1, 4, p, 4 * p};
      const GaussianRational t3[4][4] = {
          {0, 0, im(Rational(-2) / fw), im(Rational(-2) / (fw * pw))},
          {1, chi / pw, 0, 0},
          {0, 0, im(Rational(-2) * chi / fw), im(Rational(-2) / fw)},
          {1, 1, 0, 0}};
      const EisensteinGenerator cols3[] = {{EisensteinKind::Odd2, w, 1},
                                           {EisensteinKind::Odd2, w, p},
                                           {EisensteinKind::Odd1, w, 1},
                                           {EisensteinKind::Odd1, w, p}};
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c, ++cells)
          if (const_odd(cols3[c].kind, w, p, cols3[c].dilation, rows3[r]) != t3[r][c])
            o.fail("odd Eisenstein table p=" + std::to_string(p) + " K=" + std::to_string(K));

      // theta powers, odd row phi^{4K-2j-2} phi^{2j}(p tau) and even row phi^{4K-2j} phi^{2j}(p tau)
      const Rational sK = Rational(-1).pow(K);
      for (int j = 0; j <= w; ++j) {
        const Rational pj = Rational(p).pow(j);
        const Rational two = Rational(2).pow(2 * K - 1);
        const GaussianRational odd_row[] = {im(sK / (two * pj)), chi.pow(j) / pj, im(sK * chi.pow(j - 1) / two), 1};
        for (int r = 0; r < 4; ++r, ++cells)
          if (const_phi(p, w, j, rows3[r]) != odd_row[r])
            o.fail("theta-power table odd row p=" + std::to_string(p) + " K=" + std::to_string(K) + " j=" + std::to_string(j));
      }
      for (int j = 0; j <= 2 * K; ++j) {
        const Rational pj = Rational(p).pow(j);
        const Rational two = Rational(2).pow(2 * K);
        const GaussianRational even_row[] = {sK / (two * pj), 0, chi.pow(j) / pj, sK * chi.pow(j) / two, 0, 1};
        for (int r = 0; r < 6; ++r, ++cells)
          if (const_phi(p, 2 * K, j, labels[r]) != even_row[r])
            o.fail("theta-power table even row p=" + std::to_string(p) + " K=" + std::to_string(K) + " j=" + std::to_string(j));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(cells) + " cells match";
  return o;
}

// 4. random combinations recovered exactly by both solver paths.
Outcome solver_round_trip() {
  Outcome o;
  std::mt19937_64 rng(20241015);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
  for (bool odd : {false, true})
    for (int trial = 0; trial < 100; ++trial) {
      const long p = kPrimes[trial % 5];
      const int k = odd ? 3 + 2 * (trial % 4) : 4 + 2 * (trial % 4);
      EisensteinComponent want;
      want.p = p;
      want.weight = k;
      if (odd) {
        want.kind = EisensteinComponent::Kind::Odd;
        for (auto& a : want.a) a = Rational(num(rng), den(rng));
      } else {
        want.kind = EisensteinComponent::Kind::Even;
        for (long d : cusp_labels(p)) want.b[d] = Rational(num(rng), den(rng));
      }
      try {
        const auto f = combination_constants(want.combination(), p, odd ? Parity::Odd : Parity::Even);
        const auto closed = eisenstein_component(f, k);
        const auto elim = eisenstein_component_by_elimination(f, k);
        if (closed != want) o.fail("closed form missed trial " + std::to_string(trial) + (odd ? " (odd)" : " (even)"));
        if (elim != closed) o.fail("elimination disagrees on trial " + std::to_string(trial));
      } catch (const std::exception& e) {
        o.fail(std::string("solver threw: ") + e.what());
      }
    }
  if (o.pass) o.detail = "200 combinations, closed form == elimination == input";
  return o;
}

// 5. Jacobi four squares to 500 and the eight-squares main term at n = 1.
Outcome classical_recoveries() {
  Outcome o;
  const FormSpec four{{{1, 4}}};
  const auto conv = repnum_convolution(four, 500);
  const QSeries theta = theta_power_series(5, 2, 0, 501);
  for (long n = 1; n <= 500; ++n) {
    const mpz_class jacobi = 8 * sigma1(n) - 32 * (n % 4 == 0 ? sigma1(n / 4) : mpz_class(0));
    if (conv[n] != jacobi) o.fail("convolution N(1^4; " + std::to_string(n) + ") != 8 sigma(n) - 32 sigma(n/4)");
    if (main_term_coefficient(5, 2, 0, n) != Rational(jacobi)) o.fail("main term at n=" + std::to_string(n));
    if (theta[n] != GaussianRational(Rational(jacobi))) o.fail("theta series at n=" + std::to_string(n));
  }
  for (long n : {1L, 2L, 3L, 4L, 50L, 97L, 500L})
    if (repnum_bruteforce(four, n) != conv[n]) o.fail("lattice count N(1^4; " + std::to_string(n) + ")");
  const mpz_class eight = repnum_bruteforce(FormSpec{{{1, 8}}}, 1);
  for (long p : kPrimes)
    if (main_term_coefficient(p, 4, 0, 1) != Rational(16) || eight != 16)
      o.fail("N(1^8; 1) main term at p=" + std::to_string(p));
  if (o.pass) o.detail = "N(1^4; n) for n <= 500 and N(1^8; 1) = 16";
  return o;
}

// 6. cardinalities, Ligozat, distinct orders and unit leading terms up to weight 16.
Outcome basis_integrity() {
  Outcome o;
  const auto dim_formula = [](int w) {
    if (w == 2) return 1;
    const int K = (w + 3) / 4;
    switch (w % 4) {
      case 0: return 12 * K - 6;
      case 2: return 12 * K - 12;
      case 3: return 12 * K - 8;
      default: return 12 * K - 14;
    }
  };
  int elements = 0;
  for (int w = 2; w <= 16; ++w) {
    try {
      const auto basis = cusp_basis(w, chi_for(w), sturm_bound_level20(w) + 1);
      if (static_cast<int>(basis->elements.size()) != dim_formula(w) || dim_cusp(w, chi_for(w)) != dim_formula(w))
        o.fail("weight " + std::to_string(w) + " cardinality");
      std::vector<std::size_t> orders;
      for (std::size_t i = 0; i < basis->elements.size(); ++i) {
        const BasisElement& e = basis->elements[i];
        const auto report = is_cusp_form(e.spec, kLevel20, Rational(w), chi_for(w));
        if (!report.cusp_form) o.fail("weight " + std::to_string(w) + " element " + std::to_string(i) + " fails Ligozat");
        orders.push_back(e.leading_exponent);
        const std::size_t lead = 3 * static_cast<std::size_t>(e.l) + static_cast<std::size_t>(e.family);
        const QSeries w0 = eta_expand(family_eta_spec(e.family, e.m, e.l), lead + 1).with_integral_exponents();
        if (w0.leading_index() != lead || w0[lead] != GaussianRational(1))
          o.fail("weight " + std::to_string(w) + " element " + std::to_string(i) + " leading term");
        ++elements;
      }
      std::sort(orders.begin(), orders.end());
      if (std::adjacent_find(orders.begin(), orders.end()) != orders.end())
        o.fail("weight " + std::to_string(w) + " repeated order at infinity");
    } catch (const std::exception& e) {
      o.fail("weight " + std::to_string(w) + " threw: " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(elements) + " elements over weights 2..16";
  return o;
}

// 7. lattice enumeration against convolution for every grid form with <= 6 variables.
Outcome oracle_agreement() {
  Outcome o;
  int forms = 0;
  for (long p : kPrimes)
    for (int k = 1; k <= 3; ++k)
      for (int j = 0; j <= k; ++j) {
        const FormSpec spec = FormSpec::theta_power(p, k, j);
        const auto conv = repnum_convolution(spec, 50);
        for (long n = 0; n <= 50; ++n)
          if (repnum_bruteforce(spec, n) != conv[n]) o.fail(triple(p, k, j) + " n=" + std::to_string(n));
        ++forms;
      }
  if (o.pass) o.detail = std::to_string(forms) + " forms, n <= 50";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"grid identity verification", grid_identity},
      {"p = 5 decomposition certification", decomposition_certificate},
      {"table reproduction", table_reproduction},
      {"Eisenstein solver round trip", solver_round_trip},
      {"classical recoveries", classical_recoveries},
      {"basis integrity", basis_integrity},
      {"lattice-vs-convolution oracle agreement", oracle_agreement},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("unexpected exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s -- %s [%.2fs]\n", outcome.pass ? "PASS" : "FAIL", index, name,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
