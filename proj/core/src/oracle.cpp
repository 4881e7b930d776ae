#include "rmf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "rmf/errors.hpp"

namespace rmf {

namespace {

void validate(const FormSpec& spec) {
  for (const auto& [a, m] : spec.parts) {
    if (a < 1) throw DomainError("FormSpec: coefficients must be positive");
    if (m < 0 || m % 2 != 0) throw DomainError("FormSpec: multiplicities must be even and non-negative");
  }
}

long isqrt(long n) {
  auto r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

int FormSpec::variables() const {
  int v = 0;
  for (const auto& [a, m] : parts) v += m;
  return v;
}

FormSpec FormSpec::theta_power(long p, int k, int j) {
  FormSpec spec;
  if (2 * k - 2 * j > 0) spec.parts.emplace_back(1, 2 * k - 2 * j);
  if (j > 0) spec.parts.emplace_back(p, 2 * j);
  return spec;
}

mpz_class repnum_bruteforce(const FormSpec& spec, long n, double budget) {
  validate(spec);
  if (n < 0) return 0;
  if (spec.variables() > 8) throw ResourceError("repnum_bruteforce: more than 8 variables");
  if (n > 10000) throw ResourceError("repnum_bruteforce: n exceeds 10^4");

  std::vector<long> coeffs;
  for (const auto& [a, m] : spec.parts) coeffs.insert(coeffs.end(), static_cast<std::size_t>(m), a);
  if (coeffs.empty()) return n == 0 ? 1 : 0;
  std::sort(coeffs.begin(), coeffs.end(), std::greater<>());

  // The innermost variable is solved directly, so only the outer ones are enumerated.
  double box = 1;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) box *= 2.0 * std::floor(std::sqrt(double(n) / double(coeffs[i]))) + 1;
  if (box > budget)
    throw ResourceError("repnum_bruteforce: enumeration box of ~" + std::to_string(static_cast<long long>(box)) +
                        " points exceeds the budget; use repnum_convolution");

  const std::size_t last = coeffs.size() - 1;
  std::function<unsigned long long(std::size_t, long)> count = [&](std::size_t idx, long rest) -> unsigned long long {
    const long a = coeffs[idx];
    if (idx == last) {
      if (rest == 0) return 1;
      if (rest % a != 0) return 0;
      const long s = isqrt(rest / a);
      return s * s == rest / a ? 2 : 0;
    }
    unsigned long long total = count(idx + 1, rest);
    for (long x = 1; a * x * x <= rest; ++x) total += 2 * count(idx + 1, rest - a * x * x);
    return total;
  };
  const unsigned long long total = count(0, n);
  mpz_class result;
  mpz_import(result.get_mpz_t(), 1, 1, sizeof(total), 0, 0, &total);
  return result;
}

std::vector<mpz_class> repnum_convolution(const FormSpec& spec, std::size_t n_max) {
  validate(spec);
  const std::size_t len = n_max + 1;
  std::vector<mpz_class> acc(len, 0);
  acc[0] = 1;
  for (const auto& [a, m] : spec.parts) {
    std::vector<long> theta(len, 0);
    theta[0] = 1;
    for (std::size_t x = 1; static_cast<std::size_t>(a) * x * x < len; ++x) theta[static_cast<std::size_t>(a) * x * x] = 2;
    for (int rep = 0; rep < m; ++rep) {
      std::vector<mpz_class> next(len, 0);
      for (std::size_t i = 0; i < len; ++i) {
        if (acc[i] == 0) continue;
        for (std::size_t s = 0; i + s < len; ++s)
          if (theta[s] != 0) next[i + s] += acc[i] * theta[s];
      }
      acc = std::move(next);
    }
  }
  return acc;
}

std::string repnum_csv(const std::vector<mpz_class>& counts) {
  std::ostringstream os;
  os << "n,count\n";
  for (std::size_t n = 0; n < counts.size(); ++n) os << n << ',' << counts[n].get_str() << '\n';
  return os.str();
}

}  // namespace rmf
