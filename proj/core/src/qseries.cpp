#include "rmf/qseries.hpp"

#include <numeric>
#include <sstream>

#include "rmf/errors.hpp"

namespace rmf {

QSeries::QSeries(std::size_t truncation, Rational prefactor)
    : coeffs_(truncation), prefactor_(std::move(prefactor)) {
  if (truncation == 0) throw DomainError("QSeries: truncation must be positive");
}

QSeries::QSeries(std::vector<GaussianRational> coeffs, Rational prefactor)
    : coeffs_(std::move(coeffs)), prefactor_(std::move(prefactor)) {
  if (coeffs_.empty()) throw DomainError("QSeries: truncation must be positive");
}

QSeries QSeries::constant(const GaussianRational& value, std::size_t truncation) {
  QSeries s(truncation);
  s.coeffs_[0] = value;
  return s;
}

const GaussianRational& QSeries::operator[](std::size_t n) const {
  if (n >= coeffs_.size())
    throw StructuralError("QSeries: coefficient " + std::to_string(n) + " is beyond truncation " +
                          std::to_string(coeffs_.size()));
  return coeffs_[n];
}

void QSeries::set(std::size_t n, GaussianRational value) {
  if (n >= coeffs_.size())
    throw StructuralError("QSeries: coefficient " + std::to_string(n) + " is beyond truncation");
  coeffs_[n] = std::move(value);
}

std::optional<std::size_t> QSeries::leading_index() const {
  for (std::size_t n = 0; n < coeffs_.size(); ++n)
    if (!coeffs_[n].is_zero()) return n;
  return std::nullopt;
}

QSeries QSeries::truncated(std::size_t truncation) const {
  if (truncation == 0 || truncation > coeffs_.size())
    throw StructuralError("QSeries: cannot extend truncation " + std::to_string(coeffs_.size()) +
                          " to " + std::to_string(truncation));
  return QSeries(std::vector<GaussianRational>(coeffs_.begin(), coeffs_.begin() + truncation),
                 prefactor_);
}

QSeries QSeries::dilate(long m) const {
  if (m < 1) throw DomainError("QSeries::dilate: factor must be positive");
  const auto um = static_cast<std::size_t>(m);
  QSeries out(um * (coeffs_.size() - 1) + 1, prefactor_ * Rational(m));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) out.coeffs_[n * um] = coeffs_[n];
  return out;
}

QSeries QSeries::with_integral_exponents() const {
  if (prefactor_.is_zero()) return *this;
  if (!prefactor_.is_integer() || prefactor_.sign() < 0)
    throw StructuralError("QSeries: prefactor q^(" + prefactor_.str() +
                          ") is not a non-negative integer power");
  const auto shift = static_cast<std::size_t>(prefactor_.num().get_ui());
  std::vector<GaussianRational> c(shift + coeffs_.size());
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  return QSeries(std::move(c));
}

const QSeries& QSeries::require_modular() const {
  if (!prefactor_.is_zero())
    throw StructuralError("QSeries: fractional prefactor q^(" + prefactor_.str() +
                          ") cannot be exported");
  for (std::size_t n = 0; n < coeffs_.size(); ++n)
    if (!coeffs_[n].is_real())
      throw StructuralError("QSeries: coefficient " + std::to_string(n) + " is not real");
  return *this;
}

std::vector<Rational> QSeries::real_coefficients() const {
  require_modular();
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.re());
  return out;
}

QSeries QSeries::inverse() const {
  if (coeffs_[0].is_zero())
    throw DomainError("QSeries::inverse: constant term is zero");
  const std::size_t t = coeffs_.size();
  QSeries out(t, -prefactor_);
  const GaussianRational inv0 = coeffs_[0].inverse();
  out.coeffs_[0] = inv0;
  for (std::size_t n = 1; n < t; ++n) {
    GaussianRational acc;
    for (std::size_t m = 1; m <= n; ++m)
      if (!coeffs_[m].is_zero()) acc.add_product(coeffs_[m], out.coeffs_[n - m]);
    out.coeffs_[n] = -acc * inv0;
  }
  return out;
}

QSeries QSeries::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  QSeries base = *this;
  base.prefactor_ = Rational(0);
  QSeries result = one(coeffs_.size());
  for (auto e = static_cast<unsigned long>(exponent); e != 0; e >>= 1) {
    if (e & 1U) result = result * base;
    if (e > 1) base = base * base;
  }
  result.prefactor_ = prefactor_ * Rational(exponent);
  return result;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  if (prefactor_ != o.prefactor_)
    throw StructuralError("QSeries: cannot add series with prefactors q^(" + prefactor_.str() +
                          ") and q^(" + o.prefactor_.str() + ")");
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += o.coeffs_[n];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const GaussianRational& s) {
  for (auto& c : coeffs_)
    if (!c.is_zero()) c *= s;
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::size_t t = std::min(a.truncation(), b.truncation());
  QSeries out(t, a.prefactor_ + b.prefactor_);
  for (std::size_t i = 0; i < t; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < t; ++j)
      if (!b.coeffs_[j].is_zero()) out.coeffs_[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
  }
  return out;
}

std::optional<std::size_t> first_difference(const QSeries& a, const QSeries& b) {
  if (a.prefactor() != b.prefactor())
    throw StructuralError("first_difference: prefactors differ");
  const std::size_t t = std::min(a.truncation(), b.truncation());
  for (std::size_t n = 0; n < t; ++n)
    if (a[n] != b[n]) return n;
  return std::nullopt;
}

EtaQuotientSpec::EtaQuotientSpec(std::initializer_list<std::pair<const long, long>> terms)
    : EtaQuotientSpec(std::map<long, long>(terms)) {}

EtaQuotientSpec::EtaQuotientSpec(std::map<long, long> terms) : terms_(std::move(terms)) {
  for (const auto& [delta, r] : terms_)
    if (delta < 1) throw DomainError("EtaQuotientSpec: dilation must be positive");
  prune();
}

void EtaQuotientSpec::prune() { std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; }); }

long EtaQuotientSpec::exponent(long delta) const {
  const auto it = terms_.find(delta);
  return it == terms_.end() ? 0 : it->second;
}

Rational EtaQuotientSpec::weight() const {
  long s = 0;
  for (const auto& [delta, r] : terms_) s += r;
  return Rational(s, 2);
}

Rational EtaQuotientSpec::order_at_infinity() const {
  long s = 0;
  for (const auto& [delta, r] : terms_) s += delta * r;
  return Rational(s, 24);
}

EtaQuotientSpec& EtaQuotientSpec::operator*=(const EtaQuotientSpec& o) {
  for (const auto& [delta, r] : o.terms_) terms_[delta] += r;
  prune();
  return *this;
}

EtaQuotientSpec EtaQuotientSpec::pow(long exponent) const {
  EtaQuotientSpec out = *this;
  for (auto& [delta, r] : out.terms_) r *= exponent;
  out.prune();
  return out;
}

QSeries theta_phi(std::size_t truncation) {
  if (truncation == 0) throw DomainError("theta_phi: truncation must be positive");
  QSeries s(truncation);
  s.set(0, GaussianRational(1));
  for (std::size_t n = 1; n * n < truncation; ++n) s.set(n * n, GaussianRational(2));
  return s;
}

EtaQuotientSpec phi_eta_spec(long dilation) {
  return EtaQuotientSpec({{dilation, -2}, {2 * dilation, 5}, {4 * dilation, -2}});
}

// Logarithmic derivative: if f = prod_delta prod_n (1 - q^{delta n})^{r_delta}
// then n f_n = sum_{m=1}^{n} c_m f_{n-m} with c_m = -sum_{delta | m} r_delta delta sigma_1(m/delta).
// All quantities are integers and the division by n is exact.
QSeries eta_expand(const EtaQuotientSpec& spec, std::size_t truncation) {
  if (truncation == 0) throw DomainError("eta_expand: truncation must be positive");
  const std::size_t t = truncation;
  std::vector<long> sigma1(t, 0);
  for (std::size_t d = 1; d < t; ++d)
    for (std::size_t m = d; m < t; m += d) sigma1[m] += static_cast<long>(d);

  std::vector<mpz_class> c(t, 0);
  for (const auto& [delta, r] : spec.terms()) {
    const auto ud = static_cast<std::size_t>(delta);
    for (std::size_t m = ud; m < t; m += ud) c[m] -= mpz_class(r) * delta * sigma1[m / ud];
  }

  std::vector<mpz_class> f(t, 0);
  f[0] = 1;
  for (std::size_t n = 1; n < t; ++n) {
    mpz_class acc = 0;
    for (std::size_t m = 1; m <= n; ++m)
      if (c[m] != 0 && f[n - m] != 0) acc += c[m] * f[n - m];
    mpz_divexact_ui(f[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }

  std::vector<GaussianRational> coeffs;
  coeffs.reserve(t);
  for (auto& v : f) coeffs.emplace_back(Rational(v));
  return QSeries(std::move(coeffs), spec.order_at_infinity());
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

Rational ligozat_order(const EtaQuotientSpec& spec, long level, long c) {
  if (level < 1 || c < 1 || level % c != 0)
    throw DomainError("ligozat_order: cusp denominator " + std::to_string(c) +
                      " does not divide level " + std::to_string(level));
  Rational sum;
  for (const auto& [delta, r] : spec.terms()) {
    const long g = std::gcd(c, delta);
    sum += Rational(g * g * r, delta);
  }
  return sum * Rational(level, 24 * std::gcd(c * c, level));
}

namespace {

// Sign and squarefree kernel of (-1)^w prod delta^{r_delta}.
long character_kernel(const EtaQuotientSpec& spec, long weight) {
  std::map<long, long> parity;
  for (const auto& [delta, r] : spec.terms()) {
    long n = delta;
    for (long q = 2; q * q <= n; ++q)
      while (n % q == 0) {
        parity[q] += r;
        n /= q;
      }
    if (n > 1) parity[n] += r;
  }
  long kernel = (weight % 2 == 0) ? 1 : -1;
  for (const auto& [prime, e] : parity)
    if (e % 2 != 0) kernel *= prime;
  return kernel;
}

std::string str_of(long v) { return std::to_string(v); }

}  // namespace

LigozatReport is_cusp_form(const EtaQuotientSpec& spec, long level, const Rational& weight,
                           Character chi) {
  LigozatReport report;
  auto add = [&](std::string name, bool pass, std::string detail) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  bool divides = true;
  for (const auto& [delta, r] : spec.terms()) divides = divides && level % delta == 0;
  add("dilations_divide_level", divides, "N = " + str_of(level));

  long sum_dr = 0;
  long sum_nr = 0;
  long sum_r = 0;
  for (const auto& [delta, r] : spec.terms()) {
    sum_dr += delta * r;
    sum_r += r;
    if (level % delta == 0) sum_nr += (level / delta) * r;
  }
  add("sum_delta_r_mod_24", sum_dr % 24 == 0, "sum delta*r = " + str_of(sum_dr));
  add("sum_level_over_delta_r_mod_24", divides && sum_nr % 24 == 0,
      "sum (N/delta)*r = " + str_of(sum_nr));

  const bool integral = weight.is_integer();
  add("weight", integral && Rational(sum_r, 2) == weight,
      "requested " + weight.str() + ", quotient has " + Rational(sum_r, 2).str());

  if (integral) {
    const long kernel = character_kernel(spec, weight.num().get_si());
    const long wanted = chi.discriminant() == 1 ? 1 : -1;
    add("character", kernel == wanted,
        "squarefree kernel of (-1)^k prod delta^r is " + str_of(kernel));
  } else {
    add("character", false, "weight is not integral");
  }

  std::ostringstream orders;
  bool positive = divides;
  if (divides) {
    for (long c : divisors(level)) {
      const Rational v = ligozat_order(spec, level, c);
      orders << (orders.tellp() > 0 ? ", " : "") << "1/" << c << ": " << v;
      positive = positive && v.sign() > 0;
    }
  }
  add("positive_order_at_every_cusp", positive, orders.str());

  report.cusp_form = all_pass(report.checks);
  return report;
}

}  // namespace rmf
