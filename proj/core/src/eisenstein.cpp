#include "rmf/eisenstein.hpp"

#include <mutex>
#include <sstream>

#include "rmf/errors.hpp"

namespace rmf {

std::string to_string(EisensteinKind kind) {
  switch (kind) {
    case EisensteinKind::Even: return "E";
    case EisensteinKind::Odd1: return "E1";
    case EisensteinKind::Odd2: return "E2chi";
    case EisensteinKind::L: return "L";
  }
  return "?";
}

std::string to_string(const EisensteinGenerator& g) {
  if (g.kind == EisensteinKind::L) return "L_" + std::to_string(g.dilation);
  return to_string(g.kind) + "_" + std::to_string(g.weight) + "(" + std::to_string(g.dilation) + "t)";
}

namespace {

void validate(const EisensteinGenerator& g) {
  switch (g.kind) {
    case EisensteinKind::Even:
      if (g.weight < 2 || g.weight % 2 != 0)
        throw DomainError("even Eisenstein series needs even weight >= 2, got " +
                          std::to_string(g.weight));
      break;
    case EisensteinKind::Odd1:
    case EisensteinKind::Odd2:
      if (g.weight < 1 || g.weight % 2 == 0)
        throw DomainError("twisted Eisenstein series needs odd weight >= 1, got " +
                          std::to_string(g.weight));
      break;
    case EisensteinKind::L:
      if (g.dilation <= 1) throw DomainError("L_d needs d > 1");
      return;
  }
  if (g.dilation < 1) throw DomainError("Eisenstein dilation must be positive");
}

Rational normalizer(EisensteinKind kind, int weight) {
  const Rational w(2L * weight);
  if (kind == EisensteinKind::Even) return -w / bernoulli(static_cast<unsigned>(weight));
  return -w / bernoulli_chi4(static_cast<unsigned>(weight));
}

// Undilated series, built once per (kind, weight) to the largest truncation requested.
class BaseSeriesCache {
 public:
  QSeries get(EisensteinKind kind, int weight, std::size_t truncation) {
    const auto key = std::make_pair(kind, weight);
    {
      std::lock_guard lock(mu_);
      const auto it = cache_.find(key);
      if (it != cache_.end() && it->second.truncation() >= truncation)
        return it->second.truncated(truncation);
    }
    QSeries fresh = build(kind, weight, truncation);
    std::lock_guard lock(mu_);
    auto& slot = cache_[key];
    if (slot.truncation() < fresh.truncation()) slot = fresh;
    return fresh;
  }

 private:
  static QSeries build(EisensteinKind kind, int weight, std::size_t truncation) {
    QSeries s(truncation);
    for (std::size_t n = 0; n < truncation; ++n)
      s.set(n, eisenstein_coefficient({kind, weight, 1}, static_cast<long>(n)));
    return s;
  }

  std::mutex mu_;
  std::map<std::pair<EisensteinKind, int>, QSeries> cache_;
};

BaseSeriesCache& base_cache() {
  static BaseSeriesCache cache;
  return cache;
}

}  // namespace

Rational eisenstein_coefficient(const EisensteinGenerator& g, long n) {
  validate(g);
  if (g.kind == EisensteinKind::L) {
    return eisenstein_coefficient({EisensteinKind::Even, 2, 1}, n) -
           Rational(g.dilation) * eisenstein_coefficient({EisensteinKind::Even, 2, g.dilation}, n);
  }
  if (n < 0 || n % g.dilation != 0) return Rational(0);
  const long m = n / g.dilation;
  const auto k = static_cast<unsigned>(g.weight - 1);
  const Character one = Character::trivial();
  const Character chi = Character::chi_minus4();
  switch (g.kind) {
    case EisensteinKind::Even:
      return m == 0 ? Rational(1) : normalizer(g.kind, g.weight) * twisted_sigma(k, one, one, m);
    case EisensteinKind::Odd1:
      return m == 0 ? Rational(0) : normalizer(g.kind, g.weight) * twisted_sigma(k, one, chi, m);
    case EisensteinKind::Odd2:
      return m == 0 ? Rational(1) : normalizer(g.kind, g.weight) * twisted_sigma(k, chi, one, m);
    case EisensteinKind::L:
      break;
  }
  return Rational(0);
}

QSeries eisenstein_series(const EisensteinGenerator& g, std::size_t truncation) {
  validate(g);
  if (truncation == 0) throw DomainError("Eisenstein series: truncation must be positive");
  if (g.kind == EisensteinKind::L) return L_combination(g.dilation).expand(truncation);
  const auto d = static_cast<std::size_t>(g.dilation);
  // dilation maps T coefficients to d(T-1)+1
  const std::size_t base_t = (truncation - 1 + d - 1) / d + 1;
  QSeries base = base_cache().get(g.kind, g.weight, base_t);
  if (d == 1) return base;
  return base.dilate(g.dilation).truncated(truncation);
}

QSeries eis_even(int weight, long d, std::size_t truncation) {
  return eisenstein_series({EisensteinKind::Even, weight, d}, truncation);
}

QSeries eis_odd(EisensteinKind kind, int weight, long d, std::size_t truncation) {
  if (kind != EisensteinKind::Odd1 && kind != EisensteinKind::Odd2)
    throw DomainError("eis_odd: kind must be Odd1 or Odd2");
  return eisenstein_series({kind, weight, d}, truncation);
}

QSeries L_series(long d, std::size_t truncation) {
  return eisenstein_series({EisensteinKind::L, 2, d}, truncation);
}

EisensteinCombination L_combination(long d) {
  if (d <= 1) throw DomainError("L_d needs d > 1");
  EisensteinCombination c;
  c.add({EisensteinKind::Even, 2, 1}, GaussianRational(1));
  c.add({EisensteinKind::Even, 2, d}, GaussianRational(-d));
  return c;
}

void EisensteinCombination::add(const EisensteinGenerator& g, const GaussianRational& coeff) {
  validate(g);
  if (g.kind == EisensteinKind::L) {
    *this += coeff * L_combination(g.dilation);
    return;
  }
  auto& slot = terms_[g];
  slot += coeff;
  if (slot.is_zero()) terms_.erase(g);
}

GaussianRational EisensteinCombination::coefficient(const EisensteinGenerator& g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

QSeries EisensteinCombination::expand(std::size_t truncation) const {
  QSeries out(truncation);
  for (const auto& [g, c] : terms_) out += eisenstein_series(g, truncation) * c;
  return out;
}

GaussianRational EisensteinCombination::weight2_dilation_sum() const {
  GaussianRational s;
  for (const auto& [g, c] : terms_)
    if (g.kind == EisensteinKind::Even && g.weight == 2) s += c * GaussianRational(Rational(1, g.dilation));
  return s;
}

EisensteinCombination& EisensteinCombination::operator+=(const EisensteinCombination& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

EisensteinCombination& EisensteinCombination::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, c] : terms_) c *= s;
  return *this;
}

std::string EisensteinCombination::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c << ")*" << to_string(g);
    first = false;
  }
  return first ? "0" : os.str();
}

EisensteinCombination F_p_combination(long p, int k, int j, long a) {
  require_odd_prime(p);
  if (k < 2) throw DomainError("F_p: weight must be at least 2");
  if (j < 0 || j > k) throw DomainError("F_p: j must lie in 0..k");
  if (a != 1 && a != p) throw DomainError("F_p: dilation must be 1 or p");

  const long x = Rational(kronecker(-4, p)).pow(j).num().get_si();
  EisensteinCombination c;
  if (k % 2 == 0) {
    const long s = (k / 2) % 2 == 0 ? 1 : -1;
    const Rational scale = Rational(x) / (Rational(2).pow(k) - Rational(1));
    c.add({EisensteinKind::Even, k, a}, GaussianRational(scale * Rational(s)));
    c.add({EisensteinKind::Even, k, 2 * a}, GaussianRational(scale * Rational(-(s + x))));
    c.add({EisensteinKind::Even, k, 4 * a}, GaussianRational(scale * Rational(x) * Rational(2).pow(k)));
  } else {
    const Rational twist = Rational(kronecker(-4, a) * x) * Rational(-4).pow((k - 1) / 2);
    c.add({EisensteinKind::Odd2, k, a}, GaussianRational(1));
    c.add({EisensteinKind::Odd1, k, a}, GaussianRational(twist));
  }
  return c;
}

QSeries F_p_series(long p, int k, int j, long a, std::size_t truncation) {
  return F_p_combination(p, k, j, a).expand(truncation);
}

}  // namespace rmf
