#include "rmf/basis20.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "rmf/errors.hpp"
#include "rmf/formula.hpp"

namespace rmf {

namespace {

std::string element_name(int family, int m, int l, int z_power) {
  return "z^" + std::to_string(z_power) + " S_" + std::to_string(family) + "(" + std::to_string(m) +
         ", " + std::to_string(l) + ")";
}

void require_case(int weight, Character chi) {
  const bool even = weight % 2 == 0;
  if (weight < 2 || (weight == 1) || (even && chi.discriminant() != 1) || (!even && chi.discriminant() != -4))
    throw DomainError("no level-20 cusp basis for weight " + std::to_string(weight) +
                      " with character of discriminant " + std::to_string(chi.discriminant()));
}

// phi(5t)/phi(t) as an eta quotient.
EtaQuotientSpec phi_ratio_spec() { return phi_eta_spec(5) * phi_eta_spec(1).pow(-1); }

}  // namespace

EtaQuotientSpec family_step_spec() { return EtaQuotientSpec({{1, -1}, {2, 3}, {4, -2}, {5, 5}, {10, -15}, {20, 10}}); }

EtaQuotientSpec family_tail_spec(int family) {
  switch (family) {
    case 1: return EtaQuotientSpec({{1, -4}, {2, 12}, {4, -4}, {5, 12}, {10, -28}, {20, 12}});
    case 2: return EtaQuotientSpec({{1, -1}, {2, 8}, {4, -3}, {5, 13}, {10, -32}, {20, 15}});
    case 3: return EtaQuotientSpec({{1, -3}, {2, 9}, {4, -2}, {5, 15}, {10, -37}, {20, 18}});
    default: throw DomainError("family must be 1, 2 or 3");
  }
}

EtaQuotientSpec family_eta_spec(int family, int m, int l) {
  if (l < 0) throw DomainError("family index l must be non-negative");
  return phi_ratio_spec().pow(m) * family_step_spec().pow(l) * family_tail_spec(family);
}

QSeries family_series(int family, int m, int l, std::size_t truncation) {
  const EtaQuotientSpec spec = family_eta_spec(family, m, l);
  const QSeries phi = theta_phi(truncation);
  const QSeries ratio = (phi.dilate(5).truncated(truncation) / phi).pow(m);
  const QSeries rest =
      eta_expand(family_step_spec().pow(l) * family_tail_spec(family), truncation).with_integral_exponents().truncated(truncation);
  QSeries direct = ratio * rest;
  const QSeries via_eta = eta_expand(spec, truncation).with_integral_exponents().truncated(truncation);
  if (const auto n = first_difference(direct, via_eta))
    throw ConsistencyError("S_" + std::to_string(family) + ": series division and eta form differ at q^" +
                           std::to_string(*n));
  return direct;
}

int dim_cusp(int weight, Character chi) {
  require_case(weight, chi);
  if (weight == 2) return 1;
  switch (weight % 4) {
    case 0: return 12 * (weight / 4) - 6;
    case 2: return 12 * ((weight + 2) / 4) - 12;
    case 3: return 12 * ((weight + 1) / 4) - 8;
    default: return 12 * ((weight + 3) / 4) - 14;
  }
}

std::vector<FamilyRange> basis_layout(int weight, Character chi) {
  require_case(weight, chi);
  if (weight == 2) return {{1, 6, 0}};
  switch (weight % 4) {
    case 0: {
      const int K = weight / 4;
      return {{1, 10 * K, 4 * K - 3}, {2, 10 * K, 4 * K - 3}, {3, 10 * K, 4 * K - 3}};
    }
    case 2: {
      const int K = (weight + 2) / 4;
      return {{1, 10 * K - 4, 4 * K - 4}, {2, 10 * K - 6, 4 * K - 5}, {3, 10 * K - 6, 4 * K - 6}};
    }
    case 3: {
      const int K = (weight + 1) / 4;
      return {{1, 10 * K - 2, 4 * K - 3}, {2, 10 * K - 2, 4 * K - 4}, {3, 10 * K - 2, 4 * K - 4}};
    }
    default: {
      const int K = (weight + 3) / 4;
      return {{1, 10 * K - 6, 4 * K - 5}, {2, 10 * K - 8, 4 * K - 6}, {3, 10 * K - 8, 4 * K - 6}};
    }
  }
}

std::size_t sturm_bound_level20(int weight) { return 3 * static_cast<std::size_t>(weight); }

namespace {

CuspBasis build_basis(int weight, Character chi, std::size_t truncation) {
  CuspBasis basis;
  basis.weight = weight;
  basis.chi = chi;
  const EtaQuotientSpec z_spec = phi_eta_spec(1).pow(2);
  for (const FamilyRange& range : basis_layout(weight, chi)) {
    for (int l = 0; l <= range.l_max; ++l) {
      BasisElement e;
      e.family = range.family;
      e.m = range.m;
      e.l = l;
      e.z_power = weight;
      e.spec = z_spec.pow(weight) * family_eta_spec(range.family, range.m, l);
      const std::string name = element_name(e.family, e.m, l, weight);

      LigozatReport report = is_cusp_form(e.spec, kLevel20, Rational(weight), chi);
      if (!report.cusp_form) {
        std::string failed;
        for (const auto& c : report.checks)
          if (!c.pass) failed += " " + c.name + " (" + c.detail + ")";
        throw ConsistencyError(name + " fails the Ligozat criteria:" + failed);
      }
      const Rational order = e.spec.order_at_infinity();
      if (!order.is_integer() || order != Rational(3 * l + e.family))
        throw ConsistencyError(name + " has order " + order.str() + " at infinity, expected " +
                               std::to_string(3 * l + e.family));
      e.leading_exponent = static_cast<std::size_t>(3 * l + e.family);
      e.expansion = eta_expand(e.spec, truncation).with_integral_exponents().truncated(truncation);
      if (e.leading_exponent < truncation &&
          (e.expansion.leading_index() != e.leading_exponent || e.expansion[e.leading_exponent] != GaussianRational(1)))
        throw ConsistencyError(name + ": expansion does not start with 1*q^" + std::to_string(e.leading_exponent));
      basis.elements.push_back(std::move(e));
      basis.ligozat.push_back(std::move(report));
    }
  }

  std::vector<std::size_t> order(basis.elements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return basis.elements[a].leading_exponent < basis.elements[b].leading_exponent;
  });
  CuspBasis sorted;
  sorted.weight = weight;
  sorted.chi = chi;
  for (std::size_t i : order) {
    sorted.elements.push_back(std::move(basis.elements[i]));
    sorted.ligozat.push_back(std::move(basis.ligozat[i]));
  }
  for (std::size_t i = 1; i < sorted.elements.size(); ++i)
    if (sorted.elements[i].leading_exponent == sorted.elements[i - 1].leading_exponent)
      throw ConsistencyError("two basis elements vanish to order " +
                             std::to_string(sorted.elements[i].leading_exponent) + " at infinity");

  const int dim = dim_cusp(weight, chi);
  if (static_cast<int>(sorted.elements.size()) != dim)
    throw ConsistencyError("weight " + std::to_string(weight) + " basis has " +
                           std::to_string(sorted.elements.size()) + " elements, dimension is " +
                           std::to_string(dim));
  return sorted;
}

}  // namespace

std::shared_ptr<const CuspBasis> cusp_basis(int weight, Character chi, std::size_t truncation) {
  require_case(weight, chi);
  static std::mutex mu;
  static std::map<std::pair<int, long>, std::shared_ptr<const CuspBasis>> cache;
  const auto key = std::make_pair(weight, chi.discriminant());
  std::shared_ptr<const CuspBasis> cached;
  {
    std::lock_guard lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) cached = it->second;
  }
  if (!cached || cached->elements.front().expansion.truncation() < truncation) {
    cached = std::make_shared<const CuspBasis>(build_basis(weight, chi, truncation));
    std::lock_guard lock(mu);
    auto& slot = cache[key];
    if (!slot || slot->elements.front().expansion.truncation() < truncation) slot = cached;
  }
  if (cached->elements.front().expansion.truncation() == truncation) return cached;
  auto copy = std::make_shared<CuspBasis>(*cached);
  for (auto& e : copy->elements) e.expansion = e.expansion.truncated(truncation);
  return copy;
}

std::vector<Rational> decompose(const QSeries& g, int weight, Character chi) {
  require_case(weight, chi);
  const std::size_t t = g.truncation();
  if (t < sturm_bound_level20(weight) + 1)
    throw DomainError("decompose: truncation " + std::to_string(t) + " is below the Sturm bound " +
                      std::to_string(sturm_bound_level20(weight)) + " + 1");
  std::vector<Rational> remainder = g.real_coefficients();
  const auto basis = cusp_basis(weight, chi, t);

  std::vector<Rational> alpha;
  alpha.reserve(basis->elements.size());
  for (const BasisElement& e : basis->elements) {
    const std::size_t lead = e.leading_exponent;
    for (std::size_t n = 0; n < lead && n < t; ++n)
      if (!remainder[n].is_zero())
        throw NotInSpanError("decompose: remainder has q^" + std::to_string(n) +
                             " coefficient " + remainder[n].str() + " below the next basis order",
                             n);
    if (lead >= t) {
      alpha.emplace_back(0);
      continue;
    }
    const Rational a = remainder[lead];
    if (!a.is_zero())
      for (std::size_t n = lead; n < t; ++n) remainder[n] -= a * e.expansion[n].re();
    alpha.push_back(a);
  }
  for (std::size_t n = 0; n < t; ++n)
    if (!remainder[n].is_zero())
      throw NotInSpanError("decompose: nonzero remainder " + remainder[n].str() + " at q^" + std::to_string(n), n);
  return alpha;
}

QSeries reassemble(const std::vector<Rational>& alpha, int weight, Character chi, std::size_t truncation) {
  const auto basis = cusp_basis(weight, chi, truncation);
  if (alpha.size() != basis->elements.size())
    throw StructuralError("reassemble: " + std::to_string(alpha.size()) + " coefficients for a basis of size " +
                          std::to_string(basis->elements.size()));
  QSeries out(truncation);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (!alpha[i].is_zero()) out += basis->elements[i].expansion * GaussianRational(alpha[i]);
  return out;
}

std::vector<FamilyRange> a5_layout(int k) {
  if (k < 3) throw DomainError("a5_layout: weight must exceed 2");
  switch (k % 4) {
    case 0: return {{1, 5 * k / 2, k - 3}, {2, 5 * k / 2, k - 3}, {3, 5 * k / 2, k - 3}};
    case 1: return {{1, (5 * k + 3) / 2, k - 2}, {2, (5 * k - 1) / 2, k - 3}, {3, (5 * k - 1) / 2, k - 3}};
    case 2: return {{1, (5 * k + 2) / 2, k - 2}, {2, (5 * k - 2) / 2, k - 3}, {3, (5 * k - 2) / 2, k - 4}};
    default: return {{1, (5 * k + 1) / 2, k - 2}, {2, (5 * k + 1) / 2, k - 3}, {3, (5 * k + 1) / 2, k - 3}};
  }
}

QSeries a5_closed_form(int k, int j, std::size_t truncation) {
  validate_parameters(5, k, j);
  if (k == 2) {
    const Rational c = Rational(4, 3) * Rational(j % 2 == 0 ? 0 : 2);
    return family_series(1, 6, 0, truncation) * GaussianRational(c);
  }
  const Character chi = k % 2 == 0 ? Character::trivial() : Character::chi_minus4();
  const std::size_t t = std::max(truncation, sturm_bound_level20(k) + 1);
  const std::vector<Rational> alpha = decompose(cusp_residual(5, k, j, t), k, chi);
  const auto basis = cusp_basis(k, chi, t);

  std::map<std::size_t, Rational> by_order;
  for (std::size_t i = 0; i < alpha.size(); ++i) by_order[basis->elements[i].leading_exponent] = alpha[i];

  QSeries out(truncation);
  for (const FamilyRange& range : a5_layout(k)) {
    for (int l = 0; l <= range.l_max; ++l) {
      const auto it = by_order.find(static_cast<std::size_t>(3 * l + range.family));
      if (it == by_order.end())
        throw ConsistencyError("a5_closed_form: no basis coefficient for S_" + std::to_string(range.family) +
                               " at l = " + std::to_string(l));
      if (!it->second.is_zero())
        out += family_series(range.family, range.m, l, truncation) * GaussianRational(it->second);
      by_order.erase(it);
    }
  }
  for (const auto& [order, a] : by_order)
    if (!a.is_zero())
      throw ConsistencyError("a5_closed_form: coefficient at order " + std::to_string(order) +
                             " has no matching family term");
  return out;
}

}  // namespace rmf
