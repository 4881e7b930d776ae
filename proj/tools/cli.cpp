#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "rmf/basis20.hpp"
#include "rmf/errors.hpp"
#include "rmf/formula.hpp"
#include "rmf/oracle.hpp"
#include "rmf/serialize.hpp"

namespace rmf::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  long p = 0;
  int k = 0;
  int j = 0;
  std::size_t terms = 0;  // 0: default truncation
  std::size_t n_max = 50;
  std::string format = "json";
  std::string grid;
  std::string out;
};

struct GridEntry {
  long p = 0;
  int k = 0;
  int j = 0;
  std::size_t terms = 0;
  auto key() const { return std::tie(p, k, j, terms); }
};

Character chi_for(int weight) { return weight % 2 == 0 ? Character::trivial() : Character::chi_minus4(); }

void check_triple(long p, int k, int j) {
  if (!is_odd_prime(p)) throw UsageError("--p must be an odd prime, got " + std::to_string(p));
  if (k < 2) throw UsageError("--k must be at least 2, got " + std::to_string(k));
  if (j < 0 || j > k) throw UsageError("--j must lie in 0.." + std::to_string(k) + ", got " + std::to_string(j));
}

void check_level20(long p) {
  if (p != 5) throw UsageError("this command needs the level-20 context, --p 5");
}

// Exact convolution is quadratic in the truncation; beyond this the run is refused.
constexpr std::size_t kMaxTerms = 5000;

void check_budget(std::size_t terms) {
  if (terms > kMaxTerms)
    throw ResourceError(std::to_string(terms) + " terms exceeds the budget of " + std::to_string(kMaxTerms));
}

std::size_t truncation_for(const Options& o) {
  const std::size_t t = o.terms ? o.terms : default_truncation(o.p, o.k);
  check_budget(t);
  return t;
}

json parameters(long p, int k, int j, std::size_t terms) {
  return json{{"p", p}, {"k", k}, {"j", j}, {"terms", terms}};
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

std::string real_str(const GaussianRational& z) {
  if (!z.is_real()) throw StructuralError("coefficient " + z.str() + " is not real");
  return z.re().str();
}

std::string dump(const json& j) { return j.dump(2) + '\n'; }

int cmd_expand(const Options& o, std::string& out) {
  check_triple(o.p, o.k, o.j);
  const std::size_t t = truncation_for(o);
  const QSeries theta = theta_power_series(o.p, o.k, o.j, t);
  const QSeries main = main_terms_series(o.p, o.k, o.j, t);
  const QSeries residual = theta - main;
  if (o.format == "csv") {
    out = csv_line({"n", "theta_power", "main_terms", "residual"});
    for (std::size_t n = 0; n < t; ++n)
      out += csv_line({std::to_string(n), real_str(theta[n]), real_str(main[n]), real_str(residual[n])});
    return kOk;
  }
  const MainTermWeights w = main_term_weights(o.p, o.k, o.j);
  out = dump(json{{"parameters", parameters(o.p, o.k, o.j, t)},
                  {"coefficients", {{"tau", w.at_tau}, {"p_tau", w.at_p_tau}}},
                  {"theta_power", theta},
                  {"main_terms", main},
                  {"residual", residual}});
  return kOk;
}

std::string summary_line(const GridEntry& e, const FormulaReport* r, const std::string& error) {
  std::ostringstream os;
  os << "p=" << e.p << " k=" << e.k << " j=" << e.j << " terms=" << e.terms;
  if (!error.empty()) {
    os << " ERROR " << error;
    return os.str();
  }
  os << (r->passed() ? " PASS" : " FAIL");
  std::size_t passed = 0;
  std::string failed;
  for (const auto& c : r->checks) {
    if (c.pass) {
      ++passed;
    } else {
      failed += (failed.empty() ? "" : ",") + c.name;
    }
  }
  os << " checks=" << passed << '/' << r->checks.size();
  if (!failed.empty()) os << " failed=" << failed;
  if (r->first_offending_exponent) os << " first_offending_exponent=" << *r->first_offending_exponent;
  return os.str();
}

std::vector<GridEntry> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read grid file " + path);
  json config;
  try {
    config = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("grid file " + path + " is not valid JSON: " + e.what());
  }
  if (!config.is_array()) throw UsageError("grid file must hold a JSON array of {p, k, j, terms}");
  std::vector<GridEntry> entries;
  for (const auto& item : config) {
    GridEntry e;
    try {
      e.p = item.at("p").get<long>();
      e.k = item.at("k").get<int>();
      e.j = item.at("j").get<int>();
      e.terms = item.contains("terms") ? item.at("terms").get<std::size_t>() : 0;
    } catch (const json::exception& ex) {
      throw UsageError("bad grid entry " + item.dump() + ": " + ex.what());
    }
    check_triple(e.p, e.k, e.j);
    if (e.terms == 0) e.terms = default_truncation(e.p, e.k);
    check_budget(e.terms);
    entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  return entries;
}

int cmd_verify_grid(const Options& o, std::string& out) {
  const std::vector<GridEntry> entries = read_grid(o.grid);
  std::vector<std::unique_ptr<FormulaReport>> reports(entries.size());
  std::vector<std::string> errors(entries.size());
  std::vector<char> resource(entries.size(), 0);

  // Entries are independent; workers pull indices and results land in place,
  // so the output order is the sorted entry order regardless of timing.
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const GridEntry& e = entries[i];
      try {
        reports[i] = std::make_unique<FormulaReport>(verify_identity(e.p, e.k, e.j, {.truncation = e.terms}));
      } catch (const ResourceError& ex) {
        errors[i] = ex.what();
        resource[i] = 1;
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  const std::size_t n_threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(entries.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  int code = kOk;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const GridEntry& e = entries[i];
    if (o.format == "json") {
      json line{{"parameters", parameters(e.p, e.k, e.j, e.terms)}};
      if (reports[i]) {
        line["passed"] = reports[i]->passed();
        json failed = json::array();
        for (const auto& c : reports[i]->checks)
          if (!c.pass) failed.push_back(c.name);
        line["failed_checks"] = failed;
      } else {
        line["passed"] = false;
        line["error"] = errors[i];
      }
      out += line.dump() + '\n';
    } else {
      out += summary_line(e, reports[i].get(), errors[i]) + '\n';
    }
    if (resource[i]) {
      code = kResource;
    } else if (code == kOk && (!reports[i] || !reports[i]->passed())) {
      code = kCheckFailed;
    }
  }
  return code;
}

int cmd_verify(const Options& o, std::string& out) {
  if (!o.grid.empty()) return cmd_verify_grid(o, out);
  check_triple(o.p, o.k, o.j);
  const FormulaReport r = verify_identity(o.p, o.k, o.j, {.truncation = truncation_for(o)});
  if (o.format == "csv") {
    out = csv_line({"check", "pass", "detail"});
    for (const auto& c : r.checks) out += csv_line({c.name, c.pass ? "true" : "false", '"' + c.detail + '"'});
  } else {
    out = dump(json(r));
  }
  return r.passed() ? kOk : kCheckFailed;
}

int cmd_repnum(const Options& o, std::string& out) {
  check_triple(o.p, o.k, o.j);
  check_budget(o.n_max + 1);
  const std::size_t t = o.n_max + 1;
  const std::vector<mpz_class> oracle = repnum_convolution(FormSpec::theta_power(o.p, o.k, o.j), o.n_max);

  // For p = 5 the cusp part comes from the eta-quotient basis, determined by
  // the first Sturm-bound coefficients only; otherwise it is theta minus main.
  std::vector<Rational> cusp(t);
  std::string source = "theta_minus_main_terms";
  if (o.p == 5) {
    const std::size_t tt = std::max(t, sturm_bound_level20(o.k) + 1);
    const std::size_t sturm_t = sturm_bound_level20(o.k) + 1;
    const auto alpha = decompose(cusp_residual(5, o.k, o.j, sturm_t), o.k, chi_for(o.k));
    const QSeries part = reassemble(alpha, o.k, chi_for(o.k), tt);
    for (std::size_t n = 0; n < t; ++n) cusp[n] = part[n].re();
    source = "level20_basis";
  } else {
    const QSeries residual = cusp_residual(o.p, o.k, o.j, t);
    for (std::size_t n = 0; n < t; ++n) cusp[n] = residual[n].re();
  }

  std::size_t mismatches = 0;
  json rows = json::array();
  std::string csv = csv_line({"n", "oracle", "main_term", "cusp_part", "formula", "match"});
  for (std::size_t n = 0; n < t; ++n) {
    const Rational main = main_term_coefficient(o.p, o.k, o.j, static_cast<long>(n));
    const Rational formula = main + cusp[n];
    const bool match = formula == Rational(oracle[n]);
    if (!match) ++mismatches;
    rows.push_back(json{{"n", n},
                        {"oracle", oracle[n].get_str()},
                        {"main_term", main},
                        {"cusp_part", cusp[n]},
                        {"formula", formula},
                        {"match", match}});
    csv += csv_line({std::to_string(n), oracle[n].get_str(), main.str(), cusp[n].str(), formula.str(),
                     match ? "true" : "false"});
  }
  if (o.format == "csv") {
    out = csv;
  } else {
    json params{{"p", o.p}, {"k", o.k}, {"j", o.j}, {"n_max", o.n_max}};
    out = dump(json{{"parameters", params}, {"cusp_part_source", source}, {"rows", rows}, {"mismatches", mismatches}});
  }
  return mismatches == 0 ? kOk : kCheckFailed;
}

int cmd_decompose(const Options& o, std::string& out) {
  check_triple(o.p, o.k, o.j);
  check_level20(o.p);
  const std::size_t t = std::max(truncation_for(o), sturm_bound_level20(o.k) + 1);
  const Character chi = chi_for(o.k);
  const QSeries g = cusp_residual(5, o.k, o.j, t);
  const std::vector<Rational> alpha = decompose(g, o.k, chi);
  const auto basis = cusp_basis(o.k, chi, t);
  const bool exact = reassemble(alpha, o.k, chi, t) == g;
  if (o.format == "csv") {
    out = csv_line({"index", "family", "m", "l", "z_power", "leading_exponent", "alpha"});
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const BasisElement& e = basis->elements[i];
      out += csv_line({std::to_string(i), std::to_string(e.family), std::to_string(e.m), std::to_string(e.l),
                       std::to_string(e.z_power), std::to_string(e.leading_exponent), alpha[i].str()});
    }
  } else {
    json elements = json::array();
    for (const BasisElement& e : basis->elements)
      elements.push_back(json{{"family", e.family},
                              {"params", {{"m", e.m}, {"l", e.l}, {"z_power", e.z_power}}},
                              {"leading_exponent", e.leading_exponent}});
    out = dump(json{{"parameters", parameters(o.p, o.k, o.j, t)},
                    {"alpha", alpha_to_json(alpha)},
                    {"basis", elements},
                    {"reassembly_exact", exact}});
  }
  return exact ? kOk : kCheckFailed;
}

int cmd_basis(const Options& o, std::string& out) {
  check_level20(o.p);
  if (o.k < 2) throw UsageError("--k (the weight) must be at least 2");
  const Character chi = chi_for(o.k);
  const int dim = dim_cusp(o.k, chi);
  const std::size_t t = o.terms ? o.terms : sturm_bound_level20(o.k) + 1;
  check_budget(t);
  const auto basis = cusp_basis(o.k, chi, t);
  bool ok = static_cast<int>(basis->elements.size()) == dim;
  for (const auto& r : basis->ligozat) ok = ok && r.cusp_form;
  if (o.format == "csv") {
    out = csv_line({"index", "family", "m", "l", "z_power", "ord_infinity", "leading_exponent", "cusp_form"});
    for (std::size_t i = 0; i < basis->elements.size(); ++i) {
      const BasisElement& e = basis->elements[i];
      out += csv_line({std::to_string(i), std::to_string(e.family), std::to_string(e.m), std::to_string(e.l),
                       std::to_string(e.z_power), e.spec.order_at_infinity().str(),
                       std::to_string(e.leading_exponent), basis->ligozat[i].cusp_form ? "true" : "false"});
    }
  } else {
    out = dump(json{{"weight", o.k},
                    {"character", chi.discriminant() == 1 ? "chi_1" : "chi_-4"},
                    {"dimension", dim},
                    {"elements", basis_listing(*basis)}});
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_cusp_constants(const Options& o, std::string& out) {
  check_triple(o.p, o.k, 0);
  std::vector<EisensteinGenerator> gens;
  if (o.k == 2) {
    for (long d : cusp_labels(o.p))
      if (d > 1) gens.push_back({EisensteinKind::L, 2, d});
  } else if (o.k % 2 == 0) {
    for (long d : cusp_labels(o.p)) gens.push_back({EisensteinKind::Even, o.k, d});
  } else {
    gens = {{EisensteinKind::Odd2, o.k, 1},
            {EisensteinKind::Odd2, o.k, o.p},
            {EisensteinKind::Odd1, o.k, 1},
            {EisensteinKind::Odd1, o.k, o.p}};
  }
  std::vector<std::pair<std::string, CuspConstantVector>> rows;
  for (const auto& g : gens) rows.emplace_back(to_string(g), generator_constants(g, o.p));
  for (int j = 0; j <= o.k; ++j) rows.emplace_back("theta_power_j" + std::to_string(j), const_phi_vector(o.p, o.k, j));

  if (o.format == "csv") {
    out = csv_line({"form", "cusp", "re", "im"});
    for (const auto& [name, v] : rows)
      for (const auto& [c, z] : v.entries())
        out += csv_line({name, "1/" + std::to_string(c), z.re().str(), z.im().str()});
    return kOk;
  }
  json eis = json::array();
  json theta = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    json entry{{"form", rows[i].first}, {"constants", json(rows[i].second).at("constants")}};
    (i < gens.size() ? eis : theta).push_back(entry);
  }
  out = dump(json{{"p", o.p},
                  {"k", o.k},
                  {"parity", o.k % 2 == 0 ? "even" : "odd"},
                  {"eisenstein", eis},
                  {"theta_powers", theta}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact verification of theta-power Eisenstein formulas", "rmf"};
  app.require_subcommand(1);

  const auto common = [&o](CLI::App* sub, bool with_j) {
    sub->add_option("--p", o.p, "odd prime")->required();
    sub->add_option("--k", o.k, "weight, at least 2")->required();
    if (with_j) sub->add_option("--j", o.j, "0..k")->required();
    sub->add_option("--terms", o.terms, "truncation order (default max(101, Sturm bound + 1))")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "write the artifact to this file");
  };

  CLI::App* expand = app.add_subcommand("expand", "theta power, main terms and residual series");
  common(expand, true);
  CLI::App* verify = app.add_subcommand("verify", "check the identity for one triple or a grid");
  verify->add_option("--p", o.p, "odd prime");
  verify->add_option("--k", o.k, "weight, at least 2");
  verify->add_option("--j", o.j, "0..k");
  verify->add_option("--terms", o.terms, "truncation order")->check(CLI::PositiveNumber);
  verify->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", o.out, "write the artifact to this file");
  auto* grid = verify->add_option("--grid", o.grid, "JSON array of {p, k, j, terms}");
  CLI::App* repnum = app.add_subcommand("repnum", "formula against the lattice-count oracle");
  common(repnum, true);
  repnum->add_option("--n-max", o.n_max, "largest n in the table");
  CLI::App* decomp = app.add_subcommand("decompose", "coefficients of the cusp part in the level-20 basis");
  common(decomp, true);
  CLI::App* basis = app.add_subcommand("basis", "level-20 eta-quotient cusp basis of weight --k");
  common(basis, false);
  CLI::App* cusp = app.add_subcommand("cusp-constants", "constant terms at the cusps of Gamma_0(4p)");
  common(cusp, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_help, o_err;
    const int code = app.exit(e, o_help, o_err);
    out << o_help.str();
    err << o_err.str();
    return code == 0 ? kOk : kUsage;
  }

  std::string artifact;
  int code = kOk;
  try {
    if (verify->parsed() && grid->count() == 0 && (o.p == 0 || o.k == 0))
      throw UsageError("verify needs --p, --k and --j, or --grid");
    if (expand->parsed()) code = cmd_expand(o, artifact);
    if (verify->parsed()) code = cmd_verify(o, artifact);
    if (repnum->parsed()) code = cmd_repnum(o, artifact);
    if (decomp->parsed()) code = cmd_decompose(o, artifact);
    if (basis->parsed()) code = cmd_basis(o, artifact);
    if (cusp->parsed()) code = cmd_cusp_constants(o, artifact);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  }

  if (o.out.empty()) {
    out << artifact;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << artifact)) {
      err << "cannot write " << o.out << '\n';
      return kUsage;
    }
  }
  if (code == kCheckFailed) err << "one or more checks failed\n";
  return code;
}

}  // namespace rmf::cli
