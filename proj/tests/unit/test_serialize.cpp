#include <random>

#include "doctest.h"
#include "rmf/errors.hpp"
#include "rmf/serialize.hpp"

using rmf::GaussianRational;
using rmf::json;
using rmf::Rational;

TEST_CASE("rational and gaussian string forms") {
  CHECK(json(Rational(-3, 6)).dump() == "\"-1/2\"");
  CHECK(json(Rational(4)).dump() == "\"4\"");
  CHECK(json(GaussianRational(Rational(1, 2), Rational(-1))).dump() == R"({"im":"-1","re":"1/2"})");
  CHECK(json::parse("\"6/4\"").get<Rational>() == Rational(3, 2));
  CHECK_THROWS(json::parse("\"1/0\"").get<Rational>());
  CHECK_THROWS(json::parse("\"x\"").get<Rational>());
}

TEST_CASE("series round trip") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GaussianRational> c;
    for (int n = 0; n < 30; ++n) c.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    const rmf::QSeries s(c, Rational(num(rng), 24));
    const json j = s;
    CHECK(j.at("truncation") == 30);
    CHECK(j.get<rmf::QSeries>() == s);
  }
}

TEST_CASE("eta spec round trip") {
  const rmf::EtaQuotientSpec spec{{2, 10}, {1, -4}, {4, -4}};
  const json j = spec;
  CHECK(j.dump() == R"({"terms":{"1":-4,"2":10,"4":-4}})");
  CHECK(j.get<rmf::EtaQuotientSpec>() == spec);
}

TEST_CASE("cusp constant vectors") {
  const auto v = rmf::const_phi_vector(7, 3, 1);
  const json j = v;
  CHECK(j.at("p") == 7);
  CHECK(j.at("parity") == "odd");
  CHECK(j.at("constants").size() == 4);
  CHECK(rmf::cusp_constants_from_json(j) == v);
  json bad = j;
  bad["constants"]["2"] = json(GaussianRational(1));
  CHECK_THROWS_AS(rmf::cusp_constants_from_json(bad), rmf::DomainError);
}

TEST_CASE("formula report shape") {
  const auto r = rmf::verify_identity(5, 2, 1, {.truncation = 20});
  const json j = r;
  for (const char* key : {"parameters", "coefficients", "theta_power", "main_terms", "residual", "checks", "alpha"})
    CHECK(j.contains(key));
  CHECK(j.at("parameters").at("terms") == 20);
  CHECK(j.at("passed") == true);
  CHECK(j.at("alpha") == json::array({"8/3"}));
  CHECK(j.dump() == json(rmf::verify_identity(5, 2, 1, {.truncation = 20})).dump());
}
