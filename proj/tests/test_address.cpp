#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bouquet/address.hpp"
#include "bouquet/error.hpp"
#include "bouquet/log_model.hpp"
#include "bouquet/neighborhood.hpp"
#include "bouquet/rays.hpp"

using namespace bouquet;

namespace {

ExternalAddress ext(const char* s) { return ExternalAddress::parse(s); }
IntermediateAddress inter(const char* s) { return IntermediateAddress::parse(s); }

// Independent Phi for eventually periodic integer addresses: walk the nested
// intervals with the weights 2^-|k|/3 for enough levels to reach 1e-15.
double phi_oracle(const ExternalAddress& a) {
  double lo = 0.0;
  double len = 1.0;
  for (std::size_t i = 0; i < 40; ++i) {
    std::int64_t k = a[i].k();
    double offset = 0.0;
    for (std::int64_t j = -80; j < k; ++j) offset += std::ldexp(1.0, -static_cast<int>(std::abs(j))) / 3.0;
    lo += len * offset;
    len *= std::ldexp(1.0, -static_cast<int>(std::abs(k))) / 3.0;
  }
  return lo;
}

ExternalAddress random_address(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> sym(-3, 3);
  std::uniform_int_distribution<int> len(0, 3);
  std::vector<TractId> pre;
  std::vector<TractId> per;
  for (int i = len(gen); i > 0; --i) pre.emplace_back(sym(gen));
  for (int i = len(gen) + 1; i > 0; --i) per.emplace_back(sym(gen));
  return {pre, per};
}

}  // namespace

TEST_CASE("parse and canonical form") {
  CHECK(ext("0").to_string() == "0");
  CHECK(ext(";0").to_string() == "0");
  CHECK(ext("1 2;3").to_string() == "1 2;3");
  CHECK(ext("0 0;0") == ext("0"));
  CHECK(ext(";1 1") == ext("1"));
  CHECK(ext("1;0 1") == ext(";1 0"));
  CHECK(ext("-2;5").preperiod().size() == 1);
  for (const char* bad : {"", ";", "1;", "1  2", "a", "1;2;3", " 1"}) {
    CHECK_THROWS_AS(ExternalAddress::parse(bad), Error);
  }
  CHECK_THROWS_AS(ExternalAddress({}, {}), Error);
  CHECK(inter("cut(0)").cut_below == TractId(0));
  CHECK(inter("0 cut(0)").prefix.size() == 1);
  CHECK(inter("3 -1 cut(2)").to_string() == "3 -1 cut(2)");
  CHECK(ext("0.U;1.L").to_string() == "0.U;1.L");
}

TEST_CASE("lex compare examples") {
  CHECK(lex_compare(ext("0"), ext("1;0")) < 0);
  CHECK(lex_compare(ext("0 2;0"), inter("0 cut(2)")) < 0);
  CHECK(lex_compare(MinusInf{}, ext("-9;0")) < 0);
  CHECK(lex_compare(ext("9;0"), PlusInf{}) < 0);
  CHECK(lex_compare(ext("1 2;3"), ext("1 2;3")) == 0);
  CHECK(lex_compare(inter("cut(0)"), ext("1")) < 0);
  CHECK(lex_compare(inter("cut(0)"), ext("0 5")) > 0);
}

TEST_CASE("lex compare is a total order") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_address(gen);
    auto b = random_address(gen);
    auto c = random_address(gen);
    auto ab = lex_compare(a, b);
    CHECK(lex_compare(b, a) == 0 <=> ab);
    CHECK((ab == 0) == (a == b));
    if (ab < 0 && lex_compare(b, c) < 0) CHECK(lex_compare(a, c) < 0);
  }
}

TEST_CASE("shift") {
  CHECK(shift(ext("1 2;3")) == ext("2;3"));
  CHECK(shift(ext("0")) == ext("0"));
  CHECK(shift(ext(";0 1")) == ext(";1 0"));
}

TEST_CASE("intermediate between") {
  CHECK(intermediate_between(ext("0"), ext("1;0")) == inter("cut(0)"));
  CHECK(intermediate_between(ext("0"), ext("0 1;0")) == inter("0 cut(0)"));
  CHECK(intermediate_between(ext("0"), ext("5;0")) == inter("cut(2)"));
  CHECK(intermediate_between(ext("5;0"), ext("0")) == inter("cut(2)"));
  try {
    intermediate_between(ext("1"), ext("1"));
    FAIL("expected EQUAL_INPUTS");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kEqualInputs);
  }
  std::mt19937_64 gen(9);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_address(gen);
    auto b = random_address(gen);
    if (a == b) continue;
    if (lex_compare(a, b) > 0) std::swap(a, b);
    auto m = intermediate_between(a, b);
    CHECK(lex_compare(a, m) < 0);
    CHECK(lex_compare(m, b) < 0);
    auto e1 = external_between(a, m);
    auto e2 = external_between(m, b);
    CHECK(lex_compare(a, e1) < 0);
    CHECK(lex_compare(e1, m) < 0);
    CHECK(lex_compare(m, e2) < 0);
    CHECK(lex_compare(e2, b) < 0);
    CHECK(embed_ordinate(a) < embed_ordinate(e1));
    CHECK(embed_ordinate(e1) < embed_ordinate(m));
    CHECK(embed_ordinate(m) < embed_ordinate(e2));
    CHECK(embed_ordinate(e2) < embed_ordinate(b));
  }
}

TEST_CASE("embedding values") {
  CHECK(embed_ordinate(ext("0")) == 0.5);
  CHECK(embed_ordinate(inter("cut(0)")) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(embed_ordinate(MinusInf{}) == 0.0);
  CHECK(embed_ordinate(PlusInf{}) == 1.0);
  std::mt19937_64 gen(2);
  for (int i = 0; i < 200; ++i) {
    auto a = random_address(gen);
    CHECK(std::abs(embed_ordinate(a) - phi_oracle(a)) < 1e-12);
  }
}

TEST_CASE("embedding preserves order") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_address(gen);
    auto b = random_address(gen);
    auto c = lex_compare(a, b);
    double d = embed_ordinate(a) - embed_ordinate(b);
    if (c < 0) CHECK(d < 0);
    if (c > 0) CHECK(d > 0);
    if (c == 0) CHECK(d == 0);
  }
}

TEST_CASE("embedding shift compatibility") {
  std::mt19937_64 gen(23);
  for (int i = 0; i < 200; ++i) {
    auto a = random_address(gen);
    std::int64_t k = a[0].k();
    double offset = 0.0;
    for (std::int64_t j = -80; j < k; ++j) offset += std::ldexp(1.0, -static_cast<int>(std::abs(j))) / 3.0;
    double w = std::ldexp(1.0, -static_cast<int>(std::abs(k))) / 3.0;
    CHECK(std::abs(embed_ordinate(a) - (offset + w * embed_ordinate(a.shift()))) < 1e-12);
  }
}

TEST_CASE("circular normalization") {
  auto c = circular_normalize(ext("3 1;0"));
  CHECK(c.representative == ext("0 1;0"));
  CHECK(c.k == 3);
  c = circular_normalize(ext("0"));
  CHECK(c.representative == ext("0"));
  CHECK(c.k == 0);
  c = circular_normalize(ext("-2;5"));
  CHECK(c.representative == ext("0;5"));
  CHECK(c.k == -2);
  std::mt19937_64 gen(4);
  for (int i = 0; i < 100; ++i) {
    auto a = random_address(gen);
    auto base = circular_normalize(a);
    CHECK(circular_normalize(base.representative).k == 0);
    for (int m = -5; m <= 5; ++m) CHECK(circular_normalize(a.translated_first(m)).representative == base.representative);
  }
}

TEST_CASE("periodic family") {
  auto fam = periodic_family({TractId(-1), TractId(0), TractId(1)}, 2);
  // 3 fixed words plus 3 primitive period-2 cycles counted once per rotation
  CHECK(fam.size() == 9);
  for (std::size_t i = 1; i < fam.size(); ++i) CHECK(lex_compare(fam[i - 1], fam[i]) < 0);
  CHECK(periodic_family({}, 2).empty());
}

TEST_CASE("neighborhood membership") {
  LogModel m = LogModel::exp(0.25, 2.0);
  NeighborhoodSpec t1 = Type1Neighborhood{ext("0"), 0, 3.0};
  CHECK(neighborhood_contains(m, t1, std::complex<double>(5.0, 0.0)));
  CHECK_FALSE(neighborhood_contains(m, t1, AddressPoint{ext("1;0")}));
  CHECK(neighborhood_contains(m, t1, AddressPoint{ext("0 1")}));
  NeighborhoodSpec t3 = Type3Neighborhood{true, TractId(2), {{std::log(2.0), 2.0 * 2.0 * M_PI + 2.0}, {4.0, 2.0 * 2.0 * M_PI + 1.2}}};
  CHECK(neighborhood_contains(m, t3, AddressPoint{ext("5;0")}));
  CHECK_FALSE(neighborhood_contains(m, t3, AddressPoint{ext("2;0")}));
  NeighborhoodSpec bad = Type1Neighborhood{ext("0"), 0, 0.1};
  try {
    validate_neighborhood(m, bad);
    FAIL("expected BAD_SPEC");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadSpec);
  }
}

TEST_CASE("convergence to an address") {
  LogModel m = LogModel::exp(0.25, 2.0);
  auto s = ext("0");
  std::vector<std::complex<double>> along;
  for (double t : {2.0, 4.0, 8.0, 16.0}) along.push_back(point_at_potential(m, s, t).z);
  CHECK(converges_to_address(along, s, m));
  Endpoint ep = endpoint_estimate(m, s);
  CHECK_FALSE(converges_to_address({ep.z, ep.z, ep.z, ep.z}, s, m));
  auto other = ext("1;0");
  std::vector<std::complex<double>> mixed;
  for (double t : {2.0, 4.0, 8.0, 16.0}) {
    mixed.push_back(point_at_potential(m, s, t).z);
    mixed.push_back(point_at_potential(m, other, t).z);
  }
  CHECK_FALSE(converges_to_address(mixed, s, m));
}

TEST_CASE("type 2 neighborhoods") {
  LogModel m = LogModel::exp(0.25, 2.0);
  Type2Neighborhood nb{inter("cut(0)"), TractId(0), TractId(1), TractId(5), TractId(-5), 3.0};
  NeighborhoodSpec spec = nb;
  // in the gap between T_0 and T_1
  CHECK(neighborhood_contains(m, spec, std::complex<double>(5.0, M_PI)));
  // 0 0.. lies below the cylinder 0 5
  CHECK_FALSE(neighborhood_contains(m, spec, std::complex<double>(5.0, 0.0)));
  CHECK_FALSE(neighborhood_contains(m, spec, std::complex<double>(2.0, M_PI)));
  CHECK(neighborhood_contains(m, spec, AddressPoint{ext("0 6;0")}));
  CHECK(neighborhood_contains(m, spec, AddressPoint{ext("1 -6;0")}));
  CHECK(neighborhood_contains(m, spec, AddressPoint{inter("cut(0)")}));
  CHECK_FALSE(neighborhood_contains(m, spec, AddressPoint{ext("0 5;0")}));
  CHECK_FALSE(neighborhood_contains(m, spec, AddressPoint{ext("2")}));
  Type2Neighborhood flipped{inter("cut(0)"), TractId(1), TractId(0), TractId(5), TractId(-5), 3.0};
  CHECK_THROWS_AS(validate_neighborhood(m, flipped), Error);
}

TEST_CASE("type 3 neighborhoods") {
  LogModel m = LogModel::exp(0.25, 2.0);
  const double y = 2.0 * 2.0 * M_PI;
  Type3Neighborhood nb{true, TractId(2), {{std::log(2.0), y + 2.0}, {4.0, y + 1.2}}};
  NeighborhoodSpec spec = nb;
  CHECK(neighborhood_contains(m, spec, std::complex<double>(3.0, y + 2.5)));
  CHECK_FALSE(neighborhood_contains(m, spec, std::complex<double>(3.0, y)));
  CHECK(neighborhood_contains(m, spec, std::complex<double>(10.0, 3.0 * 2.0 * M_PI)));
  CHECK(neighborhood_contains(m, spec, AddressPoint{PlusInf{}}));
  CHECK_FALSE(neighborhood_contains(m, spec, AddressPoint{MinusInf{}}));
  CHECK(neighborhood_contains(m, spec, AddressPoint{inter("cut(2)")}));
  Type3Neighborhood wiggly{true, TractId(2), {{std::log(2.0), y + 2.0}, {0.5, y + 1.2}}};
  CHECK_THROWS_AS(validate_neighborhood(m, wiggly), Error);
  Type3Neighborhood detached{true, TractId(2), {{std::log(2.0), y + 3.0}, {1.0, y + 3.0}}};
  CHECK_THROWS_AS(validate_neighborhood(m, detached), Error);
}
