#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bouquet/error.hpp"
#include "bouquet/log_model.hpp"

using namespace bouquet;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

LogModel exp_quarter() { return LogModel::exp(0.25, 2.0); }

}  // namespace

TEST_CASE("exp F values") {
  LogModel m = exp_quarter();
  CHECK(std::abs(m.eval_F(0.0) - cd(1.0 - std::log(4.0), 0.0)) < 1e-14);
  CHECK(std::abs(m.eval_F(std::log(4.0)) - cd(4.0 - std::log(4.0), 0.0)) < 1e-14);
  CHECK(std::abs(m.eval_F(cd(0.0, kPi)) - cd(-1.0 - std::log(4.0), 0.0)) < 1e-14);
  CHECK(std::abs(m.eval_F_prime(0.0) - cd(1.0)) < 1e-15);
  CHECK(std::abs(m.eval_F_prime(std::log(4.0)) - cd(4.0)) < 1e-14);
  CHECK(std::abs(m.eval_F_prime(2.0) - cd(std::exp(2.0))) < 1e-13);
}

TEST_CASE("exp model constants") {
  LogModel m = exp_quarter();
  CHECK(m.c0() == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  CHECK(m.h_threshold() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(m.c() - cd(std::log(0.25), 0.0)) < 1e-15);
}

TEST_CASE("overflow is an error") {
  LogModel m = exp_quarter();
  CHECK_THROWS_AS(m.eval_F(cd(800.0, 0.0)), Error);
  try {
    m.eval_F(cd(800.0, 0.0));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kOverflow);
  }
}

TEST_CASE("exp classify") {
  LogModel m = exp_quarter();
  CHECK(m.classify(3.0) == TractId(0));
  CHECK(m.classify(cd(3.0, kTwoPi)) == TractId(1));
  CHECK_FALSE(m.classify(0.0).has_value());
  CHECK(m.classify(cd(3.0, -3.0 * kTwoPi)) == TractId(-3));
  // Re e^z = e^3 cos(y) falls below c0 near the band edge
  CHECK_FALSE(m.classify(cd(3.0, 1.5)).has_value());
}

TEST_CASE("exp inverse branch") {
  LogModel m = exp_quarter();
  double w = 4.0 - std::log(4.0);
  CHECK(std::abs(m.inverse_branch(TractId(0), w) - cd(std::log(4.0), 0.0)) < 1e-12);
  CHECK(std::abs(m.inverse_branch(TractId(1), w) - cd(std::log(4.0), kTwoPi)) < 1e-12);
  try {
    m.inverse_branch(TractId(0), cd(0.0, 0.0));
    FAIL("expected OUT_OF_H");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kOutOfH);
  }
}

TEST_CASE("exp vertical order") {
  LogModel m = exp_quarter();
  CHECK(m.vertical_compare(TractId(0), TractId(1)) == std::strong_ordering::less);
  CHECK(m.vertical_compare(TractId(-3), TractId(-3)) == std::strong_ordering::equal);
  CHECK(m.vertical_compare(TractId(2), TractId(-1)) == std::strong_ordering::greater);
}

TEST_CASE("disjoint type for exp") {
  CHECK(exp_quarter().validate_disjoint_type());
  for (double rf : {0.1, 0.5, 1.0, 1.5, 2.0, 5.0, 20.0}) CHECK_FALSE(LogModel::exp_disjoint_type(0.9, rf));
  CHECK_FALSE(LogModel::exp_disjoint_type(0.25, 20.0));
  CHECK_FALSE(LogModel::exp(0.25, 20.0, {false}).validate_disjoint_type());
  try {
    LogModel::exp(0.9, 2.0);
    FAIL("expected INFEASIBLE_MODEL");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInfeasibleModel);
  }
  // once false, stays false as R_f grows
  bool seen_false = false;
  for (double rf = 0.3; rf < 10.0; rf += 0.01) {
    bool ok = LogModel::exp_disjoint_type(0.25, rf);
    if (!ok && rf > 1.0) seen_false = true;
    if (seen_false) CHECK_FALSE(ok);
  }
  CHECK(seen_false);
}

TEST_CASE("expansion lower bound") {
  LogModel m = exp_quarter();
  double re_f = std::exp(3.0) - std::log(4.0);
  CHECK(m.expansion_lower_bound(3.0) == doctest::Approx((re_f - std::log(2.0)) / (4.0 * kPi)).epsilon(1e-12));
  CHECK(std::abs(m.eval_F_prime(3.0)) >= m.expansion_lower_bound(3.0));
  // Re F(z) = 20 exactly
  double x = std::log(20.0 + std::log(4.0));
  CHECK(m.expansion_lower_bound(x) == doctest::Approx((20.0 - std::log(2.0)) / (4.0 * kPi)).epsilon(1e-12));
  try {
    m.expansion_lower_bound(0.0);
    FAIL("expected NOT_IN_TRACT");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNotInTract);
  }
}

TEST_CASE("lift identity and periodicity on samples") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> re(-5.0, 6.0);
  std::uniform_real_distribution<double> im(-20.0, 20.0);
  for (const LogModel& m : {exp_quarter(), LogModel::sine(0.5, 1.0)}) {
    for (int i = 0; i < 10000; ++i) {
      cd z(re(gen), im(gen));
      cd fz = m.eval_F(z);
      cd rhs = m.eval_f(std::exp(z));
      CHECK(std::abs(std::exp(fz) - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
      if (m.family() == Family::kExp) {
        CHECK(std::abs(m.eval_F(z + cd(0.0, kTwoPi)) - fz) <= 1e-12 * (1.0 + std::abs(fz)));
      }
    }
  }
}

TEST_CASE("branch inversion on samples") {
  std::mt19937_64 gen(11);
  for (const LogModel& m : {exp_quarter(), LogModel::sine(0.5, 1.0)}) {
    std::uniform_real_distribution<double> re(m.h_threshold() + 0.01, 40.0);
    std::uniform_real_distribution<double> im(-30.0, 30.0);
    auto window = m.tract_window(-5, 5);
    for (int i = 0; i < 10000; ++i) {
      cd w(re(gen), im(gen));
      const TractId& id = window[gen() % window.size()];
      cd z = m.inverse_branch(id, w);
      CHECK(std::abs(m.eval_F(z) - w) <= 1e-10 * (1.0 + std::abs(w)));
      CHECK(m.classify(z) == id);
    }
  }
}

TEST_CASE("expansion holds on tract samples") {
  std::mt19937_64 gen(3);
  LogModel m = exp_quarter();
  std::uniform_real_distribution<double> re(m.h_threshold(), 300.0);
  std::uniform_real_distribution<double> im(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    cd z = m.inverse_branch(TractId(static_cast<std::int64_t>(gen() % 7) - 3), cd(re(gen), im(gen)));
    CHECK(std::abs(m.eval_F_prime(z)) >= m.expansion_lower_bound(z));
  }
}

TEST_CASE("sine model") {
  LogModel m = LogModel::sine(0.5, 1.0);
  CHECK(m.validate_disjoint_type());
  TractId up(0, Half::kUpper);
  TractId lo(0, Half::kLower);
  CHECK(m.vertical_compare(lo, up) == std::strong_ordering::less);
  CHECK(m.vertical_compare(up, TractId(1, Half::kLower)) == std::strong_ordering::less);
  CHECK(m.tract_center_im(lo) < m.tract_center_im(up));
  // F' matches a central difference
  cd z(2.0, 0.3);
  cd h(1e-6, 0.0);
  cd fd = (m.eval_F(z + h) - m.eval_F(z - h)) / (2.0 * h);
  CHECK(std::abs(fd - m.eval_F_prime(z)) < 1e-5 * (1.0 + std::abs(fd)));
  CHECK_THROWS_AS(m.vertical_compare(TractId(0), up), Error);
}

TEST_CASE("composite model") {
  LogModel f = LogModel::exp(0.25, 2.0, {false});
  LogModel g = LogModel::composite({f, f});
  CHECK(g.chain_length() == 2);
  cd z(3.0, 0.2);
  CHECK(std::abs(g.eval_F(z) - f.eval_F(f.eval_F(z))) < 1e-9 * std::abs(f.eval_F(f.eval_F(z))));
  TractId id = TractId::product(TractId(1), TractId(-1));
  cd w(5.0, 2.0);
  cd u = g.inverse_branch(id, w);
  CHECK(std::abs(g.eval_F(u) - w) < 1e-10 * (1.0 + std::abs(w)));
  CHECK(g.classify(u) == id);
  CHECK(g.validate_disjoint_type());
}

TEST_CASE("tract ids") {
  CHECK(TractId::parse("3") == TractId(3));
  CHECK(TractId::parse("-2.U") == TractId(-2, Half::kUpper));
  CHECK(TractId::parse("1/-1") == TractId::product(TractId(1), TractId(-1)));
  CHECK(TractId(4).to_string() == "4");
  CHECK(TractId(0, Half::kLower).successor() == TractId(0, Half::kUpper));
  CHECK(TractId(0, Half::kLower).predecessor() == TractId(-1, Half::kUpper));
  CHECK(TractId(5).translated(-2) == TractId(3));
  CHECK_THROWS_AS(TractId::parse("x"), Error);
}
