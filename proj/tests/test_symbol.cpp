#include "doctest.h"
#include "fixtures.hpp"

#include "thf/errors.hpp"
#include "thf/symbol.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace thf;
using namespace fx;

static const double pi = std::numbers::pi;

TEST_CASE("unit points reduce and pair exactly") {
  UnitPoint a(3, 12);
  CHECK(a.num == 1);
  CHECK(a.den == 4);
  CHECK(UnitPoint(5, 4) == UnitPoint(1, 4));
  CHECK(UnitPoint(-1, 4) == UnitPoint(3, 4));
  CHECK(UnitPoint(1, 4).conj() == UnitPoint(3, 4));
  CHECK(UnitPoint(0, 7).is_one());
  CHECK(UnitPoint(2, 4).is_minus_one());
  CHECK(UnitPoint(1, 3).in_upper());
  CHECK_FALSE(UnitPoint(2, 3).in_upper());
  CHECK_FALSE(UnitPoint::minus_one().in_upper());
  CHECK(UnitPoint(1, 4).value() == cplx(0, 1));
  CHECK_THROWS_AS(UnitPoint(1, 0), Error);
}

TEST_CASE("eval of basic factors") {
  CHECK(std::abs(eval(u(kOne, 1.0), pi / 2) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(eval(constant(1.0), 1.234) - 1.0) < 1e-15);
  CHECK(std::abs(eval(three_piece(), pi / 4) - std::polar(1.0, 3 * pi / 8)) < 1e-14);
  // the three pieces
  for (double x : {0.3, 1.2})
    CHECK(std::abs(eval(three_piece(), x) - std::exp(cplx(0, pi / 4 + x / 2))) < 1e-14);
  for (double x : {1.7, 3.0, 4.6})
    CHECK(std::abs(eval(three_piece(), x) - std::exp(cplx(0, pi / 2 + x / 2))) < 1e-14);
  for (double x : {4.8, 6.0})
    CHECK(std::abs(eval(three_piece(), x) - std::exp(cplx(0, 3 * pi / 4 + x / 2))) < 1e-14);
  CHECK_THROWS_AS(eval(u(kI, 0.3), pi / 2), Error);
  // integer exponents are powers: u_{tau,n} = (-t/tau)^n
  CHECK(std::abs(eval(u(kMinusOne, 1.0), 0.7) - std::polar(1.0, 0.7)) < 1e-15);
  CHECK(std::abs(eval(u(kMinusOne, -1.0), 0.7) - std::polar(1.0, -0.7)) < 1e-15);
  CHECK(std::abs(eval(u(kOne, 2.0), 0.7) - std::polar(1.0, 1.4)) < 1e-14);
}

TEST_CASE("one sided limits") {
  auto [m, p] = one_sided_limits(u(kOne, 0.3), kOne);
  CHECK(std::abs(m - std::exp(cplx(0, pi * 0.3))) < 1e-15);
  CHECK(std::abs(p - std::exp(cplx(0, -pi * 0.3))) < 1e-15);
  auto lim = one_sided_limits(three_piece(), kOne);
  CHECK(std::abs(lim.second - std::polar(1.0, pi / 4)) < 1e-15);
  auto li = one_sided_limits(three_piece(), kI);
  CHECK(std::abs(li.first - std::polar(1.0, pi / 2)) < 1e-14);
  CHECK(std::abs(li.second - std::polar(1.0, 3 * pi / 4)) < 1e-14);
  auto lm = one_sided_limits(three_piece(), kMinusOne);
  CHECK(std::abs(lm.first + 1.0) < 1e-14);
  CHECK(std::abs(lm.first - lm.second) < 1e-14);
  // limits agree with nearby values
  auto s = three_piece();
  CHECK(std::abs(eval(s, pi / 2 - 1e-9) - li.first) < 1e-8);
  CHECK(std::abs(eval(s, pi / 2 + 1e-9) - li.second) < 1e-8);
}

TEST_CASE("tilde, multiply, invert") {
  auto t = tilde(u(kI, 0.25));
  REQUIRE(t.jumps.size() == 1);
  CHECK(t.jumps[0].point == kMinusI);
  CHECK(t.jumps[0].beta == cplx(-0.25));
  CHECK(tilde(t_pow(2)).kappa == -2);
  auto s = three_piece();
  s.log.add(2, {0.1, 0.2});
  s.log.add(-1, {0.3, 0});
  CHECK(same_symbol(tilde(tilde(s)), s));
  auto prod = u(kOne, 0.25) * u(kOne, 0.75);
  REQUIRE(prod.jumps.size() == 1);
  CHECK(prod.jumps[0].beta == cplx(1.0));
  CHECK(same_symbol(prod, u(kOne, 1.0)));
  CHECK(same_symbol(simplify(prod), t_pow(1, -1.0)));
  CHECK(invert(t_pow(3)).kappa == -3);
  CHECK(is_identity(s * invert(s)));
  for (double x : {0.4, 2.0, 5.5}) CHECK(std::abs(eval(tilde(s), x) - eval(s, -x)) < 1e-13);
}

TEST_CASE("validate_pair") {
  auto a = three_piece();
  auto pr = validate_pair(a, a);
  CHECK(is_identity(pr.c));
  auto pr2 = validate_pair(t_pow(1), t_pow(1));
  CHECK(is_identity(pr2.c));
  CHECK_THROWS_AS(validate_pair(constant(1.0), u(kI, 0.5)), Error);
  try {
    validate_pair(constant(1.0), u(kI, 0.5));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConditionViolated);
  }
  // b = -t^{-1} a gives c = -t = u_{1,1}
  auto pr3 = validate_pair(a, t_pow(-1, -1.0) * a);
  CHECK(same_symbol(pr3.c, u(kOne, 1.0)));
  // b = t a gives c = t^{-1} = u_{-1,-1}
  auto pr4 = validate_pair(a, t_pow(1) * a);
  CHECK(same_symbol(pr4.c, u(kMinusOne, -1.0)));
  // a = b gives d = tilde(a)/a
  auto pr5 = validate_pair(a, a);
  CHECK(same_symbol(pr5.d, tilde(a) * invert(a)));
}

TEST_CASE("stored aux functions are exactly unimodular") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.9, 0.9);
  for (int it = 0; it < 50; ++it) {
    CanonicalSymbol b = t_pow(it % 5 - 2, std::polar(1.5, U(rng)));
    b.log.add(1, {U(rng), U(rng)});
    b.log.add(-2, {U(rng), U(rng)});
    b = b * u(kOne, U(rng)) * u(UnitPoint(1, 3), {U(rng), 0.1});
    CanonicalSymbol c = t_pow(2 * (it % 3) - 1) * u(kOne, U(rng)) * u(kMinusOne, U(rng));
    double bb = U(rng);
    c = c * u(UnitPoint(1, 5), bb) * u(UnitPoint(4, 5), bb);
    c.log.add(1, {U(rng), 0.2});
    c.log.add(-1, -c.log.at(1));
    auto pr = validate_pair(c * b, b);
    for (auto* s : {&pr.c, &pr.d}) {
      auto e = multiply(*s, tilde(*s));
      e.log.prune();
      CHECK(e.kappa == 0);
      CHECK(e.jumps.empty());
      for (auto& [k, g] : e.log.coeffs) CHECK(g == cplx{});
      CHECK(e.scale == cplx(1.0));
    }
    CHECK(same_symbol(pr.c, c, 1e-12));
  }
}

TEST_CASE("pointwise group identities on random angles") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(0.0, 2 * pi);
  auto s = three_piece() * u(UnitPoint(1, 7), {0.3, -0.2}) * t_pow(3, {0.5, 2.0});
  s.log.add(3, {0.2, -0.1});
  auto inv = invert(s);
  for (int i = 0; i < 1000; ++i) {
    double x = U(rng);
    CHECK(std::abs(eval(s * inv, x) - 1.0) < 1e-12);
    CHECK(std::abs(eval(s, x) * eval(inv, x) - 1.0) < 1e-12);
  }
  // limit ratio matches the jump size
  for (auto& j : s.jumps) {
    auto [m, p] = one_sided_limits(s, j.point);
    CHECK(std::abs(m / p - std::exp(cplx(0, 2 * pi) * j.beta)) < 1e-12);
  }
}
