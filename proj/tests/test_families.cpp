#include "doctest.h"
#include "fixtures.hpp"

#include "thf/families.hpp"

#include <cmath>
#include <numbers>

using namespace thf;
using namespace fx;

namespace {

// 4 det((1/pi) int sigma(x) (2x)^{j+k} dx) by composite Gauss-Legendre on a graded mesh
double moment_det(double a, double b, int kappa) {
  static const double xg[] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                              0.9061798459386640};
  static const double wg[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                              0.2369268850561891};
  // substitute x = -1 + 2 s^k near each end to tame the endpoint powers
  auto integrate = [&](int power) {
    double total = 0.0;
    const int panels = 400;
    const double g = 6.0;
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < panels; ++i)
        for (int q = 0; q < 5; ++q) {
          double s = (i + 0.5 + 0.5 * xg[q]) / panels;
          double dist = std::pow(s, g);
          double jac = g * std::pow(s, g - 1.0) * wg[q] * 0.5 / panels;
          double x = side == 0 ? -1.0 + dist : 1.0 - dist;
          // the factor vanishing at the near end is written with dist to avoid rounding to 0
          double w = side == 0 ? std::pow(2.0 - 2.0 * x, a) * std::pow(2.0 * dist, b)
                               : std::pow(2.0 * dist, a) * std::pow(2.0 + 2.0 * x, b);
          total += jac * w * std::pow(2.0 * x, power);
        }
    return total / std::numbers::pi;
  };
  Eigen::MatrixXd M(kappa, kappa);
  for (int j = 0; j < kappa; ++j)
    for (int k = 0; k < kappa; ++k) M(j, k) = integrate(j + k);
  return 4.0 * M.determinant();
}

}  // namespace

TEST_CASE("classification") {
  auto a = three_piece() * t_pow(2, 1.5);
  CHECK(classify_family(validate_pair(a, a)) == FamilyTag::APlusHA);
  CHECK(classify_family(validate_pair(a, constant(-1.0) * a)) == FamilyTag::AMinusHA);
  CHECK(classify_family(validate_pair(a, t_pow(-1, -1.0) * a)) == FamilyTag::AMinusHtInvA);
  CHECK(classify_family(validate_pair(a, t_pow(1) * a)) == FamilyTag::APlusHtA);
  CHECK(classify_family(validate_pair(constant(1.0), invert(three_piece()))) == FamilyTag::IdPlusHankel);
  CHECK(classify_family(validate_pair(three_piece() * a, a)) == FamilyTag::General);
}

TEST_CASE("a-driven family tables") {
  auto p = Exponent::parse("2");
  auto r = family_fredholm(u(kOne, 0.1), FamilyTag::APlusHA, p);
  CHECK(r.fredholm);
  CHECK(r.kappa == 0);
  CHECK(r.dim_ker == 0);
  CHECK(r.dim_coker == 0);
  CHECK(r.general_agrees);
  auto r2 = family_fredholm(t_pow(-1), FamilyTag::APlusHA, p);
  CHECK(r2.kappa == -1);
  CHECK(r2.dim_ker == 1);
  CHECK(r2.general_agrees);
  // same a = u_{1,1/2}: the beta+ intervals are (-1/4, 5/4) and (-3/4, 1/4)
  auto iv1 = family_intervals(FamilyTag::AMinusHtInvA, p);
  auto iv2 = family_intervals(FamilyTag::APlusHA, p);
  CHECK(iv1.plus_lo == Rational(-1, 4));
  CHECK(iv1.plus_hi == Rational(3, 4));
  CHECK(iv2.plus_lo == Rational(-3, 4));
  CHECK(iv2.plus_hi == Rational(1, 4));
  auto x1 = family_fredholm(u(kOne, 0.5), FamilyTag::AMinusHtInvA, p);
  auto x2 = family_fredholm(u(kOne, 0.5), FamilyTag::APlusHA, p);
  CHECK(x1.kappa == 0);
  CHECK(x2.kappa == 1);
  CHECK(x1.general_agrees);
  CHECK(x2.general_agrees);
  // a boundary value of beta+ is a failure of condition (i)
  auto f = family_fredholm(u(kOne, 0.25), FamilyTag::APlusHA, p);
  CHECK_FALSE(f.fredholm);
  CHECK(f.general_agrees);
}

TEST_CASE("T(a) - H(a) reduces to T(hat a) + H(hat a)") {
  auto a = t_pow(1) * u(kOne, 0.3) * u(kMinusOne, -0.2) * u(UnitPoint(1, 3), 0.1);
  a.log.add(1, 0.2);
  for (const char* ps : {"2", "1.3", "3.5"}) {
    auto p = Exponent::parse(ps);
    auto r1 = defect_numbers(validate_pair(a, constant(-1.0) * a), p);
    auto r2 = defect_numbers(validate_pair(hat(a), hat(a)), p);
    CHECK(r1.fredholm == r2.fredholm);
    CHECK(r1.dim_ker == r2.dim_ker);
    CHECK(r1.dim_coker == r2.dim_coker);
  }
  for (double x : {0.3, 2.0, 4.0}) CHECK(std::abs(eval(hat(a), x) - eval(a, x + std::numbers::pi)) < 1e-12);
}

TEST_CASE("I + H(tilde phi) report") {
  auto one = hankel_identity_report(constant(1.0), Exponent::parse("2"));
  CHECK(one.fredholm);
  CHECK(one.n == 0);
  CHECK(one.m == 0);
  CHECK(one.dim_ker == 0);
  CHECK(one.dim_coker == 0);
  auto phi = t_pow(2) * u(kOne, 0.7) * u(kMinusOne, -0.3) * u(UnitPoint(1, 3), 0.45) * u(UnitPoint(2, 3), 0.45);
  for (const char* ps : {"1.3", "2", "2.8"}) {
    auto p = Exponent::parse(ps);
    auto r = hankel_identity_report(phi, p);
    REQUIRE(r.fredholm);
    REQUIRE(r.gamma_rep);
    double gd = (r.gamma_rep->gammas[0].beta - r.delta_rep->gammas[0].beta).real();
    if (p.p < 2) CHECK((gd == 0.0 || gd == 1.0));
    if (p.p > 2) CHECK((gd == 0.0 || gd == -1.0));
    if (p.p == 2) CHECK(gd == 0.0);
    // m - n = sum of (gamma - delta)
    double s = (r.gamma_rep->gamma_plus - r.delta_rep->gamma_plus).real() +
               (r.gamma_rep->gamma_minus - r.delta_rep->gamma_minus).real() + gd;
    CHECK(r.m - r.n == static_cast<int>(std::lround(s)));
  }
}

TEST_CASE("rho split agrees with the general rho") {
  auto phi = t_pow(2) * u(kOne, 0.7) * u(kMinusOne, -0.3) * u(UnitPoint(1, 3), 0.45) * u(UnitPoint(2, 3), 0.45);
  phi.log.add(1, {0.2, 0.1});
  phi.log.add(-1, {-0.2, -0.1});
  for (const char* ps : {"1.3", "2", "2.8"}) {
    auto p = Exponent::parse(ps);
    auto pr = validate_pair(constant(1.0), invert(phi));
    auto g = normalize(pr.c, Side::C, p);
    auto d = normalize(pr.d, Side::D, p);
    auto rf = rho_factors(pr, g, d);
    for (int i = 0; i < 100; ++i) {
      double th = 2 * std::numbers::pi * (i + 0.37) / 100;
      auto s = rho_split(g, d, th);
      cplx direct = rf.eval(th);
      CHECK(std::abs(s.rho0 * s.rho1 - direct) < 1e-8 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("Jacobi determinant closed form") {
  CHECK(std::abs(jacobi_determinant(0, 0, 1) - 8 / std::numbers::pi) < 1e-14);
  for (double a : {-0.4, 0.0, 0.3, 0.7})
    for (double b : {-0.4, 0.0, 0.3, 0.7})
      for (int k = 1; k <= 4; ++k) {
        double cf = jacobi_determinant(a, b, k);
        double md = moment_det(a, b, k);
        CHECK(cf != 0.0);
        CHECK(std::abs(cf - md) / std::abs(md) < 1e-9);
        if (a + b == 0.0) CHECK(std::abs(jacobi_determinant_printed(a, b, k) - cf) / cf < 1e-13);
      }
  CHECK(std::abs(jacobi_determinant_printed(0.3, 0.3, 1) - jacobi_determinant(0.3, 0.3, 1)) > 1e-3);
  CHECK_THROWS(jacobi_determinant(-1.0, 0.0, 1));
  CHECK_THROWS(jacobi_determinant(0.0, 0.0, 0));
  auto d = jacobi_data(0.3, -0.4, 3);
  CHECK(d.sigma_sq.size() == 3);
}
