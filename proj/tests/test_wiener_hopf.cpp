#include "doctest.h"
#include "fixtures.hpp"

#include "thf/wiener_hopf.hpp"

#include <cmath>
#include <numbers>

using namespace thf;
using namespace fx;

TEST_CASE("smooth plus factor") {
  FourierLogPoly l;
  CHECK(smooth_plus_factor(l, 4).coeffs == std::vector<cplx>{1.0, 0.0, 0.0, 0.0, 0.0});
  l.add(1, 1.0);
  auto s = smooth_plus_factor(l, 10).coeffs;
  CHECK(std::abs(s[4] - 1.0 / 24) < 1e-16);
  // odd log t - 1/t: phi+ = e^t and phi+(t) / phi+(1/t) = exp(2i sin x)
  l.add(-1, -1.0);
  auto f = smooth_plus_factor(l, 64).coeffs;
  for (int i = 0; i < 100; ++i) {
    double x = 2 * std::numbers::pi * (i + 0.5) / 100;
    cplx t = std::polar(1.0, x);
    cplx v = eval_series(f, t) / eval_series(f, 1.0 / t);
    CHECK(std::abs(v - std::exp(cplx(0, 2 * std::sin(x)))) < 1e-10);
  }
}

TEST_CASE("plus factor of -t") {
  auto c = validate_pair(constant(1.0), t_pow(-1, -1.0)).c;
  auto rep = normalize(c, Side::C, Exponent::parse("2"));
  CHECK(rep.n == 0);
  auto f = build_plus_factor(rep, 64);
  CHECK(std::abs(f.series.coeffs[0] - 1.0) < 1e-15);
  CHECK(std::abs(f.series.coeffs[1] + 1.0) < 1e-15);
  for (int k = 2; k <= 64; ++k) CHECK(std::abs(f.series.coeffs[k]) < 1e-15);
  CHECK(reconstruction_error(c, rep, f) < 1e-14);
}

TEST_CASE("plus factor of the three piece symbol") {
  auto c = validate_pair(three_piece(), constant(1.0)).c;
  auto rep = normalize(c, Side::C, Exponent::parse("2"));
  auto f = build_plus_factor(rep, 4096);
  CHECK(rep.n == 1);
  CHECK(reconstruction_error(c, rep, f, 50) < 1e-12);
  CHECK(series_error(f, 0.9) < 1e-12);
  // reciprocal identity
  auto one = convolve(f.series.coeffs, f.inverse.coeffs, 4096);
  CHECK(std::abs(one[0] - 1.0) < 1e-14);
  double worst = 0;
  for (int k = 1; k <= 4096; ++k) worst = std::max(worst, std::abs(one[k]));
  CHECK(worst < 1e-10);
}

TEST_CASE("rho for the trivial pair") {
  auto pr = validate_pair(constant(1.0), constant(1.0));
  auto p = Exponent::parse("2");
  auto rf = rho_factors(pr, normalize(pr.c, Side::C, p), normalize(pr.d, Side::D, p));
  auto rho = rho_coefficients(rf, 4);
  CHECK(rho.converged);
  CHECK(std::abs(rho.at(0) - 2.0) < 1e-14);
  CHECK(std::abs(rho.at(1) - 1.0) < 1e-14);
  CHECK(std::abs(rho.at(-1) - 1.0) < 1e-14);
  for (int k : {2, 3, 4, -2, -4}) CHECK(std::abs(rho.at(k)) < 1e-14);
  CHECK(rho.asymmetry < 1e-14);
}
