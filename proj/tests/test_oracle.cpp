#include "doctest.h"
#include "fixtures.hpp"

#include "thf/errors.hpp"
#include "thf/oracle.hpp"
#include "thf/quadrature.hpp"
#include "thf/series.hpp"

#include <cmath>
#include <numbers>

using namespace thf;
using namespace fx;

namespace {

double max_dev(const TwoSidedSeries& a, const TwoSidedSeries& b, int K) {
  double d = 0;
  for (int k = -K; k <= K; ++k) d = std::max(d, std::abs(a.at(k) - b.at(k)));
  return d;
}

CanonicalSymbol jacobi_phi(double alpha, double beta, int kappa) {
  return t_pow(2 * kappa) * u(kOne, alpha + 0.5) * u(kMinusOne, beta - 0.5);
}

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
  auto g = gauss_legendre(20);
  double s = 0;
  for (double w : g.w) s += w;
  CHECK(std::abs(s - 2.0) < 1e-14);
  // x^38 is integrated exactly by 20 nodes
  double m = 0;
  for (size_t i = 0; i < g.x.size(); ++i) m += g.w[i] * std::pow(g.x[i], 38);
  CHECK(std::abs(m - 2.0 / 39.0) < 1e-14);
  // graded rule on an endpoint singularity: int_0^1 x^{-0.7} dx = 1/0.3
  double acc = 0;
  for (auto& nd : graded_rule(g, 0.0, 1.0, -0.7, -0.5, 0.5)) {
    double x = nd.end == 0 ? nd.offset : 1.0 + nd.offset;
    acc += nd.w * (std::pow(x, -0.7) + (nd.end == 1 ? std::pow(-nd.offset, -0.5) : std::pow(1.0 - x, -0.5)));
  }
  CHECK(std::abs(acc - (1.0 / 0.3 + 2.0)) < 1e-8);
}

TEST_CASE("Fourier coefficients of simple symbols") {
  auto t3 = fourier_coeffs(t_pow(3), 16);
  for (int k = -16; k <= 16; ++k) CHECK(std::abs(t3.at(k) - (k == 3 ? 1.0 : 0.0)) < 1e-14);

  FourierLogPoly l;
  l.add(1, 1.0);
  auto e = fourier_coeffs(CanonicalSymbol::exp_log(l), 20);
  double fact = 1;
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) fact *= k;
    CHECK(std::abs(e.at(k) - 1.0 / fact) < 1e-14);
    if (k > 0) CHECK(std::abs(e.at(-k)) < 1e-14);
  }
  CHECK(e.deviation < 1e-12);
}

TEST_CASE("Fourier coefficients of a jump factor") {
  cplx beta{0.3, 0.1};
  auto s = fourier_coeffs(u(kOne, beta), 64);
  for (int k = -64; k <= 64; ++k) CHECK(std::abs(s.at(k) - jump_coefficient(kOne, beta, k)) < 1e-13);
  // independent route: truncated convolution of the eta and xi series
  const int L = 200000;
  auto eta = eta_series(kOne, beta, L);
  auto xi = xi_series(kOne, -beta, L);
  for (int k : {-3, -1, 0, 1, 2, 5}) {
    cplx acc{};
    for (int i = std::max(0, k); i <= L && i - k <= L; ++i) acc += eta.coeffs[i] * xi.coeffs[i - k];
    CHECK(std::abs(acc - s.at(k)) < 1e-4);
  }
  // quadrature agrees with the closed form
  auto q = fourier_quadrature(u(kI, beta), 64);
  for (int k = -16; k <= 16; ++k) CHECK(std::abs(q.at(k) - jump_coefficient(kI, beta, k)) < 1e-10);
}

TEST_CASE("Fourier coefficients of a piecewise symbol with smooth part") {
  FourierLogPoly l;
  l.add(1, {0.3, 0.1});
  l.add(-2, -0.2);
  l.add(0, 0.1);
  auto s = three_piece() * CanonicalSymbol::exp_log(l) * u(kMinusOne, {0.1, -0.2});
  auto f = fourier_coeffs(s, 128);
  CHECK(f.deviation < 1e-9);
  CHECK(max_dev(f, fourier_quadrature(s, 128), 128) < 1e-8);
  auto tail = f.tail_energy();
  for (size_t k = 1; k < tail.size(); ++k) CHECK(tail[k] <= tail[k - 1]);
  // Parseval: the energy approximates the mean of |s|^2
  double mean = 0;
  const int M = 20000;
  for (int i = 0; i < M; ++i) mean += std::norm(eval(s, 2 * std::numbers::pi * (i + 0.5) / M)) / M;
  double energy = tail[0] + std::norm(f.at(0));
  CHECK(std::abs(energy - mean) < 1e-2);
}

TEST_CASE("finite sections") {
  auto id = finite_section(validate_pair(constant(1.0), constant(1.0)), 6);
  CHECK((id.M - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-14);

  auto a = fourier_exact(constant(1.0), 12), b = fourier_exact(t_pow(-1), 12);
  auto m2 = finite_section(a, b, 6);
  CHECK((m2.M - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-14);

  auto t = finite_section(validate_pair(t_pow(1), t_pow(1)), 5);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(5, 5);
  for (int j = 1; j < 5; ++j) expect(j, j - 1) = 1.0;
  expect(0, 0) = 1.0;
  CHECK((t.M - expect).norm() < 1e-14);
}

TEST_CASE("finite Toeplitz and Hankel product identities") {
  // T(ab) = T(a)T(b) + H(a)H(tilde b) and H(ab) = T(a)H(b) + H(a)T(tilde b) on a central block
  const int N = 32, D = N / 4;
  std::vector<cplx> ac(2 * D + 1), bc(2 * D + 1);
  for (int k = -D; k <= D; ++k) {
    ac[k + D] = cplx(std::cos(1.3 * k + 0.2), std::sin(0.7 * k)) / (1.0 + k * k);
    bc[k + D] = cplx(std::sin(0.9 * k + 1.0), 0.5 * std::cos(2.1 * k)) / (1.0 + std::abs(k));
  }
  auto A = [&](int k) { return std::abs(k) <= D ? ac[k + D] : cplx{}; };
  auto B = [&](int k) { return std::abs(k) <= D ? bc[k + D] : cplx{}; };
  auto AB = [&](int k) {
    cplx s{};
    for (int i = -D; i <= D; ++i) s += A(i) * B(k - i);
    return s;
  };
  auto Bt = [&](int k) { return B(-k); };
  auto abt = [&](int k) { return AB(k); };
  const int M = 3 * N;
  auto T = [&](auto f) {
    Eigen::MatrixXcd m(M, M);
    for (int j = 0; j < M; ++j)
      for (int k = 0; k < M; ++k) m(j, k) = f(j - k);
    return m;
  };
  auto H = [&](auto f) {
    Eigen::MatrixXcd m(M, M);
    for (int j = 0; j < M; ++j)
      for (int k = 0; k < M; ++k) m(j, k) = f(j + k + 1);
    return m;
  };
  Eigen::MatrixXcd lhs = T(abt), rhs = T(A) * T(B) + H(A) * H(Bt);
  Eigen::MatrixXcd lh = H(abt), rh = T(A) * H(B) + H(A) * T(Bt);
  CHECK((lhs - rhs).topLeftCorner(N / 2, N / 2).norm() < 1e-10);
  CHECK((lh - rh).topLeftCorner(N / 2, N / 2).norm() < 1e-10);
}

TEST_CASE("kernel elements from the construction") {
  auto p = Exponent::parse("2");
  {
    auto pr = validate_pair(t_pow(-1), t_pow(-1));
    auto r = defect_numbers(pr, p);
    auto kb = kernel_residual_check(pr, p, r);
    CHECK(kb.elements.size() == 1);
    CHECK(kb.max_residual < 1e-8);
    CHECK(kb.pass);
  }
  {
    auto pr = validate_pair(t_pow(-2), t_pow(-2));
    auto r = defect_numbers(pr, p);
    CHECK(r.dim_ker == 2);
    auto kb = kernel_residual_check(pr, p, r);
    CHECK(kb.elements.size() == 2);
    CHECK(kb.rank == 2);
    CHECK(kb.pass);
  }
  {
    auto pr = validate_pair(constant(1.0), constant(1.0));
    auto kb = kernel_residual_check(pr, p, defect_numbers(pr, p));
    CHECK(kb.elements.empty());
    CHECK(kb.pass);
  }
  {
    // smooth nontrivial factors with both constructions present
    FourierLogPoly l;
    l.add(1, 0.3);
    l.add(-1, -0.3);
    l.add(2, {0.1, 0.05});
    auto b = t_pow(-1) * CanonicalSymbol::exp_log(l);
    FourierLogPoly lc;
    lc.add(1, 0.2);
    lc.add(-1, -0.2);
    auto a = t_pow(-2) * CanonicalSymbol::exp_log(lc) * b;
    auto pr = validate_pair(a, b);
    auto r = defect_numbers(pr, p);
    auto kb = kernel_residual_check(pr, p, r);
    CHECK(r.n <= 0);
    CHECK(kb.elements.size() == static_cast<size_t>(r.dim_ker));
    CHECK(kb.max_residual < 1e-6);
    CHECK(kb.pass);
  }
  {
    // odd power of t in c puts a (1 + t) factor into c+
    FourierLogPoly l;
    l.add(1, 0.3);
    l.add(-1, -0.3);
    for (int k : {-2, -1, 0}) {
      auto b = t_pow(-1) * CanonicalSymbol::exp_log(l);
      auto pr = validate_pair(t_pow(k) * b, b);
      auto r = defect_numbers(pr, p);
      auto kb = kernel_residual_check(pr, p, r);
      CHECK(kb.elements.size() == static_cast<size_t>(r.dim_ker));
      CHECK(kb.max_residual < 1e-10);
    }
  }
  {
    // jumps in b with m <= 0: only q2 elements, still exact
    auto b = t_pow(1) * u(kOne, 0.3);
    auto pr = validate_pair(t_pow(-4) * b, b);
    auto r = defect_numbers(pr, p);
    REQUIRE(r.m <= 0);
    auto kb = kernel_residual_check(pr, p, r);
    CHECK(kb.elements.size() == 2);
    CHECK(kb.max_residual < 1e-10);
  }
  {
    // jumps in a with m > 0: the p3 elements decay slowly and the residual
    // is limited by their tail beyond the section
    auto b = t_pow(-1) * u(kI, 0.2) * u(kMinusI, -0.2);
    auto pr = validate_pair(b, b);
    auto r = defect_numbers(pr, p);
    auto kb = kernel_residual_check(pr, p, r, 128, 1e-6, false);
    REQUIRE(kb.elements.size() == 1);
    CHECK_FALSE(kb.pass);
    CHECK(kb.max_residual < 2 * kb.elements[0].tail);
  }
  {
    // a wrong report is caught
    auto pr = validate_pair(t_pow(-1), t_pow(-1));
    auto r = defect_numbers(pr, p);
    r.dim_ker = 2;
    CHECK_THROWS_AS(kernel_residual_check(pr, p, r), Error);
  }
}

TEST_CASE("rho series against quadrature") {
  auto p = Exponent::parse("2");
  {
    auto pr = validate_pair(constant(1.0), constant(1.0));
    auto c = normalize(pr.c, Side::C, p), d = normalize(pr.d, Side::D, p);
    auto f = rho_factors(pr, c, d);
    auto rho = rho_coefficients(f, 4);
    auto chk = rho_crosscheck(rho, f);
    CHECK(chk.max_deviation < 1e-12);
    CHECK(std::abs(rho.at(0) - 2.0) < 1e-12);
    CHECK(std::abs(rho.at(1) - 1.0) < 1e-12);
  }
  {
    auto pr = validate_pair(constant(1.0), invert(jacobi_phi(0.3, -0.4, 2)));
    auto c = normalize(pr.c, Side::C, p), d = normalize(pr.d, Side::D, p);
    auto f = rho_factors(pr, c, d);
    auto rho = rho_coefficients(f, 6);
    auto chk = rho_crosscheck(rho, f);
    CHECK(chk.max_deviation < 1e-6);
  }
  {
    // jumps with negative local exponent on both sides
    auto a = three_piece() * u(kMinusOne, {0.1, 0.05});
    auto pr = validate_pair(a, constant(1.0));
    auto rep = fredholm_conditions(pr, p);
    REQUIRE(rep.fredholm);
    auto rho = rho_crosscheck(rho_coefficients(rho_factors(pr, normalize(pr.c, Side::C, p),
                                                           normalize(pr.d, Side::D, p)),
                                               5),
                              pr, p);
    CHECK(rho.max_deviation <= rho.tolerance);
  }
}
