#include "thf/series.hpp"

#include <algorithm>
#include <cmath>

namespace thf {

cplx OneSidedSeries::at(int k) const {
  int i = orientation == Orientation::Analytic ? k : -k;
  if (i < 0 || i > order()) return {};
  return coeffs[i];
}

namespace {

std::vector<cplx> binomial_series(cplx beta, UnitPoint rot, int N) {
  // C(beta,k) (-1)^k rot^k
  std::vector<cplx> c(N + 1);
  c[0] = 1.0;
  cplx r{1.0, 0.0};
  for (int k = 1; k <= N; ++k) {
    r *= (static_cast<double>(k - 1) - beta) / static_cast<double>(k);
    c[k] = r * UnitPoint(rot.num * k, rot.den).value();
  }
  return c;
}

std::vector<PowerFactor> merged(std::vector<PowerFactor> f) {
  std::sort(f.begin(), f.end(), [](auto& a, auto& b) { return a.point < b.point; });
  std::vector<PowerFactor> out;
  for (auto& x : f) {
    if (!out.empty() && out.back().point == x.point) out.back().beta += x.beta;
    else out.push_back(x);
  }
  std::erase_if(out, [](auto& x) { return x.beta == cplx{}; });
  return out;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

OneSidedSeries eta_series(UnitPoint tau, cplx beta, int N) {
  return {OneSidedSeries::Orientation::Analytic, binomial_series(beta, tau.conj(), N)};
}

OneSidedSeries xi_series(UnitPoint tau, cplx beta, int N) {
  return {OneSidedSeries::Orientation::AntiAnalytic, binomial_series(beta, tau, N)};
}

std::vector<cplx> analytic_product(const std::vector<cplx>& g, std::vector<PowerFactor> factors, int N) {
  factors = merged(std::move(factors));
  // Q = prod (1 - t/tau_j)
  std::vector<cplx> Q{1.0};
  std::vector<std::vector<cplx>> lin;
  for (auto& f : factors) {
    lin.push_back({1.0, -f.point.conj().value()});
    Q = poly_mul(Q, lin.back());
  }
  // R = Q g' - sum_j (beta_j / tau_j) prod_{i != j} (1 - t/tau_i)
  std::vector<cplx> dg;
  for (size_t k = 1; k < g.size(); ++k) dg.push_back(static_cast<double>(k) * g[k]);
  std::vector<cplx> R = dg.empty() ? std::vector<cplx>{0.0} : poly_mul(Q, dg);
  for (size_t j = 0; j < factors.size(); ++j) {
    std::vector<cplx> P{1.0};
    for (size_t i = 0; i < factors.size(); ++i)
      if (i != j) P = poly_mul(P, lin[i]);
    cplx w = factors[j].beta * factors[j].point.conj().value();
    if (R.size() < P.size()) R.resize(P.size());
    for (size_t i = 0; i < P.size(); ++i) R[i] -= w * P[i];
  }
  std::vector<cplx> f(N + 1);
  f[0] = 1.0;
  const int dq = static_cast<int>(Q.size()) - 1;
  const int dr = static_cast<int>(R.size()) - 1;
  for (int k = 0; k < N; ++k) {
    cplx s{};
    for (int i = 0; i <= std::min(dr, k); ++i) s += R[i] * f[k - i];
    for (int i = 1; i <= std::min(dq, k + 1); ++i) s -= Q[i] * static_cast<double>(k + 1 - i) * f[k + 1 - i];
    f[k + 1] = s / static_cast<double>(k + 1);
  }
  return f;
}

std::vector<cplx> exp_series(const std::vector<cplx>& g, int N) { return analytic_product(g, {}, N); }

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b, int N) {
  std::vector<cplx> r(N + 1);
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == cplx{}) continue;
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

std::vector<cplx> analytic_product_naive(const std::vector<cplx>& g, const std::vector<PowerFactor>& factors,
                                         int N) {
  // exp by the plain power series of exp(G) = sum G^m / m!
  std::vector<cplx> G(N + 1);
  for (size_t k = 1; k < g.size() && static_cast<int>(k) <= N; ++k) G[k] = g[k];
  std::vector<cplx> e(N + 1), term(N + 1);
  e[0] = term[0] = 1.0;
  for (int m = 1; m <= N; ++m) {
    term = convolve(term, G, N);
    for (auto& x : term) x /= static_cast<double>(m);
    for (int k = 0; k <= N; ++k) e[k] += term[k];
  }
  for (auto& f : factors) e = convolve(e, eta_series(f.point, f.beta, N).coeffs, N);
  return e;
}

cplx analytic_product_eval(const std::vector<cplx>& g, const std::vector<PowerFactor>& factors, cplx z) {
  cplx s{};
  for (size_t k = 1; k < g.size(); ++k) s += g[k] * std::pow(z, static_cast<int>(k));
  cplx v = std::exp(s);
  for (auto& f : factors) v *= std::pow(1.0 - z * f.point.conj().value(), f.beta);
  return v;
}

cplx log_one_minus_expi(double two_pi_d, double delta) {
  double phi = two_pi_d + delta;
  const double pi = 3.14159265358979323846;
  if (phi > pi) phi -= 2 * pi;
  if (phi <= -pi) phi += 2 * pi;
  double h = 0.5 * phi;
  if (phi > 0) return {std::log(2.0 * std::sin(h)), h - 0.5 * pi};
  if (phi < 0) return {std::log(-2.0 * std::sin(h)), h + 0.5 * pi};
  return {-HUGE_VAL, 0.0};
}

cplx analytic_product_eval_near(const std::vector<cplx>& g, const std::vector<PowerFactor>& factors, UnitPoint base,
                                double delta, int sign) {
  const double two_pi = 6.28318530717958647692;
  double psi = sign * (base.angle() + delta);
  cplx s{};
  for (size_t k = 1; k < g.size(); ++k) s += g[k] * std::polar(1.0, static_cast<double>(k) * psi);
  for (auto& f : factors) {
    // z / tau = exp(i (sign*base - tau) + i sign delta)
    UnitPoint d(sign * base.num * f.point.den - f.point.num * base.den, base.den * f.point.den);
    double turn = static_cast<double>(d.num) / static_cast<double>(d.den);
    if (2 * d.num > d.den) turn -= 1.0;
    s += f.beta * log_one_minus_expi(two_pi * turn, sign * delta);
  }
  return std::exp(s);
}

cplx eval_series(const std::vector<cplx>& c, cplx z) {
  cplx s{};
  for (size_t i = c.size(); i-- > 0;) s = s * z + c[i];
  return s;
}

}  // namespace thf
