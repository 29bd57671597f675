#include "thf/wiener_hopf.hpp"
#include "thf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thf {

namespace {

std::vector<cplx> positive_log(const FourierLogPoly& l) {
  std::vector<cplx> g(1);
  for (auto& [k, v] : l.coeffs)
    if (k >= 1) {
      if (static_cast<int>(g.size()) <= k) g.resize(k + 1);
      g[k] += v;
    }
  return g;
}

std::vector<cplx> negated(std::vector<cplx> g) {
  for (auto& x : g) x = -x;
  return g;
}

std::vector<PowerFactor> negated(std::vector<PowerFactor> f) {
  for (auto& x : f) x.beta = -x.beta;
  return f;
}

void add_into(std::vector<cplx>& g, int k, cplx v) {
  if (static_cast<int>(g.size()) <= k) g.resize(k + 1);
  g[k] += v;
}

}  // namespace

OneSidedSeries smooth_plus_factor(const FourierLogPoly& log, int N) {
  return {OneSidedSeries::Orientation::Analytic, exp_series(positive_log(log), N)};
}

cplx PlusFactor::eval(cplx z) const { return constant * analytic_product_eval(analytic_log, etas, z); }

PlusFactor plus_factor_structure(const NormalizedRep& rep) {
  PlusFactor f;
  f.analytic_log = positive_log(rep.smooth);
  f.constant = rep.smooth_scale;
  f.etas.push_back({UnitPoint::one(), 2.0 * rep.gamma_plus});
  f.etas.push_back({UnitPoint::minus_one(), 2.0 * rep.gamma_minus});
  for (auto& g : rep.gammas) {
    f.etas.push_back({g.point, g.beta});
    f.etas.push_back({g.point.conj(), g.beta});
  }
  std::erase_if(f.etas, [](auto& e) { return e.beta == cplx{}; });
  return f;
}

PlusFactor build_plus_factor(const NormalizedRep& rep, int N) {
  PlusFactor f = plus_factor_structure(rep);
  f.series.coeffs = analytic_product(f.analytic_log, f.etas, N);
  f.inverse.coeffs = analytic_product(negated(f.analytic_log), negated(f.etas), N);
  for (auto& x : f.series.coeffs) x *= f.constant;
  for (auto& x : f.inverse.coeffs) x /= f.constant;
  double err = series_error(f, std::min(0.9, std::pow(1e-14, 1.0 / N)));
  if (!(err < 1e-8))
    throw Error(ErrorKind::TruncationInsufficient, "plus factor series disagrees with closed form");
  return f;
}

double reconstruction_error(const CanonicalSymbol& s, const NormalizedRep& rep, const PlusFactor& f, int angles) {
  double worst = 0.0;
  for (double x : sample_angles(s, angles)) {
    cplx t = std::polar(1.0, x);
    cplx v = f.eval(t) * std::pow(t, 2 * rep.n) / f.eval(1.0 / t);
    worst = std::max(worst, std::abs(v - eval(s, x)));
  }
  return worst;
}

double series_error(const PlusFactor& f, double r, int angles) {
  double worst = 0.0;
  for (int i = 0; i < angles; ++i) {
    cplx z = std::polar(r, 2.0 * std::numbers::pi * (i + 0.3) / angles);
    cplx exact = f.eval(z);
    worst = std::max(worst, std::abs(eval_series(f.series.coeffs, z) - exact) / std::max(1.0, std::abs(exact)));
    cplx inv = 1.0 / exact;
    worst = std::max(worst, std::abs(eval_series(f.inverse.coeffs, z) - inv) / std::max(1.0, std::abs(inv)));
  }
  return worst;
}

RhoFactors rho_factors(const SymbolPair& pr, const NormalizedRep& c, const NormalizedRep& d) {
  // rho = t^{n-m} (1+t)(1+1/t) c+ d+(1/t) / a
  CanonicalSymbol a = reduce_jumps(pr.a);
  RhoFactors f;
  f.constant = c.smooth_scale * d.smooth_scale / a.scale;
  f.shift = c.n - d.n - a.kappa;

  PlusFactor cp = plus_factor_structure(c);
  PlusFactor dp = plus_factor_structure(d);

  f.g_plus = cp.analytic_log;
  f.plus = cp.etas;
  f.plus.push_back({UnitPoint::minus_one(), 1.0});
  f.g_minus = dp.analytic_log;
  f.minus = dp.etas;
  f.minus.push_back({UnitPoint::minus_one(), 1.0});
  for (auto& [k, v] : a.log.coeffs) {
    if (k > 0) add_into(f.g_plus, k, -v);
    if (k < 0) add_into(f.g_minus, -k, -v);
  }
  // u_{tau,-beta} = eta_{tau,-beta} xi_{tau,beta}, and xi_{tau,beta}(t) = (1 - s/conj(tau))^beta with s = 1/t
  for (auto& j : a.jumps) {
    f.plus.push_back({j.point, -j.beta});
    f.minus.push_back({j.point.conj(), j.beta});
  }
  return f;
}

cplx RhoFactors::eval(double theta) const {
  cplx t = std::polar(1.0, theta);
  return constant * std::polar(1.0, shift * theta) * analytic_product_eval(g_plus, plus, t) *
         analytic_product_eval(g_minus, minus, std::conj(t));
}

cplx RhoFactors::eval_near(UnitPoint base, double delta) const {
  return constant * std::polar(1.0, shift * (base.angle() + delta)) *
         analytic_product_eval_near(g_plus, plus, base, delta, 1) *
         analytic_product_eval_near(g_minus, minus, base, delta, -1);
}

double RhoFactors::local_exponent(UnitPoint tau) const {
  double e = 0.0;
  for (auto& x : plus)
    if (x.point == tau) e += x.beta.real();
  for (auto& x : minus)
    if (x.point.conj() == tau) e += x.beta.real();
  return e;
}

std::vector<UnitPoint> RhoFactors::singular_points() const {
  std::vector<UnitPoint> pts;
  for (auto& x : plus) pts.push_back(x.point);
  for (auto& x : minus) pts.push_back(x.point.conj());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<cplx> rho_coefficients_fixed(const RhoFactors& f, int n_keep, int N) {
  std::vector<cplx> P = analytic_product(f.g_plus, f.plus, N);
  std::vector<cplx> M = analytic_product(f.g_minus, f.minus, N);
  std::vector<cplx> out(2 * n_keep + 1);
  for (int k = -n_keep; k <= n_keep; ++k) {
    // t^shift P_j t^j M_i t^{-i} contributes to t^k when i = j + shift - k
    int off = f.shift - k;
    int j0 = std::max(0, -off);
    int j1 = std::min(N, N - off);
    cplx s{};
    for (int j = j0; j <= j1; ++j) s += P[j] * M[j + off];
    out[k + n_keep] = f.constant * s;
  }
  return out;
}

cplx RhoSeries::at(int k) const {
  if (k < -n_keep || k > n_keep)
    throw Error(ErrorKind::InsufficientCoefficients, "rho coefficient " + std::to_string(k) + " not kept");
  return coeffs[k + n_keep];
}

RhoSeries rho_coefficients(const RhoFactors& f, int n_keep, const RhoOptions& opt) {
  RhoSeries r;
  r.n_keep = n_keep;
  std::vector<cplx> prev;
  double prev_change = -1.0;
  for (int N = opt.n_start;; N *= 2) {
    std::vector<cplx> cur = rho_coefficients_fixed(f, n_keep, N);
    r.inner_order = N;
    r.coeffs = cur;
    if (!prev.empty()) {
      double change = 0.0;
      for (size_t i = 0; i < cur.size(); ++i) change = std::max(change, std::abs(cur[i] - prev[i]));
      r.last_change = change;
      double ratio = prev_change > 0 ? std::clamp(change / prev_change, 0.0, 0.9) : 0.5;
      r.tail_bound = change * std::max(1.0, ratio / (1.0 - ratio));
      prev_change = change;
      if (change < opt.tol) {
        r.converged = true;
        break;
      }
    }
    if (N * 2 > opt.n_cap) break;
    prev = std::move(cur);
  }
  double scale = 0.0;
  for (auto& x : r.coeffs) scale = std::max(scale, std::abs(x));
  r.tail_bound = std::max(r.tail_bound, 1e-14 * std::max(1.0, scale));
  for (int k = 1; k <= n_keep; ++k) r.asymmetry = std::max(r.asymmetry, std::abs(r.at(k) - r.at(-k)));
  return r;
}

}  // namespace thf
