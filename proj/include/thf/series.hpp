#pragma once

#include <vector>

#include "thf/symbol.hpp"

namespace thf {

struct OneSidedSeries {
  enum class Orientation { Analytic, AntiAnalytic };
  Orientation orientation = Orientation::Analytic;
  // coeffs[i] multiplies t^i (analytic) or t^{-i} (anti-analytic)
  std::vector<cplx> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx at(int k) const;
};

// (1 - t/tau)^beta
OneSidedSeries eta_series(UnitPoint tau, cplx beta, int N);
// (1 - tau/t)^beta
OneSidedSeries xi_series(UnitPoint tau, cplx beta, int N);

struct PowerFactor {
  UnitPoint point;
  cplx beta;
};

// Taylor coefficients 0..N of exp(sum_{k>=1} g[k] t^k) * prod_j (1 - t/tau_j)^{beta_j}.
// g[0] is ignored. Uses the first order recurrence Q f' = R f, O(N (J + K)).
std::vector<cplx> analytic_product(const std::vector<cplx>& g, std::vector<PowerFactor> factors, int N);
// Same product by repeated truncated convolution, O(N^2 J); reference only.
std::vector<cplx> analytic_product_naive(const std::vector<cplx>& g, const std::vector<PowerFactor>& factors,
                                         int N);

std::vector<cplx> exp_series(const std::vector<cplx>& g, int N);
std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b, int N);

// Closed form of the same product at a point with |z| <= 1, principal branches.
cplx analytic_product_eval(const std::vector<cplx>& g, const std::vector<PowerFactor>& factors, cplx z);

// log(1 - e^{i phi}) on the principal branch for phi = two_pi_d + delta, where
// two_pi_d is 2 pi times a turn fraction in (-1/2, 1/2]; accurate as phi -> 0 when d = 0.
cplx log_one_minus_expi(double two_pi_d, double delta);

// The product above at z = e^{i sign (angle(base) + delta)}, sign = +1 or -1, evaluated
// from exact turn differences so that points very close to a factor's tau stay accurate.
cplx analytic_product_eval_near(const std::vector<cplx>& g, const std::vector<PowerFactor>& factors, UnitPoint base,
                                double delta, int sign);

// Horner evaluation of a truncated power series.
cplx eval_series(const std::vector<cplx>& c, cplx z);

}  // namespace thf
