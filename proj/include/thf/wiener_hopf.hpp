#pragma once

#include <vector>

#include "thf/fredholm.hpp"
#include "thf/series.hpp"
#include "thf/symbol.hpp"

namespace thf {

// exp of the part of the log with positive indices, as a power series
OneSidedSeries smooth_plus_factor(const FourierLogPoly& log, int N);

struct PlusFactor {
  std::vector<cplx> analytic_log;  // g[k], k >= 1; g[0] unused
  cplx constant{1.0, 0.0};
  std::vector<PowerFactor> etas;
  OneSidedSeries series, inverse;

  cplx eval(cplx z) const;  // closed form, |z| <= 1
};

// closed form only, series left empty
PlusFactor plus_factor_structure(const NormalizedRep& rep);
PlusFactor build_plus_factor(const NormalizedRep& rep, int N);

// max |s(t) - f(t) t^{2n} / f(1/t)| over a jump avoiding grid, closed forms
double reconstruction_error(const CanonicalSymbol& s, const NormalizedRep& rep, const PlusFactor& f,
                            int angles = 100);
// max |series(z) - closed form(z)| on |z| = r, for the factor and its reciprocal
double series_error(const PlusFactor& f, double r = 0.9, int angles = 64);

// rho = C t^shift P(t) M(1/t) with P, M analytic products
struct RhoFactors {
  cplx constant{1.0, 0.0};
  int shift = 0;
  std::vector<cplx> g_plus, g_minus;
  std::vector<PowerFactor> plus, minus;

  cplx eval(double theta) const;
  // rho at exp(i (angle(base) + delta)), accurate for tiny delta
  cplx eval_near(UnitPoint base, double delta) const;
  // Re of the local power exponent of |rho| at tau
  double local_exponent(UnitPoint tau) const;
  // points where rho may fail to be smooth
  std::vector<UnitPoint> singular_points() const;
};

RhoFactors rho_factors(const SymbolPair& pr, const NormalizedRep& c, const NormalizedRep& d);

struct RhoOptions {
  int n_start = 4096;
  int n_cap = 65536;
  double tol = 1e-9;
};

struct RhoSeries {
  int n_keep = 0;
  std::vector<cplx> coeffs;  // coeffs[k + n_keep]
  int inner_order = 0;
  double last_change = 0;
  double tail_bound = 0;
  double asymmetry = 0;  // max |rho_k - rho_{-k}|
  bool converged = false;

  cplx at(int k) const;
};

RhoSeries rho_coefficients(const RhoFactors& f, int n_keep, const RhoOptions& opt = {});
// rho_k for |k| <= n_keep from truncated series of order N, no adaptivity
std::vector<cplx> rho_coefficients_fixed(const RhoFactors& f, int n_keep, int N);

}  // namespace thf
