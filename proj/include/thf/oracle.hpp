#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thf/defects.hpp"
#include "thf/symbol.hpp"
#include "thf/wiener_hopf.hpp"

namespace thf {

struct TwoSidedSeries {
  int N = 0;
  std::vector<cplx> coeffs;  // coeffs[k + N], |k| <= N
  std::string method;        // "series-convolution" or "quadrature"
  double deviation = 0;      // max cross-method deviation on |k| <= N/4

  cplx at(int k) const { return (k < -N || k > N) ? cplx{} : coeffs[k + N]; }
  // sum_{|k| > K} |f_k|^2, nonincreasing in K
  std::vector<double> tail_energy() const;
};

// jump product integrated in closed form on each arc, convolved with exp(log)
TwoSidedSeries fourier_exact(const CanonicalSymbol& s, int N);
// composite Gauss-Legendre on each arc between jumps
TwoSidedSeries fourier_quadrature(const CanonicalSymbol& s, int N, int panels_min = 64);
// fourier_exact values with the quadrature deviation recorded; throws MethodDisagreement
TwoSidedSeries fourier_coeffs(const CanonicalSymbol& s, int N, double tol = 1e-6);

// [u_{tau,beta}]_k, closed form
cplx jump_coefficient(UnitPoint tau, cplx beta, int k);

struct FiniteSection {
  int N = 0;
  Eigen::MatrixXcd M;  // a_{j-k} + b_{j+k+1}
};

FiniteSection finite_section(const TwoSidedSeries& a, const TwoSidedSeries& b, int N);
FiniteSection finite_section(const SymbolPair& pr, int N);

struct KernelCandidate {
  std::string construction;  // "q2" or "p3"
  int generator = 0;         // j of t^j + t^{-2n-2-j}, or of t^j + t^{-j}
  std::vector<cplx> coeffs;  // f_k, 0 <= k < N
  double residual = 0;       // |A_N f| / |f|
  double tail = 0;           // |f_k|, k >= N, estimated from a longer series
};

struct KernelBasis {
  int N = 0;
  int expected = 0;  // dimKer from the report
  std::vector<KernelCandidate> elements;
  int rank = 0;  // numerical rank of the truncated vectors
  double max_residual = 0;
  // n > 0, m > 0: max |[rho p3]_k|, |k| < n, over the null vectors of A_{n,m}
  double consistency = 0;
  bool pass = false;
  std::string note;
};

// Builds the kernel elements of the proof construction and checks them against
// the finite section. Throws ResidualTooLarge when a check fails and throw_on_fail.
KernelBasis kernel_residual_check(const SymbolPair& pr, const Exponent& p, const DefectReport& report, int N = 256,
                                  double tol = 1e-6, bool throw_on_fail = true);

struct RhoCheck {
  double max_deviation = 0;
  double tolerance = 0;
};

// rho_k by graded quadrature of the closed pointwise product
std::vector<cplx> rho_quadrature(const RhoFactors& f, int n_keep);
RhoCheck rho_crosscheck(const RhoSeries& rho, const RhoFactors& f, double tol = 1e-6);
RhoCheck rho_crosscheck(const RhoSeries& rho, const SymbolPair& pr, const Exponent& p, double tol = 1e-6);

}  // namespace thf
