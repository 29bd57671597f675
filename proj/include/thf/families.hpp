#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thf/defects.hpp"
#include "thf/fredholm.hpp"
#include "thf/symbol.hpp"

namespace thf {

enum class FamilyTag { APlusHA, AMinusHA, AMinusHtInvA, APlusHtA, IdPlusHankel, General };
const char* family_name(FamilyTag t);
FamilyTag parse_family(const std::string& s);

FamilyTag classify_family(const SymbolPair& pr, double tol = 1e-12);
// b for the families driven by a: a, -a, -t^{-1} a, t a
CanonicalSymbol family_b(const CanonicalSymbol& a, FamilyTag tag);
// a(-t)
CanonicalSymbol hat(const CanonicalSymbol& a);

struct FamilyIntervals {
  Rational plus_lo, plus_hi, minus_lo, minus_hi, pair_lo, pair_hi;
};
FamilyIntervals family_intervals(FamilyTag tag, const Exponent& p);

struct PairExponent {
  UnitPoint point;  // upper half
  cplx beta_upper, beta_lower;
};

struct FamilyReport {
  FamilyTag tag = FamilyTag::General;
  int kappa = 0;
  cplx beta_plus, beta_minus;
  std::vector<PairExponent> pairs;
  bool fredholm = false;
  bool boundary = false;
  std::string violated;
  int dim_ker = 0, dim_coker = 0, index = 0;
  // I + H(tilde phi): both representations
  std::optional<NormalizedRep> gamma_rep, delta_rep;
  int n = 0, m = 0;
  bool confident = true;
  bool general_checked = false;
  bool general_agrees = false;
};

FamilyReport family_fredholm(const CanonicalSymbol& a, FamilyTag tag, const Exponent& p, bool cross_check = true,
                             double eps_boundary = 1e-9);
// operator I + H(tilde phi), i.e. a = 1 and b = 1/phi
FamilyReport hankel_identity_report(const CanonicalSymbol& phi, const Exponent& p, const DefectOptions& opt = {});

// (2 - 2 cos(theta - theta0))^alpha
cplx v_factor(UnitPoint tau0, cplx alpha, double theta);

struct RhoSplit {
  cplx rho0, rho1;
};
// rho = rho0 * rho1 for I + H(tilde phi) from the gamma and delta representations
RhoSplit rho_split(const NormalizedRep& g, const NormalizedRep& d, double theta);

struct JacobiData {
  double alpha = 0, beta = 0;
  int kappa = 1;
  std::vector<double> sigma_sq;  // squared leading coefficients of the orthonormal polynomials

  double weight(double x) const;  // (2-2x)^alpha (2+2x)^beta
};

JacobiData jacobi_data(double alpha, double beta, int kappa);
// det A_{kappa,kappa} for phi = t^{2 kappa} u_{1,alpha+1/2} u_{-1,beta-1/2}
double jacobi_determinant(double alpha, double beta, int kappa);
// same product with the normalization constant 2^{alpha+beta+1} in sigma_n^2
double jacobi_determinant_printed(double alpha, double beta, int kappa);

}  // namespace thf
