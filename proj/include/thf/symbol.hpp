#pragma once

#include <complex>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thf/rational.hpp"

namespace thf {

using cplx = std::complex<double>;

// tau = exp(2*pi*i*num/den), 0 <= num/den < 1, reduced.
struct UnitPoint {
  long long num = 0;
  long long den = 1;

  UnitPoint() = default;
  UnitPoint(long long n, long long d);

  static UnitPoint one() { return {0, 1}; }
  static UnitPoint minus_one() { return {1, 2}; }

  bool is_one() const { return num == 0; }
  bool is_minus_one() const { return num == 1 && den == 2; }
  bool in_upper() const { return 2 * num < den && num > 0; }
  UnitPoint conj() const { return {num == 0 ? 0 : den - num, den}; }

  Rational turn() const { return Rational(num) / Rational(den); }
  double angle() const;
  cplx value() const;
  std::string str() const;

  friend bool operator==(const UnitPoint& a, const UnitPoint& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const UnitPoint& a, const UnitPoint& b) {
    // cross multiplication is safe for the denominators used in practice
    __int128 l = static_cast<__int128>(a.num) * b.den;
    __int128 r = static_cast<__int128>(b.num) * a.den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

struct JumpFactor {
  UnitPoint point;
  cplx beta;
};

// exp(sum_k gamma_k t^k), finite support.
struct FourierLogPoly {
  std::map<int, cplx> coeffs;

  cplx at(int k) const;
  void add(int k, cplx v);
  cplx eval(double x) const;
  cplx eval(cplx z) const;  // at a point of the punctured plane
  int degree() const;       // max |k|
  FourierLogPoly tilde() const;
  FourierLogPoly negated() const;
  void prune();
};

struct CanonicalSymbol {
  int kappa = 0;
  cplx scale{1.0, 0.0};
  FourierLogPoly log;
  std::vector<JumpFactor> jumps;  // sorted by point, distinct, no zero beta

  static CanonicalSymbol constant(cplx v);
  static CanonicalSymbol monomial(int k, cplx v = 1.0);
  static CanonicalSymbol jump(UnitPoint tau, cplx beta);
  static CanonicalSymbol exp_log(FourierLogPoly l);

  cplx beta_at(UnitPoint tau) const;
  bool has_jump(UnitPoint tau) const;
  void normalize_jumps();
};

// value of u_{tau,beta} at exp(ix); throws EvalAtJump at tau itself
cplx jump_value(UnitPoint tau, cplx beta, double x);

cplx eval(const CanonicalSymbol& s, double x);
// (phi^-(tau), phi^+(tau)): limits approaching tau clockwise / counterclockwise
std::pair<cplx, cplx> one_sided_limits(const CanonicalSymbol& s, UnitPoint tau);

CanonicalSymbol tilde(const CanonicalSymbol& s);
CanonicalSymbol multiply(const CanonicalSymbol& a, const CanonicalSymbol& b);
CanonicalSymbol invert(const CanonicalSymbol& s);
CanonicalSymbol operator*(const CanonicalSymbol& a, const CanonicalSymbol& b);

// Integer exponents become powers of t and constants, log_0 moves into scale.
CanonicalSymbol simplify(const CanonicalSymbol& s);
// Shift every jump exponent by an integer so that Re beta lies in (-1/2, 1/2].
CanonicalSymbol reduce_jumps(const CanonicalSymbol& s);

// Jump-avoiding angles in (0, 2pi).
std::vector<double> sample_angles(const CanonicalSymbol& s, int count);
std::vector<double> sample_angles(const std::vector<const CanonicalSymbol*>& ss, int count);

// Structural identity test: simplify(s) is the constant 1 up to tol.
bool is_identity(const CanonicalSymbol& s, double tol = 1e-12);
bool same_symbol(const CanonicalSymbol& a, const CanonicalSymbol& b, double tol = 1e-12);

// Rewrites s with s*tilde(s) = 1 (up to tol) so that the identity is exact
// in the representation: jump pairs carry equal exponents, the log is odd
// and the scale is +1 or -1.
CanonicalSymbol symmetrize_unimodular(const CanonicalSymbol& s, double tol = 1e-9);

struct SymbolPair {
  CanonicalSymbol a, b, c, d;
};

SymbolPair validate_pair(const CanonicalSymbol& a, const CanonicalSymbol& b, double tol = 1e-9);
std::pair<CanonicalSymbol, CanonicalSymbol> aux_functions(const SymbolPair& pr);

std::string describe(const CanonicalSymbol& s);

}  // namespace thf
