#pragma once

#include <string>
#include <vector>

#include "thf/rational.hpp"
#include "thf/symbol.hpp"

namespace thf {

enum class Side { C, D };
enum class Verdict { Pass, Fail, Boundary };

const char* side_name(Side s);
const char* verdict_name(Verdict v);

struct SiteVerdict {
  Side side = Side::C;
  UnitPoint point;
  Rational value;   // (1/2pi) arg of the one-sided limit ratio, as tested
  Rational offset;  // forbidden coset is offset + Z
  double margin = 0;
  Verdict verdict = Verdict::Pass;
};

struct ConditionReport {
  Exponent exponent;
  std::vector<SiteVerdict> sites;
  bool fredholm = true;
  bool boundary = false;
};

// Symbol with s*tilde(s) = 1 rewritten as
// t^{2k} exp(L) u_{1,B+} u_{-1,B-} prod u_{tau,b} u_{conj tau,b}.
struct FoldedExponents {
  int half_kappa = 0;
  cplx b_plus, b_minus;
  Rational re_b_plus, re_b_minus;
  std::vector<JumpFactor> upper;  // tau in the open upper half circle
  std::vector<Rational> re_upper;
  FourierLogPoly log;  // odd
};

FoldedExponents fold_exponents(const CanonicalSymbol& s);

struct Intervals {
  Rational plus_lo, plus_hi, minus_lo, minus_hi, jump_lo, jump_hi;
  // arc parameters of the hash curve
  Rational arc_jump, arc_minus, arc_plus;
};

// c-side intervals use (p, q); the d-side swaps them.
Intervals side_intervals(Side side, const Exponent& p);

struct NormalizedRep {
  Side side = Side::C;
  int n = 0;
  cplx gamma_plus, gamma_minus;
  std::vector<JumpFactor> gammas;  // tau_r in the upper half
  Rational re_gamma_plus, re_gamma_minus;
  std::vector<Rational> re_gammas;
  FourierLogPoly smooth;  // odd log of a0, so a0(1) = a0(-1) = 1
  cplx smooth_scale{1.0, 0.0};

  CanonicalSymbol reconstruct() const;
};

NormalizedRep normalize(const CanonicalSymbol& s, Side side, const Exponent& p);

ConditionReport fredholm_conditions(const SymbolPair& pr, const Exponent& p, double eps_boundary = 1e-9);
// Throws BoundaryCase or NotFredholm describing the first offending site.
void require_fredholm(const ConditionReport& r);
int fredholm_index(const SymbolPair& pr, const Exponent& p);

struct CurveResolution {
  int image_samples = 2048;
  int arc_samples = 256;
  double max_chord = 0.05;
  double max_turn = 0.39269908169872414;  // pi/8
  int max_depth = 30;
};

struct CurveSegment {
  std::string kind;  // "image" or "arc"
  UnitPoint point;   // jump point for arcs; 1 or -1 for the endpoint arcs
  size_t first = 0, last = 0;
};

struct CurveData {
  std::vector<cplx> points;
  std::vector<CurveSegment> segments;
  double winding_raw = 0;
  int winding = 0;
};

CurveData build_hash_curve(const CanonicalSymbol& s, Side side, const Exponent& p,
                           const CurveResolution& res = {});
// total continuous argument increment of the closed polyline, in turns
double winding_sum(const std::vector<cplx>& points);
int winding_from_curve(const CurveData& curve);

}  // namespace thf
