#include "thf/families.hpp"
#include "thf/errors.hpp"

#include <cmath>
#include <numbers>

namespace thf {

const char* family_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::APlusHA: return "APlusHA";
    case FamilyTag::AMinusHA: return "AMinusHA";
    case FamilyTag::AMinusHtInvA: return "AMinusHtInvA";
    case FamilyTag::APlusHtA: return "APlusHtA";
    case FamilyTag::IdPlusHankel: return "IdPlusHankel";
    case FamilyTag::General: return "General";
  }
  return "?";
}

FamilyTag parse_family(const std::string& s) {
  for (auto t : {FamilyTag::APlusHA, FamilyTag::AMinusHA, FamilyTag::AMinusHtInvA, FamilyTag::APlusHtA,
                 FamilyTag::IdPlusHankel, FamilyTag::General})
    if (s == family_name(t)) return t;
  throw Error(ErrorKind::InputError, "unknown family '" + s + "'");
}

CanonicalSymbol family_b(const CanonicalSymbol& a, FamilyTag tag) {
  switch (tag) {
    case FamilyTag::APlusHA: return a;
    case FamilyTag::AMinusHA: return multiply(CanonicalSymbol::constant(-1.0), a);
    case FamilyTag::AMinusHtInvA: return multiply(CanonicalSymbol::monomial(-1, -1.0), a);
    case FamilyTag::APlusHtA: return multiply(CanonicalSymbol::monomial(1), a);
    default: break;
  }
  throw Error(ErrorKind::InputError, std::string("family ") + family_name(tag) + " is not driven by a");
}

FamilyTag classify_family(const SymbolPair& pr, double tol) {
  for (auto t : {FamilyTag::APlusHA, FamilyTag::AMinusHA, FamilyTag::AMinusHtInvA, FamilyTag::APlusHtA})
    if (same_symbol(pr.b, family_b(pr.a, t), tol)) return t;
  if (is_identity(pr.a, tol)) return FamilyTag::IdPlusHankel;
  return FamilyTag::General;
}

CanonicalSymbol hat(const CanonicalSymbol& a) {
  CanonicalSymbol r;
  r.kappa = a.kappa;
  r.scale = a.kappa % 2 == 0 ? a.scale : -a.scale;
  for (auto& [k, g] : a.log.coeffs) r.log.coeffs[k] = k % 2 == 0 ? g : -g;
  // u_{tau,beta}(-t) = u_{-tau,beta}(t)
  for (auto& j : a.jumps) r.jumps.push_back({UnitPoint(2 * j.point.num + j.point.den, 2 * j.point.den), j.beta});
  r.normalize_jumps();
  return r;
}

FamilyIntervals family_intervals(FamilyTag tag, const Exponent& e) {
  Rational half(1, 2);
  // (-1/2 - 1/2q, 1/2p) and (-1/2q, 1/2 + 1/2p)
  Rational lo_a = -half - 1 / (2 * e.q), hi_a = 1 / (2 * e.p);
  Rational lo_b = -1 / (2 * e.q), hi_b = half + 1 / (2 * e.p);
  FamilyIntervals iv;
  iv.pair_lo = -1 / e.q;
  iv.pair_hi = 1 / e.p;
  switch (tag) {
    case FamilyTag::APlusHA:
      iv.plus_lo = lo_a, iv.plus_hi = hi_a, iv.minus_lo = lo_b, iv.minus_hi = hi_b;
      break;
    case FamilyTag::AMinusHA:
      iv.plus_lo = lo_b, iv.plus_hi = hi_b, iv.minus_lo = lo_a, iv.minus_hi = hi_a;
      break;
    case FamilyTag::AMinusHtInvA:
      iv.plus_lo = lo_b, iv.plus_hi = hi_b, iv.minus_lo = lo_b, iv.minus_hi = hi_b;
      break;
    case FamilyTag::APlusHtA:
      iv.plus_lo = lo_a, iv.plus_hi = hi_a, iv.minus_lo = lo_a, iv.minus_hi = hi_a;
      break;
    default:
      throw Error(ErrorKind::InputError, std::string("no interval table for ") + family_name(tag));
  }
  return iv;
}

FamilyReport family_fredholm(const CanonicalSymbol& a_in, FamilyTag tag, const Exponent& p, bool cross_check,
                             double eps) {
  FamilyIntervals iv = family_intervals(tag, p);
  CanonicalSymbol a = simplify(a_in);
  FamilyReport r;
  r.tag = tag;
  long long kappa = a.kappa;
  r.fredholm = true;

  auto place = [&](cplx& beta, const Rational& lo, const Rational& hi, const std::string& name) {
    Rational x = exact(beta.real());
    long long j = floor_int(lo - x) + 1;
    Rational y = x + j;
    if (y >= hi) {
      r.fredholm = false;
      if (r.violated.empty()) r.violated = name;
    } else if (dist_to_int(x - hi) < eps) {
      r.fredholm = false;
      r.boundary = true;
      if (r.violated.empty()) r.violated = name + " (boundary)";
    }
    beta += static_cast<double>(j);
    kappa -= j;
  };

  r.beta_plus = a.beta_at(UnitPoint::one());
  r.beta_minus = a.beta_at(UnitPoint::minus_one());
  place(r.beta_plus, iv.plus_lo, iv.plus_hi, "(i) at 1");
  place(r.beta_minus, iv.minus_lo, iv.minus_hi, "(ii) at -1");
  for (auto& j : a.jumps) {
    UnitPoint up = j.point;
    if (!up.in_upper()) {
      if (up.is_one() || up.is_minus_one() || a.has_jump(up.conj())) continue;
      up = up.conj();
    }
    PairExponent pe{up, a.beta_at(up), a.beta_at(up.conj())};
    cplx sum = pe.beta_upper + pe.beta_lower;
    cplx before = sum;
    place(sum, iv.pair_lo, iv.pair_hi, "(iii) at " + up.str());
    pe.beta_upper += sum - before;
    r.pairs.push_back(pe);
  }
  r.kappa = static_cast<int>(kappa);
  if (r.fredholm) {
    r.dim_ker = std::max(0, -r.kappa);
    r.dim_coker = std::max(0, r.kappa);
    r.index = r.dim_ker - r.dim_coker;
    r.n = 0;
    r.m = -r.kappa;
  }
  if (cross_check) {
    SymbolPair pr = validate_pair(a_in, family_b(a_in, tag));
    DefectReport g = defect_numbers(pr, p, DefectOptions{1e-8, eps, {}});
    r.general_checked = true;
    r.general_agrees = g.fredholm == r.fredholm;
    if (r.general_agrees && r.fredholm)
      r.general_agrees = g.dim_ker == r.dim_ker && g.dim_coker == r.dim_coker && g.index == r.index &&
                         g.n == r.n && g.m == r.m;
  }
  return r;
}

FamilyReport hankel_identity_report(const CanonicalSymbol& phi, const Exponent& p, const DefectOptions& opt) {
  SymbolPair pr = validate_pair(CanonicalSymbol::constant(1.0), invert(phi));
  DefectReport g = defect_numbers(pr, p, opt);
  FamilyReport r;
  r.tag = FamilyTag::IdPlusHankel;
  r.fredholm = g.fredholm;
  r.boundary = g.conditions.boundary;
  r.confident = g.confident;
  if (!g.fredholm) {
    for (auto& s : g.conditions.sites)
      if (s.verdict != Verdict::Pass && r.violated.empty())
        r.violated = std::string(side_name(s.side)) + "-side at " + s.point.str();
    return r;
  }
  r.gamma_rep = g.c_rep;
  r.delta_rep = g.d_rep;
  r.n = g.n;
  r.m = g.m;
  r.kappa = g.n;
  r.index = g.index;
  r.dim_ker = g.dim_ker;
  r.dim_coker = g.dim_coker;
  r.beta_plus = 2.0 * g.c_rep->gamma_plus;
  r.beta_minus = 2.0 * g.c_rep->gamma_minus;
  for (auto& j : g.c_rep->gammas) r.pairs.push_back({j.point, j.beta, j.beta});
  r.general_checked = true;
  r.general_agrees = true;
  return r;
}

cplx v_factor(UnitPoint tau0, cplx alpha, double theta) {
  return std::pow(cplx(2.0 - 2.0 * std::cos(theta - tau0.angle())), alpha);
}

RhoSplit rho_split(const NormalizedRep& g, const NormalizedRep& d, double theta) {
  cplx t = std::polar(1.0, theta);
  cplx lp{};
  for (auto& [k, v] : g.smooth.coeffs)
    if (k > 0) lp += v * (std::pow(t, k) + std::pow(t, -k));
  RhoSplit s;
  s.rho0 = std::exp(lp) * v_factor(UnitPoint::one(), g.gamma_plus + d.gamma_plus, theta) *
           v_factor(UnitPoint::minus_one(), g.gamma_minus + d.gamma_minus + 1.0, theta);
  double sign = 1.0;
  long long np = std::llround((g.gamma_plus - d.gamma_plus).real());
  if (np % 2 != 0) sign = -sign;
  for (size_t r = 0; r < g.gammas.size(); ++r) {
    const auto& gr = g.gammas[r];
    cplx dr{};
    for (auto& x : d.gammas)
      if (x.point == gr.point) dr = x.beta;
    s.rho0 *= v_factor(gr.point, 0.5 * (gr.beta + dr), theta) * v_factor(gr.point.conj(), 0.5 * (gr.beta + dr), theta);
    long long nr = std::llround((gr.beta - dr).real());
    double x = std::remainder(theta, 2.0 * std::numbers::pi);
    double chi = std::abs(x) < gr.point.angle() ? 1.0 : -1.0;
    if (nr % 2 != 0) sign *= chi;
  }
  s.rho1 = sign;
  return s;
}

double JacobiData::weight(double x) const { return std::pow(2.0 - 2.0 * x, alpha) * std::pow(2.0 + 2.0 * x, beta); }

namespace {

// sigma_n^2 with normalization constant 2^{e} in the denominator
double sigma_sq(double a, double b, int n, double e) {
  double ab = a + b;
  double v;
  if (n == 0) {
    v = std::tgamma(ab + 2.0) / (std::tgamma(a + 1.0) * std::tgamma(b + 1.0));
  } else {
    double binom = std::exp(std::lgamma(2 * n + ab + 1.0) - std::lgamma(n + 1.0) - std::lgamma(n + ab + 1.0));
    double c = std::pow(2.0, -n) * binom;
    v = c * c * (2 * n + ab + 1.0) * std::exp(std::lgamma(n + 1.0) + std::lgamma(n + ab + 1.0) -
                                            std::lgamma(n + a + 1.0) - std::lgamma(n + b + 1.0));
  }
  return v / std::pow(2.0, e);
}

void check_jacobi(double a, double b, int kappa) {
  if (!(a > -1.0) || !(b > -1.0)) throw Error(ErrorKind::DomainError, "Jacobi parameters must exceed -1");
  if (kappa < 1) throw Error(ErrorKind::DomainError, "Jacobi determinant needs kappa >= 1");
}

double determinant(double a, double b, int kappa, double e) {
  check_jacobi(a, b, kappa);
  double v = 4.0 * std::pow(2.0, kappa * (kappa - 1.0)) / std::pow(std::numbers::pi, kappa);
  for (int n = 0; n < kappa; ++n) v /= sigma_sq(a, b, n, e);
  return v;
}

}  // namespace

JacobiData jacobi_data(double alpha, double beta, int kappa) {
  check_jacobi(alpha, beta, kappa);
  JacobiData d{alpha, beta, kappa, {}};
  for (int n = 0; n < kappa; ++n) d.sigma_sq.push_back(sigma_sq(alpha, beta, n, 2.0 * (alpha + beta) + 1.0));
  return d;
}

double jacobi_determinant(double alpha, double beta, int kappa) {
  return determinant(alpha, beta, kappa, 2.0 * (alpha + beta) + 1.0);
}

double jacobi_determinant_printed(double alpha, double beta, int kappa) {
  return determinant(alpha, beta, kappa, alpha + beta + 1.0);
}

}  // namespace thf
