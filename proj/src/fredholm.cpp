#include "thf/fredholm.hpp"
#include "thf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace thf {

const char* side_name(Side s) { return s == Side::C ? "c" : "d"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Boundary: return "boundary";
  }
  return "?";
}

FoldedExponents fold_exponents(const CanonicalSymbol& s) {
  FoldedExponents f;
  int kappa = s.kappa;
  f.b_plus = s.beta_at(UnitPoint::one());
  f.b_minus = s.beta_at(UnitPoint::minus_one());
  f.re_b_plus = exact(f.b_plus.real());
  f.re_b_minus = exact(f.b_minus.real());
  if (s.scale.real() < 0) {
    // -1 = u_{1,1} u_{-1,-1}
    f.b_plus += 1.0;
    f.b_minus -= 1.0;
    f.re_b_plus += 1;
    f.re_b_minus -= 1;
  }
  if (kappa % 2 != 0) {
    // t = u_{-1,1}
    f.b_minus += 1.0;
    f.re_b_minus += 1;
    kappa -= 1;
  }
  f.half_kappa = kappa / 2;
  for (auto& j : s.jumps)
    if (j.point.in_upper()) {
      f.upper.push_back(j);
      f.re_upper.push_back(exact(j.beta.real()));
    }
  f.log = s.log;
  return f;
}

Intervals side_intervals(Side side, const Exponent& e) {
  const Rational& s = side == Side::C ? e.p : e.q;
  const Rational& t = side == Side::C ? e.q : e.p;
  Rational half(1, 2);
  Intervals iv;
  iv.plus_lo = -1 / (2 * t);
  iv.plus_hi = half + 1 / (2 * s);
  iv.minus_lo = -half - 1 / (2 * t);
  iv.minus_hi = 1 / (2 * s);
  iv.jump_lo = -1 / t;
  iv.jump_hi = 1 / s;
  iv.arc_jump = 1 / s;
  iv.arc_minus = 1 / (2 * s);
  iv.arc_plus = half + 1 / (2 * s);
  return iv;
}

namespace {

// integer j with x + j in (lo, lo + 1]; the caller checks x + j < hi
long long placement(const Rational& x, const Rational& lo) { return floor_int(lo - x) + 1; }

SiteVerdict test_site(Side side, UnitPoint pt, const Rational& value, const Rational& offset, double eps) {
  SiteVerdict v;
  v.side = side;
  v.point = pt;
  v.value = value;
  v.offset = offset;
  Rational diff = value - offset;
  v.margin = dist_to_int(diff);
  if (is_integer(diff)) v.verdict = Verdict::Fail;
  else if (v.margin < eps) v.verdict = Verdict::Boundary;
  else v.verdict = Verdict::Pass;
  return v;
}

void side_sites(const CanonicalSymbol& s, Side side, const Exponent& p, double eps,
                std::vector<SiteVerdict>& out) {
  FoldedExponents f = fold_exponents(s);
  Intervals iv = side_intervals(side, p);
  // (1/2pi) arg s^-(1) = Re B+/2, (1/2pi) arg s^-(-1) = Re B-/2
  out.push_back(test_site(side, UnitPoint::one(), f.re_b_plus / 2, iv.plus_hi, eps));
  out.push_back(test_site(side, UnitPoint::minus_one(), f.re_b_minus / 2, iv.minus_hi, eps));
  for (size_t i = 0; i < f.upper.size(); ++i)
    out.push_back(test_site(side, f.upper[i].point, f.re_upper[i], iv.jump_hi, eps));
}

}  // namespace

CanonicalSymbol NormalizedRep::reconstruct() const {
  CanonicalSymbol s;
  s.kappa = 2 * n;
  s.scale = smooth_scale;
  s.log = smooth;
  s.jumps.push_back({UnitPoint::one(), 2.0 * gamma_plus});
  s.jumps.push_back({UnitPoint::minus_one(), 2.0 * gamma_minus});
  for (auto& g : gammas) {
    s.jumps.push_back({g.point, g.beta});
    s.jumps.push_back({g.point.conj(), g.beta});
  }
  s.normalize_jumps();
  return s;
}

NormalizedRep normalize(const CanonicalSymbol& s, Side side, const Exponent& p) {
  FoldedExponents f = fold_exponents(s);
  Intervals iv = side_intervals(side, p);
  NormalizedRep r;
  r.side = side;
  long long n = f.half_kappa;
  auto fail = [&](const std::string& where) {
    throw Error(ErrorKind::NotFredholmOnSide,
                std::string(side_name(side)) + "-side placement impossible at " + where);
  };

  Rational xp = f.re_b_plus / 2;
  long long jp = placement(xp, iv.plus_lo);
  r.re_gamma_plus = xp + jp;
  if (r.re_gamma_plus >= iv.plus_hi) fail("1");
  r.gamma_plus = 0.5 * f.b_plus + static_cast<double>(jp);
  n -= jp;

  Rational xm = f.re_b_minus / 2;
  long long jm = placement(xm, iv.minus_lo);
  r.re_gamma_minus = xm + jm;
  if (r.re_gamma_minus >= iv.minus_hi) fail("-1");
  r.gamma_minus = 0.5 * f.b_minus + static_cast<double>(jm);
  n -= jm;

  for (size_t i = 0; i < f.upper.size(); ++i) {
    long long jr = placement(f.re_upper[i], iv.jump_lo);
    Rational g = f.re_upper[i] + jr;
    if (g >= iv.jump_hi) fail(f.upper[i].point.str());
    r.re_gammas.push_back(g);
    r.gammas.push_back({f.upper[i].point, f.upper[i].beta + static_cast<double>(jr)});
    n -= jr;
  }
  r.n = static_cast<int>(n);
  r.smooth = f.log;
  return r;
}

ConditionReport fredholm_conditions(const SymbolPair& pr, const Exponent& p, double eps) {
  ConditionReport r;
  r.exponent = p;
  side_sites(pr.c, Side::C, p, eps, r.sites);
  side_sites(pr.d, Side::D, p, eps, r.sites);
  for (auto& s : r.sites) {
    if (s.verdict != Verdict::Pass) r.fredholm = false;
    if (s.verdict == Verdict::Boundary) r.boundary = true;
  }
  return r;
}

void require_fredholm(const ConditionReport& r) {
  for (auto& s : r.sites) {
    if (s.verdict == Verdict::Pass) continue;
    std::ostringstream o;
    o << side_name(s.side) << "-side condition at tau=" << s.point.str() << ": value "
      << to_double(s.value) << " vs forbidden " << to_double(s.offset) << " + Z (margin " << s.margin
      << ")";
    throw Error(s.verdict == Verdict::Fail ? ErrorKind::NotFredholm : ErrorKind::BoundaryCase, o.str());
  }
}

int fredholm_index(const SymbolPair& pr, const Exponent& p) {
  require_fredholm(fredholm_conditions(pr, p));
  return normalize(pr.d, Side::D, p).n - normalize(pr.c, Side::C, p).n;
}

namespace {

struct Tracer {
  const CurveResolution& res;
  std::vector<cplx>& pts;

  bool coarse(cplx a, cplx b) const {
    if (std::abs(b - a) > res.max_chord) return true;
    return std::abs(std::arg(b / a)) > res.max_turn;
  }

  void check(cplx z) const {
    if (std::abs(z) < 1e-9) throw Error(ErrorKind::CurveThroughOrigin, "curve point within 1e-9 of 0");
  }

  void refine(const std::function<cplx(double)>& f, double u0, cplx z0, double u1, cplx z1, int depth) {
    if (depth < res.max_depth && coarse(z0, z1)) {
      double um = 0.5 * (u0 + u1);
      cplx zm = f(um);
      check(zm);
      refine(f, u0, z0, um, zm, depth + 1);
      refine(f, um, zm, u1, z1, depth + 1);
      return;
    }
    pts.push_back(z1);
  }

  // appends f on [u0,u1] excluding the first point, which is already present
  void trace(const std::function<cplx(double)>& f, double u0, cplx z0, double u1, cplx z1, int n) {
    check(z0);
    check(z1);
    double prev_u = u0;
    cplx prev = z0;
    for (int i = 1; i <= n; ++i) {
      double u = u0 + (u1 - u0) * i / n;
      cplx z = i == n ? z1 : f(u);
      check(z);
      refine(f, prev_u, prev, u, z, 0);
      prev_u = u;
      prev = z;
    }
  }
};

}  // namespace

CurveData build_hash_curve(const CanonicalSymbol& s, Side side, const Exponent& p, const CurveResolution& res) {
  Intervals iv = side_intervals(side, p);
  CurveData cd;
  Tracer tr{res, cd.points};
  std::vector<UnitPoint> cuts;
  for (auto& j : s.jumps)
    if (j.point.in_upper()) cuts.push_back(j.point);
  std::sort(cuts.begin(), cuts.end());

  auto arc = [&](cplx z1, cplx z2, const Rational& theta, UnitPoint where) {
    if (z1 == z2) return;
    cplx e = std::polar(1.0, 2.0 * std::numbers::pi * to_double(theta));
    auto f = [&](double u) { return (z1 * (1.0 - u) - u * e * z2) / ((1.0 - u) - u * e); };
    size_t first = cd.points.size() - 1;
    tr.trace(f, 0.0, z1, 1.0, z2, res.arc_samples);
    cd.segments.push_back({"arc", where, first, cd.points.size() - 1});
  };

  cplx start = one_sided_limits(s, UnitPoint::one()).second;
  tr.check(start);
  cd.points.push_back(start);
  double x0 = 0.0;
  cplx z0 = start;
  std::vector<UnitPoint> stops = cuts;
  stops.push_back(UnitPoint::minus_one());
  for (auto& stop : stops) {
    double x1 = stop.angle();
    auto lim = one_sided_limits(s, stop);
    int n = std::max(8, static_cast<int>(std::ceil(res.image_samples * (x1 - x0) / std::numbers::pi)));
    size_t first = cd.points.size() - 1;
    tr.trace([&](double x) { return eval(s, x); }, x0, z0, x1, lim.first, n);
    cd.segments.push_back({"image", stop, first, cd.points.size() - 1});
    if (!stop.is_minus_one()) arc(lim.first, lim.second, iv.arc_jump, stop);
    x0 = x1;
    z0 = lim.second;
  }
  arc(cd.points.back(), cplx{1.0, 0.0}, iv.arc_minus, UnitPoint::minus_one());
  if (cd.points.back() != cplx{1.0, 0.0}) {
    // endpoint arc skipped because s^-(-1) = 1; still pass through 1
    cd.points.push_back({1.0, 0.0});
  }
  arc(cplx{1.0, 0.0}, start, iv.arc_plus, UnitPoint::one());
  if (cd.points.back() != start) cd.points.push_back(start);
  cd.winding = winding_from_curve(cd);
  cd.winding_raw = winding_sum(cd.points);
  return cd;
}

double winding_sum(const std::vector<cplx>& z) {
  double total = 0.0;
  for (size_t k = 0; k + 1 < z.size(); ++k) {
    if (std::abs(z[k]) < 1e-9) throw Error(ErrorKind::CurveThroughOrigin, "curve point within 1e-9 of 0");
    total += std::arg(z[k + 1] / z[k]);
  }
  if (!z.empty()) total += std::arg(z.front() / z.back());
  return total / (2.0 * std::numbers::pi);
}

int winding_from_curve(const CurveData& curve) {
  double w = winding_sum(curve.points);
  double r = std::round(w);
  if (std::abs(w - r) > 1e-3)
    throw Error(ErrorKind::CurveThroughOrigin, "winding sum is not close to an integer");
  return static_cast<int>(r);
}

}  // namespace thf
