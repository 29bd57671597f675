#include "thf/symbol.hpp"
#include "thf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace thf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx I{0.0, 1.0};

// (-conj(tau))^n: u_{tau,n}(t) = (-t/tau)^n = (-conj(tau))^n t^n
cplx minus_conj_power(UnitPoint tau, long long n) {
  return UnitPoint(n * (tau.den - 2 * tau.num), 2 * tau.den).value();
}

bool near_integer(cplx b, double tol, long long* out) {
  double r = std::round(b.real());
  if (std::abs(b.real() - r) <= tol && std::abs(b.imag()) <= tol) {
    *out = static_cast<long long>(r);
    return true;
  }
  return false;
}

}  // namespace

UnitPoint::UnitPoint(long long n, long long d) {
  if (d <= 0) throw Error(ErrorKind::InputError, "unit point denominator must be positive");
  n %= d;
  if (n < 0) n += d;
  long long g = std::gcd(n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
  if (num == 0) den = 1;
}

double UnitPoint::angle() const { return kTwoPi * static_cast<double>(num) / static_cast<double>(den); }

cplx UnitPoint::value() const {
  if (num == 0) return {1.0, 0.0};
  if (den == 2) return {-1.0, 0.0};
  if (den == 4) return num == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  return std::polar(1.0, angle());
}

std::string UnitPoint::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

cplx FourierLogPoly::at(int k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? cplx{} : it->second;
}

void FourierLogPoly::add(int k, cplx v) { coeffs[k] += v; }

cplx FourierLogPoly::eval(double x) const {
  cplx s{};
  for (auto& [k, g] : coeffs) s += g * std::polar(1.0, k * x);
  return s;
}

cplx FourierLogPoly::eval(cplx z) const {
  cplx s{};
  for (auto& [k, g] : coeffs) s += g * std::pow(z, k);
  return s;
}

int FourierLogPoly::degree() const {
  int d = 0;
  for (auto& [k, g] : coeffs) d = std::max(d, std::abs(k));
  return d;
}

FourierLogPoly FourierLogPoly::tilde() const {
  FourierLogPoly r;
  for (auto& [k, g] : coeffs) r.coeffs[-k] = g;
  return r;
}

FourierLogPoly FourierLogPoly::negated() const {
  FourierLogPoly r;
  for (auto& [k, g] : coeffs) r.coeffs[k] = -g;
  return r;
}

void FourierLogPoly::prune() {
  std::erase_if(coeffs, [](auto& kv) { return kv.second == cplx{}; });
}

CanonicalSymbol CanonicalSymbol::constant(cplx v) {
  if (v == cplx{}) throw Error(ErrorKind::InputError, "scale must be nonzero");
  CanonicalSymbol s;
  s.scale = v;
  return s;
}

CanonicalSymbol CanonicalSymbol::monomial(int k, cplx v) {
  CanonicalSymbol s = constant(v);
  s.kappa = k;
  return s;
}

CanonicalSymbol CanonicalSymbol::jump(UnitPoint tau, cplx beta) {
  CanonicalSymbol s;
  if (beta != cplx{}) s.jumps.push_back({tau, beta});
  return s;
}

CanonicalSymbol CanonicalSymbol::exp_log(FourierLogPoly l) {
  CanonicalSymbol s;
  s.log = std::move(l);
  s.log.prune();
  return s;
}

cplx CanonicalSymbol::beta_at(UnitPoint tau) const {
  for (auto& j : jumps)
    if (j.point == tau) return j.beta;
  return {};
}

bool CanonicalSymbol::has_jump(UnitPoint tau) const {
  return std::any_of(jumps.begin(), jumps.end(), [&](auto& j) { return j.point == tau; });
}

void CanonicalSymbol::normalize_jumps() {
  std::sort(jumps.begin(), jumps.end(), [](auto& a, auto& b) { return a.point < b.point; });
  std::vector<JumpFactor> merged;
  for (auto& j : jumps) {
    if (!merged.empty() && merged.back().point == j.point) merged.back().beta += j.beta;
    else merged.push_back(j);
  }
  std::erase_if(merged, [](auto& j) { return j.beta == cplx{}; });
  jumps = std::move(merged);
  log.prune();
}

cplx jump_value(UnitPoint tau, cplx beta, double x) {
  double y = std::fmod(x - tau.angle(), kTwoPi);
  if (y < 0) y += kTwoPi;
  if (y < 1e-14 || kTwoPi - y < 1e-14)
    throw Error(ErrorKind::EvalAtJump, "evaluation at jump point " + tau.str());
  return std::exp(I * beta * (y - std::numbers::pi));
}

cplx eval(const CanonicalSymbol& s, double x) {
  cplx v = s.scale * std::polar(1.0, s.kappa * x) * std::exp(s.log.eval(x));
  for (auto& j : s.jumps) v *= jump_value(j.point, j.beta, x);
  return v;
}

std::pair<cplx, cplx> one_sided_limits(const CanonicalSymbol& s, UnitPoint tau) {
  double x = tau.angle();
  cplx v = s.scale * std::polar(1.0, s.kappa * x) * std::exp(s.log.eval(x));
  cplx minus = v, plus = v;
  for (auto& j : s.jumps) {
    if (j.point == tau) {
      minus *= std::exp(I * std::numbers::pi * j.beta);
      plus *= std::exp(-I * std::numbers::pi * j.beta);
    } else {
      cplx w = jump_value(j.point, j.beta, x);
      minus *= w;
      plus *= w;
    }
  }
  return {minus, plus};
}

CanonicalSymbol tilde(const CanonicalSymbol& s) {
  CanonicalSymbol r;
  r.kappa = -s.kappa;
  r.scale = s.scale;
  r.log = s.log.tilde();
  for (auto& j : s.jumps) r.jumps.push_back({j.point.conj(), -j.beta});
  r.normalize_jumps();
  return r;
}

CanonicalSymbol multiply(const CanonicalSymbol& a, const CanonicalSymbol& b) {
  CanonicalSymbol r = a;
  r.kappa += b.kappa;
  r.scale *= b.scale;
  for (auto& [k, g] : b.log.coeffs) r.log.add(k, g);
  r.jumps.insert(r.jumps.end(), b.jumps.begin(), b.jumps.end());
  r.normalize_jumps();
  return r;
}

CanonicalSymbol operator*(const CanonicalSymbol& a, const CanonicalSymbol& b) { return multiply(a, b); }

CanonicalSymbol invert(const CanonicalSymbol& s) {
  CanonicalSymbol r;
  r.kappa = -s.kappa;
  r.scale = 1.0 / s.scale;
  r.log = s.log.negated();
  for (auto& j : s.jumps) r.jumps.push_back({j.point, -j.beta});
  r.normalize_jumps();
  return r;
}

CanonicalSymbol simplify(const CanonicalSymbol& s) {
  CanonicalSymbol r;
  r.kappa = s.kappa;
  r.scale = s.scale * std::exp(s.log.at(0));
  r.log = s.log;
  r.log.coeffs.erase(0);
  r.log.prune();
  for (auto& j : s.jumps) {
    long long n;
    if (near_integer(j.beta, 1e-12, &n)) {
      r.kappa += static_cast<int>(n);
      r.scale *= minus_conj_power(j.point, n);
    } else {
      r.jumps.push_back(j);
    }
  }
  r.normalize_jumps();
  return r;
}

CanonicalSymbol reduce_jumps(const CanonicalSymbol& s) {
  CanonicalSymbol r = simplify(s);
  for (auto& j : r.jumps) {
    auto n = static_cast<long long>(std::ceil(j.beta.real() - 0.5));
    if (n == 0) continue;
    j.beta -= static_cast<double>(n);
    r.kappa += static_cast<int>(n);
    r.scale *= minus_conj_power(j.point, n);
  }
  return r;
}

std::vector<double> sample_angles(const std::vector<const CanonicalSymbol*>& ss, int count) {
  std::vector<double> xs;
  xs.reserve(count);
  const double phase = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < count; ++i) {
    double x = kTwoPi * (i + phase) / count;
    for (auto* s : ss)
      for (auto& j : s->jumps) {
        double d = std::remainder(x - j.point.angle(), kTwoPi);
        if (std::abs(d) < 1e-6) x += 1e-5;
      }
    xs.push_back(x);
  }
  return xs;
}

std::vector<double> sample_angles(const CanonicalSymbol& s, int count) {
  return sample_angles(std::vector<const CanonicalSymbol*>{&s}, count);
}

bool is_identity(const CanonicalSymbol& s, double tol) {
  CanonicalSymbol r = simplify(s);
  if (r.kappa != 0) return false;
  for (auto& j : r.jumps)
    if (std::abs(j.beta) > tol) return false;
  for (auto& [k, g] : r.log.coeffs)
    if (std::abs(g) > tol) return false;
  return std::abs(r.scale - 1.0) <= tol;
}

bool same_symbol(const CanonicalSymbol& a, const CanonicalSymbol& b, double tol) {
  return is_identity(multiply(a, invert(b)), tol);
}

CanonicalSymbol symmetrize_unimodular(const CanonicalSymbol& s, double tol) {
  CanonicalSymbol r = simplify(s);
  std::vector<JumpFactor> out;
  for (auto& j : r.jumps) {
    if (j.point.is_one() || j.point.is_minus_one()) {
      out.push_back(j);
      continue;
    }
    if (!j.point.in_upper()) {
      if (!r.has_jump(j.point.conj()))
        throw Error(ErrorKind::ConditionViolated,
                    "unpaired jump at " + j.point.str() + " breaks c*tilde(c) = 1");
      continue;
    }
    UnitPoint lo = j.point.conj();
    cplx b1 = j.beta, b2 = r.beta_at(lo);
    if (!r.has_jump(lo))
      throw Error(ErrorKind::ConditionViolated,
                  "unpaired jump at " + j.point.str() + " breaks c*tilde(c) = 1");
    cplx diff = b2 - b1;
    long long k = std::llround(diff.real());
    if (std::abs(diff - static_cast<double>(k)) > tol)
      throw Error(ErrorKind::ConditionViolated,
                  "jump exponents at " + j.point.str() + " and its conjugate do not match");
    // u_{conj tau, b1 + k} = u_{conj tau, b1} (-t/conj(tau))^k
    cplx avg = 0.5 * (b1 + b2 - static_cast<double>(k));
    r.kappa += static_cast<int>(k);
    r.scale *= UnitPoint(k * (2 * j.point.num + j.point.den), 2 * j.point.den).value();
    out.push_back({j.point, avg});
    out.push_back({lo, avg});
  }
  r.jumps = std::move(out);
  FourierLogPoly odd;
  for (auto& [k, g] : r.log.coeffs) {
    if (k <= 0) continue;
    cplx gm = r.log.at(-k);
    if (std::abs(g + gm) > tol)
      throw Error(ErrorKind::ConditionViolated, "log part is not odd at index " + std::to_string(k));
    cplx h = 0.5 * (g - gm);
    odd.coeffs[k] = h;
    odd.coeffs[-k] = -h;
  }
  for (auto& [k, g] : r.log.coeffs)
    if (k < 0 && odd.coeffs.find(k) == odd.coeffs.end()) {
      if (std::abs(g) > tol)
        throw Error(ErrorKind::ConditionViolated, "log part is not odd at index " + std::to_string(k));
    }
  r.log = odd;
  double sp = std::abs(r.scale - 1.0), sm = std::abs(r.scale + 1.0);
  if (std::min(sp, sm) > tol)
    throw Error(ErrorKind::ConditionViolated, "scale squared differs from 1");
  r.scale = sp <= sm ? 1.0 : -1.0;
  r.normalize_jumps();
  return r;
}

SymbolPair validate_pair(const CanonicalSymbol& a, const CanonicalSymbol& b, double tol) {
  CanonicalSymbol e = simplify(multiply(multiply(a, tilde(a)), invert(multiply(b, tilde(b)))));
  std::ostringstream msg;
  if (e.kappa != 0) {
    msg << "a*tilde(a) / (b*tilde(b)) has winding power t^" << e.kappa;
    throw Error(ErrorKind::ConditionViolated, msg.str());
  }
  for (auto& j : e.jumps)
    if (std::abs(j.beta) > tol) {
      msg << "a*tilde(a) and b*tilde(b) differ by a jump at " << j.point.str() << " with exponent "
          << j.beta;
      throw Error(ErrorKind::ConditionViolated, msg.str());
    }
  double worst = 0.0;
  for (double x : sample_angles(std::vector<const CanonicalSymbol*>{&a, &b, &e}, 512))
    worst = std::max(worst, std::abs(eval(e, x) - 1.0));
  if (worst > tol) {
    msg << "a*tilde(a) = b*tilde(b) fails, max deviation " << worst;
    throw Error(ErrorKind::ConditionViolated, msg.str());
  }
  SymbolPair pr;
  pr.a = a;
  pr.b = b;
  pr.a.normalize_jumps();
  pr.b.normalize_jumps();
  CanonicalSymbol binv = invert(b);
  pr.c = symmetrize_unimodular(multiply(a, binv), tol);
  pr.d = symmetrize_unimodular(multiply(tilde(a), binv), tol);
  return pr;
}

std::pair<CanonicalSymbol, CanonicalSymbol> aux_functions(const SymbolPair& pr) { return {pr.c, pr.d}; }

std::string describe(const CanonicalSymbol& s) {
  std::ostringstream o;
  o << s.scale;
  if (s.kappa != 0) o << " t^" << s.kappa;
  if (!s.log.coeffs.empty()) {
    o << " exp(";
    bool first = true;
    for (auto& [k, g] : s.log.coeffs) {
      o << (first ? "" : " + ") << g << " t^" << k;
      first = false;
    }
    o << ")";
  }
  for (auto& j : s.jumps) o << " u[" << j.point.str() << ", " << j.beta << "]";
  return o.str();
}

}  // namespace thf
