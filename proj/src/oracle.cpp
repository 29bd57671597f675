#include "thf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thf/errors.hpp"
#include "thf/quadrature.hpp"
#include "thf/series.hpp"

namespace thf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx I{0.0, 1.0};

// (e^z - 1) / z
cplx phi1(cplx z) {
  if (std::abs(z) < 1e-3) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  return (std::exp(z) - 1.0) / z;
}

struct Arc {
  double lo, len;
};

// arcs between consecutive jump points, or the whole circle
std::vector<Arc> jump_arcs(const std::vector<UnitPoint>& pts) {
  if (pts.empty()) return {{0.0, kTwoPi}};
  std::vector<Arc> arcs;
  for (size_t i = 0; i < pts.size(); ++i) {
    Rational d = (i + 1 < pts.size() ? pts[i + 1].turn() : pts[0].turn() + 1) - pts[i].turn();
    arcs.push_back({pts[i].angle(), kTwoPi * to_double(d)});
  }
  return arcs;
}

std::vector<UnitPoint> jump_points(const CanonicalSymbol& s) {
  std::vector<UnitPoint> pts;
  for (auto& j : s.jumps) pts.push_back(j.point);
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<cplx> exp_series_trimmed(const std::vector<cplx>& g) {
  if (g.size() <= 1) return {1.0};
  for (int K = 64;; K *= 2) {
    std::vector<cplx> e = exp_series(g, K);
    double top = 0.0, tail = 0.0;
    for (int k = 0; k <= K; ++k) {
      top = std::max(top, std::abs(e[k]));
      if (k > K - 8) tail = std::max(tail, std::abs(e[k]));
    }
    if (tail < 1e-18 * top || K >= 8192) {
      while (e.size() > 1 && std::abs(e.back()) < 1e-20 * top) e.pop_back();
      return e;
    }
  }
}

// Fourier coefficients of the jump product for |k| <= K
std::vector<cplx> jump_product_coeffs(const CanonicalSymbol& s, int K) {
  std::vector<cplx> out(2 * K + 1);
  if (s.jumps.empty()) {
    out[K] = 1.0;
    return out;
  }
  cplx B{};
  for (auto& j : s.jumps) B += j.beta;
  for (auto& arc : jump_arcs(jump_points(s))) {
    double mid = arc.lo + 0.5 * arc.len;
    cplx c{};
    for (auto& j : s.jumps) {
      double y = std::fmod(mid - j.point.angle(), kTwoPi);
      if (y < 0) y += kTwoPi;
      c += j.beta * (y - mid - std::numbers::pi);
    }
    for (int k = -K; k <= K; ++k) {
      cplx mu = B - static_cast<double>(k);
      out[k + K] += std::exp(I * (c + mu * arc.lo)) * arc.len * phi1(I * mu * arc.len) / kTwoPi;
    }
  }
  return out;
}

}  // namespace

std::vector<double> TwoSidedSeries::tail_energy() const {
  std::vector<double> e(N + 1);
  double acc = 0.0;
  for (int K = N; K >= 0; --K) {
    e[K] = acc;
    acc += std::norm(at(K));
    if (K > 0) acc += std::norm(at(-K));
  }
  return e;
}

cplx jump_coefficient(UnitPoint tau, cplx beta, int k) {
  // (1/2pi) int_0^{2pi} e^{i beta (y - pi)} e^{-ik(y + theta)} dy
  cplx mu = beta - static_cast<double>(k);
  cplx base = std::polar(1.0, -k * tau.angle());
  if (std::abs(mu) < 1e-300) return base;
  return base * std::sin(std::numbers::pi * beta) / (std::numbers::pi * mu);
}

TwoSidedSeries fourier_exact(const CanonicalSymbol& s, int N) {
  std::vector<cplx> gp(1), gm(1);
  cplx l0{};
  for (auto& [k, v] : s.log.coeffs) {
    if (k == 0) l0 += v;
    auto& g = k > 0 ? gp : gm;
    int a = std::abs(k);
    if (a == 0) continue;
    if (static_cast<int>(g.size()) <= a) g.resize(a + 1);
    g[a] += v;
  }
  std::vector<cplx> ep = exp_series_trimmed(gp), em = exp_series_trimmed(gm);
  int Kp = static_cast<int>(ep.size()) - 1, Km = static_cast<int>(em.size()) - 1;

  // E_k = sum_j ep[k + j] em[j], -Km <= k <= Kp
  std::vector<cplx> E(Kp + Km + 1);
  for (int k = -Km; k <= Kp; ++k) {
    cplx acc{};
    for (int j = std::max(0, -k); j <= Km && k + j <= Kp; ++j) acc += ep[k + j] * em[j];
    E[k + Km] = acc;
  }

  int K = N + std::max(Kp, Km) + std::abs(s.kappa);
  std::vector<cplx> J = jump_product_coeffs(s, K);
  TwoSidedSeries r;
  r.N = N;
  r.method = "series-convolution";
  r.coeffs.resize(2 * N + 1);
  cplx scale = s.scale * std::exp(l0);
  for (int k = -N; k <= N; ++k) {
    cplx acc{};
    for (int i = -Km; i <= Kp; ++i) {
      int idx = k - s.kappa - i;
      if (idx < -K || idx > K) continue;
      acc += E[i + Km] * J[idx + K];
    }
    r.coeffs[k + N] = scale * acc;
  }
  return r;
}

TwoSidedSeries fourier_quadrature(const CanonicalSymbol& s, int N, int panels_min) {
  GaussRule g = gauss_legendre(20);
  double freq = N + std::abs(s.kappa) + 4 * s.log.degree() + 4;
  TwoSidedSeries r;
  r.N = N;
  r.method = "quadrature";
  r.coeffs.assign(2 * N + 1, cplx{});
  for (auto& arc : jump_arcs(jump_points(s))) {
    int panels = std::max(panels_min, static_cast<int>(std::ceil(freq * arc.len / 8.0)));
    for (auto& nd : composite_rule(g, arc.lo, arc.lo + arc.len, panels)) {
      cplx v = eval(s, nd.x) * nd.w / kTwoPi;
      cplx step = std::polar(1.0, -nd.x);
      cplx e = std::polar(1.0, N * nd.x);  // e^{-ikx} at k = -N
      for (int k = -N; k <= N; ++k) {
        r.coeffs[k + N] += v * e;
        e *= step;
      }
    }
  }
  return r;
}

TwoSidedSeries fourier_coeffs(const CanonicalSymbol& s, int N, double tol) {
  TwoSidedSeries a = fourier_exact(s, N);
  TwoSidedSeries b = fourier_quadrature(s, N);
  double dev = 0.0;
  for (int k = -N / 4; k <= N / 4; ++k) dev = std::max(dev, std::abs(a.at(k) - b.at(k)));
  a.deviation = dev;
  if (!(dev <= tol))
    throw Error(ErrorKind::MethodDisagreement,
                "Fourier coefficient methods disagree by " + std::to_string(dev) + " for " + describe(s));
  return a;
}

FiniteSection finite_section(const TwoSidedSeries& a, const TwoSidedSeries& b, int N) {
  FiniteSection f;
  f.N = N;
  f.M.resize(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) f.M(j, k) = a.at(j - k) + b.at(j + k + 1);
  return f;
}

FiniteSection finite_section(const SymbolPair& pr, int N) {
  return finite_section(fourier_exact(pr.a, 2 * N), fourier_exact(pr.b, 2 * N), N);
}

namespace {

std::vector<cplx> plus_inverse(const NormalizedRep& rep, int L) {
  PlusFactor f = plus_factor_structure(rep);
  std::vector<cplx> g = f.analytic_log;
  for (auto& x : g) x = -x;
  auto etas = f.etas;
  for (auto& e : etas) e.beta = -e.beta;
  std::vector<cplx> out = analytic_product(g, etas, L);
  for (auto& x : out) x /= f.constant;
  return out;
}

double vec_norm(const std::vector<cplx>& v, int from, int to) {
  double s = 0.0;
  for (int k = from; k < to && k < static_cast<int>(v.size()); ++k) s += std::norm(v[k]);
  return std::sqrt(s);
}

}  // namespace

KernelBasis kernel_residual_check(const SymbolPair& pr, const Exponent& p, const DefectReport& report, int N,
                                  double tol, bool throw_on_fail) {
  (void)p;
  KernelBasis kb;
  kb.N = N;
  kb.expected = report.dim_ker;
  if (!report.fredholm || !report.c_rep || !report.d_rep)
    throw Error(ErrorKind::NotFredholm, "kernel construction needs a Fredholm report");
  const int n = report.n, m = report.m;

  if (n > 0) {
    if (m > 0 && report.rho && report.matrix && report.rank) {
      const RhoSeries& rho = *report.rho;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(report.matrix->A, Eigen::ComputeFullV);
      const Eigen::MatrixXcd& V = svd.matrixV();
      double scale = 0.0;
      for (auto& x : rho.coeffs) scale = std::max(scale, std::abs(x));
      for (int col = report.rank->rank; col < m; ++col) {
        Eigen::VectorXcd x = V.col(col);
        for (int k = -(n - 1); k <= n - 1; ++k) {
          // p3 = 2 x_0 + sum_j x_j (t^j + t^{-j})
          cplx acc = 2.0 * x(0) * rho.at(k);
          for (int j = 1; j < m; ++j) acc += x(j) * (rho.at(k - j) + rho.at(k + j));
          kb.consistency = std::max(kb.consistency, std::abs(acc) / std::max(scale, 1e-300));
        }
      }
      kb.note = "null vectors of A_{n,m} checked for consistency only";
      kb.pass = kb.consistency < std::max(tol, 10.0 * rho.tail_bound);
    } else {
      kb.note = "kernel is trivial";
      kb.pass = report.dim_ker == 0;
    }
    if (!kb.pass && throw_on_fail) throw Error(ErrorKind::ResidualTooLarge, "kernel consistency check failed");
    return kb;
  }

  const int L = 2 * N;
  std::vector<cplx> cinv = plus_inverse(*report.c_rep, L);

  // (1 - t) c+^{-1} (t^j + t^{-2n-2-j})
  for (int j = 0; j < -n; ++j) {
    std::vector<cplx> q(-2 * n - 1);
    q[j] += 1.0;
    q[-2 * n - 2 - j] += 1.0;
    std::vector<cplx> w(q.size() + 1);  // (1 - t) q
    for (size_t k = 0; k < q.size(); ++k) {
      w[k] += q[k];
      w[k + 1] -= q[k];
    }
    KernelCandidate kc;
    kc.construction = "q2";
    kc.generator = j;
    kc.coeffs = convolve(cinv, w, L);
    kb.elements.push_back(std::move(kc));
  }

  if (m > 0) {
    // h = rho p3 is even, so g = P_{>0} h + h_0/2 solves g + tilde g = h, and
    // f+ = -t^{-n} ((1 + t) c+)^{-1} g. When the merged power of 1 + t in that
    // inverse would be near -1, rho and hence g vanish at -1, and dividing g by
    // 1 + t first keeps the series decaying.
    RhoSeries rho = rho_coefficients(rho_factors(pr, *report.c_rep, *report.d_rep), L + m + 1);
    bool divide_first = 2.0 * report.c_rep->gamma_minus.real() > -0.5;
    std::vector<cplx> kinv = divide_first ? cinv : [&] {
      PlusFactor pf = plus_factor_structure(*report.c_rep);
      std::vector<cplx> g = pf.analytic_log;
      for (auto& x : g) x = -x;
      auto etas = pf.etas;
      for (auto& e : etas) e.beta = -e.beta;
      etas.push_back({UnitPoint::minus_one(), -1.0});
      std::vector<cplx> out = analytic_product(g, etas, L);
      for (auto& x : out) x /= pf.constant;
      return out;
    }();
    for (int j = 0; j < m; ++j) {
      std::vector<cplx> g(L + 2);
      for (int k = 0; k <= L + 1; ++k) g[k] = j == 0 ? 2.0 * rho.at(k) : rho.at(k - j) + rho.at(k + j);
      g[0] *= 0.5;
      std::vector<cplx> q(L + 1);
      if (divide_first) {
        q[L] = g[L + 1];
        for (int k = L - 1; k >= 0; --k) q[k] = g[k + 1] - q[k + 1];
      } else {
        std::copy(g.begin(), g.begin() + L + 1, q.begin());
      }
      std::vector<cplx> h = convolve(kinv, q, L);
      KernelCandidate kc;
      kc.construction = "p3";
      kc.generator = j;
      kc.coeffs.assign(L + 1, cplx{});
      for (int k = 0; k + (-n) <= L; ++k) kc.coeffs[k - n] = -h[k];
      kb.elements.push_back(std::move(kc));
    }
  }

  if (!kb.elements.empty()) {
    FiniteSection A = finite_section(pr, N);
    Eigen::MatrixXcd F(N, kb.elements.size());
    for (size_t e = 0; e < kb.elements.size(); ++e) {
      auto& kc = kb.elements[e];
      Eigen::VectorXcd f(N);
      for (int k = 0; k < N; ++k) f(k) = kc.coeffs[k];
      double nf = f.norm();
      kc.residual = (A.M * f).norm() / nf;
      kc.tail = vec_norm(kc.coeffs, N, L + 1) / nf;
      F.col(e) = f / nf;
      kb.max_residual = std::max(kb.max_residual, kc.residual);
    }
    kb.rank = numerical_kernel_dim(F.adjoint() * F, 1e-8).rank;
  }
  int count = static_cast<int>(kb.elements.size());
  kb.pass = kb.max_residual < tol && kb.rank == count && count == report.dim_ker;
  if (!kb.pass) {
    kb.note = "residual " + std::to_string(kb.max_residual) + ", rank " + std::to_string(kb.rank) + " of " +
              std::to_string(count) + ", reported dimKer " + std::to_string(report.dim_ker);
    if (throw_on_fail) throw Error(ErrorKind::ResidualTooLarge, kb.note);
  }
  return kb;
}

std::vector<cplx> rho_quadrature(const RhoFactors& f, int n_keep) {
  GaussRule g = gauss_legendre(20);
  std::vector<UnitPoint> pts = f.singular_points();
  std::vector<Arc> arcs = jump_arcs(pts);
  std::vector<cplx> out(2 * n_keep + 1);
  double max_panel = std::min(0.25, 4.0 / std::max(1, n_keep + std::abs(f.shift)));
  for (size_t i = 0; i < arcs.size(); ++i) {
    UnitPoint a = pts[i], b = pts[(i + 1) % pts.size()];
    auto nodes = graded_rule(g, 0.0, arcs[i].len, f.local_exponent(a), f.local_exponent(b), max_panel);
    for (auto& nd : nodes) {
      UnitPoint base = nd.end == 0 ? a : b;
      double theta = base.angle() + nd.offset;
      cplx v = f.eval_near(base, nd.offset) * nd.w / kTwoPi;
      cplx step = std::polar(1.0, -theta);
      cplx e = std::polar(1.0, n_keep * theta);
      for (int k = -n_keep; k <= n_keep; ++k) {
        out[k + n_keep] += v * e;
        e *= step;
      }
    }
  }
  return out;
}

RhoCheck rho_crosscheck(const RhoSeries& rho, const RhoFactors& f, double tol) {
  RhoCheck r;
  std::vector<cplx> q = rho_quadrature(f, rho.n_keep);
  for (int k = -rho.n_keep; k <= rho.n_keep; ++k)
    r.max_deviation = std::max(r.max_deviation, std::abs(q[k + rho.n_keep] - rho.at(k)));
  r.tolerance = std::max(tol, 2.0 * rho.tail_bound);
  if (!(r.max_deviation <= r.tolerance))
    throw Error(ErrorKind::MethodDisagreement,
                "rho series and quadrature disagree by " + std::to_string(r.max_deviation));
  return r;
}

RhoCheck rho_crosscheck(const RhoSeries& rho, const SymbolPair& pr, const Exponent& p, double tol) {
  NormalizedRep c = normalize(pr.c, Side::C, p);
  NormalizedRep d = normalize(pr.d, Side::D, p);
  return rho_crosscheck(rho, rho_factors(pr, c, d), tol);
}

}  // namespace thf
