#include "thf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace thf {

GaussRule gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  {
    std::lock_guard lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // weight from the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    double w = 2.0 / ((1.0 - z * z) * pp * pp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  std::lock_guard lk(mu);
  cache.emplace(n, r);
  return r;
}

std::vector<Node> composite_rule(const GaussRule& g, double a, double b, int panels) {
  std::vector<Node> out;
  out.reserve(g.x.size() * panels);
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h, mid = lo + 0.5 * h;
    for (size_t i = 0; i < g.x.size(); ++i) out.push_back({mid + 0.5 * h * g.x[i], 0.5 * h * g.w[i]});
  }
  return out;
}

int grading_power(double exponent) {
  if (exponent >= 1.0) return 1;
  // make s^{k(1+e)-1} at least s^3
  int k = static_cast<int>(std::ceil(4.0 / (1.0 + exponent)));
  return std::clamp(k, 4, 80);
}

std::vector<GradedNode> graded_rule(const GaussRule& g, double a, double b, double exp_a, double exp_b,
                                    double max_panel, int levels) {
  std::vector<GradedNode> out;
  double h = 0.5 * (b - a);
  auto half = [&](int end, double e) {
    double sign = end == 0 ? 1.0 : -1.0;
    double hi = h;
    for (int l = 0; l < levels; ++l) {
      double lo = 0.5 * hi;
      int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel)));
      for (auto& nd : composite_rule(g, lo, hi, pieces)) out.push_back({end, sign * nd.x, nd.w});
      hi = lo;
    }
    int k = grading_power(e);
    for (size_t i = 0; i < g.x.size(); ++i) {
      double s = 0.5 * (g.x[i] + 1.0);
      double off = hi * std::pow(s, k);
      double jac = hi * k * std::pow(s, k - 1);
      out.push_back({end, sign * off, 0.5 * g.w[i] * jac});
    }
  };
  half(0, exp_a);
  half(1, exp_b);
  return out;
}

}  // namespace thf
