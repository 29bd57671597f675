#include "thf/defects.hpp"
#include "thf/errors.hpp"

#include <cmath>
#include <limits>

namespace thf {

DefectMatrix defect_matrix(const RhoSeries& rho, int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorKind::DomainError, "defect matrix needs n, m >= 1");
  if (rho.n_keep < n + m - 2)
    throw Error(ErrorKind::InsufficientCoefficients, "rho series keeps too few coefficients");
  DefectMatrix d;
  d.rows = n;
  d.cols = m;
  d.A.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) d.A(i, j) = rho.at(i - j) + rho.at(i + j);
  return d;
}

RankDecision numerical_kernel_dim(const Eigen::MatrixXcd& A, double tol_rel) {
  RankDecision r;
  r.tol_rel = tol_rel;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  auto s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) r.singular_values.push_back(s(i));
  r.sigma_max = s.size() ? s(0) : 0.0;
  r.threshold = tol_rel * r.sigma_max;
  double kept_min = std::numeric_limits<double>::infinity(), dropped_max = 0.0;
  for (double v : r.singular_values) {
    if (r.sigma_max > 0 && v > r.threshold) {
      ++r.rank;
      kept_min = std::min(kept_min, v);
    } else {
      dropped_max = std::max(dropped_max, v);
    }
  }
  r.kernel_dim = static_cast<int>(A.cols()) - r.rank;
  if (r.sigma_max == 0.0) r.gap_ratio = std::numeric_limits<double>::infinity();
  else if (dropped_max > 0.0) r.gap_ratio = std::min(kept_min, r.threshold / tol_rel) / dropped_max;
  else r.gap_ratio = kept_min / r.threshold;
  r.ill_conditioned = r.gap_ratio < 10.0;
  return r;
}

const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::GZero: return "G-zero";
    case CaseTag::GCount: return "G-count";
    case CaseTag::FMatrix: return "F-matrix";
    case CaseTag::FCount: return "F-count";
  }
  return "?";
}

CaseTag kernel_case(int n, int m) {
  if (n > 0 && m <= 0) return CaseTag::GZero;
  if (n <= 0 && m <= 0) return CaseTag::GCount;
  if (n > 0 && m > 0) return CaseTag::FMatrix;
  return CaseTag::FCount;
}

CaseTag cokernel_case(int n, int m) { return kernel_case(m, n); }

DefectReport defect_numbers(const SymbolPair& pr, const Exponent& p, const DefectOptions& opt) {
  DefectReport r;
  r.kernel_tolerance = opt.tol_rel;
  r.conditions = fredholm_conditions(pr, p, opt.eps_boundary);
  r.fredholm = r.conditions.fredholm;
  if (!r.fredholm) {
    r.confident = !r.conditions.boundary;
    r.note = r.conditions.boundary ? "boundary case" : "not Fredholm";
    return r;
  }
  r.c_rep = normalize(pr.c, Side::C, p);
  r.d_rep = normalize(pr.d, Side::D, p);
  const int n = r.c_rep->n, m = r.d_rep->n;
  r.n = n;
  r.m = m;
  r.index = m - n;
  r.ker_case = kernel_case(n, m);
  r.coker_case = cokernel_case(n, m);

  auto count = [&](CaseTag t, int a, int b) {
    // a is the own exponent, b the other one
    switch (t) {
      case CaseTag::GZero: return 0;
      case CaseTag::GCount: return -a;
      case CaseTag::FCount: return b - a;
      case CaseTag::FMatrix: return -1;
    }
    return -1;
  };
  if (n > 0 && m > 0) {
    r.rho = rho_coefficients(rho_factors(pr, *r.c_rep, *r.d_rep), std::max(n + m, 8), opt.rho);
    r.matrix = defect_matrix(*r.rho, n, m);
    r.rank = numerical_kernel_dim(r.matrix->A, opt.tol_rel);
    r.dim_ker = m - r.rank->rank;
    r.dim_coker = n - r.rank->rank;
    double kept_min = 0.0;
    for (double v : r.rank->singular_values)
      if (v > r.rank->threshold) kept_min = v;
    double perturb = 2.0 * r.rho->tail_bound * std::sqrt(static_cast<double>(n) * m);
    if (r.rank->ill_conditioned) {
      r.confident = false;
      r.note = "singular value gap below 10";
    } else if (r.rank->rank > 0 && perturb >= kept_min) {
      r.confident = false;
      r.note = "rho tail bound exceeds the smallest kept singular value";
    }
  } else {
    r.dim_ker = count(r.ker_case, n, m);
    r.dim_coker = count(r.coker_case, m, n);
  }
  return r;
}

const char* invertibility_name(Invertibility v) {
  switch (v) {
    case Invertibility::Invertible: return "invertible";
    case Invertibility::NotInvertible: return "not-invertible";
    case Invertibility::NotFredholm: return "not-fredholm";
  }
  return "?";
}

Invertibility invertibility(const DefectReport& r) {
  if (!r.fredholm) return Invertibility::NotFredholm;
  return r.dim_ker == 0 && r.dim_coker == 0 ? Invertibility::Invertible : Invertibility::NotInvertible;
}

Invertibility invertibility(const SymbolPair& pr, const Exponent& p, const DefectOptions& opt) {
  return invertibility(defect_numbers(pr, p, opt));
}

}  // namespace thf
