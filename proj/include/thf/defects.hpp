#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thf/fredholm.hpp"
#include "thf/wiener_hopf.hpp"

namespace thf {

struct DefectMatrix {
  int rows = 0, cols = 0;
  Eigen::MatrixXcd A;
};

// A[i][j] = rho_{i-j} + rho_{i+j}, 0 <= i < n, 0 <= j < m
DefectMatrix defect_matrix(const RhoSeries& rho, int n, int m);

struct RankDecision {
  int rank = 0;
  int kernel_dim = 0;
  double tol_rel = 1e-8;
  double threshold = 0;
  double sigma_max = 0;
  double gap_ratio = 0;  // smallest kept over largest dropped singular value
  bool ill_conditioned = false;
  std::vector<double> singular_values;
};

RankDecision numerical_kernel_dim(const Eigen::MatrixXcd& A, double tol_rel = 1e-8);

enum class CaseTag { GZero, GCount, FMatrix, FCount };
const char* case_name(CaseTag t);

CaseTag kernel_case(int n, int m);
CaseTag cokernel_case(int n, int m);

struct DefectOptions {
  double tol_rel = 1e-8;
  double eps_boundary = 1e-9;
  RhoOptions rho;
};

struct DefectReport {
  ConditionReport conditions;
  bool fredholm = false;
  int n = 0, m = 0, index = 0;
  int dim_ker = 0, dim_coker = 0;
  CaseTag ker_case = CaseTag::GCount, coker_case = CaseTag::GCount;
  std::optional<NormalizedRep> c_rep, d_rep;
  std::optional<RhoSeries> rho;
  std::optional<DefectMatrix> matrix;
  std::optional<RankDecision> rank;
  double kernel_tolerance = 1e-8;
  // false when the rank decision cannot be trusted (small gap, or the
  // rho tail is comparable to the smallest kept singular value)
  bool confident = true;
  std::string note;
};

DefectReport defect_numbers(const SymbolPair& pr, const Exponent& p, const DefectOptions& opt = {});

enum class Invertibility { Invertible, NotInvertible, NotFredholm };
const char* invertibility_name(Invertibility v);
Invertibility invertibility(const SymbolPair& pr, const Exponent& p, const DefectOptions& opt = {});
Invertibility invertibility(const DefectReport& r);

}  // namespace thf
