#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thf/defects.hpp"
#include "thf/families.hpp"
#include "thf/fredholm.hpp"
#include "thf/oracle.hpp"
#include "thf/symbol.hpp"

namespace thf {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "thf";
inline constexpr const char* kToolVersion = "0.1.0";

json symbol_to_json(const CanonicalSymbol& s);
// throws InputError on schema violations
CanonicalSymbol symbol_from_json(const json& j);

struct Options {
  int rho_start = 4096;
  int rho_cap = 65536;
  double rho_tol = 1e-9;
  double rank_tol = 1e-8;
  double eps_boundary = 1e-9;
  int kernel_n = 256;
  double kernel_tol = 1e-6;
  CurveResolution curve;

  DefectOptions defect_options() const;
};

struct InputDocument {
  CanonicalSymbol a, b;
  std::string p_text;  // as given, used for exact parsing
  Exponent p;
  Options options;
};

// p may be a JSON number or a string such as "4/3"
InputDocument input_from_json(const json& j);
json input_to_json(const InputDocument& d);

struct SiteSummary {
  std::string side, point, value, offset, verdict;
  double margin = 0;
};

struct ConditionSummary {
  std::string p, q;
  bool fredholm = false, boundary = false;
  std::vector<SiteSummary> sites;
};

struct GammaSummary {
  std::string point;
  cplx gamma;
};

struct RepSummary {
  std::string side;
  int n = 0;
  cplx gamma_plus, gamma_minus;
  std::string re_gamma_plus, re_gamma_minus;
  std::vector<GammaSummary> gammas;
  cplx smooth_scale;
};

struct DefectSummary {
  int n = 0, m = 0, index = 0, dim_ker = 0, dim_coker = 0;
  std::string ker_case, coker_case, invertibility;
  bool confident = true;
  std::vector<double> singular_values;
  double gap_ratio = 0;
  double rho_tail_bound = 0;
  std::string note;
};

struct FamilySummary {
  std::string family;
  int kappa = 0, dim_ker = 0, dim_coker = 0, index = 0;
  bool fredholm = false, boundary = false, confident = true;
  std::string violated;
  bool general_checked = false, general_agrees = false;
};

struct FactorSummary {
  std::string side;
  int n = 0;
  std::vector<cplx> coeffs;  // plus factor, t^0 ... t^K
  double reconstruction_error = 0;
  double series_error = 0;
};

struct OracleSummary {
  double fourier_deviation_a = 0, fourier_deviation_b = 0;
  int kernel_elements = 0, kernel_rank = 0;
  double kernel_max_residual = 0;
  double kernel_consistency = 0;
  bool kernel_pass = false;
  double rho_deviation = 0, rho_tolerance = 0;
  bool pass = false;
  std::string note;
};

struct SweepRow {
  std::string p;
  bool fredholm = false, boundary = false;
  std::optional<int> n, m, index;
  std::string failing_site;
};

struct ReportDocument {
  std::string tool = kToolName, version = kToolVersion;
  std::string command;
  std::optional<ConditionSummary> conditions;
  std::vector<RepSummary> normalized;
  std::optional<int> index;
  std::optional<DefectSummary> defects;
  std::optional<FamilySummary> family;
  std::vector<FactorSummary> factors;
  std::optional<OracleSummary> oracle;
  std::vector<SweepRow> sweep;
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;
};

json report_to_json(const ReportDocument& r);
ReportDocument report_from_json(const json& j);

ConditionSummary summarize(const ConditionReport& r);
RepSummary summarize(const NormalizedRep& r);
DefectSummary summarize(const DefectReport& r);
FamilySummary summarize(const FamilyReport& r);

}  // namespace thf
