#include "thf/io.hpp"

#include <set>

#include "thf/errors.hpp"

namespace thf {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InputError, msg); }

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cfrom(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(what + " must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void only_keys(const json& j, const std::set<std::string>& keys, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object");
  for (auto& [k, v] : j.items())
    if (!keys.count(k)) bad("unknown key '" + k + "' in " + what);
}

template <class T>
T get_or(const json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("bad value for '") + key + "'");
  }
}

int get_int(const json& j, const char* key, int def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::vector<json> cvec(const std::vector<cplx>& v) {
  std::vector<json> out;
  for (auto& z : v) out.push_back(cjson(z));
  return out;
}

std::vector<cplx> cvec_from(const json& j) {
  std::vector<cplx> out;
  for (auto& x : j) out.push_back(cfrom(x, "coefficient"));
  return out;
}

}  // namespace

json symbol_to_json(const CanonicalSymbol& s) {
  json j;
  j["kappa"] = s.kappa;
  j["scale"] = cjson(s.scale);
  json logs = json::array();
  for (auto& [k, v] : s.log.coeffs) logs.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}});
  j["log_smooth"] = logs;
  json jumps = json::array();
  for (auto& jf : s.jumps)
    jumps.push_back({{"theta_num", jf.point.num}, {"theta_den", jf.point.den}, {"beta", cjson(jf.beta)}});
  j["jumps"] = jumps;
  return j;
}

CanonicalSymbol symbol_from_json(const json& j) {
  only_keys(j, {"kappa", "scale", "log_smooth", "jumps"}, "symbol");
  CanonicalSymbol s;
  s.kappa = get_int(j, "kappa", 0);
  if (j.contains("scale")) s.scale = cfrom(j["scale"], "scale");
  if (s.scale == cplx{}) bad("scale must be nonzero");
  if (j.contains("log_smooth")) {
    if (!j["log_smooth"].is_array()) bad("log_smooth must be an array");
    for (auto& t : j["log_smooth"]) {
      only_keys(t, {"k", "re", "im"}, "log_smooth entry");
      if (!t.contains("k")) bad("log_smooth entry needs k");
      s.log.add(get_int(t, "k", 0), {get_or(t, "re", 0.0), get_or(t, "im", 0.0)});
    }
  }
  if (j.contains("jumps")) {
    if (!j["jumps"].is_array()) bad("jumps must be an array");
    for (auto& t : j["jumps"]) {
      only_keys(t, {"theta_num", "theta_den", "beta"}, "jump");
      if (!t.contains("theta_num") || !t.contains("theta_den") || !t.contains("beta"))
        bad("jump needs theta_num, theta_den and beta");
      if (!t["theta_num"].is_number_integer() || !t["theta_den"].is_number_integer())
        bad("theta_num and theta_den must be integers");
      long long num = t["theta_num"].get<long long>(), den = t["theta_den"].get<long long>();
      if (den <= 0) bad("theta_den must be positive");
      s.jumps.push_back({UnitPoint(num, den), cfrom(t["beta"], "beta")});
    }
  }
  s.log.prune();
  s.normalize_jumps();
  return s;
}

DefectOptions Options::defect_options() const {
  DefectOptions o;
  o.tol_rel = rank_tol;
  o.eps_boundary = eps_boundary;
  o.rho.n_start = rho_start;
  o.rho.n_cap = rho_cap;
  o.rho.tol = rho_tol;
  return o;
}

InputDocument input_from_json(const json& j) {
  only_keys(j, {"a", "b", "p", "options"}, "input");
  if (!j.contains("a") || !j.contains("b") || !j.contains("p")) bad("input needs a, b and p");
  InputDocument d;
  d.a = symbol_from_json(j["a"]);
  d.b = symbol_from_json(j["b"]);
  const json& p = j["p"];
  if (p.is_string()) d.p_text = p.get<std::string>();
  else if (p.is_number()) d.p_text = p.dump();  // shortest round trip form, so 1.16 stays 29/25
  else bad("p must be a number or a fraction string");
  try {
    d.p = Exponent::parse(d.p_text);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    bad("cannot parse p: " + d.p_text);
  }
  if (j.contains("options")) {
    const json& o = j["options"];
    only_keys(o, {"truncation", "tolerances", "kernel_n", "curve"}, "options");
    Options& op = d.options;
    if (o.contains("truncation")) {
      const json& t = o["truncation"];
      only_keys(t, {"start", "cap", "tol"}, "truncation");
      op.rho_start = get_int(t, "start", op.rho_start);
      op.rho_cap = get_int(t, "cap", op.rho_cap);
      op.rho_tol = get_or(t, "tol", op.rho_tol);
      if (op.rho_start < 16 || op.rho_cap < op.rho_start) bad("truncation needs 16 <= start <= cap");
    }
    if (o.contains("tolerances")) {
      const json& t = o["tolerances"];
      only_keys(t, {"rank", "boundary", "kernel"}, "tolerances");
      op.rank_tol = get_or(t, "rank", op.rank_tol);
      op.eps_boundary = get_or(t, "boundary", op.eps_boundary);
      op.kernel_tol = get_or(t, "kernel", op.kernel_tol);
    }
    op.kernel_n = get_int(o, "kernel_n", op.kernel_n);
    if (op.kernel_n < 8) bad("kernel_n must be at least 8");
    if (o.contains("curve")) {
      const json& c = o["curve"];
      only_keys(c, {"image_samples", "arc_samples", "max_chord", "max_turn", "max_depth"}, "curve");
      op.curve.image_samples = get_int(c, "image_samples", op.curve.image_samples);
      op.curve.arc_samples = get_int(c, "arc_samples", op.curve.arc_samples);
      op.curve.max_chord = get_or(c, "max_chord", op.curve.max_chord);
      op.curve.max_turn = get_or(c, "max_turn", op.curve.max_turn);
      op.curve.max_depth = get_int(c, "max_depth", op.curve.max_depth);
    }
  }
  return d;
}

json input_to_json(const InputDocument& d) {
  const Options& o = d.options;
  json j;
  j["a"] = symbol_to_json(d.a);
  j["b"] = symbol_to_json(d.b);
  j["p"] = d.p_text;
  j["options"] = {
      {"truncation", {{"start", o.rho_start}, {"cap", o.rho_cap}, {"tol", o.rho_tol}}},
      {"tolerances", {{"rank", o.rank_tol}, {"boundary", o.eps_boundary}, {"kernel", o.kernel_tol}}},
      {"kernel_n", o.kernel_n},
      {"curve",
       {{"image_samples", o.curve.image_samples},
        {"arc_samples", o.curve.arc_samples},
        {"max_chord", o.curve.max_chord},
        {"max_turn", o.curve.max_turn},
        {"max_depth", o.curve.max_depth}}}};
  return j;
}

ConditionSummary summarize(const ConditionReport& r) {
  ConditionSummary s;
  s.p = to_string(r.exponent.p);
  s.q = to_string(r.exponent.q);
  s.fredholm = r.fredholm;
  s.boundary = r.boundary;
  for (auto& v : r.sites)
    s.sites.push_back({side_name(v.side), v.point.str(), to_string(v.value), to_string(v.offset),
                       verdict_name(v.verdict), v.margin});
  return s;
}

RepSummary summarize(const NormalizedRep& r) {
  RepSummary s;
  s.side = side_name(r.side);
  s.n = r.n;
  s.gamma_plus = r.gamma_plus;
  s.gamma_minus = r.gamma_minus;
  s.re_gamma_plus = to_string(r.re_gamma_plus);
  s.re_gamma_minus = to_string(r.re_gamma_minus);
  for (auto& g : r.gammas) s.gammas.push_back({g.point.str(), g.beta});
  s.smooth_scale = r.smooth_scale;
  return s;
}

DefectSummary summarize(const DefectReport& r) {
  DefectSummary s;
  s.n = r.n;
  s.m = r.m;
  s.index = r.index;
  s.dim_ker = r.dim_ker;
  s.dim_coker = r.dim_coker;
  s.ker_case = case_name(r.ker_case);
  s.coker_case = case_name(r.coker_case);
  s.invertibility = invertibility_name(invertibility(r));
  s.confident = r.confident;
  if (r.rank) {
    s.singular_values = r.rank->singular_values;
    s.gap_ratio = r.rank->gap_ratio;
  }
  if (r.rho) s.rho_tail_bound = r.rho->tail_bound;
  s.note = r.note;
  return s;
}

FamilySummary summarize(const FamilyReport& r) {
  FamilySummary s;
  s.family = family_name(r.tag);
  s.kappa = r.kappa;
  s.dim_ker = r.dim_ker;
  s.dim_coker = r.dim_coker;
  s.index = r.index;
  s.fredholm = r.fredholm;
  s.boundary = r.boundary;
  s.confident = r.confident;
  s.violated = r.violated;
  s.general_checked = r.general_checked;
  s.general_agrees = r.general_agrees;
  return s;
}

json report_to_json(const ReportDocument& r) {
  json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["command"] = r.command;
  if (r.conditions) {
    auto& c = *r.conditions;
    json sites = json::array();
    for (auto& s : c.sites)
      sites.push_back({{"side", s.side},
                       {"point", s.point},
                       {"value", s.value},
                       {"offset", s.offset},
                       {"verdict", s.verdict},
                       {"margin", s.margin}});
    j["conditions"] = {
        {"p", c.p}, {"q", c.q}, {"fredholm", c.fredholm}, {"boundary", c.boundary}, {"sites", sites}};
  }
  if (!r.normalized.empty()) {
    json reps = json::array();
    for (auto& n : r.normalized) {
      json gs = json::array();
      for (auto& g : n.gammas) gs.push_back({{"point", g.point}, {"gamma", cjson(g.gamma)}});
      reps.push_back({{"side", n.side},
                      {"n", n.n},
                      {"gamma_plus", cjson(n.gamma_plus)},
                      {"gamma_minus", cjson(n.gamma_minus)},
                      {"re_gamma_plus", n.re_gamma_plus},
                      {"re_gamma_minus", n.re_gamma_minus},
                      {"gammas", gs},
                      {"smooth_scale", cjson(n.smooth_scale)}});
    }
    j["normalized"] = reps;
  }
  put_opt(j, "index", r.index);
  if (r.defects) {
    auto& d = *r.defects;
    j["defects"] = {{"n", d.n},
                    {"m", d.m},
                    {"index", d.index},
                    {"dimKer", d.dim_ker},
                    {"dimCoker", d.dim_coker},
                    {"ker_case", d.ker_case},
                    {"coker_case", d.coker_case},
                    {"invertibility", d.invertibility},
                    {"confident", d.confident},
                    {"singular_values", d.singular_values},
                    {"gap_ratio", d.gap_ratio},
                    {"rho_tail_bound", d.rho_tail_bound},
                    {"note", d.note}};
  }
  if (r.family) {
    auto& f = *r.family;
    j["family"] = {{"family", f.family},
                   {"kappa", f.kappa},
                   {"dimKer", f.dim_ker},
                   {"dimCoker", f.dim_coker},
                   {"index", f.index},
                   {"fredholm", f.fredholm},
                   {"boundary", f.boundary},
                   {"confident", f.confident},
                   {"violated", f.violated},
                   {"general_checked", f.general_checked},
                   {"general_agrees", f.general_agrees}};
  }
  if (!r.factors.empty()) {
    json fs = json::array();
    for (auto& f : r.factors)
      fs.push_back({{"side", f.side},
                    {"n", f.n},
                    {"coeffs", cvec(f.coeffs)},
                    {"reconstruction_error", f.reconstruction_error},
                    {"series_error", f.series_error}});
    j["factors"] = fs;
  }
  if (r.oracle) {
    auto& o = *r.oracle;
    j["oracle"] = {{"fourier_deviation_a", o.fourier_deviation_a},
                   {"fourier_deviation_b", o.fourier_deviation_b},
                   {"kernel_elements", o.kernel_elements},
                   {"kernel_rank", o.kernel_rank},
                   {"kernel_max_residual", o.kernel_max_residual},
                   {"kernel_consistency", o.kernel_consistency},
                   {"kernel_pass", o.kernel_pass},
                   {"rho_deviation", o.rho_deviation},
                   {"rho_tolerance", o.rho_tolerance},
                   {"pass", o.pass},
                   {"note", o.note}};
  }
  if (!r.sweep.empty()) {
    json rows = json::array();
    for (auto& s : r.sweep) {
      json row = {{"p", s.p}, {"fredholm", s.fredholm}, {"boundary", s.boundary}};
      put_opt(row, "n", s.n);
      put_opt(row, "m", s.m);
      put_opt(row, "index", s.index);
      row["failing_site"] = s.failing_site;
      rows.push_back(row);
    }
    j["sweep"] = rows;
  }
  if (r.error_kind) j["error"] = {{"kind", *r.error_kind}, {"message", r.error_message.value_or("")}};
  return j;
}

ReportDocument report_from_json(const json& j) {
  ReportDocument r;
  try {
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    if (j.contains("conditions")) {
      auto& c = j["conditions"];
      ConditionSummary s;
      s.p = c.at("p").get<std::string>();
      s.q = c.at("q").get<std::string>();
      s.fredholm = c.at("fredholm").get<bool>();
      s.boundary = c.at("boundary").get<bool>();
      for (auto& x : c.at("sites"))
        s.sites.push_back({x.at("side").get<std::string>(), x.at("point").get<std::string>(),
                           x.at("value").get<std::string>(), x.at("offset").get<std::string>(),
                           x.at("verdict").get<std::string>(), x.at("margin").get<double>()});
      r.conditions = s;
    }
    if (j.contains("normalized"))
      for (auto& x : j["normalized"]) {
        RepSummary s;
        s.side = x.at("side").get<std::string>();
        s.n = x.at("n").get<int>();
        s.gamma_plus = cfrom(x.at("gamma_plus"), "gamma_plus");
        s.gamma_minus = cfrom(x.at("gamma_minus"), "gamma_minus");
        s.re_gamma_plus = x.at("re_gamma_plus").get<std::string>();
        s.re_gamma_minus = x.at("re_gamma_minus").get<std::string>();
        for (auto& g : x.at("gammas"))
          s.gammas.push_back({g.at("point").get<std::string>(), cfrom(g.at("gamma"), "gamma")});
        s.smooth_scale = cfrom(x.at("smooth_scale"), "smooth_scale");
        r.normalized.push_back(s);
      }
    r.index = get_opt<int>(j, "index");
    if (j.contains("defects")) {
      auto& x = j["defects"];
      DefectSummary d;
      d.n = x.at("n").get<int>();
      d.m = x.at("m").get<int>();
      d.index = x.at("index").get<int>();
      d.dim_ker = x.at("dimKer").get<int>();
      d.dim_coker = x.at("dimCoker").get<int>();
      d.ker_case = x.at("ker_case").get<std::string>();
      d.coker_case = x.at("coker_case").get<std::string>();
      d.invertibility = x.at("invertibility").get<std::string>();
      d.confident = x.at("confident").get<bool>();
      d.singular_values = x.at("singular_values").get<std::vector<double>>();
      d.gap_ratio = x.at("gap_ratio").get<double>();
      d.rho_tail_bound = x.at("rho_tail_bound").get<double>();
      d.note = x.at("note").get<std::string>();
      r.defects = d;
    }
    if (j.contains("family")) {
      auto& x = j["family"];
      FamilySummary f;
      f.family = x.at("family").get<std::string>();
      f.kappa = x.at("kappa").get<int>();
      f.dim_ker = x.at("dimKer").get<int>();
      f.dim_coker = x.at("dimCoker").get<int>();
      f.index = x.at("index").get<int>();
      f.fredholm = x.at("fredholm").get<bool>();
      f.boundary = x.at("boundary").get<bool>();
      f.confident = x.at("confident").get<bool>();
      f.violated = x.at("violated").get<std::string>();
      f.general_checked = x.at("general_checked").get<bool>();
      f.general_agrees = x.at("general_agrees").get<bool>();
      r.family = f;
    }
    if (j.contains("factors"))
      for (auto& x : j["factors"]) {
        FactorSummary f;
        f.side = x.at("side").get<std::string>();
        f.n = x.at("n").get<int>();
        f.coeffs = cvec_from(x.at("coeffs"));
        f.reconstruction_error = x.at("reconstruction_error").get<double>();
        f.series_error = x.at("series_error").get<double>();
        r.factors.push_back(f);
      }
    if (j.contains("oracle")) {
      auto& x = j["oracle"];
      OracleSummary o;
      o.fourier_deviation_a = x.at("fourier_deviation_a").get<double>();
      o.fourier_deviation_b = x.at("fourier_deviation_b").get<double>();
      o.kernel_elements = x.at("kernel_elements").get<int>();
      o.kernel_rank = x.at("kernel_rank").get<int>();
      o.kernel_max_residual = x.at("kernel_max_residual").get<double>();
      o.kernel_consistency = x.at("kernel_consistency").get<double>();
      o.kernel_pass = x.at("kernel_pass").get<bool>();
      o.rho_deviation = x.at("rho_deviation").get<double>();
      o.rho_tolerance = x.at("rho_tolerance").get<double>();
      o.pass = x.at("pass").get<bool>();
      o.note = x.at("note").get<std::string>();
      r.oracle = o;
    }
    if (j.contains("sweep"))
      for (auto& x : j["sweep"]) {
        SweepRow s;
        s.p = x.at("p").get<std::string>();
        s.fredholm = x.at("fredholm").get<bool>();
        s.boundary = x.at("boundary").get<bool>();
        s.n = get_opt<int>(x, "n");
        s.m = get_opt<int>(x, "m");
        s.index = get_opt<int>(x, "index");
        s.failing_site = x.at("failing_site").get<std::string>();
        r.sweep.push_back(s);
      }
    if (j.contains("error")) {
      r.error_kind = j["error"].at("kind").get<std::string>();
      r.error_message = j["error"].at("message").get<std::string>();
    }
  } catch (const json::exception& e) {
    bad(std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace thf
