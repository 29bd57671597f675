#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "thf/defects.hpp"
#include "thf/errors.hpp"
#include "thf/families.hpp"
#include "thf/fredholm.hpp"
#include "thf/io.hpp"
#include "thf/oracle.hpp"
#include "thf/wiener_hopf.hpp"

using namespace thf;

namespace {

enum Exit { kOk = 0, kNo = 1, kBoundary = 2, kInput = 3, kNumerical = 4 };

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotFredholm:
    case ErrorKind::NotFredholmOnSide: return kNo;
    case ErrorKind::BoundaryCase: return kBoundary;
    case ErrorKind::InputError:
    case ErrorKind::ConditionViolated:
    case ErrorKind::DomainError:
    case ErrorKind::EvalAtJump: return kInput;
    default: return kNumerical;
  }
}

struct Common {
  std::string input = "-";
  std::string out;
  std::string format = "json";
};

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::InputError, "cannot open " + path);
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InputError, std::string("invalid JSON: ") + e.what());
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::InputError, "cannot write " + c.out);
  f << text;
}

std::string failing_site(const ConditionReport& r) {
  for (auto& s : r.sites)
    if (s.verdict != Verdict::Pass) return std::string(side_name(s.side)) + ":" + s.point.str();
  return "";
}

int condition_exit(const ConditionReport& r) {
  if (r.boundary) return kBoundary;
  return r.fredholm ? kOk : kNo;
}

void add_reps(ReportDocument& doc, const SymbolPair& pr, const Exponent& p) {
  doc.normalized.push_back(summarize(normalize(pr.c, Side::C, p)));
  doc.normalized.push_back(summarize(normalize(pr.d, Side::D, p)));
}

int cmd_check(const InputDocument& in, ReportDocument& doc, bool with_index) {
  SymbolPair pr = validate_pair(in.a, in.b);
  ConditionReport r = fredholm_conditions(pr, in.p, in.options.eps_boundary);
  doc.conditions = summarize(r);
  if (r.fredholm && !r.boundary) {
    add_reps(doc, pr, in.p);
    if (with_index) doc.index = doc.normalized[1].n - doc.normalized[0].n;
  }
  return condition_exit(r);
}

int cmd_defects(const InputDocument& in, ReportDocument& doc) {
  SymbolPair pr = validate_pair(in.a, in.b);
  DefectReport r = defect_numbers(pr, in.p, in.options.defect_options());
  doc.conditions = summarize(r.conditions);
  if (!r.fredholm) return condition_exit(r.conditions);
  doc.normalized = {summarize(*r.c_rep), summarize(*r.d_rep)};
  doc.index = r.index;
  doc.defects = summarize(r);
  return r.confident ? kOk : kNumerical;
}

int cmd_factor(const InputDocument& in, ReportDocument& doc, int terms) {
  SymbolPair pr = validate_pair(in.a, in.b);
  ConditionReport cr = fredholm_conditions(pr, in.p, in.options.eps_boundary);
  doc.conditions = summarize(cr);
  if (!cr.fredholm || cr.boundary) return condition_exit(cr);
  add_reps(doc, pr, in.p);
  for (Side side : {Side::C, Side::D}) {
    const CanonicalSymbol& s = side == Side::C ? pr.c : pr.d;
    NormalizedRep rep = normalize(s, side, in.p);
    PlusFactor f = build_plus_factor(rep, std::max(terms, in.options.rho_start));
    FactorSummary fs;
    fs.side = side_name(side);
    fs.n = rep.n;
    fs.coeffs.assign(f.series.coeffs.begin(), f.series.coeffs.begin() + terms + 1);
    fs.reconstruction_error = reconstruction_error(s, rep, f);
    fs.series_error = series_error(f);
    doc.factors.push_back(fs);
  }
  return kOk;
}

int cmd_special(const InputDocument& in, ReportDocument& doc) {
  SymbolPair pr = validate_pair(in.a, in.b);
  FamilyTag tag = classify_family(pr);
  if (tag == FamilyTag::General) throw Error(ErrorKind::InputError, "the pair is not one of the special families");
  FamilyReport r = tag == FamilyTag::IdPlusHankel
                       ? hankel_identity_report(invert(pr.b), in.p, in.options.defect_options())
                       : family_fredholm(pr.a, tag, in.p, true, in.options.eps_boundary);
  doc.family = summarize(r);
  if (r.boundary) return kBoundary;
  if (!r.fredholm) return kNo;
  if (!r.confident || (r.general_checked && !r.general_agrees)) return kNumerical;
  return kOk;
}

int cmd_verify(const InputDocument& in, ReportDocument& doc) {
  SymbolPair pr = validate_pair(in.a, in.b);
  OracleSummary o;
  std::vector<std::string> notes;
  bool ok = true;
  auto fourier = [&](const CanonicalSymbol& s, double& dev) {
    try {
      dev = fourier_coeffs(s, 256).deviation;
    } catch (const Error& e) {
      dev = fourier_exact(s, 256).deviation;
      notes.push_back(e.what());
      ok = false;
    }
  };
  fourier(pr.a, o.fourier_deviation_a);
  fourier(pr.b, o.fourier_deviation_b);

  DefectReport r = defect_numbers(pr, in.p, in.options.defect_options());
  doc.conditions = summarize(r.conditions);
  if (r.fredholm) {
    doc.index = r.index;
    doc.defects = summarize(r);
    KernelBasis kb = kernel_residual_check(pr, in.p, r, in.options.kernel_n, in.options.kernel_tol, false);
    o.kernel_elements = static_cast<int>(kb.elements.size());
    o.kernel_rank = kb.rank;
    o.kernel_max_residual = kb.max_residual;
    o.kernel_consistency = kb.consistency;
    o.kernel_pass = kb.pass;
    if (!kb.pass) ok = false;
    if (!kb.note.empty()) notes.push_back(kb.note);
    NormalizedRep c = normalize(pr.c, Side::C, in.p), d = normalize(pr.d, Side::D, in.p);
    RhoFactors f = rho_factors(pr, c, d);
    RhoSeries rho = r.rho ? *r.rho : rho_coefficients(f, 8, in.options.defect_options().rho);
    try {
      RhoCheck rc = rho_crosscheck(rho, f);
      o.rho_deviation = rc.max_deviation;
      o.rho_tolerance = rc.tolerance;
    } catch (const Error& e) {
      notes.push_back(e.what());
      ok = false;
    }
  } else {
    notes.push_back("not Fredholm, kernel and rho checks skipped");
  }
  for (size_t i = 0; i < notes.size(); ++i) o.note += (i ? "; " : "") + notes[i];
  o.pass = ok;
  doc.oracle = o;
  if (!r.fredholm) return condition_exit(r.conditions);
  return ok ? kOk : kNumerical;
}

int cmd_sweep(const InputDocument& in, ReportDocument& doc, const std::string& from, const std::string& to,
              int steps) {
  if (steps < 1) throw Error(ErrorKind::InputError, "steps must be positive");
  Rational lo = parse_rational(from), hi = parse_rational(to);
  SymbolPair pr = validate_pair(in.a, in.b);
  std::vector<SweepRow> rows(steps + 1);

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TH_FREDHOLM_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) threads = static_cast<unsigned>(v);
  }
  threads = std::min<unsigned>(threads, rows.size());
  std::atomic<int> next{0};
  std::vector<std::string> errors(rows.size());
  auto work = [&] {
    for (int i = next++; i <= steps; i = next++) {
      Rational p = lo + (hi - lo) * i / steps;
      SweepRow& row = rows[i];
      row.p = to_string(p);
      try {
        Exponent e = Exponent::from(p);
        ConditionReport r = fredholm_conditions(pr, e, in.options.eps_boundary);
        row.fredholm = r.fredholm;
        row.boundary = r.boundary;
        row.failing_site = failing_site(r);
        if (r.fredholm && !r.boundary) {
          row.n = normalize(pr.c, Side::C, e).n;
          row.m = normalize(pr.d, Side::D, e).n;
          row.index = *row.m - *row.n;
        }
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (!e.empty()) throw Error(ErrorKind::InputError, e);
  doc.sweep = rows;
  return kOk;
}

std::string sweep_csv(const ReportDocument& doc) {
  std::ostringstream o;
  o << "p,fredholm,boundary,n,m,index,failing_site\n";
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (auto& r : doc.sweep)
    o << r.p << ',' << r.fredholm << ',' << r.boundary << ',' << opt(r.n) << ',' << opt(r.m) << ','
      << opt(r.index) << ',' << r.failing_site << '\n';
  return o.str();
}

std::string curve_output(const InputDocument& in, const std::string& side_arg, int samples, const std::string& format,
                         int& code) {
  SymbolPair pr = validate_pair(in.a, in.b);
  Side side = side_arg == "d" ? Side::D : Side::C;
  CurveResolution res = in.options.curve;
  if (samples > 0) res.image_samples = samples;
  CurveData cd = build_hash_curve(side == Side::C ? pr.c : pr.d, side, in.p, res);
  std::optional<int> wind;
  std::string err;
  try {
    wind = winding_from_curve(cd);
  } catch (const Error& e) {
    err = e.what();
    code = exit_for(e.kind());
  }
  if (format == "csv") {
    std::ostringstream o;
    o << std::setprecision(17) << "i,re,im,segment,point\n";
    for (size_t s = 0; s < cd.segments.size(); ++s) {
      auto& seg = cd.segments[s];
      for (size_t i = seg.first; i <= seg.last && i < cd.points.size(); ++i)
        o << i << ',' << cd.points[i].real() << ',' << cd.points[i].imag() << ',' << seg.kind << ','
          << seg.point.str() << '\n';
    }
    if (!err.empty()) std::cerr << err << '\n';
    return o.str();
  }
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = "curve";
  j["side"] = side_name(side);
  j["p"] = to_string(in.p.p);
  j["winding_raw"] = cd.winding_raw;
  if (wind) j["winding"] = *wind;
  else j["error"] = err;
  json segs = json::array();
  for (auto& s : cd.segments)
    segs.push_back({{"kind", s.kind}, {"point", s.point.str()}, {"first", s.first}, {"last", s.last}});
  j["segments"] = segs;
  json pts = json::array();
  for (auto& z : cd.points) pts.push_back({z.real(), z.imag()});
  j["points"] = pts;
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fredholm properties and defect numbers of T(a) + H(b) on H^p"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool csv) {
    sub->add_option("input", common.input, "input JSON document, - for stdin");
    sub->add_option("-o,--out", common.out, "write output to a file");
    if (csv) sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* check = app.add_subcommand("check", "Fredholm conditions");
  auto* index = app.add_subcommand("index", "Fredholm conditions and index");
  auto* defects = app.add_subcommand("defects", "kernel and cokernel dimensions");
  auto* factor = app.add_subcommand("factor", "plus factors of c and d");
  int terms = 64;
  factor->add_option("--terms", terms, "series coefficients to emit")->check(CLI::Range(1, 1 << 20));
  auto* curve = app.add_subcommand("curve", "closed curve whose winding gives n or m");
  std::string side = "c";
  int samples = 0;
  curve->add_option("--side", side, "c or d")->check(CLI::IsMember({"c", "d"}));
  curve->add_option("--samples", samples, "image samples")->check(CLI::Range(8, 1 << 22));
  auto* special = app.add_subcommand("special", "closed form for the special families");
  auto* verify = app.add_subcommand("verify", "independent numerical cross-checks");
  auto* sweep = app.add_subcommand("sweep", "verdicts over a range of p");
  std::string p_from, p_to;
  int steps = 10;
  sweep->add_option("--p-from", p_from, "first p, number or fraction")->required();
  sweep->add_option("--p-to", p_to, "last p")->required();
  sweep->add_option("--steps", steps, "number of intervals")->check(CLI::Range(1, 100000));

  for (auto* s : {check, index, defects, factor, special, verify}) add_common(s, false);
  add_common(curve, true);
  add_common(sweep, true);
  curve->get_option("--format")->default_str("csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }
  if (curve->parsed() && curve->count("--format") == 0) common.format = "csv";

  ReportDocument doc;
  for (auto* s : app.get_subcommands()) doc.command = s->get_name();
  int code = kOk;
  try {
    InputDocument in = input_from_json(read_json(common.input));
    if (curve->parsed()) {
      emit(common, curve_output(in, side, samples, common.format, code));
      return code;
    }
    if (check->parsed()) code = cmd_check(in, doc, false);
    else if (index->parsed()) code = cmd_check(in, doc, true);
    else if (defects->parsed()) code = cmd_defects(in, doc);
    else if (factor->parsed()) code = cmd_factor(in, doc, terms);
    else if (special->parsed()) code = cmd_special(in, doc);
    else if (verify->parsed()) code = cmd_verify(in, doc);
    else if (sweep->parsed()) {
      code = cmd_sweep(in, doc, p_from, p_to, steps);
      if (common.format == "csv") {
        emit(common, sweep_csv(doc));
        return code;
      }
    }
  } catch (const Error& e) {
    doc.error_kind = error_kind_name(e.kind());
    doc.error_message = e.what();
    code = exit_for(e.kind());
    std::cerr << e.what() << '\n';
  } catch (const std::exception& e) {
    doc.error_kind = "InputError";
    doc.error_message = e.what();
    code = kInput;
    std::cerr << e.what() << '\n';
  }
  try {
    emit(common, report_to_json(doc).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kInput;
  }
  return code;
}
