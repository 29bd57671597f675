#include "thf/rational.hpp"
#include "thf/errors.hpp"

#include <cctype>
#include <cmath>

namespace thf {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InputError: return "InputError";
    case ErrorKind::EvalAtJump: return "EvalAtJump";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotFredholm: return "NotFredholm";
    case ErrorKind::NotFredholmOnSide: return "NotFredholmOnSide";
    case ErrorKind::BoundaryCase: return "BoundaryCase";
    case ErrorKind::CurveThroughOrigin: return "CurveThroughOrigin";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorKind::MethodDisagreement: return "MethodDisagreement";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
  }
  return "Error";
}

using boost::multiprecision::cpp_int;

Rational exact(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InputError, "non-finite number");
  if (x == 0.0) return Rational(0);
  int e = 0;
  double m = std::frexp(x, &e);
  // m * 2^53 is an integer for every double
  auto mi = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mi);
  if (e > 0) r *= Rational(cpp_int(1) << e);
  else if (e < 0) r /= Rational(cpp_int(1) << (-e));
  return r;
}

namespace {

Rational parse_decimal(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  cpp_int mant = 0;
  long long scale = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mant = mant * 10 + (ch - '0');
      if (dot) --scale;
      digits = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw Error(ErrorKind::InputError, "cannot parse number '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    long long ex = 0;
    bool edig = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      ex = ex * 10 + (s[i] - '0');
      edig = true;
      if (ex > 4000) throw Error(ErrorKind::InputError, "exponent out of range in '" + s + "'");
    }
    if (!edig) throw Error(ErrorKind::InputError, "cannot parse number '" + s + "'");
    scale += eneg ? -ex : ex;
  }
  if (i != s.size()) throw Error(ErrorKind::InputError, "trailing characters in '" + s + "'");
  Rational r(mant);
  cpp_int ten = 1;
  for (long long k = 0; k < std::llabs(scale); ++k) ten *= 10;
  if (scale > 0) r *= Rational(ten);
  else if (scale < 0) r /= Rational(ten);
  return neg ? Rational(-r) : r;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  size_t b = s.find_last_not_of(" \t\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string s = trim(raw);
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  Rational num = parse_decimal(trim(s.substr(0, slash)));
  Rational den = parse_decimal(trim(s.substr(slash + 1)));
  if (den == 0) throw Error(ErrorKind::InputError, "zero denominator in '" + s + "'");
  return num / den;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

long long floor_int(const Rational& r) {
  cpp_int n = numerator(r), d = denominator(r);
  cpp_int q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return static_cast<long long>(q);
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

double dist_to_int(const Rational& r) {
  Rational f = r - Rational(floor_int(r));
  Rational g = Rational(1) - f;
  return to_double(f < g ? f : g);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Exponent Exponent::from(const Rational& p) {
  if (p <= 1) throw Error(ErrorKind::InputError, "exponent p must exceed 1, got " + to_string(p));
  Exponent e;
  e.p = p;
  e.q = p / (p - 1);
  e.pd = to_double(e.p);
  e.qd = to_double(e.q);
  return e;
}

}  // namespace thf
