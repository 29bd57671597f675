#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace thf {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double.
Rational exact(double x);
// Accepts "4/3", "1.16", "-2", "1.5e-1".
Rational parse_rational(const std::string& s);
double to_double(const Rational& r);
long long floor_int(const Rational& r);
bool is_integer(const Rational& r);
// Distance to the nearest integer, as a double.
double dist_to_int(const Rational& r);
std::string to_string(const Rational& r);

// Lebesgue exponent with its conjugate, kept exact.
struct Exponent {
  Rational p, q;
  double pd = 2.0, qd = 2.0;

  static Exponent from(const Rational& p);
  static Exponent parse(const std::string& s) { return from(parse_rational(s)); }
  Exponent conjugate() const { return from(q); }
};

}  // namespace thf
