#pragma once

#include "thf/symbol.hpp"

namespace fx {

using thf::CanonicalSymbol;
using thf::UnitPoint;

inline const UnitPoint kOne = UnitPoint::one();
inline const UnitPoint kMinusOne = UnitPoint::minus_one();
inline const UnitPoint kI{1, 4};
inline const UnitPoint kMinusI{3, 4};

inline CanonicalSymbol u(UnitPoint tau, thf::cplx beta) { return CanonicalSymbol::jump(tau, beta); }
inline CanonicalSymbol t_pow(int k, thf::cplx v = 1.0) { return CanonicalSymbol::monomial(k, v); }
inline CanonicalSymbol constant(thf::cplx v) { return CanonicalSymbol::constant(v); }

// the piecewise function with values e^{pi i/4 + ix/2}, e^{pi i/2 + ix/2}, e^{3 pi i/4 + ix/2}
inline CanonicalSymbol three_piece() {
  return t_pow(1) * u(kOne, -0.25) * u(kI, -0.125) * u(kMinusI, -0.125);
}

}  // namespace fx
