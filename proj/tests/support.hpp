#ifndef KOLPORTRAIT_TESTS_SUPPORT_HPP
#define KOLPORTRAIT_TESTS_SUPPORT_HPP

#include "kolportrait/global.hpp"

#include <vector>

namespace kolportrait::testsup {

inline ParameterPoint pt(const rational& b0, const rational& b1, const rational& b2,
                         const rational& b3, const rational& c0) {
  ParameterPoint p;
  p.b0 = Param::from_rational(b0);
  p.b1 = Param::from_rational(b1);
  p.b2 = Param::from_rational(b2);
  p.b3 = Param::from_rational(b3);
  p.c0 = Param::from_rational(c0);
  return p;
}

// Constraint search: scan a small candidate set in a fixed order and return
// the first parameter point whose subcase row matches. Covers all 32 rows.
inline ParameterPoint search_representative(const CaseId& want) {
  const rational zero(0);
  const rational b2v = (want.major == 1 || want.major == 3) ? rational(1) : zero;
  const rational b3v = (want.major == 1 || want.major == 2) ? rational(1) : zero;
  const rational b1v = rational(want.b1_sign);
  static const rational candidates[] = {rational(0), rational(1), rational(2), rational(-2),
                                        rational(-1), rational(1, 2), rational(3)};
  for (const auto& b0v : candidates) {
    for (const auto& c0v : candidates) {
      ParameterPoint p = pt(b0v, b1v, b2v, b3v, c0v);
      if (!validate_classifiable(p).ok) continue;
      // keep the nilpotent-origin analyses away from the b0 + c0 = 0 stratum
      if (p.b0.q + p.c0.q == 0) continue;
      try {
        const CaseId got = determine_case(p);
        if (got.major != want.major || got.minor != want.minor || got.b1_sign != want.b1_sign)
          continue;
        if (want.major == 4 && want.minor == 2 && got.alpha_sign != want.alpha_sign) continue;
        return p;
      } catch (const KolError&) {
        continue;
      }
    }
  }
  throw std::runtime_error("no representative found for subcase " + want.str());
}

}  // namespace kolportrait::testsup

#endif
