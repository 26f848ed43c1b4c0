#ifndef KOLPORTRAIT_PARAMS_HPP
#define KOLPORTRAIT_PARAMS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolportrait {

using rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  NotNormalizable,
  UnclassifiableParameters,
  TableMismatch,
  SectorMismatch,
  DegenerateDirection,
  OutOfChart,
  MalformedSkeleton,
  BadInput,
};

struct KolError : std::runtime_error {
  ErrorCode code;
  KolError(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// One model coefficient. Values parsed from integers or "p/q" strings keep an
// exact rational alongside the double, so sign tests on table strata can be
// decided exactly. Plain floating-point inputs go through the tolerance path.
struct Param {
  double value = 0.0;
  bool exact = false;
  rational q;

  Param() = default;
  Param(double v) : value(v), exact(false) {}
  static Param from_rational(const rational& r);
  static Param from_int(long long n);

  // Accepts "3", "-4/7", "2.5e-1". Integers and fractions are exact.
  static Param parse(const std::string& s);

  Param negated() const;
  std::string to_string() const;  // "p/q" or decimal
};

struct ParameterPoint {
  Param b0, b1, b2, b3, c0;
  double eps_param = 1e-12;

  bool all_exact() const { return b0.exact && b1.exact && b2.exact && b3.exact && c0.exact; }

  // Sign of a single coefficient (tolerance-aware for float inputs).
  int sgn_b0() const;
  int sgn_b1() const;
  int sgn_b2() const;
  int sgn_b3() const;
  int sgn_c0() const;
  // sign(c0 - b0)
  int sgn_alpha() const;
  // sign(b2*b3 - b1*c0), the case-1.2 connection stratum
  int sgn_conn_12() const;
  // sign(b2*b3 - b1*b0), the case-1.3 connection stratum
  int sgn_conn_13() const;
};

// Signs of the (y,z,t) reflections; each component is +1 or -1.
// Parameter action: (b0,b1,b2,b3,c0) -> (st*b0, st*sy*sz*b1, st*sy*b2, st*sz*b3, st*c0).
struct SymmetryTransform {
  int flip_y = 1;
  int flip_z = 1;
  int reverse_time = 1;

  bool is_identity() const { return flip_y == 1 && flip_z == 1 && reverse_time == 1; }
  ParameterPoint apply(const ParameterPoint& p) const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Full hypothesis region including the two symmetry refinements
// (b2*b3 = 0 => b1 > 0 and b0 = 0 => c0 > 0).
ValidationReport validate_hypothesis(const ParameterPoint& p);

// Weaker region on which the classification tables are total: the seven core
// conditions plus b0 = 0 => c0 > 0. The b1-sign refinement is deliberately not
// required here; the global table lists both signs of b1 for every case.
ValidationReport validate_classifiable(const ParameterPoint& p);

// Searches the 8 sign transforms in the fixed order (identity, flip_y, flip_z,
// flip_y*flip_z, then the same four with reverse_time) for the first image in
// the full hypothesis region. Throws NotNormalizable when no transform works.
std::pair<ParameterPoint, SymmetryTransform> normalize(const ParameterPoint& p);

struct CaseId {
  int major = 0;           // 1..4
  int minor = 0;           // subcase digit, e.g. 2 in "1.2"
  int b1_sign = 0;         // +1 / -1
  int alpha_sign = 0;      // sign(c0 - b0); meaningful for case 4.2 rows
  std::string str() const; // "1.2"
};

CaseId determine_case(const ParameterPoint& p);

// JSON encoding: {"b0":2,"b1":"1/3",...}; numbers or "p/q" strings.
std::string parameter_point_to_json(const ParameterPoint& p);
ParameterPoint parameter_point_from_json(const std::string& json_text);

}  // namespace kolportrait

#endif
