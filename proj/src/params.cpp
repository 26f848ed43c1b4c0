#include "kolportrait/params.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace kolportrait {

Param Param::from_rational(const rational& r) {
  Param p;
  p.q = r;
  p.exact = true;
  p.value = r.convert_to<double>();
  return p;
}

Param Param::from_int(long long n) { return from_rational(rational(n)); }

Param Param::parse(const std::string& s) {
  if (s.empty()) throw KolError(ErrorCode::BadInput, "empty parameter value");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    try {
      boost::multiprecision::cpp_int num(s.substr(0, slash));
      boost::multiprecision::cpp_int den(s.substr(slash + 1));
      if (den == 0) throw KolError(ErrorCode::BadInput, "zero denominator in '" + s + "'");
      return from_rational(rational(num, den));
    } catch (const std::runtime_error&) {
      throw KolError(ErrorCode::BadInput, "cannot parse rational '" + s + "'");
    }
  }
  // integer literal?
  {
    char* end = nullptr;
    errno = 0;
    long long n = std::strtoll(s.c_str(), &end, 10);
    if (errno == 0 && end && *end == '\0') return from_int(n);
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (!end || *end != '\0') throw KolError(ErrorCode::BadInput, "cannot parse number '" + s + "'");
  return Param(v);
}

Param Param::negated() const {
  Param p = *this;
  p.value = -p.value;
  if (p.exact) p.q = -p.q;
  return p;
}

std::string Param::to_string() const {
  if (exact) {
    std::ostringstream os;
    os << q;
    return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

namespace {

int sgn_rational(const rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int sgn_tol(double v, double scale, double eps) {
  double bound = eps * std::max(scale, 1.0);
  if (v > bound) return 1;
  if (v < -bound) return -1;
  return 0;
}

int sgn_param(const Param& a, double eps) {
  if (a.exact) return sgn_rational(a.q);
  return sgn_tol(a.value, std::abs(a.value), eps);
}

}  // namespace

int ParameterPoint::sgn_b0() const { return sgn_param(b0, eps_param); }
int ParameterPoint::sgn_b1() const { return sgn_param(b1, eps_param); }
int ParameterPoint::sgn_b2() const { return sgn_param(b2, eps_param); }
int ParameterPoint::sgn_b3() const { return sgn_param(b3, eps_param); }
int ParameterPoint::sgn_c0() const { return sgn_param(c0, eps_param); }

int ParameterPoint::sgn_alpha() const {
  if (c0.exact && b0.exact) return sgn_rational(rational(c0.q - b0.q));
  return sgn_tol(c0.value - b0.value, std::abs(c0.value) + std::abs(b0.value), eps_param);
}

int ParameterPoint::sgn_conn_12() const {
  if (all_exact()) return sgn_rational(rational(b2.q * b3.q - b1.q * c0.q));
  double lhs = b2.value * b3.value, rhs = b1.value * c0.value;
  return sgn_tol(lhs - rhs, std::abs(lhs) + std::abs(rhs), eps_param);
}

int ParameterPoint::sgn_conn_13() const {
  if (all_exact()) return sgn_rational(rational(b2.q * b3.q - b1.q * b0.q));
  double lhs = b2.value * b3.value, rhs = b1.value * b0.value;
  return sgn_tol(lhs - rhs, std::abs(lhs) + std::abs(rhs), eps_param);
}

ParameterPoint SymmetryTransform::apply(const ParameterPoint& p) const {
  auto scaled = [](const Param& a, int s) { return s == 1 ? a : a.negated(); };
  ParameterPoint r = p;
  const int sy = flip_y, sz = flip_z, st = reverse_time;
  r.b0 = scaled(p.b0, st);
  r.b1 = scaled(p.b1, st * sy * sz);
  r.b2 = scaled(p.b2, st * sy);
  r.b3 = scaled(p.b3, st * sz);
  r.c0 = scaled(p.c0, st);
  return r;
}

namespace {

void check(ValidationReport& rep, bool ok, const char* name) {
  if (!ok) {
    rep.ok = false;
    rep.violations.push_back(name);
  }
}

void core_conditions(const ParameterPoint& p, ValidationReport& rep) {
  check(rep, p.sgn_b1() != 0, "b1 != 0");
  check(rep, p.sgn_alpha() != 0, "c0 - b0 != 0");
  check(rep, p.sgn_b0() >= 0, "b0 >= 0");
  check(rep, p.sgn_b2() >= 0, "b2 >= 0");
  check(rep, p.sgn_b3() >= 0, "b3 >= 0");
  check(rep, p.sgn_b3() != 0 || p.sgn_c0() != 0, "b3^2 + c0^2 != 0");
  check(rep, p.sgn_b2() != 0 || p.sgn_b0() != 0, "b2^2 + b0^2 != 0");
}

}  // namespace

ValidationReport validate_hypothesis(const ParameterPoint& p) {
  ValidationReport rep;
  core_conditions(p, rep);
  check(rep, !(p.sgn_b2() == 0 || p.sgn_b3() == 0) || p.sgn_b1() > 0, "b2*b3 = 0 => b1 > 0");
  check(rep, p.sgn_b0() != 0 || p.sgn_c0() > 0, "b0 = 0 => c0 > 0");
  return rep;
}

ValidationReport validate_classifiable(const ParameterPoint& p) {
  ValidationReport rep;
  core_conditions(p, rep);
  check(rep, p.sgn_b0() != 0 || p.sgn_c0() > 0, "b0 = 0 => c0 > 0");
  return rep;
}

std::pair<ParameterPoint, SymmetryTransform> normalize(const ParameterPoint& p) {
  // Conditions no sign change can repair.
  if (p.sgn_b1() == 0 || p.sgn_alpha() == 0 || (p.sgn_b3() == 0 && p.sgn_c0() == 0) ||
      (p.sgn_b2() == 0 && p.sgn_b0() == 0))
    throw KolError(ErrorCode::NotNormalizable,
                   "parameter point is outside the reduced family (degenerate singular set)");

  static const SymmetryTransform order[8] = {
      {1, 1, 1}, {-1, 1, 1}, {1, -1, 1}, {-1, -1, 1},
      {1, 1, -1}, {-1, 1, -1}, {1, -1, -1}, {-1, -1, -1},
  };
  for (const auto& t : order) {
    ParameterPoint img = t.apply(p);
    img.eps_param = p.eps_param;
    if (validate_hypothesis(img).ok) return {img, t};
  }
  throw KolError(ErrorCode::NotNormalizable, "no sign transform lands in the hypothesis region");
}

std::string CaseId::str() const {
  return std::to_string(major) + "." + std::to_string(minor);
}

CaseId determine_case(const ParameterPoint& p) {
  ValidationReport rep = validate_classifiable(p);
  if (!rep.ok)
    throw KolError(ErrorCode::UnclassifiableParameters,
                   "point violates the hypothesis region: " + rep.violations.front());

  CaseId id;
  id.b1_sign = p.sgn_b1();
  id.alpha_sign = p.sgn_alpha();
  const bool has_b3 = p.sgn_b3() != 0, has_b2 = p.sgn_b2() != 0;
  const int sc0 = p.sgn_c0(), sb0 = p.sgn_b0(), sa = p.sgn_alpha();

  if (has_b3 && has_b2) {
    id.major = 1;
    if (sb0 == 0) id.minor = 5;        // b0=0, c0>0
    else if (sc0 == 0) id.minor = 4;   // c0=0, b0>0
    else if (sc0 < 0) id.minor = 1;
    else id.minor = (sa < 0) ? 2 : 3;
  } else if (has_b3 && !has_b2) {
    id.major = 2;
    if (sc0 == 0) id.minor = 4;
    else if (sc0 < 0) id.minor = 1;
    else id.minor = (sa < 0) ? 2 : 3;
  } else if (!has_b3 && has_b2) {
    id.major = 3;
    if (sb0 == 0) id.minor = 4;
    else if (sc0 < 0) id.minor = 1;
    else id.minor = (sa < 0) ? 3 : 2;
  } else {
    id.major = 4;
    id.minor = (sc0 < 0) ? 1 : 2;
  }
  if (id.minor == 0)
    throw KolError(ErrorCode::UnclassifiableParameters, "no subcase row matches");
  return id;
}

std::string parameter_point_to_json(const ParameterPoint& p) {
  nlohmann::json j;
  auto put = [&j](const char* key, const Param& a) {
    if (a.exact && denominator(a.q) == 1) {
      j[key] = a.q.convert_to<long long>();
    } else if (a.exact) {
      j[key] = a.to_string();
    } else {
      j[key] = a.value;
    }
  };
  put("b0", p.b0);
  put("b1", p.b1);
  put("b2", p.b2);
  put("b3", p.b3);
  put("c0", p.c0);
  return j.dump();
}

ParameterPoint parameter_point_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto get = [&j](const char* key) -> Param {
    if (!j.contains(key)) throw KolError(ErrorCode::BadInput, std::string("missing key ") + key);
    const auto& v = j.at(key);
    if (v.is_string()) return Param::parse(v.get<std::string>());
    if (v.is_number_integer()) return Param::from_int(v.get<long long>());
    if (v.is_number_float()) return Param(v.get<double>());
    throw KolError(ErrorCode::BadInput, std::string("bad value for ") + key);
  };
  ParameterPoint p;
  p.b0 = get("b0");
  p.b1 = get("b1");
  p.b2 = get("b2");
  p.b3 = get("b3");
  p.c0 = get("c0");
  return p;
}

}  // namespace kolportrait
