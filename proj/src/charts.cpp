#include "kolportrait/charts.hpp"

#include <cmath>

namespace kolportrait {

const char* chart_name(ChartId c) {
  switch (c) {
    case ChartId::U1: return "U1";
    case ChartId::U2: return "U2";
    case ChartId::V1: return "V1";
    case ChartId::V2: return "V2";
  }
  return "?";
}

std::array<double, 2> field_u1(const ParameterPoint& p, double u, double v) {
  const double b0 = p.b0.value, b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value,
               c0 = p.c0.value;
  const double du = (c0 - b0) * u * v * v;
  const double dv = -b3 * u * v * v - b0 * v * v * v - b1 * u * v - b2 * v * v;
  return {du, dv};
}

// Note the last term: -b3*v^2, not +b3*v^2. The corrected sign is forced by
// the transition identity with the U1 field and by the y<->z, b0<->c0,
// b2<->b3 symmetry of the family; both are asserted in the tests.
std::array<double, 2> field_u2(const ParameterPoint& p, double u, double v) {
  const double b0 = p.b0.value, b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value,
               c0 = p.c0.value;
  const double du = (b0 - c0) * u * v * v;
  const double dv = -b2 * u * v * v - c0 * v * v * v - b1 * u * v - b3 * v * v;
  return {du, dv};
}

std::array<double, 2> reduced_field_u1(const ParameterPoint& p, double u, double v) {
  const double b0 = p.b0.value, b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value,
               c0 = p.c0.value;
  return {(c0 - b0) * u * v, -b3 * u * v - b0 * v * v - b1 * u - b2 * v};
}

std::array<double, 2> reduced_field_u2(const ParameterPoint& p, double u, double v) {
  const double b0 = p.b0.value, b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value,
               c0 = p.c0.value;
  return {(b0 - c0) * u * v, -b2 * u * v - c0 * v * v - b1 * u - b3 * v};
}

std::vector<std::array<double, 3>> field_u1_monomials(const ParameterPoint& p) {
  return {{p.c0.value - p.b0.value, 1, 2}};
}
std::vector<std::array<double, 3>> field_u1_monomials_v(const ParameterPoint& p) {
  return {{-p.b3.value, 1, 2}, {-p.b0.value, 0, 3}, {-p.b1.value, 1, 1}, {-p.b2.value, 0, 2}};
}
std::vector<std::array<double, 3>> field_u2_monomials(const ParameterPoint& p) {
  return {{p.b0.value - p.c0.value, 1, 2}};
}
std::vector<std::array<double, 3>> field_u2_monomials_v(const ParameterPoint& p) {
  return {{-p.b2.value, 1, 2}, {-p.c0.value, 0, 3}, {-p.b1.value, 1, 1}, {-p.b3.value, 0, 2}};
}

DiscPoint plane_to_disc(double y, double z) {
  const double s = std::sqrt(1.0 + y * y + z * z);
  return {y / s, z / s};
}

DiscPoint chart_to_disc(const ChartPoint& cp) {
  const double u = cp.u, v = cp.v;
  const double n = std::sqrt(1.0 + u * u + v * v);
  switch (cp.chart) {
    case ChartId::U1: return {1.0 / n, u / n};
    case ChartId::V1: return {-1.0 / n, -u / n};
    case ChartId::U2: return {u / n, 1.0 / n};
    case ChartId::V2: return {-u / n, -1.0 / n};
  }
  return {};
}

ChartPoint disc_to_chart(const DiscPoint& dp, ChartId chart) {
  const double r2 = dp.x * dp.x + dp.y * dp.y;
  if (r2 > 1.0 + 1e-12) throw KolError(ErrorCode::OutOfChart, "point outside the closed disc");
  const double x3 = std::sqrt(std::max(0.0, 1.0 - r2));
  double w1 = dp.x, w2 = dp.y;
  switch (chart) {
    case ChartId::U1:
      if (w1 <= 0) throw KolError(ErrorCode::OutOfChart, "U1 covers x > 0");
      return {ChartId::U1, w2 / w1, x3 / w1};
    case ChartId::V1:
      if (w1 >= 0) throw KolError(ErrorCode::OutOfChart, "V1 covers x < 0");
      return {ChartId::V1, w2 / w1, x3 / w1};
    case ChartId::U2:
      if (w2 <= 0) throw KolError(ErrorCode::OutOfChart, "U2 covers y > 0");
      return {ChartId::U2, w1 / w2, x3 / w2};
    case ChartId::V2:
      if (w2 >= 0) throw KolError(ErrorCode::OutOfChart, "V2 covers y < 0");
      return {ChartId::V2, w1 / w2, x3 / w2};
  }
  throw KolError(ErrorCode::OutOfChart, "unknown chart");
}

ChartPoint plane_to_chart(double y, double z, ChartId chart) {
  switch (chart) {
    case ChartId::U1:
    case ChartId::V1:
      if (y == 0) throw KolError(ErrorCode::OutOfChart, "y = 0 line is outside U1/V1");
      return {chart, z / y, 1.0 / y};
    case ChartId::U2:
    case ChartId::V2:
      if (z == 0) throw KolError(ErrorCode::OutOfChart, "z = 0 line is outside U2/V2");
      return {chart, y / z, 1.0 / z};
  }
  throw KolError(ErrorCode::OutOfChart, "unknown chart");
}

std::array<double, 2> chart_to_plane(const ChartPoint& cp) {
  if (cp.v == 0) throw KolError(ErrorCode::OutOfChart, "v = 0 is the line at infinity");
  switch (cp.chart) {
    case ChartId::U1:
    case ChartId::V1: return {1.0 / cp.v, cp.u / cp.v};
    case ChartId::U2:
    case ChartId::V2: return {cp.u / cp.v, 1.0 / cp.v};
  }
  throw KolError(ErrorCode::OutOfChart, "unknown chart");
}

ChartPoint chart_transition(const ChartPoint& cp) {
  if (cp.u == 0) throw KolError(ErrorCode::OutOfChart, "transition undefined at u = 0");
  ChartId other;
  switch (cp.chart) {
    case ChartId::U1: other = ChartId::U2; break;
    case ChartId::U2: other = ChartId::U1; break;
    case ChartId::V1: other = ChartId::V2; break;
    case ChartId::V2: other = ChartId::V1; break;
    default: throw KolError(ErrorCode::OutOfChart, "unknown chart");
  }
  return {other, 1.0 / cp.u, cp.v / cp.u};
}

}  // namespace kolportrait
