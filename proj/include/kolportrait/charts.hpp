#ifndef KOLPORTRAIT_CHARTS_HPP
#define KOLPORTRAIT_CHARTS_HPP

#include "kolportrait/params.hpp"

#include <array>

namespace kolportrait {

enum class ChartId { U1, U2, V1, V2 };

const char* chart_name(ChartId c);

struct ChartPoint {
  ChartId chart;
  double u = 0, v = 0;
};

struct DiscPoint {
  double x = 0, y = 0;  // x^2 + y^2 <= 1; boundary is infinity
};

// Compactified fields in the local charts (degree d = 3; the V charts carry
// the identical expressions). Every monomial has a factor v, so both fields
// vanish identically on the line at infinity.
std::array<double, 2> field_u1(const ParameterPoint& p, double u, double v);
std::array<double, 2> field_u2(const ParameterPoint& p, double u, double v);

// Same fields with the common factor v removed; used near the chart origins
// and the infinity continuum, where the full field stalls integrators.
std::array<double, 2> reduced_field_u1(const ParameterPoint& p, double u, double v);
std::array<double, 2> reduced_field_u2(const ParameterPoint& p, double u, double v);

// Monomial coefficient tables of the two chart fields, as {coeff, deg_u, deg_v}
// triples. They exist so tests can assert v-degree >= 1 at coefficient level.
std::vector<std::array<double, 3>> field_u1_monomials(const ParameterPoint& p);
std::vector<std::array<double, 3>> field_u1_monomials_v(const ParameterPoint& p);
std::vector<std::array<double, 3>> field_u2_monomials(const ParameterPoint& p);
std::vector<std::array<double, 3>> field_u2_monomials_v(const ParameterPoint& p);

// Coordinate maps. The algebraic composite plane -> sphere -> disc is used
// directly; no 3-vectors are materialized.
DiscPoint plane_to_disc(double y, double z);
DiscPoint chart_to_disc(const ChartPoint& cp);
ChartPoint disc_to_chart(const DiscPoint& dp, ChartId chart);  // throws OutOfChart

// plane <-> chart transition (finite points only, v != 0).
ChartPoint plane_to_chart(double y, double z, ChartId chart);
std::array<double, 2> chart_to_plane(const ChartPoint& cp);

// U1 <-> U2 handoff on overlap: (u,v) -> (1/u, v/u).
ChartPoint chart_transition(const ChartPoint& cp);

}  // namespace kolportrait

#endif
