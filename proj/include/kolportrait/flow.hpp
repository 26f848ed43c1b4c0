#ifndef KOLPORTRAIT_FLOW_HPP
#define KOLPORTRAIT_FLOW_HPP

#include "kolportrait/charts.hpp"
#include "kolportrait/finite.hpp"

#include <functional>
#include <vector>

namespace kolportrait {

enum class OriginId { O1, O2, O1m, O2m };  // +y, +z, -y, -z directions at infinity

const char* origin_name(OriginId o);
double origin_angle(OriginId o);  // disc boundary angle

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1e9;  // step size is governed by the error controller
  double max_arc = 400.0;            // disc-metric arc budget per orbit
  double chart_switch_radius = 8.0;  // plane -> chart beyond this plane radius
  double chart_back_v = 0.4;         // chart -> plane when |v| grows past this
  double chart_handoff_u = 2.0;      // swap chart coordinates when |u| grows past this
  double seed_offset = 1e-6;         // offset along eigendirections
  double sing_radius = 1e-5;         // arrival ball at finite singular points
  double contact_v = 1e-7;           // |v| threshold for boundary contact
  double origin_ball = 1e-4;         // arrival ball at chart origins
  double closure_tol = 1e-6;
  long max_steps = 400000;
};

struct OrbitEnd {
  enum class Kind { FinitePoint, Origin, Contact, Budget, Closed } kind = Kind::Budget;
  PointId finite_id = PointId::P0;
  OriginId origin = OriginId::O1;
  double contact_angle = 0;  // disc angle of the continuum point reached
};

struct TraceResult {
  OrbitEnd end;
  std::vector<DiscPoint> path;  // seed first
  double arc = 0;
  bool closed_flag = false;
};

// Coordinate frames used while tracing. Chart frames carry (u,v) with free
// sign of v; the flow direction there is sign(v) * reduced field, which is the
// compactified field up to the positive rescaling |v|.
enum class Frame { Plane, ChartY, ChartZ };

struct FlowState {
  Frame frame = Frame::Plane;
  double a = 0, b = 0;  // (y,z) or (u,v)
};

DiscPoint state_to_disc(const FlowState& s);

// Trace one orbit of the compactified flow. time_dir = +1 follows the flow,
// -1 reverses it. The path is recorded in disc coordinates.
TraceResult trace_orbit(const ParameterPoint& p, FlowState seed, int time_dir,
                        const IntegratorConfig& cfg);

// Generic adaptive Dormand-Prince 5(4) step loop on a 2d field; drives both
// trace_orbit and the local sector probes. Returns false if the step budget
// was exhausted. The callback sees each accepted state and may stop the run.
using Rhs2 = std::function<std::array<double, 2>(double, double)>;
using StepWatch = std::function<bool(double, double, double)>;  // (x, y, arc) -> keep going?
bool integrate_dopri5(const Rhs2& f, double& x, double& y, double& arc, const IntegratorConfig& cfg,
                      const StepWatch& watch);

// Fate of a single seed for the local sector probe around a chart origin:
// integrate the direction field inside one chart only.
enum class Fate { Origin, Exit, ContactPlus, ContactMinus };

const char* fate_name(Fate f);

Fate chart_fate(const ParameterPoint& p, bool chart_y, double u0, double v0, int time_dir,
                double r0, const IntegratorConfig& cfg, bool* resolved = nullptr);

}  // namespace kolportrait

#endif
