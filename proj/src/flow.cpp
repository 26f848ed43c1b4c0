#include "kolportrait/flow.hpp"

#include <algorithm>
#include <cmath>

namespace kolportrait {

const char* origin_name(OriginId o) {
  switch (o) {
    case OriginId::O1: return "O1";
    case OriginId::O2: return "O2";
    case OriginId::O1m: return "O1'";
    case OriginId::O2m: return "O2'";
  }
  return "?";
}

double origin_angle(OriginId o) {
  switch (o) {
    case OriginId::O1: return 0.0;
    case OriginId::O2: return M_PI_2;
    case OriginId::O1m: return M_PI;
    case OriginId::O2m: return -M_PI_2;
  }
  return 0.0;
}

const char* fate_name(Fate f) {
  switch (f) {
    case Fate::Origin: return "origin";
    case Fate::Exit: return "exit";
    case Fate::ContactPlus: return "contact+";
    case Fate::ContactMinus: return "contact-";
  }
  return "?";
}

DiscPoint state_to_disc(const FlowState& s) {
  switch (s.frame) {
    case Frame::Plane: return plane_to_disc(s.a, s.b);
    case Frame::ChartY: {
      const double n = std::sqrt(1.0 + s.a * s.a + s.b * s.b);
      const double sv = s.b >= 0 ? 1.0 : -1.0;
      return {sv / n, sv * s.a / n};
    }
    case Frame::ChartZ: {
      const double n = std::sqrt(1.0 + s.a * s.a + s.b * s.b);
      const double sv = s.b >= 0 ? 1.0 : -1.0;
      return {sv * s.a / n, sv / n};
    }
  }
  return {};
}

/* ---- Dormand-Prince 5(4) ---- */

bool integrate_dopri5(const Rhs2& f, double& x, double& y, double& arc, const IntegratorConfig& cfg,
                      const StepWatch& watch) {
  static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
  static const double a21 = 1. / 5;
  static const double a31 = 3. / 40, a32 = 9. / 40;
  static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
  static const double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561,
                      a54 = -212. / 729;
  static const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247, a64 = 49. / 176,
                      a65 = -5103. / 18656;
  static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784,
                      b6 = 11. / 84;
  static const double e1 = 35. / 384 - 5179. / 57600, e3 = 500. / 1113 - 7571. / 16695,
                      e4 = 125. / 192 - 393. / 640, e5 = -2187. / 6784 + 92097. / 339200,
                      e6 = 11. / 84 - 187. / 2100, e7 = -1. / 40;
  (void)c2; (void)c3; (void)c4; (void)c5;  // autonomous system

  auto k1 = f(x, y);
  double speed = std::hypot(k1[0], k1[1]);
  double h = std::min(cfg.max_step, 0.01 / std::max(speed, 1e-12));

  for (long step = 0; step < cfg.max_steps; step++) {
    if (speed < 1e-300) return false;  // stationary
    h = std::min(h, cfg.max_step);

    const auto k2 = f(x + h * a21 * k1[0], y + h * a21 * k1[1]);
    const auto k3 = f(x + h * (a31 * k1[0] + a32 * k2[0]), y + h * (a31 * k1[1] + a32 * k2[1]));
    const auto k4 = f(x + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                      y + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1]));
    const auto k5 =
        f(x + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
          y + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]));
    const auto k6 =
        f(x + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
          y + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]));

    const double xn = x + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]);
    const double yn = y + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1]);
    const auto k7 = f(xn, yn);

    const double ex =
        h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] + e7 * k7[0]);
    const double ey =
        h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] + e7 * k7[1]);

    const double sx = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x), std::abs(xn));
    const double sy2 = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y), std::abs(yn));
    const double err = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ey / sy2) * (ey / sy2)));

    if (err <= 1.0) {
      arc += std::hypot(xn - x, yn - y);
      x = xn;
      y = yn;
      k1 = k7;
      speed = std::hypot(k1[0], k1[1]);
      if (!watch(x, y, arc)) return true;
      h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      if (h < 1e-15) return false;
    }
  }
  return false;
}

/* ---- full orbit tracing across frames ---- */

namespace {

struct SingTarget {
  PointId id;
  double y, z;
};

// The chart flow direction is sign(v) * reduced field. The sign is frozen per
// chart session: an orbit never legitimately crosses v = 0 (that is the
// continuum of singular points), and a per-evaluation sign would make the
// right-hand side discontinuous right where orbits terminate.
Rhs2 frame_rhs(const ParameterPoint& p, Frame fr, int dir, double v_side) {
  const double d = dir;
  const double s = v_side;
  switch (fr) {
    case Frame::Plane:
      return [&p, d](double y, double z) {
        auto v = vector_field(p, y, z);
        return std::array<double, 2>{d * v[0], d * v[1]};
      };
    case Frame::ChartY:
      return [&p, d, s](double u, double v) {
        auto r = reduced_field_u1(p, u, v);
        return std::array<double, 2>{d * s * r[0], d * s * r[1]};
      };
    case Frame::ChartZ:
      return [&p, d, s](double u, double v) {
        auto r = reduced_field_u2(p, u, v);
        return std::array<double, 2>{d * s * r[0], d * s * r[1]};
      };
  }
  return {};
}

}  // namespace

TraceResult trace_orbit(const ParameterPoint& p, FlowState seed, int time_dir,
                        const IntegratorConfig& cfg_in) {
  IntegratorConfig cfg = cfg_in;

  std::vector<SingTarget> targets;
  for (auto& [id, loc] : finite_singularities(p)) {
    bool dup = false;
    for (auto& t : targets)
      if (std::hypot(t.y - loc[0], t.z - loc[1]) < 4 * cfg_in.sing_radius) dup = true;
    if (!dup) targets.push_back({id, loc[0], loc[1]});
    cfg.chart_switch_radius =
        std::max(cfg.chart_switch_radius, 2.5 * std::hypot(loc[0], loc[1]));
  }
  const double back_v = std::min(cfg.chart_back_v, 2.0 / cfg.chart_switch_radius);

  TraceResult res;
  res.path.push_back(state_to_disc(seed));
  const DiscPoint start = res.path.front();

  FlowState st = seed;
  double disc_arc = 0;
  DiscPoint prev_disc = start;
  double prev_a = seed.a, prev_b = seed.b;

  // finite-point arrival confirmation state
  int pending = -1;
  double pending_arc = 0;
  bool origin_pending = false;
  // chart-origin creep detection: near a semi-hyperbolic origin the explicit
  // pair is stiffness-limited (fast contracting mode, ultra-slow center
  // drift), so convergence onto the origin is recognized by stalled progress
  long creep_steps = 0;
  double creep_arc0 = 0, creep_r0 = 0;

  bool done = false;
  long remaining_steps = cfg.max_steps;
  while (!done && remaining_steps > 0) {
    const Frame fr = st.frame;
    const double v_side = st.b >= 0 ? 1.0 : -1.0;  // meaningful in chart frames
    const Rhs2 f = frame_rhs(p, fr, time_dir, v_side);
    bool frame_switch = false;

    double local_arc = 0;
    auto watch = [&](double a, double b, double arc_now) -> bool {
      remaining_steps--;
      st.a = a;
      st.b = b;
      local_arc = arc_now;
      DiscPoint dpt = state_to_disc(st);
      disc_arc += std::hypot(dpt.x - prev_disc.x, dpt.y - prev_disc.y);
      prev_disc = dpt;
      res.path.push_back(dpt);

      if (disc_arc > cfg.max_arc || remaining_steps <= 0) {
        res.end.kind = OrbitEnd::Kind::Budget;
        done = true;
        return false;
      }

      // closed-orbit detection (never expected for this family)
      if (disc_arc > 0.5) {
        const double dclose = std::hypot(dpt.x - start.x, dpt.y - start.y);
        if (dclose < cfg.closure_tol) {
          res.closed_flag = true;
          res.end.kind = OrbitEnd::Kind::Closed;
          done = true;
          return false;
        }
      }

      if (fr == Frame::Plane) {
        // finite singular point arrival (enter ball moving inward, then confirm)
        for (size_t i = 0; i < targets.size(); i++) {
          const double dx = a - targets[i].y, dy = b - targets[i].z;
          const double dist = std::hypot(dx, dy);
          if (pending == (int)i) {
            if (dist < 0.34 * cfg.sing_radius || (arc_now - pending_arc > 120 * cfg.sing_radius &&
                                                  dist < 3 * cfg.sing_radius)) {
              res.end.kind = OrbitEnd::Kind::FinitePoint;
              res.end.finite_id = targets[i].id;
              done = true;
              return false;
            }
            if (dist > 3 * cfg.sing_radius) pending = -1;
          } else if (dist < cfg.sing_radius) {
            auto fv = f(a, b);
            if (fv[0] * dx + fv[1] * dy <= 0) {
              pending = (int)i;
              pending_arc = arc_now;
            }
          }
        }
        if (a * a + b * b > cfg.chart_switch_radius * cfg.chart_switch_radius) {
          frame_switch = true;
          return false;
        }
      } else {
        // boundary contact / chart-origin arrival
        auto origin_here = [&] {
          return (fr == Frame::ChartY) ? (v_side > 0 ? OriginId::O1 : OriginId::O1m)
                                       : (v_side > 0 ? OriginId::O2 : OriginId::O2m);
        };
        const bool crossed = (st.b >= 0 ? 1.0 : -1.0) != v_side;
        if (std::abs(b) <= cfg.contact_v || crossed) {
          double u0 = a;
          if (crossed && b != prev_b) u0 = prev_a + (a - prev_a) * (0 - prev_b) / (b - prev_b);
          if (std::hypot(u0, b) <= cfg.origin_ball) {
            res.end.kind = OrbitEnd::Kind::Origin;
            res.end.origin = origin_here();
          } else {
            res.end.kind = OrbitEnd::Kind::Contact;
            res.end.contact_angle = (fr == Frame::ChartY) ? std::atan2(v_side * u0, v_side / 1.0)
                                                          : std::atan2(v_side, v_side * u0);
          }
          done = true;
          return false;
        }
        // stiffness-limited creep onto the origin along the center manifold
        const double r_creep = std::hypot(a, b);
        if (r_creep < 3e-3) {
          if (creep_steps == 0) {
            creep_arc0 = disc_arc;
            creep_r0 = r_creep;
          }
          if (++creep_steps >= 4000) {
            if (disc_arc - creep_arc0 < 1e-5 && r_creep < creep_r0) {
              res.end.kind = OrbitEnd::Kind::Origin;
              res.end.origin = origin_here();
              done = true;
              return false;
            }
            creep_steps = 0;
          }
        } else {
          creep_steps = 0;
        }

        // tangential arrivals at the chart origin never push |v| below the
        // contact threshold quickly; confirm them through a shrinking ball
        const double r_org = std::hypot(a, b);
        if (origin_pending) {
          if (r_org < 0.34 * cfg.origin_ball) {
            res.end.kind = OrbitEnd::Kind::Origin;
            res.end.origin = origin_here();
            done = true;
            return false;
          }
          if (r_org > 3 * cfg.origin_ball) origin_pending = false;
        } else if (r_org < cfg.origin_ball) {
          auto fv = f(a, b);
          if (fv[0] * a + fv[1] * b <= 0) origin_pending = true;
        }
        if (std::abs(b) > back_v || std::abs(a) > cfg.chart_handoff_u) {
          frame_switch = true;
          return false;
        }
      }
      prev_a = a;
      prev_b = b;
      return true;
    };

    double a = st.a, b = st.b, arc = 0;
    bool ok = integrate_dopri5(f, a, b, arc, cfg, watch);
    st.a = a;
    st.b = b;
    if (done) break;
    if (!ok && !frame_switch) {
      res.end.kind = OrbitEnd::Kind::Budget;
      break;
    }

    if (frame_switch) {
      if (fr == Frame::Plane) {
        if (std::abs(st.a) >= std::abs(st.b))
          st = {Frame::ChartY, st.b / st.a, 1.0 / st.a};
        else
          st = {Frame::ChartZ, st.a / st.b, 1.0 / st.b};
      } else if (std::abs(st.b) > back_v) {
        auto pl = (fr == Frame::ChartY)
                      ? std::array<double, 2>{1.0 / st.b, st.a / st.b}
                      : std::array<double, 2>{st.a / st.b, 1.0 / st.b};
        st = {Frame::Plane, pl[0], pl[1]};
      } else {
        // |u| grew past the handoff threshold: swap chart coordinates
        st = {fr == Frame::ChartY ? Frame::ChartZ : Frame::ChartY, 1.0 / st.a, st.b / st.a};
      }
      pending = -1;
      origin_pending = false;
      creep_steps = 0;
    }
  }

  if (!done && res.end.kind == OrbitEnd::Kind::Budget) {
    // fell out of the loop on the step budget
  }

  // terminal representative point, so polylines visually reach their node
  switch (res.end.kind) {
    case OrbitEnd::Kind::FinitePoint:
      for (auto& t : targets)
        if (t.id == res.end.finite_id) res.path.push_back(plane_to_disc(t.y, t.z));
      break;
    case OrbitEnd::Kind::Origin: {
      const double ang = origin_angle(res.end.origin);
      res.path.push_back({std::cos(ang), std::sin(ang)});
      break;
    }
    case OrbitEnd::Kind::Contact:
      res.path.push_back({std::cos(res.end.contact_angle), std::sin(res.end.contact_angle)});
      break;
    default: break;
  }
  res.arc = disc_arc;
  return res;
}

/* ---- local sector probe ---- */

Fate chart_fate(const ParameterPoint& p, bool chart_y, double u0, double v0, int time_dir,
                double r0, const IntegratorConfig& cfg_in, bool* resolved_out) {
  IntegratorConfig cfg = cfg_in;
  const double s = v0 >= 0 ? 1.0 : -1.0;
  const double d = time_dir;
  Rhs2 f = [&p, chart_y, s, d](double u, double v) {
    auto r = chart_y ? reduced_field_u1(p, u, v) : reduced_field_u2(p, u, v);
    return std::array<double, 2>{d * s * r[0], d * s * r[1]};
  };

  const double r_in = 0.004 * r0, r_out = 6.0 * r0, v_eps = 1e-5 * r0;
  Fate fate = Fate::Exit;
  bool resolved = false;
  double pu = u0, pv = v0;
  auto watch = [&](double u, double v, double arc) -> bool {
    (void)arc;
    const double r = std::hypot(u, v);
    if (r <= r_in) {
      fate = Fate::Origin;
      resolved = true;
      return false;
    }
    if (r >= r_out) {
      fate = Fate::Exit;
      resolved = true;
      return false;
    }
    if (std::abs(v) <= v_eps || (v >= 0 ? 1.0 : -1.0) != s) {
      // the probe field is smooth across v=0, so a step may overshoot the
      // crossing; take u at the interpolated crossing
      double uc = u;
      if ((v >= 0 ? 1.0 : -1.0) != s && v != pv) uc = pu + (u - pu) * (0 - pv) / (v - pv);
      fate = uc > 0 ? Fate::ContactPlus : Fate::ContactMinus;
      resolved = true;
      return false;
    }
    pu = u;
    pv = v;
    return true;
  };

  double u = u0, v = v0, arc = 0;
  integrate_dopri5(f, u, v, arc, cfg, watch);
  if (!resolved) fate = Fate::Exit;  // caller may shrink r0 and retry
  if (resolved_out) *resolved_out = resolved;
  return fate;
}

}  // namespace kolportrait
