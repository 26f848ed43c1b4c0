#include "kolportrait/infinity.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace kolportrait {

namespace {
const char* kNames[] = {"L1_1", "L1_2", "L1_3", "L1_4", "L1_5", "L1_6", "L1_7", "L1_8",
                        "L2_1", "L2_2", "L2_3", "L2_4", "L2_5", "L2_6", "L2_7", "L2_8",
                        "L2_9", "L2_10"};
}

const char* label_name(OriginLabel l) { return kNames[static_cast<int>(l)]; }

OriginLabel label_from_name(const std::string& s) {
  for (int i = 0; i < 18; i++)
    if (s == kNames[i]) return static_cast<OriginLabel>(i);
  throw KolError(ErrorCode::BadInput, "unknown origin label " + s);
}

LabelFamily label_family(OriginLabel l) {
  switch (l) {
    case OriginLabel::L1_1: case OriginLabel::L1_2:
    case OriginLabel::L1_3: case OriginLabel::L1_4:
    case OriginLabel::L2_1: case OriginLabel::L2_2:
    case OriginLabel::L2_3: case OriginLabel::L2_4:
      return LabelFamily::SaddleNodeSemiHyperbolic;
    case OriginLabel::L1_5: case OriginLabel::L1_6:
    case OriginLabel::L2_9: case OriginLabel::L2_10:
      return LabelFamily::NilpotentSaddle;
    default:
      return LabelFamily::NilpotentHyperbolicElliptic;
  }
}

int label_equivalence_class(OriginLabel l) {
  switch (l) {
    case OriginLabel::L1_1: case OriginLabel::L1_2:
    case OriginLabel::L1_3: case OriginLabel::L1_4:
    case OriginLabel::L2_1: case OriginLabel::L2_2:
    case OriginLabel::L2_3: case OriginLabel::L2_4:
      return 1;
    case OriginLabel::L1_5: case OriginLabel::L1_6:
    case OriginLabel::L2_5: case OriginLabel::L2_6:
    case OriginLabel::L2_7: case OriginLabel::L2_8:
      return 2;
    default:
      return 3;
  }
}

TransversalBehavior classify_infinity_line(const ParameterPoint& p, double u0, ChartId chart) {
  (void)chart;  // the eigenvalue -b1*u0 and the quadrant rule are the same in U1 and U2
  if (u0 == 0.0)
    throw KolError(ErrorCode::DegenerateDirection, "u0 = 0 is the chart origin, handled separately");
  TransversalBehavior t;
  t.quadrants = u0 > 0 ? TransversalBehavior::Quadrants::Q1Q3 : TransversalBehavior::Quadrants::Q2Q4;
  const double eig = -p.b1.value * u0;
  t.direction = eig < 0 ? TransversalBehavior::Direction::ArrivesFromInterior
                        : TransversalBehavior::Direction::LeavesToInterior;
  return t;
}

OriginLabel classify_origin_u1(const ParameterPoint& p) {
  const int sb1 = p.sgn_b1(), sa = p.sgn_alpha();
  if (sb1 == 0 || sa == 0)
    throw KolError(ErrorCode::UnclassifiableParameters, "origin of U1 needs b1 != 0 and c0 != b0");
  if (p.sgn_b2() != 0) {  // semi-hyperbolic saddle-node
    if (sb1 > 0) return sa > 0 ? OriginLabel::L1_1 : OriginLabel::L1_2;
    return sa > 0 ? OriginLabel::L1_3 : OriginLabel::L1_4;
  }
  // nilpotent (b2 = 0 forces b0 > 0 in the hypothesis region)
  if (sb1 > 0) return sa > 0 ? OriginLabel::L1_5 : OriginLabel::L1_7;
  return sa > 0 ? OriginLabel::L1_6 : OriginLabel::L1_8;
}

OriginLabel classify_origin_u2(const ParameterPoint& p) {
  const int sb1 = p.sgn_b1(), sbeta = -p.sgn_alpha(), sc0 = p.sgn_c0();
  if (sb1 == 0 || sbeta == 0)
    throw KolError(ErrorCode::UnclassifiableParameters, "origin of U2 needs b1 != 0 and c0 != b0");
  if (p.sgn_b3() != 0) {  // semi-hyperbolic saddle-node
    if (sb1 > 0) return sbeta > 0 ? OriginLabel::L2_1 : OriginLabel::L2_2;
    return sbeta > 0 ? OriginLabel::L2_3 : OriginLabel::L2_4;
  }
  // nilpotent (b3 = 0 forces c0 != 0); row conditions keyed on sign(b0-c0), sign(c0)
  if (sb1 > 0) {
    if (sbeta < 0 && sc0 > 0) return OriginLabel::L2_5;
    if (sbeta > 0 && sc0 < 0) return OriginLabel::L2_6;
    if (sbeta > 0 && sc0 > 0) return OriginLabel::L2_9;
  } else {
    if (sbeta < 0 && sc0 > 0) return OriginLabel::L2_7;
    if (sbeta > 0 && sc0 < 0) return OriginLabel::L2_8;
    if (sbeta > 0 && sc0 > 0) return OriginLabel::L2_10;
  }
  throw KolError(ErrorCode::UnclassifiableParameters,
                 "no row of the O2 condition table matches (b0-c0 < 0 with c0 < 0 cannot occur)");
}

/* ---- expected sector patterns ---- */

namespace {

RunSpec run(Fate a, Fate w, bool opt = false) { return {{a, w}, opt}; }

constexpr Fate E = Fate::Exit;
constexpr Fate O = Fate::Origin;
constexpr Fate Cp = Fate::ContactPlus;
constexpr Fate Cm = Fate::ContactMinus;

}  // namespace

SectorPattern expected_pattern(OriginLabel l) {
  using P = SectorPattern;
  switch (l) {
    // semi-hyperbolic saddle-nodes
    case OriginLabel::L1_1: case OriginLabel::L2_1:
      return P{{run(E, Cp), run(E, E), run(Cm, E)}, {run(Cm, E), run(O, E), run(O, Cp)}};
    case OriginLabel::L1_2: case OriginLabel::L2_2:
      return P{{run(E, Cp), run(E, O), run(Cm, O)}, {run(Cm, E), run(E, E), run(E, Cp)}};
    case OriginLabel::L1_3: case OriginLabel::L2_3:
      return P{{run(Cp, E), run(E, E), run(E, Cm)}, {run(O, Cm), run(O, E), run(Cp, E)}};
    case OriginLabel::L1_4: case OriginLabel::L2_4:
      return P{{run(Cp, O), run(E, O), run(E, Cm)}, {run(E, Cm), run(E, E), run(Cp, E)}};
    // nilpotent saddles (thin horn sectors along the second invariant branch)
    case OriginLabel::L1_5: case OriginLabel::L2_9:
      return P{{run(E, Cp), run(E, E, true), run(Cm, E)}, {run(Cm, E), run(E, E, true), run(E, Cp)}};
    case OriginLabel::L1_6: case OriginLabel::L2_10:
      return P{{run(Cp, E), run(E, E, true), run(E, Cm)}, {run(E, Cm), run(E, E, true), run(Cp, E)}};
    // nilpotent elliptic + hyperbolic
    case OriginLabel::L1_7: case OriginLabel::L2_5:
      return P{{run(E, Cp), run(E, O, true), run(Cm, O)}, {run(Cm, O), run(E, O, true), run(E, Cp)}};
    case OriginLabel::L1_8: case OriginLabel::L2_7:
      return P{{run(Cp, O), run(E, O, true), run(E, Cm)}, {run(E, Cm), run(E, O, true), run(Cp, O)}};
    case OriginLabel::L2_6:
      return P{{run(O, Cp), run(O, E, true), run(Cm, E)}, {run(Cm, E), run(O, E, true), run(O, Cp)}};
    case OriginLabel::L2_8:
      return P{{run(Cp, E), run(O, E, true), run(O, Cm)}, {run(O, Cm), run(O, E, true), run(Cp, E)}};
  }
  throw KolError(ErrorCode::BadInput, "no pattern");
}

/* ---- verification ---- */

namespace {

std::vector<std::pair<FatePair, int>> merge_runs(const std::vector<FatePair>& fates, int min_run) {
  std::vector<std::pair<FatePair, int>> runs;
  for (const auto& f : fates) {
    if (!runs.empty() && runs.back().first == f)
      runs.back().second++;
    else
      runs.push_back({f, 1});
  }
  // drop noise runs and re-merge
  std::vector<std::pair<FatePair, int>> out;
  for (auto& r : runs) {
    if (r.second < min_run) continue;
    if (!out.empty() && out.back().first == r.first)
      out.back().second += r.second;
    else
      out.push_back(r);
  }
  return out;
}

bool match_runs(const std::vector<std::pair<FatePair, int>>& observed,
                const std::vector<RunSpec>& expected) {
  size_t i = 0;
  for (const auto& obs : observed) {
    while (i < expected.size() && expected[i].optional && !(expected[i].fates == obs.first)) i++;
    if (i < expected.size() && expected[i].fates == obs.first) {
      i++;
      continue;
    }
    return false;
  }
  while (i < expected.size() && expected[i].optional) i++;
  return i == expected.size();
}

std::string runs_to_string(const std::vector<std::pair<FatePair, int>>& runs) {
  std::ostringstream os;
  for (auto& r : runs)
    os << "(" << fate_name(r.first.alpha) << "->" << fate_name(r.first.omega) << ")x" << r.second
       << " ";
  return os.str();
}

int default_jobs() {
  if (const char* env = std::getenv("KOLPORTRAIT_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

SectorReport verify_origin_sectors(const ParameterPoint& p, ChartId chart, OriginLabel label,
                                   const SectorProbeConfig& cfg) {
  const bool chart_y = (chart == ChartId::U1 || chart == ChartId::V1);
  const SectorPattern pattern = expected_pattern(label);
  IntegratorConfig icfg;
  icfg.max_steps = 60000;

  SectorReport rep;
  rep.label = label;
  const int n = cfg.seeds;
  const int jobs = cfg.jobs > 0 ? cfg.jobs : default_jobs();

  double r0 = cfg.r0;
  // keep the probe ring well away from finite singular points visible in the chart
  {
    double v_img = 0;
    if (chart_y && p.sgn_b0() != 0 && p.sgn_b2() != 0)
      v_img = std::abs(p.b2.value / p.b0.value);  // image of P2 on the u = 0 axis
    if (!chart_y && p.sgn_c0() != 0 && p.sgn_b3() != 0)
      v_img = std::abs(p.b3.value / p.c0.value);  // image of P1
    if (v_img > 0)
      while (8 * r0 > v_img && r0 / 2 >= cfg.r0_min) r0 /= 2;
  }

  while (true) {
    std::vector<FatePair> fates(n);
    std::vector<char> unresolved(n, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs)
#endif
    for (int k = 0; k < n; k++) {
      const double th = 2.0 * M_PI * (k + 0.5) / n;
      const double u0 = r0 * std::cos(th), v0 = r0 * std::sin(th);
      bool ok_f = true, ok_b = true;
      Fate fw = chart_fate(p, chart_y, u0, v0, +1, r0, icfg, &ok_f);
      Fate bw = chart_fate(p, chart_y, u0, v0, -1, r0, icfg, &ok_b);
      fates[k] = {bw, fw};
      unresolved[k] = (!ok_f || !ok_b) ? 1 : 0;
    }

    int n_unresolved = 0;
    for (char u : unresolved) n_unresolved += u;
    if (n_unresolved > 0 && r0 / 2 >= cfg.r0_min) {
      r0 /= 2;
      continue;
    }

    std::vector<FatePair> upper(fates.begin(), fates.begin() + n / 2);
    std::vector<FatePair> lower(fates.begin() + n / 2, fates.end());
    rep.observed_upper = merge_runs(upper, cfg.min_run);
    rep.observed_lower = merge_runs(lower, cfg.min_run);
    rep.r0_used = r0;

    const bool ok_up = match_runs(rep.observed_upper, pattern.upper);
    const bool ok_low = match_runs(rep.observed_lower, pattern.lower);
    if (ok_up && ok_low) {
      rep.consistent = true;
      return rep;
    }
    std::ostringstream os;
    os << "sector pattern at " << (chart_y ? "O1" : "O2") << " contradicts label "
       << label_name(label) << " (r0=" << rep.r0_used << "): upper " << runs_to_string(rep.observed_upper)
       << "| lower " << runs_to_string(rep.observed_lower);
    rep.detail = os.str();
    throw KolError(ErrorCode::SectorMismatch, rep.detail);
  }
}

/* ---- interior separatrix seeds ---- */

namespace {

void push_center_seed(std::vector<OriginSeed>& out, bool chart_y, double q, double b1, bool upper,
                      int dir, OriginId node, double delta) {
  // center eigendirection (-q, b1) of the reduced field at the origin; pick the
  // branch lying in the requested half-plane
  double u = -q, v = b1;
  const double norm = std::hypot(u, v);
  u /= norm;
  v /= norm;
  if ((v > 0) != upper) {
    u = -u;
    v = -v;
  }
  // a nearly boundary-parallel direction (|b1| << q) would seed the orbit too
  // close to the singular continuum; walk further out along the direction so
  // the v offset stays resolvable
  const double stretch = std::min(1.0 / std::max(std::abs(v), 1e-6), 50.0);
  out.push_back({chart_y, delta * stretch * u, delta * stretch * v, dir, node});
}

void push_kappa_seeds(std::vector<OriginSeed>& out, bool chart_y, double kappa, OriginId up_node,
                      OriginId low_node, double delta) {
  out.push_back({chart_y, -kappa * delta * delta, delta, +1, up_node});
  out.push_back({chart_y, -kappa * delta * delta, -delta, +1, low_node});
}

}  // namespace

std::vector<OriginSeed> origin_interior_seeds(const ParameterPoint& p) {
  std::vector<OriginSeed> out;
  const double b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value;
  const double kappa = (p.b0.value + p.c0.value) / (2 * b1);
  const double dc = 1e-4;   // offset along center eigendirections
  const double dk = 3e-3;   // offset along the u = -kappa v^2 branches

  switch (classify_origin_u1(p)) {
    case OriginLabel::L1_1: push_center_seed(out, true, b2, b1, true, +1, OriginId::O1, dc); break;
    case OriginLabel::L1_2: push_center_seed(out, true, b2, b1, false, -1, OriginId::O1m, dc); break;
    case OriginLabel::L1_3: push_center_seed(out, true, b2, b1, true, +1, OriginId::O1, dc); break;
    case OriginLabel::L1_4: push_center_seed(out, true, b2, b1, false, -1, OriginId::O1m, dc); break;
    case OriginLabel::L1_5:
    case OriginLabel::L1_6: push_kappa_seeds(out, true, kappa, OriginId::O1, OriginId::O1m, dk); break;
    default: break;  // L1_7 / L1_8 contribute no isolated interior separatrix
  }
  switch (classify_origin_u2(p)) {
    case OriginLabel::L2_1: push_center_seed(out, false, b3, b1, true, +1, OriginId::O2, dc); break;
    case OriginLabel::L2_2: push_center_seed(out, false, b3, b1, false, -1, OriginId::O2m, dc); break;
    case OriginLabel::L2_3: push_center_seed(out, false, b3, b1, true, +1, OriginId::O2, dc); break;
    case OriginLabel::L2_4: push_center_seed(out, false, b3, b1, false, -1, OriginId::O2m, dc); break;
    case OriginLabel::L2_9:
    case OriginLabel::L2_10:
    case OriginLabel::L2_6:
    case OriginLabel::L2_8: push_kappa_seeds(out, false, kappa, OriginId::O2, OriginId::O2m, dk); break;
    default: break;  // L2_5 / L2_7 contribute none
  }
  return out;
}

}  // namespace kolportrait
