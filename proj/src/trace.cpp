#include "kolportrait/trace.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <queue>

namespace kolportrait {

namespace {

int env_jobs(int requested) {
  if (requested > 0) return requested;
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

struct Builder {
  const ParameterPoint& p;
  const TraceConfig& cfg;
  SeparatrixSkeleton sk;
  std::map<long, int> contact_nodes;  // quantized angle -> node index

  explicit Builder(const ParameterPoint& pp, const TraceConfig& c) : p(pp), cfg(c) {}

  int origin_node(OriginId o) {
    int i = sk.find_origin(o);
    if (i >= 0) return i;
    SkeletonNode n;
    n.kind = SkeletonNode::Kind::ChartOrigin;
    n.origin = o;
    n.label = (o == OriginId::O1 || o == OriginId::O1m) ? classify_origin_u1(p)
                                                        : classify_origin_u2(p);
    sk.nodes.push_back(n);
    return (int)sk.nodes.size() - 1;
  }

  int contact_node(double angle) {
    const long key = std::lround(angle / cfg.contact_merge);
    auto it = contact_nodes.find(key);
    if (it != contact_nodes.end()) return it->second;
    SkeletonNode n;
    n.kind = SkeletonNode::Kind::Contact;
    n.angle = angle;
    sk.nodes.push_back(n);
    const int idx = (int)sk.nodes.size() - 1;
    contact_nodes[key] = idx;
    return idx;
  }

  int end_node(const OrbitEnd& e) {
    switch (e.kind) {
      case OrbitEnd::Kind::FinitePoint: return sk.find_finite(e.finite_id);
      case OrbitEnd::Kind::Origin: return origin_node(e.origin);
      case OrbitEnd::Kind::Contact: return contact_node(e.contact_angle);
      default: return -1;
    }
  }

  // Region-orbit endpoints pass through the sector-pattern guard: an origin
  // claim is only kept where the local portrait actually has an open family.
  int region_end_node(const OrbitEnd& e, const DiscPoint& adjacent, bool is_alpha);
};

// 1-d axis dynamics: segments of an invariant axis between consecutive
// singular values, with exact flow direction.
struct AxisSegment {
  double lo, hi;  // plane coordinates on the axis; +-inf for the rays
  bool toward_hi;
};

std::vector<AxisSegment> axis_segments(const std::vector<double>& roots_in,
                                       const std::function<double(double)>& rate) {
  std::vector<double> roots = roots_in;
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<AxisSegment> segs;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> bounds;
  bounds.push_back(-inf);
  for (double r : roots) bounds.push_back(r);
  bounds.push_back(inf);
  for (size_t i = 0; i + 1 < bounds.size(); i++) {
    double lo = bounds[i], hi = bounds[i + 1];
    double mid;
    if (std::isinf(lo) && std::isinf(hi)) mid = 1.0;
    else if (std::isinf(lo)) mid = hi - 1.0;
    else if (std::isinf(hi)) mid = lo + 1.0;
    else mid = 0.5 * (lo + hi);
    segs.push_back({lo, hi, rate(mid) > 0});
  }
  return segs;
}

// which half-axis is the repelling parabolic sector of a merged saddle-node
enum class FanAxis { None, PlusY, PlusZ };

FanAxis saddle_node_fan(const SingularPointReport& r) {
  if (r.kind != PointKind::SaddleNode) return FanAxis::None;
  // P0=P1 (c0=0): center flow dz/dt = b3 z^2 along z; P0=P2 (b0=0): b2 y^2 along y
  if (r.merged_with && *r.merged_with == PointId::P1) return FanAxis::PlusZ;
  if (r.merged_with && *r.merged_with == PointId::P2) return FanAxis::PlusY;
  return FanAxis::None;
}

// Whether the label's sector pattern has an open family of orbits with the
// origin as alpha (emit) or omega (receive) on the given side of the chart
// axis. Guards region-orbit endpoints: a trace can stall into the origin ball
// while the true limit is a continuum point right next to the origin.
// Number of runs preceding the chart axis in a half-list; -1 for the
// nilpotent patterns where the thin horn straddles the axis vicinity and its
// side depends on the sign of b0 + c0.
int axis_run_index(OriginLabel lbl) {
  switch (lbl) {
    case OriginLabel::L1_1: case OriginLabel::L2_1:
    case OriginLabel::L1_2: case OriginLabel::L2_2:
      return 1;
    case OriginLabel::L1_3: case OriginLabel::L2_3:
    case OriginLabel::L1_4: case OriginLabel::L2_4:
      return 2;
    default:
      return -1;
  }
}

bool origin_has_family(OriginLabel lbl, bool upper_half, bool u_positive_side, bool emit) {
  const SectorPattern pat = expected_pattern(lbl);
  const auto& runs = upper_half ? pat.upper : pat.lower;
  // half-lists are ordered by increasing chart angle: the first run sits on
  // the u>0 side for the upper half and on the u<0 side for the lower half
  const bool first_is_upos = upper_half;
  const int axis_at = axis_run_index(lbl);
  for (size_t i = 0; i < runs.size(); i++) {
    const Fate f = emit ? runs[i].fates.alpha : runs[i].fates.omega;
    if (f != Fate::Origin) continue;
    bool covers_pos, covers_neg;
    if (axis_at >= 0) {
      const bool before_axis = (int)i < axis_at;
      covers_pos = before_axis == first_is_upos;
      covers_neg = !covers_pos;
    } else {
      const bool at_start = i == 0, at_end = i + 1 == runs.size();
      covers_pos = (at_start && first_is_upos) || (at_end && !first_is_upos) ||
                   (!at_start && !at_end);
      covers_neg = (at_start && !first_is_upos) || (at_end && first_is_upos) ||
                   (!at_start && !at_end);
    }
    if ((u_positive_side && covers_pos) || (!u_positive_side && covers_neg)) return true;
  }
  return false;
}

int quadrant_of(const DiscPoint& d) {
  if (d.x >= 0) return d.y >= 0 ? 1 : 4;
  return d.y >= 0 ? 2 : 3;
}

// side of the origin's chart axis a quadrant lies on, and which half it is
bool origin_side_is_u_positive(OriginId o, int quadrant) {
  switch (o) {
    case OriginId::O1: return quadrant == 1;   // U1 upper: u>0 <-> Q1
    case OriginId::O1m: return quadrant == 3;  // U1 lower: u>0 <-> Q3
    case OriginId::O2: return quadrant == 1;   // U2 upper: u>0 <-> Q1
    case OriginId::O2m: return quadrant == 3;  // U2 lower: u>0 <-> Q3
  }
  return true;
}

bool origin_is_upper(OriginId o) { return o == OriginId::O1 || o == OriginId::O2; }

int Builder::region_end_node(const OrbitEnd& e, const DiscPoint& adjacent, bool is_alpha) {
  if (e.kind != OrbitEnd::Kind::Origin) return end_node(e);
  const OriginLabel lbl = (e.origin == OriginId::O1 || e.origin == OriginId::O1m)
                              ? classify_origin_u1(p)
                              : classify_origin_u2(p);
  const bool side = origin_side_is_u_positive(e.origin, quadrant_of(adjacent));
  if (origin_has_family(lbl, origin_is_upper(e.origin), side, is_alpha)) return end_node(e);
  return contact_node(origin_angle(e.origin));
}

void raster_mark(std::vector<char>& wall, int n, const std::vector<DiscPoint>& path) {
  auto mark = [&](double x, double y) {
    const int ci = (int)std::floor((x + 1.0) * 0.5 * n);
    const int cj = (int)std::floor((y + 1.0) * 0.5 * n);
    for (int di = -1; di <= 1; di++)
      for (int dj = -1; dj <= 1; dj++) {
        const int i = ci + di, j = cj + dj;
        if (i >= 0 && i < n && j >= 0 && j < n) wall[j * n + i] = 1;
      }
  };
  const double step = 1.0 / n;
  for (size_t k = 0; k + 1 < path.size(); k++) {
    const double dx = path[k + 1].x - path[k].x, dy = path[k + 1].y - path[k].y;
    const int m = 1 + (int)(std::hypot(dx, dy) / step);
    for (int t = 0; t <= m; t++) {
      const double f = (double)t / m;
      mark(path[k].x + f * dx, path[k].y + f * dy);
    }
  }
}

}  // namespace

SeparatrixSkeleton trace_separatrices(const ParameterPoint& p, const TraceConfig& cfg) {
  Builder bld(p, cfg);
  SeparatrixSkeleton& sk = bld.sk;

  // finite nodes
  const auto reports = classify_finite(p);
  for (const auto& r : reports) {
    SkeletonNode n;
    n.kind = SkeletonNode::Kind::Finite;
    n.finite_id = r.id;
    n.point_kind = r.kind;
    n.index = r.index;
    n.y = r.y;
    n.z = r.z;
    sk.nodes.push_back(n);
  }
  for (OriginId o : {OriginId::O1, OriginId::O2, OriginId::O1m, OriginId::O2m}) bld.origin_node(o);

  const SingularPointReport* saddle = nullptr;
  const SingularPointReport* snode = nullptr;
  for (const auto& r : reports) {
    if (r.kind == PointKind::Saddle) saddle = &r;
    if (r.kind == PointKind::SaddleNode) snode = &r;
  }
  const FanAxis fan = snode ? saddle_node_fan(*snode) : FanAxis::None;

  /* ---- axis edges (closed form, no integration) ---- */

  auto axis_node = [&](double coord, bool y_axis, bool neg_inf, bool pos_inf) -> int {
    if (pos_inf) return bld.origin_node(y_axis ? OriginId::O1 : OriginId::O2);
    if (neg_inf) return bld.origin_node(y_axis ? OriginId::O1m : OriginId::O2m);
    for (size_t i = 0; i < sk.nodes.size(); i++) {
      const auto& n = sk.nodes[i];
      if (n.kind != SkeletonNode::Kind::Finite) continue;
      const double c = y_axis ? n.y : n.z;
      const double other = y_axis ? n.z : n.y;
      if (other == 0 && std::abs(c - coord) < 1e-9 * (1 + std::abs(coord))) return (int)i;
    }
    return -1;
  };

  auto add_axis_edges = [&](bool y_axis) {
    std::vector<double> roots = {0.0};
    double b = y_axis ? p.b2.value : p.b3.value;
    double c = y_axis ? p.b0.value : p.c0.value;
    const bool have_b = y_axis ? (p.sgn_b2() != 0) : (p.sgn_b3() != 0);
    if (have_b) roots.push_back(-c / b);
    auto rate = [&](double t) { return t * (c + b * t); };
    for (const auto& seg : axis_segments(roots, rate)) {
      const bool lo_inf = std::isinf(seg.lo), hi_inf = std::isinf(seg.hi);
      const int lo_node = lo_inf ? axis_node(0, y_axis, true, false)
                                 : axis_node(seg.lo, y_axis, false, false);
      const int hi_node = hi_inf ? axis_node(0, y_axis, false, true)
                                 : axis_node(seg.hi, y_axis, false, false);
      if (lo_node < 0 || hi_node < 0) continue;  // coincident roots already merged
      SkeletonEdge e;
      e.on_axis = true;
      e.src = seg.toward_hi ? lo_node : hi_node;
      e.dst = seg.toward_hi ? hi_node : lo_node;
      // polyline: the axis maps to a straight chord of the disc
      const double lo_c = lo_inf ? 0 : seg.lo, hi_c = hi_inf ? 0 : seg.hi;
      DiscPoint a = lo_inf ? sk.nodes[lo_node].disc()
                           : (y_axis ? plane_to_disc(lo_c, 0) : plane_to_disc(0, lo_c));
      DiscPoint bpt = hi_inf ? sk.nodes[hi_node].disc()
                             : (y_axis ? plane_to_disc(hi_c, 0) : plane_to_disc(0, hi_c));
      if (!seg.toward_hi) std::swap(a, bpt);
      e.path = {a, bpt};

      // separatrix-branch bookkeeping at the endpoints
      for (int node_idx : {e.src, e.dst}) {
        const auto& n = sk.nodes[node_idx];
        if (n.kind != SkeletonNode::Kind::Finite) continue;
        if (saddle && n.finite_id == saddle->id) e.branch_of = saddle->id;
        if (snode && n.finite_id == snode->id) {
          // the strong pair and the arriving center branch are separatrices;
          // the outgoing center-axis ray runs inside the parabolic sector
          const bool on_fan_axis = (fan == FanAxis::PlusZ && !y_axis && e.src == node_idx &&
                                    sk.nodes[e.dst].disc().y >= sk.nodes[e.src].disc().y) ||
                                   (fan == FanAxis::PlusY && y_axis && e.src == node_idx &&
                                    sk.nodes[e.dst].disc().x >= sk.nodes[e.src].disc().x);
          if (on_fan_axis) {
            e.through_parabolic_sector = true;
          } else {
            e.branch_of = snode->id;
          }
        }
      }
      sk.edges.push_back(std::move(e));
    }
  };
  add_axis_edges(true);
  add_axis_edges(false);

  /* ---- non-axis saddle branches ---- */

  std::vector<std::pair<SkeletonEdge, TraceResult>> traced;
  if (saddle && (saddle->id == PointId::P1 || saddle->id == PointId::P2)) {
    double dy, dz;
    if (saddle->id == PointId::P1) {
      const double z1 = saddle->z;
      dy = p.b0.value;
      dz = p.b1.value * z1 * z1 + p.b2.value * z1;
    } else {
      const double y2 = saddle->y;
      dy = p.b1.value * y2 * y2 + p.b3.value * y2;
      dz = p.c0.value;
    }
    const double n = std::hypot(dy, dz);
    for (int sgn : {+1, -1}) {
      FlowState seed{Frame::Plane, saddle->y + sgn * cfg.integrator.seed_offset * dy / n,
                     saddle->z + sgn * cfg.integrator.seed_offset * dz / n};
      TraceResult tr = trace_orbit(p, seed, +1, cfg.integrator);  // non-axis pair is unstable
      SkeletonEdge e;
      e.branch_of = saddle->id;
      e.src = sk.find_finite(saddle->id);
      e.dst = bld.end_node(tr.end);
      e.path = tr.path;
      e.path.insert(e.path.begin(), sk.nodes[e.src].disc());
      e.budget_exceeded = tr.end.kind == OrbitEnd::Kind::Budget;
      sk.closed_orbit_seen |= tr.closed_flag;
      traced.push_back({std::move(e), std::move(tr)});
    }
  }

  /* ---- interior separatrices of the chart origins ---- */

  for (const auto& seed : origin_interior_seeds(p)) {
    FlowState st{seed.chart_y ? Frame::ChartY : Frame::ChartZ, seed.u, seed.v};
    TraceResult tr = trace_orbit(p, st, seed.time_dir, cfg.integrator);
    SkeletonEdge e;
    e.origin_sep = true;
    const int onode = bld.origin_node(seed.node);
    const int other = bld.end_node(tr.end);
    if (seed.time_dir > 0) {
      e.src = onode;
      e.dst = other;
      e.path = tr.path;
      e.path.insert(e.path.begin(), sk.nodes[onode].disc());
    } else {
      e.src = other;
      e.dst = onode;
      e.path.assign(tr.path.rbegin(), tr.path.rend());
      e.path.push_back(sk.nodes[onode].disc());
    }
    e.budget_exceeded = tr.end.kind == OrbitEnd::Kind::Budget;
    sk.closed_orbit_seen |= tr.closed_flag;

    // an arriving origin separatrix that traces back to the saddle-node fan
    if (e.src >= 0 && sk.nodes[e.src].kind == SkeletonNode::Kind::Finite && snode &&
        sk.nodes[e.src].finite_id == snode->id && e.path.size() > 2) {
      const DiscPoint at = sk.nodes[e.src].disc();
      const DiscPoint next = e.path[e.path.size() > 4 ? 2 : 1];
      if (fan == FanAxis::PlusZ && next.y > at.y) e.through_parabolic_sector = true;
      if (fan == FanAxis::PlusY && next.x > at.x) e.through_parabolic_sector = true;
    }
    traced.push_back({std::move(e), std::move(tr)});
  }

  // A heteroclinic connection is discovered twice: the saddle branch traced
  // forward (which veers off near the far end, the connection is transversally
  // unstable there) and the origin separatrix traced backward (which converges
  // onto the saddle). When the backward trace lands on a saddle, it owns the
  // orbit: adopt the branch provenance and drop the forward duplicate.
  for (auto& [osep, tr_o] : traced) {
    (void)tr_o;
    if (!osep.origin_sep || osep.branch_of) continue;
    const int far = osep.src >= 0 && sk.nodes[osep.src].kind == SkeletonNode::Kind::ChartOrigin
                        ? osep.dst
                        : osep.src;
    if (far < 0 || sk.nodes[far].kind != SkeletonNode::Kind::Finite) continue;
    if (!saddle || sk.nodes[far].finite_id != saddle->id) continue;
    osep.branch_of = saddle->id;
    // drop the forward-traced branch that follows the same eigendirection
    const DiscPoint at = sk.nodes[far].disc();
    auto tangent = [&](const SkeletonEdge& e) {
      const auto& path = e.path;
      const bool from_src = e.src == far;
      const DiscPoint q = from_src ? path[std::min<size_t>(3, path.size() - 1)]
                                   : path[path.size() - 1 - std::min<size_t>(3, path.size() - 1)];
      return std::pair<double, double>{q.x - at.x, q.y - at.y};
    };
    const auto [ox, oy] = tangent(osep);
    for (auto& [branch, tr_b] : traced) {
      (void)tr_b;
      if (&branch == &osep || branch.src == -2) continue;
      if (!branch.branch_of || branch.origin_sep || *branch.branch_of != saddle->id) continue;
      if (branch.src != (int)sk.find_finite(saddle->id)) continue;
      const auto [bx, by] = tangent(branch);
      if (ox * bx + oy * by > 0) branch.src = -2;  // same branch: drop the duplicate
    }
  }
  for (auto& [e, tr] : traced) {
    (void)tr;
    if (e.src == -2) continue;
    if (e.src < 0 || e.dst < 0) e.budget_exceeded = true;
    if (e.src < 0) e.src = e.dst >= 0 ? e.dst : 0;
    if (e.dst < 0) e.dst = e.src;
    sk.edges.push_back(std::move(e));
  }

  /* ---- canonical-region representatives ---- */

  const int n = cfg.region_grid;
  std::vector<char> wall(n * n, 0);
  for (const auto& e : sk.edges) raster_mark(wall, n, e.path);
  const double cell = 2.0 / n;
  auto cell_center = [&](int i, int j) {
    return DiscPoint{-1.0 + (i + 0.5) * cell, -1.0 + (j + 0.5) * cell};
  };
  // the boundary circle is a continuum of singular points: part of the skeleton
  for (int j = 0; j < n; j++)
    for (int i = 0; i < n; i++) {
      const auto c = cell_center(i, j);
      if (std::hypot(c.x, c.y) > 1.0 - 1.5 * cell) wall[j * n + i] = 1;
    }

  std::vector<int> comp(n * n, -1);
  int ncomp = 0;
  for (int j0 = 0; j0 < n; j0++)
    for (int i0 = 0; i0 < n; i0++) {
      if (wall[j0 * n + i0] || comp[j0 * n + i0] >= 0) continue;
      std::queue<int> q;
      q.push(j0 * n + i0);
      comp[j0 * n + i0] = ncomp;
      while (!q.empty()) {
        const int cur = q.front();
        q.pop();
        const int ci = cur % n, cj = cur / n;
        const int nb[4] = {cur - 1, cur + 1, cur - n, cur + n};
        const bool ok[4] = {ci > 0, ci < n - 1, cj > 0, cj < n - 1};
        for (int k = 0; k < 4; k++)
          if (ok[k] && !wall[nb[k]] && comp[nb[k]] < 0) {
            comp[nb[k]] = ncomp;
            q.push(nb[k]);
          }
      }
      ncomp++;
    }

  // multi-source BFS distance to the nearest wall, for seed placement
  std::vector<int> dist(n * n, -1);
  std::queue<int> q;
  for (int k = 0; k < n * n; k++)
    if (wall[k]) {
      dist[k] = 0;
      q.push(k);
    }
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    const int ci = cur % n, cj = cur / n;
    const int nb[4] = {cur - 1, cur + 1, cur - n, cur + n};
    const bool ok[4] = {ci > 0, ci < n - 1, cj > 0, cj < n - 1};
    for (int k = 0; k < 4; k++)
      if (ok[k] && dist[nb[k]] < 0) {
        dist[nb[k]] = dist[cur] + 1;
        q.push(nb[k]);
      }
  }

  struct RegionInfo {
    int best = -1, best_dist = -1;
    bool infinity = false;
    std::vector<int> cells;
  };
  std::vector<RegionInfo> regions(ncomp);
  for (int k = 0; k < n * n; k++) {
    if (comp[k] < 0) continue;
    auto& r = regions[comp[k]];
    r.cells.push_back(k);
    if (dist[k] > r.best_dist) {
      r.best_dist = dist[k];
      r.best = k;
    }
    const auto c = cell_center(k % n, k / n);
    if (std::hypot(c.x, c.y) > 1.0 - 4.0 * cell) r.infinity = true;
  }

  std::vector<DiscPoint> seeds;
  std::vector<int> seed_region;
  for (int rgi = 0; rgi < ncomp; rgi++) {
    const auto& r = regions[rgi];
    if (r.best < 0 || r.best_dist < 2) continue;
    std::vector<int> picks = {r.best};
    if (r.infinity) {
      // two more representatives, spread across the region
      for (int extra = 0; extra < 2; extra++) {
        int best_cell = -1;
        double best_score = -1;
        for (int cidx : r.cells) {
          if (dist[cidx] < std::max(2, r.best_dist / 3)) continue;
          const auto c = cell_center(cidx % n, cidx / n);
          double min_sep = 1e9;
          for (int chosen : picks) {
            const auto cc = cell_center(chosen % n, chosen / n);
            min_sep = std::min(min_sep, std::hypot(c.x - cc.x, c.y - cc.y));
          }
          if (min_sep > best_score) {
            best_score = min_sep;
            best_cell = cidx;
          }
        }
        if (best_cell >= 0 && best_score > 4 * cell) picks.push_back(best_cell);
      }
    }
    for (int cidx : picks) {
      seeds.push_back(cell_center(cidx % n, cidx / n));
      seed_region.push_back(rgi);
    }
  }

  const int jobs = env_jobs(cfg.jobs);
  std::vector<RegionOrbit> orbits(seeds.size());
  std::vector<OrbitEnd> alpha_ends(seeds.size()), omega_ends(seeds.size());
  std::vector<DiscPoint> alpha_adj(seeds.size()), omega_adj(seeds.size());
  std::vector<char> closed(seeds.size(), 0);
  auto near_end = [](const std::vector<DiscPoint>& path) {
    return path[path.size() > 12 ? path.size() - 12 : 0];
  };
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
  for (size_t si = 0; si < seeds.size(); si++) {
    const auto& s = seeds[si];
    const double r2 = s.x * s.x + s.y * s.y;
    const double x3 = std::sqrt(std::max(1e-12, 1.0 - r2));
    FlowState st{Frame::Plane, s.x / x3, s.y / x3};
    TraceResult fw = trace_orbit(p, st, +1, cfg.integrator);
    TraceResult bw = trace_orbit(p, st, -1, cfg.integrator);
    RegionOrbit ro;
    ro.path.assign(bw.path.rbegin(), bw.path.rend());
    ro.path.insert(ro.path.end(), fw.path.begin(), fw.path.end());
    ro.borders_infinity = regions[seed_region[si]].infinity;
    closed[si] = (fw.closed_flag || bw.closed_flag) ? 1 : 0;
    alpha_ends[si] = bw.end;
    omega_ends[si] = fw.end;
    alpha_adj[si] = near_end(bw.path);
    omega_adj[si] = near_end(fw.path);
    orbits[si] = std::move(ro);
  }
  // resolve endpoints serially: node creation order stays deterministic
  for (size_t si = 0; si < seeds.size(); si++) {
    orbits[si].alpha_node = bld.region_end_node(alpha_ends[si], alpha_adj[si], true);
    orbits[si].omega_node = bld.region_end_node(omega_ends[si], omega_adj[si], false);
    sk.closed_orbit_seen |= closed[si];
  }
  sk.region_orbits = std::move(orbits);

  // Regions can be thinner than the raster resolves (a singular point very
  // close to another squeezes a lens between separatrices). Probe the wedge
  // between each pair of angularly adjacent edges at every finite node and
  // keep any orbit whose endpoint pair the raster representatives missed.
  std::set<std::pair<int, int>> seen_pairs;
  for (auto& ro : sk.region_orbits)
    if (ro.alpha_node >= 0 && ro.omega_node >= 0)
      seen_pairs.insert({ro.alpha_node, ro.omega_node});
  const size_t nnodes = sk.nodes.size();
  for (size_t ni = 0; ni < nnodes; ni++) {
    if (sk.nodes[ni].kind != SkeletonNode::Kind::Finite) continue;
    const DiscPoint at = sk.nodes[ni].disc();
    std::vector<double> angles;
    for (const auto& e : sk.edges) {
      if (e.src != (int)ni && e.dst != (int)ni) continue;
      if (e.path.size() < 2) continue;
      const DiscPoint q = e.src == (int)ni ? e.path[1] : e.path[e.path.size() - 2];
      angles.push_back(std::atan2(q.y - at.y, q.x - at.x));
    }
    if (angles.size() < 2) continue;
    std::sort(angles.begin(), angles.end());
    double delta = 0.02;
    for (size_t mj = 0; mj < nnodes; mj++) {
      if (mj == ni || sk.nodes[mj].kind != SkeletonNode::Kind::Finite) continue;
      const DiscPoint other = sk.nodes[mj].disc();
      delta = std::min(delta, 0.25 * std::hypot(other.x - at.x, other.y - at.y));
    }
    delta = std::max(delta, 0.002);
    for (size_t k = 0; k < angles.size(); k++) {
      const double a0 = angles[k];
      const double a1 = k + 1 < angles.size() ? angles[k + 1] : angles[0] + 2 * M_PI;
      if (a1 - a0 < 1e-3) continue;
      const double bis = 0.5 * (a0 + a1);
      const DiscPoint sd{at.x + delta * std::cos(bis), at.y + delta * std::sin(bis)};
      const double r2 = sd.x * sd.x + sd.y * sd.y;
      if (r2 > 0.98) continue;
      const double x3 = std::sqrt(1.0 - r2);
      FlowState st{Frame::Plane, sd.x / x3, sd.y / x3};
      TraceResult fw = trace_orbit(p, st, +1, cfg.integrator);
      TraceResult bw = trace_orbit(p, st, -1, cfg.integrator);
      RegionOrbit ro;
      ro.alpha_node = bld.region_end_node(bw.end, near_end(bw.path), true);
      ro.omega_node = bld.region_end_node(fw.end, near_end(fw.path), false);
      if (ro.alpha_node < 0 || ro.omega_node < 0) continue;
      if (seen_pairs.count({ro.alpha_node, ro.omega_node})) continue;
      seen_pairs.insert({ro.alpha_node, ro.omega_node});
      ro.path.assign(bw.path.rbegin(), bw.path.rend());
      ro.path.insert(ro.path.end(), fw.path.begin(), fw.path.end());
      sk.closed_orbit_seen |= fw.closed_flag || bw.closed_flag;
      sk.region_orbits.push_back(std::move(ro));
    }
  }

  return sk;
}

}  // namespace kolportrait
