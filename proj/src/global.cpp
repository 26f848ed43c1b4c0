#include "kolportrait/global.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kolportrait {

namespace {

GlobalRow row(int major, int minor, int b1s, OriginLabel o1, OriginLabel o2, std::vector<int> g,
              int alpha_sign = 0) {
  GlobalRow r;
  r.cid = {major, minor, b1s, alpha_sign};
  r.o1 = o1;
  r.o2 = o2;
  r.g = std::move(g);
  return r;
}

}  // namespace

const std::vector<GlobalRow>& global_table() {
  using L = OriginLabel;
  static const std::vector<GlobalRow> table = {
      row(1, 1, +1, L::L1_2, L::L2_1, {1}),
      row(1, 1, -1, L::L1_4, L::L2_3, {2}),
      row(1, 2, +1, L::L1_2, L::L2_1, {3, 4, 5}),
      row(1, 2, -1, L::L1_4, L::L2_3, {6}),
      row(1, 3, +1, L::L1_1, L::L2_2, {7, 8, 9}),
      row(1, 3, -1, L::L1_3, L::L2_4, {10}),
      row(1, 4, +1, L::L1_2, L::L2_1, {11}),
      row(1, 4, -1, L::L1_4, L::L2_3, {12}),
      row(1, 5, +1, L::L1_1, L::L2_2, {13}),
      row(1, 5, -1, L::L1_3, L::L2_4, {14}),
      row(2, 1, +1, L::L1_7, L::L2_1, {15}),
      row(2, 1, -1, L::L1_8, L::L2_3, {16}),
      row(2, 2, +1, L::L1_7, L::L2_1, {17}),
      row(2, 2, -1, L::L1_8, L::L2_3, {18}),
      row(2, 3, +1, L::L1_5, L::L2_2, {19}),
      row(2, 3, -1, L::L1_6, L::L2_4, {20}),
      row(2, 4, +1, L::L1_7, L::L2_1, {21}),
      row(2, 4, -1, L::L1_8, L::L2_3, {22}),
      row(3, 1, +1, L::L1_2, L::L2_6, {23}),
      row(3, 1, -1, L::L1_4, L::L2_8, {24}),
      row(3, 2, +1, L::L1_1, L::L2_5, {25}),
      row(3, 2, -1, L::L1_3, L::L2_7, {26}),
      row(3, 3, +1, L::L1_2, L::L2_9, {27}),
      row(3, 3, -1, L::L1_4, L::L2_10, {28}),
      row(3, 4, +1, L::L1_1, L::L2_5, {29}),
      row(3, 4, -1, L::L1_3, L::L2_7, {30}),
      row(4, 1, +1, L::L1_7, L::L2_6, {31}),
      row(4, 1, -1, L::L1_8, L::L2_8, {32}),
      row(4, 2, +1, L::L1_5, L::L2_5, {33}, +1),
      row(4, 2, +1, L::L1_7, L::L2_9, {34}, -1),
      row(4, 2, -1, L::L1_6, L::L2_7, {35}, +1),
      row(4, 2, -1, L::L1_8, L::L2_10, {36}, -1),
  };
  return table;
}

PortraitLabel assemble_global(const ParameterPoint& p) {
  const CaseId cid = determine_case(p);

  if (cid.major == 1 && cid.minor == 2 && cid.b1_sign > 0) {
    const int s = p.sgn_conn_12();
    return {s > 0 ? 3 : (s == 0 ? 4 : 5)};
  }
  if (cid.major == 1 && cid.minor == 3 && cid.b1_sign > 0) {
    const int s = p.sgn_conn_13();
    return {s > 0 ? 7 : (s == 0 ? 8 : 9)};
  }
  for (const auto& r : global_table()) {
    if (r.cid.major != cid.major || r.cid.minor != cid.minor || r.cid.b1_sign != cid.b1_sign)
      continue;
    if (r.cid.major == 4 && r.cid.minor == 2 && r.cid.alpha_sign != cid.alpha_sign) continue;
    return {r.g.front()};
  }
  throw KolError(ErrorCode::UnclassifiableParameters, "no global table row for " + cid.str());
}

namespace {

const std::vector<std::vector<int>>& r_sets() {
  static const std::vector<std::vector<int>> sets = {
      {1, 2},          {3, 7},           {4, 8},           {5, 9},
      {6, 10},         {11, 13},         {12, 14},         {15, 16, 23, 24},
      {17, 18, 25, 26}, {19, 20, 27, 28}, {21, 22, 29, 30}, {31, 32},
      {33, 34, 35, 36},
  };
  return sets;
}

constexpr int kI1[13] = {3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 1, 1, 1};
constexpr int kI2[13] = {1, 1, 1, 1, 1, 1, 1, 0, 0, 2, 0, -1, 1};
constexpr int kI3[9] = {2, 2, 1, 1, 2, 1, 1, 1, 1};
constexpr int kI4[9] = {2, 1, 2, 1, 1, 2, 2, 3, 1};

}  // namespace

TopoClass topo_class(PortraitLabel g) {
  const auto& sets = r_sets();
  for (size_t i = 0; i < sets.size(); i++) {
    if (std::find(sets[i].begin(), sets[i].end(), g.g) == sets[i].end()) continue;
    TopoClass t;
    t.r = (int)i + 1;
    t.invariants[0] = kI1[i];
    t.invariants[1] = kI2[i];
    if (t.r <= 9) {
      t.invariants[2] = kI3[i];
      t.invariants[3] = kI4[i];
    }
    if (t.r == 2) t.invariants[4] = 2;
    if (t.r == 5) t.invariants[4] = 1;
    if (t.r == 6) t.invariants[5] = 1;
    if (t.r == 7) t.invariants[5] = 2;
    return t;
  }
  throw KolError(ErrorCode::BadInput, "unknown portrait label " + g.str());
}

int classes_table(PortraitLabel g) {
  const TopoClass t = topo_class(g);
  switch (t.r) {
    case 1: case 2: case 3: case 4: case 5: return 1;
    case 6: case 7: return 2;
    case 8: case 9: return 3;
    case 10: return 4;
    case 11: return 5;
    case 12: return 6;
    case 13: return 7;
  }
  return 0;
}

InvariantVector compute_invariants(const SeparatrixSkeleton& s) {
  validate_skeleton(s);
  InvariantVector v;
  for (auto& nd : s.nodes) {
    if (nd.kind != SkeletonNode::Kind::Finite) continue;
    v.i1++;
    v.i2 += nd.index;
  }

  auto is_finite_node_kind = [&](int idx) {
    const auto& nd = s.nodes[idx];
    return nd.kind == SkeletonNode::Kind::Finite &&
           (nd.point_kind == PointKind::StableNode || nd.point_kind == PointKind::UnstableNode);
  };
  auto is_infinite = [&](int idx) {
    return s.nodes[idx].kind == SkeletonNode::Kind::ChartOrigin ||
           s.nodes[idx].kind == SkeletonNode::Kind::Contact;
  };
  auto owner_node = [&](const SkeletonEdge& e) {
    // the endpoint whose separatrix branch this edge is
    if (s.nodes[e.src].kind == SkeletonNode::Kind::Finite &&
        s.nodes[e.src].finite_id == *e.branch_of)
      return std::pair<int, int>{e.src, e.dst};
    return std::pair<int, int>{e.dst, e.src};
  };

  // I3: separatrix branches of the saddles / saddle-nodes that end in a finite node.
  // I4: branches reaching the infinity: the branches along the invariant axes,
  // plus heteroclinic branches that arrive at a chart origin as one of its own
  // separatrices (the connection configurations).
  for (auto& e : s.edges) {
    if (!e.branch_of) continue;
    auto [owner, far] = owner_node(e);
    (void)owner;
    if (is_finite_node_kind(far)) v.i3++;
    if (is_infinite(far) && (e.on_axis || e.origin_sep)) v.i4++;
  }

  // I5: chart origins exchanging an open family of orbits with one finite point,
  // read off the canonical-region representatives.
  std::set<int> origins;
  for (auto& r : s.region_orbits) {
    if (r.alpha_node < 0 || r.omega_node < 0) continue;
    const auto& a = s.nodes[r.alpha_node];
    const auto& w = s.nodes[r.omega_node];
    if (a.kind == SkeletonNode::Kind::Finite && w.kind == SkeletonNode::Kind::ChartOrigin)
      origins.insert(r.omega_node);
    if (w.kind == SkeletonNode::Kind::Finite && a.kind == SkeletonNode::Kind::ChartOrigin)
      origins.insert(r.alpha_node);
  }
  v.i5 = (int)origins.size();

  // I6: separatrices leaving a finite saddle-node through its parabolic sector
  // and ending at an infinite singular point.
  for (auto& e : s.edges) {
    if (!e.through_parabolic_sector) continue;
    if (s.nodes[e.src].kind == SkeletonNode::Kind::Finite &&
        s.nodes[e.src].point_kind == PointKind::SaddleNode &&
        s.nodes[e.dst].kind == SkeletonNode::Kind::ChartOrigin)
      v.i6++;
  }
  return v;
}

std::optional<int> topo_class_from_invariants(const InvariantVector& v) {
  std::vector<int> cand;
  for (int r = 1; r <= 13; r++)
    if (kI1[r - 1] == v.i1 && kI2[r - 1] == v.i2) cand.push_back(r);
  if (cand.empty()) return std::nullopt;
  if (cand.size() == 1) return cand.front();
  std::vector<int> cand2;
  for (int r : cand)
    if (r <= 9 && kI3[r - 1] == v.i3 && kI4[r - 1] == v.i4) cand2.push_back(r);
  if (cand2.empty()) return std::nullopt;
  if (cand2.size() == 1) return cand2.front();
  // remaining ties: R2 vs R5 on I5, R6 vs R7 on I6
  if (cand2 == std::vector<int>{2, 5}) return v.i5 == 2 ? 2 : (v.i5 == 1 ? 5 : std::optional<int>{});
  if (cand2 == std::vector<int>{6, 7}) return v.i6 == 1 ? 6 : (v.i6 == 2 ? 7 : std::optional<int>{});
  return std::nullopt;
}

/* ---- numeric connection detection ---- */

namespace {

double path_min_distance(const std::vector<DiscPoint>& a, const std::vector<DiscPoint>& b) {
  double best = 1e300;
  const size_t stride_a = std::max<size_t>(1, a.size() / 400);
  const size_t stride_b = std::max<size_t>(1, b.size() / 400);
  for (size_t i = 0; i < a.size(); i += stride_a)
    for (size_t j = 0; j < b.size(); j += stride_b)
      best = std::min(best, std::hypot(a[i].x - b[j].x, a[i].y - b[j].y));
  return best;
}

}  // namespace

ConnectionReport detect_connection_boundary(const ParameterPoint& p, double eps_conn) {
  const CaseId cid = determine_case(p);
  const bool is12 = cid.major == 1 && cid.minor == 2;
  const bool is13 = cid.major == 1 && cid.minor == 3;
  if (!(is12 || is13) || cid.b1_sign <= 0)
    throw KolError(ErrorCode::BadInput, "connection detection applies to cases 1.2/1.3 with b1 > 0");

  IntegratorConfig cfg;
  ConnectionReport rep;

  // saddle branch into the third quadrant
  FlowState seed_a;
  OriginId conn_origin;
  PointId split1_end;     // finite node the branch reaches in configuration 1
  if (is12) {
    const double z1 = -p.c0.value / p.b3.value;
    const double j21 = p.b1.value * z1 * z1 + p.b2.value * z1;
    double dy = p.b0.value, dz = j21;
    const double n = std::hypot(dy, dz);
    seed_a = {Frame::Plane, 0 - cfg.seed_offset * dy / n, z1 - cfg.seed_offset * dz / n};
    conn_origin = OriginId::O1m;
    split1_end = PointId::P2;
  } else {
    const double y2 = -p.b0.value / p.b2.value;
    const double j12 = p.b1.value * y2 * y2 + p.b3.value * y2;
    double dy = j12, dz = p.c0.value;
    const double n = std::hypot(dy, dz);
    seed_a = {Frame::Plane, y2 - cfg.seed_offset * dy / n, 0 - cfg.seed_offset * dz / n};
    conn_origin = OriginId::O2m;
    split1_end = PointId::P1;
  }
  TraceResult branch = trace_orbit(p, seed_a, +1, cfg);

  // separatrix arriving at the origin of V1 (resp. V2), traced backward
  TraceResult osep;
  bool have_osep = false;
  for (const auto& seed : origin_interior_seeds(p)) {
    if (seed.node != conn_origin || seed.time_dir != -1) continue;
    FlowState st{seed.chart_y ? Frame::ChartY : Frame::ChartZ, seed.u, seed.v};
    osep = trace_orbit(p, st, -1, cfg);
    have_osep = true;
    break;
  }

  const PointId saddle = is12 ? PointId::P1 : PointId::P2;
  bool connected = false;
  if (branch.end.kind == OrbitEnd::Kind::Origin && branch.end.origin == conn_origin) connected = true;
  if (have_osep && osep.end.kind == OrbitEnd::Kind::FinitePoint && osep.end.finite_id == saddle)
    connected = true;
  if (!connected && have_osep && path_min_distance(branch.path, osep.path) < 1e-4) connected = true;

  if (connected) {
    rep.configuration = 2;
  } else if (branch.end.kind == OrbitEnd::Kind::FinitePoint && branch.end.finite_id == split1_end) {
    rep.configuration = 1;
  } else if (branch.end.kind == OrbitEnd::Kind::Contact) {
    rep.configuration = 3;
  } else if (have_osep && osep.end.kind == OrbitEnd::Kind::Origin) {
    rep.configuration = 3;  // backward separatrix came from the opposite infinity
  } else if (have_osep && osep.end.kind == OrbitEnd::Kind::FinitePoint &&
             osep.end.finite_id == PointId::P0) {
    rep.configuration = 1;
  }

  rep.algebraic_sign = is12 ? p.sgn_conn_12() : p.sgn_conn_13();
  const double lhs = p.b2.value * p.b3.value;
  const double rhs = p.b1.value * (is12 ? p.c0.value : p.b0.value);
  rep.low_confidence = std::abs(lhs - rhs) <= eps_conn * std::max(1.0, std::abs(lhs) + std::abs(rhs));
  const int cfg_from_sign = rep.algebraic_sign > 0 ? 1 : (rep.algebraic_sign == 0 ? 2 : 3);
  rep.agrees = rep.configuration == cfg_from_sign;
  return rep;
}

}  // namespace kolportrait
