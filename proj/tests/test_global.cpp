#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kolportrait/global.hpp"
#include "support.hpp"

#include <random>
#include <set>

using namespace kolportrait;
using testsup::pt;

TEST_CASE("global table shape: 32 rows, 36 portrait entries") {
  const auto& rows = global_table();
  CHECK(rows.size() == 32);
  std::set<int> gs;
  int entries = 0;
  for (auto& r : rows)
    for (int g : r.g) {
      gs.insert(g);
      entries++;
    }
  CHECK(entries == 36);
  CHECK(gs.size() == 36);
  CHECK(*gs.begin() == 1);
  CHECK(*gs.rbegin() == 36);
}

TEST_CASE("worked examples: the two connection trichotomies") {
  CHECK(assemble_global(pt(2, 1, 1, 1, rational(1, 2))).g == 3);
  CHECK(assemble_global(pt(2, 1, 1, 1, 1)).g == 4);
  CHECK(assemble_global(pt(2, 1, 1, 1, rational(3, 2))).g == 5);

  CHECK(assemble_global(pt(rational(1, 2), 1, 1, 1, 2)).g == 7);
  CHECK(assemble_global(pt(1, 1, 1, 1, 2)).g == 8);
  CHECK(assemble_global(pt(rational(3, 2), 1, 1, 1, 2)).g == 9);

  CHECK(assemble_global(pt(1, 1, 0, 0, 2)).g == 33);
}

TEST_CASE("assemble_global matches the table on every row") {
  for (const auto& row : global_table()) {
    const ParameterPoint p = testsup::search_representative(row.cid);
    const PortraitLabel g = assemble_global(p);
    if (row.g.size() == 1) {
      CHECK(g.g == row.g.front());
    } else {
      // split rows: the representative sits off the stratum, so one of the
      // three entries must be produced
      CHECK(std::find(row.g.begin(), row.g.end(), g.g) != row.g.end());
    }
  }
}

TEST_CASE("topo_class: representatives table") {
  CHECK(topo_class({1}).r == 1);
  CHECK(topo_class({8}).r == 3);
  CHECK(topo_class({36}).r == 13);
  CHECK(topo_class({16}).r == 8);
  CHECK(topo_class({26}).r == 9);
  CHECK(topo_class({30}).r == 11);

  // invariant vectors attached to the classes
  auto t1 = topo_class({1});
  CHECK(*t1.invariants[0] == 3);
  CHECK(*t1.invariants[1] == 1);
  CHECK(*t1.invariants[2] == 2);
  CHECK(*t1.invariants[3] == 2);
  CHECK(!t1.invariants[4].has_value());

  auto t3 = topo_class({4});
  CHECK(*t3.invariants[2] == 1);
  CHECK(*t3.invariants[3] == 2);

  auto t2 = topo_class({3});
  CHECK(*t2.invariants[4] == 2);  // I5 for R2
  auto t5 = topo_class({6});
  CHECK(*t5.invariants[4] == 1);  // I5 for R5
  auto t6 = topo_class({11});
  CHECK(*t6.invariants[5] == 1);  // I6 for R6
  auto t7 = topo_class({12});
  CHECK(*t7.invariants[5] == 2);  // I6 for R7

  auto t13 = topo_class({33});
  CHECK(*t13.invariants[0] == 1);
  CHECK(*t13.invariants[1] == 1);
  CHECK(!t13.invariants[2].has_value());
}

TEST_CASE("classes_table") {
  CHECK(classes_table({5}) == 1);
  CHECK(classes_table({28}) == 4);
  CHECK(classes_table({31}) == 6);
  CHECK(classes_table({11}) == 2);
  CHECK(classes_table({24}) == 3);
  CHECK(classes_table({29}) == 5);
  CHECK(classes_table({34}) == 7);
}

TEST_CASE("invariant vectors pairwise distinguish the 13 classes") {
  // re-run the distinctness argument mechanically on the table vectors
  for (int a = 1; a <= 13; a++) {
    for (int b = a + 1; b <= 13; b++) {
      const auto& sa = topo_class({a <= 5 ? a : (a <= 9 ? 10 + a : 8 + 2 * a)});
      (void)sa;
      InvariantVector va, vb;
      auto fill = [](int r, InvariantVector& v) {
        const int i1[13] = {3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 1, 1, 1};
        const int i2[13] = {1, 1, 1, 1, 1, 1, 1, 0, 0, 2, 0, -1, 1};
        const int i3[9] = {2, 2, 1, 1, 2, 1, 1, 1, 1};
        const int i4[9] = {2, 1, 2, 1, 1, 2, 2, 3, 1};
        v.i1 = i1[r - 1];
        v.i2 = i2[r - 1];
        if (r <= 9) {
          v.i3 = i3[r - 1];
          v.i4 = i4[r - 1];
        }
        if (r == 2) v.i5 = 2;
        if (r == 5) v.i5 = 1;
        if (r == 6) v.i6 = 1;
        if (r == 7) v.i6 = 2;
      };
      fill(a, va);
      fill(b, vb);
      bool distinct = va.i1 != vb.i1 || va.i2 != vb.i2;
      if (!distinct && a <= 9 && b <= 9) distinct = va.i3 != vb.i3 || va.i4 != vb.i4;
      if (!distinct) distinct = (a == 2 || a == 5) ? va.i5 != vb.i5 : va.i6 != vb.i6;
      CHECK(distinct);
    }
  }
  // and the decision tree resolves each class vector back to its class
  for (int r = 1; r <= 13; r++) {
    InvariantVector v;
    const int i1[13] = {3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 1, 1, 1};
    const int i2[13] = {1, 1, 1, 1, 1, 1, 1, 0, 0, 2, 0, -1, 1};
    const int i3[9] = {2, 2, 1, 1, 2, 1, 1, 1, 1};
    const int i4[9] = {2, 1, 2, 1, 1, 2, 2, 3, 1};
    v.i1 = i1[r - 1];
    v.i2 = i2[r - 1];
    if (r <= 9) {
      v.i3 = i3[r - 1];
      v.i4 = i4[r - 1];
    }
    if (r == 2) v.i5 = 2;
    if (r == 5) v.i5 = 1;
    if (r == 6) v.i6 = 1;
    if (r == 7) v.i6 = 2;
    auto got = topo_class_from_invariants(v);
    REQUIRE(got.has_value());
    CHECK(*got == r);
  }
}

TEST_CASE("connection detector agrees with the sign test on the worked examples") {
  auto r3 = detect_connection_boundary(pt(2, 1, 1, 1, rational(1, 2)));
  CHECK(r3.configuration == 1);
  CHECK(r3.agrees);
  CHECK(!r3.low_confidence);

  auto r4 = detect_connection_boundary(pt(2, 1, 1, 1, 1));
  CHECK(r4.configuration == 2);
  CHECK(r4.agrees);

  auto r5 = detect_connection_boundary(pt(2, 1, 1, 1, rational(3, 2)));
  CHECK(r5.configuration == 3);
  CHECK(r5.agrees);

  auto r7 = detect_connection_boundary(pt(rational(1, 2), 1, 1, 1, 2));
  CHECK(r7.configuration == 1);
  CHECK(r7.agrees);
  auto r8 = detect_connection_boundary(pt(1, 1, 1, 1, 2));
  CHECK(r8.configuration == 2);
  CHECK(r8.agrees);
  auto r9 = detect_connection_boundary(pt(rational(3, 2), 1, 1, 1, 2));
  CHECK(r9.configuration == 3);
  CHECK(r9.agrees);

  CHECK_THROWS_AS(detect_connection_boundary(pt(1, 1, 1, 1, -1)), KolError);  // case 1.1
}

TEST_CASE("connection detector vs sign test on random case-1.2/1.3 samples") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.2, 2.5);
  int checked = 0;
  while (checked < 60) {
    ParameterPoint p;
    p.b1 = Param(u(rng));
    p.b2 = Param(u(rng));
    p.b3 = Param(u(rng));
    const bool is12 = rng() % 2;
    if (is12) {
      p.b0 = Param(u(rng) + 0.2);
      p.c0 = Param(p.b0.value * (0.15 + 0.3 * u(rng)));
    } else {
      p.c0 = Param(u(rng) + 0.2);
      p.b0 = Param(p.c0.value * (0.15 + 0.3 * u(rng)));
    }
    const double margin = std::abs(p.b2.value * p.b3.value -
                                   p.b1.value * (is12 ? p.c0.value : p.b0.value));
    if (margin < 1e-3) continue;
    checked++;
    auto rep = detect_connection_boundary(p);
    CHECK(rep.agrees);
    CHECK(!rep.low_confidence);
  }
}

/* ---- hand-encoded ground-truth skeletons for the 13 representatives ---- */

namespace {

struct FixtureEdge {
  const char* src;
  const char* dst;
  bool on_axis = false;
  const char* branch_of = nullptr;
  bool through_fan = false;
  bool origin_sep = false;
};

struct Fixture {
  int g_number;
  // finite nodes: name, kind, location
  std::vector<std::tuple<const char*, PointKind, double, double>> finite;
  std::vector<FixtureEdge> edges;
  // region orbits as (alpha node, omega node) pairs; "inf@" entries mean a
  // boundary contact point
  std::vector<std::pair<const char*, const char*>> regions;
  InvariantVector expect;
};

SeparatrixSkeleton build(const Fixture& fx) {
  SeparatrixSkeleton s;
  auto kind_index = [](PointKind k) {
    return k == PointKind::Saddle ? -1 : (k == PointKind::SaddleNode ? 0 : 1);
  };
  for (auto& [name, kind, y, z] : fx.finite) {
    SkeletonNode n;
    n.kind = SkeletonNode::Kind::Finite;
    n.finite_id = std::string(name) == "P0" ? PointId::P0
                 : std::string(name) == "P1" ? PointId::P1 : PointId::P2;
    n.point_kind = kind;
    n.index = kind_index(kind);
    n.y = y;
    n.z = z;
    s.nodes.push_back(n);
  }
  int ncontact = 0;
  auto node_idx = [&](const std::string& name) -> int {
    for (size_t i = 0; i < s.nodes.size(); i++)
      if (s.nodes[i].name() == name) return (int)i;
    SkeletonNode n;
    if (name == "O1" || name == "O2" || name == "O1'" || name == "O2'") {
      n.kind = SkeletonNode::Kind::ChartOrigin;
      n.origin = name == "O1" ? OriginId::O1
                 : name == "O2" ? OriginId::O2
                 : name == "O1'" ? OriginId::O1m : OriginId::O2m;
    } else {
      n.kind = SkeletonNode::Kind::Contact;
      n.angle = 1.0 + 0.1 * ncontact++;  // distinct dummy contact angles
    }
    s.nodes.push_back(n);
    return (int)s.nodes.size() - 1;
  };
  for (auto& fe : fx.edges) {
    SkeletonEdge e;
    e.src = node_idx(fe.src);
    e.dst = node_idx(fe.dst);
    e.on_axis = fe.on_axis;
    if (fe.branch_of)
      e.branch_of = std::string(fe.branch_of) == "P0" ? PointId::P0
                   : std::string(fe.branch_of) == "P1" ? PointId::P1 : PointId::P2;
    e.through_parabolic_sector = fe.through_fan;
    e.origin_sep = fe.origin_sep;
    e.path = {s.nodes[e.src].disc(), s.nodes[e.dst].disc()};
    s.edges.push_back(e);
  }
  for (auto& [a, w] : fx.regions) {
    RegionOrbit ro;
    ro.alpha_node = node_idx(a);
    ro.omega_node = node_idx(w);
    s.region_orbits.push_back(ro);
  }
  return s;
}

// The 13 class representatives. Edges carry the same provenance flags the
// tracer produces; region entries list one representative orbit per
// canonical region as (alpha, omega) endpoint pairs.
std::vector<Fixture> fixtures() {
  using K = PointKind;
  std::vector<Fixture> v;

  // R1 = G1 (case 1.1, b1>0): P0 saddle, P1 unstable node, P2 stable node
  v.push_back({1,
               {{"P0", K::Saddle, 0, 0}, {"P1", K::UnstableNode, 0, 1}, {"P2", K::StableNode, -1, 0}},
               {{"P0", "O1", true, "P0"},
                {"P0", "P2", true, "P0"},
                {"P1", "P0", true, "P0"},
                {"O2'", "P0", true, "P0"},
                {"O1'", "P2", true},
                {"P1", "O2", true},
                {"O2", "P2", false, nullptr, false, true},
                {"O2'", "O1'", false, nullptr, false, true}},
               {{"P1", "inf@a"},   // Q1: node family to the arc
                {"P1", "P2"},      // Q2 family, axis side of the O2 separatrix
                {"inf@c", "P2"},   // Q2 family fed by the arc
                {"O2'", "P2"},     // Q3 family swept past P0 into P2
                {"O2'", "inf@b"},  // Q3 fan draining to the arc
                {"inf@d", "O1"}},  // Q4: arc into the O1 fans
               {3, 1, 2, 2, 1, 0}});

  // R2 = G3 (case 1.2, b1>0, b2b3 > b1c0)
  v.push_back({3,
               {{"P0", K::UnstableNode, 0, 0}, {"P1", K::Saddle, 0, -1}, {"P2", K::StableNode, -2, 0}},
               {{"P0", "O1", true},
                {"P0", "P2", true},
                {"P0", "P1", true, "P1"},
                {"O2'", "P1", true, "P1"},
                {"O1'", "P2", true},
                {"P0", "O2", true},
                {"P1", "O1", false, "P1"},        // branch into Q4, lands in the O1 fan
                {"P1", "P2", false, "P1"},        // branch across Q3 into the node
                {"O2", "P2", false, nullptr, false, true},
                {"O2'", "O1'", false, nullptr, false, true}},
               {{"P0", "O1"},      // Q4 family between the axis and the P1 branch
                {"inf@a", "O1"},   // Q4 family fed by the arc
                {"P0", "inf@b"},   // Q1 family to the arc
                {"O2'", "P2"},     // Q3 family swept past the saddle into P2
                {"P0", "P2"},      // basin families
                {"P0", "inf@c"}},
               {3, 1, 2, 1, 2, 0}});

  // R3 = G4 (case 1.2, b1>0, on the stratum): the two separatrices connect
  v.push_back({4,
               {{"P0", K::UnstableNode, 0, 0}, {"P1", K::Saddle, 0, -1}, {"P2", K::StableNode, -1, 0}},
               {{"P0", "O1", true},
                {"P0", "P2", true},
                {"P0", "P1", true, "P1"},
                {"O2'", "P1", true, "P1"},
                {"O1'", "P2", true},
                {"P0", "O2", true},
                {"P1", "O1", false, "P1"},
                {"P1", "O1'", false, "P1", false, true},  // the heteroclinic connection
                {"O2", "P2", false, nullptr, false, true}},
               {{"P0", "O1"},
                {"inf@a", "O1"},
                {"P0", "inf@b"},
                {"O2'", "inf@c"},   // the connection walls the Q3 fan off from P2
                {"P0", "P2"},
                {"P0", "inf@d"}},
               {3, 1, 1, 2, 1, 0}});

  // R4 = G5 (case 1.2, b1>0, b2b3 < b1c0)
  v.push_back({5,
               {{"P0", K::UnstableNode, 0, 0}, {"P1", K::Saddle, 0, -1}, {"P2", K::StableNode, -1, 0}},
               {{"P0", "O1", true},
                {"P0", "P2", true},
                {"P0", "P1", true, "P1"},
                {"O2'", "P1", true, "P1"},
                {"O1'", "P2", true},
                {"P0", "O2", true},
                {"P1", "O1", false, "P1"},
                {"P1", "inf@q3", false, "P1"},            // branch ends on the arc
                {"O2", "P2", false, nullptr, false, true},
                {"P0", "O1'", false, nullptr, false, true}},
               {{"P0", "O1"},
                {"inf@a", "O1"},
                {"P0", "inf@b"},
                {"O2'", "inf@c"},   // Q3 fan drains to the arc
                {"P0", "P2"},
                {"P0", "inf@d"}},
               {3, 1, 1, 1, 1, 0}});

  // R5 = G6 (case 1.2, b1<0)
  v.push_back({6,
               {{"P0", K::UnstableNode, 0, 0}, {"P1", K::Saddle, 0, -1}, {"P2", K::StableNode, -1, 0}},
               {{"P0", "O1", true},
                {"P0", "P2", true},
                {"P0", "P1", true, "P1"},
                {"O2'", "P1", true, "P1"},
                {"O1'", "P2", true},
                {"P0", "O2", true},
                {"P1", "inf@q4", false, "P1"},  // Q4 branch to the arc (arc receives, b1<0)
                {"P1", "P2", false, "P1"},      // Q3 branch into the node
                {"P0", "O1'", false, nullptr, false, true},
                {"O2", "O1", false, nullptr, false, true}},
               {{"P0", "O1"},     // the single origin family (I5 = 1)
                {"P0", "inf@a"},
                {"P0", "P2"},
                {"inf@b", "P2"},
                {"P0", "inf@c"},
                {"O2'", "inf@d"}},
               {3, 1, 2, 1, 1, 0}});

  // R6 = G11 (case 1.4, b1>0): P0=P1 saddle-node, P2 stable node
  v.push_back({11,
               {{"P0", K::SaddleNode, 0, 0}, {"P2", K::StableNode, -1, 0}},
               {{"P0", "O1", true, "P0"},
                {"P0", "P2", true, "P0"},
                {"P0", "O2", true, nullptr, true},  // through the parabolic sector
                {"O2'", "P0", true, "P0"},
                {"O1'", "P2", true},
                {"O2", "P2", false, nullptr, false, true},
                {"O2'", "O1'", false, nullptr, false, true}},
               {{"P0", "inf@a"},
                {"P0", "P2"},
                {"inf@b", "P2"},
                {"O2'", "P2"},
                {"O2'", "inf@c"},
                {"inf@d", "O1"}},
               {2, 1, 1, 2, 1, 1}});

  // R7 = G12 (case 1.4, b1<0)
  v.push_back({12,
               {{"P0", K::SaddleNode, 0, 0}, {"P2", K::StableNode, -1, 0}},
               {{"P0", "O1", true, "P0"},
                {"P0", "P2", true, "P0"},
                {"P0", "O2", true, nullptr, true},
                {"O2'", "P0", true, "P0"},
                {"O1'", "P2", true},
                {"P0", "O1'", false, nullptr, true, true},  // fan separatrix to O1'
                {"O2", "O1", false, nullptr, false, true}},
               {{"P0", "O1"},
                {"inf@a", "O1"},
                {"P0", "P2"},
                {"P0", "inf@b"},
                {"inf@c", "P2"},
                {"O2'", "inf@d"}},
               {2, 1, 1, 2, 1, 2}});

  // R8 = G15 (case 2.1, b1>0): P0 saddle, P1 unstable node on the (+z)-axis
  v.push_back({15,
               {{"P0", K::Saddle, 0, 0}, {"P1", K::UnstableNode, 0, 1}},
               {{"P0", "O1", true, "P0"},
                {"P0", "O1'", true, "P0"},
                {"P1", "P0", true, "P0"},
                {"O2'", "P0", true, "P0"},
                {"P1", "O2", true},
                {"O2", "O1'", false, nullptr, false, true}},
               {{"P1", "inf@a"}, {"inf@b", "O1'"}, {"O2'", "inf@c"}, {"inf@d", "O1"}},
               {2, 0, 1, 3, 0, 0}});

  // R9 = G17 (case 2.2, b1>0): P0 unstable node, P1 saddle on the (-z)-axis
  v.push_back({17,
               {{"P0", K::UnstableNode, 0, 0}, {"P1", K::Saddle, 0, -1}},
               {{"P0", "O1", true},
                {"P0", "O1'", true},
                {"P0", "P1", true, "P1"},
                {"O2'", "P1", true, "P1"},
                {"P0", "O2", true},
                {"P1", "O1", false, "P1"},
                {"P1", "inf@q3", false, "P1"},
                {"O2", "O1'", false, nullptr, false, true}},
               {{"P0", "inf@a"},
                {"P0", "O1"},
                {"inf@b", "O1"},
                {"P0", "O1'"},
                {"inf@c", "O1'"},
                {"P0", "inf@d"}},
               {2, 0, 1, 1, 2, 0}});

  // R10 = G19 (case 2.3, b1>0): P0 unstable node, P1 stable node
  v.push_back({19,
               {{"P0", K::UnstableNode, 0, 0}, {"P1", K::StableNode, 0, -1}},
               {{"P0", "O1", true},
                {"P0", "O1'", true},
                {"P0", "P1", true},
                {"O2'", "P1", true},
                {"P0", "O2", true},
                {"O1", "P1", false, nullptr, false, true},
                {"O1'", "O2", false, nullptr, false, true},
                {"P0", "O2'", false, nullptr, false, true}},
               {{"P0", "inf@a"},
                {"P0", "P1"},
                {"inf@b", "P1"},
                {"P0", "O2"},
                {"inf@c", "O2"}},
               {2, 2, 0, 0, 1, 0}});

  // R11 = G21 (case 2.4, b1>0): P0=P1 saddle-node alone
  v.push_back({21,
               {{"P0", K::SaddleNode, 0, 0}},
               {{"P0", "O1", true, "P0"},
                {"P0", "O1'", true, "P0"},
                {"P0", "O2", true, nullptr, true},
                {"O2'", "P0", true, "P0"},
                {"O2", "O1'", false, nullptr, false, true}},
               {{"P0", "inf@a"},
                {"P0", "O1'"},
                {"inf@b", "O1'"},
                {"O2'", "inf@c"},
                {"inf@d", "O1"}},
               {1, 0, 0, 3, 1, 1}});

  // R12 = G31 (case 4.1, b1>0): P0 saddle alone
  v.push_back({31,
               {{"P0", K::Saddle, 0, 0}},
               {{"P0", "O1", true, "P0"},
                {"P0", "O1'", true, "P0"},
                {"O2", "P0", true, "P0"},
                {"O2'", "P0", true, "P0"},
                {"O2", "inf@q1", false, nullptr, false, true},
                {"O2'", "inf@q3", false, nullptr, false, true}},
               {{"O2", "inf@a"}, {"O2", "O1"}, {"O2'", "inf@b"}, {"O2'", "O1'"}},
               {1, -1, 0, 4, 0, 0}});

  // R13 = G33 (case 4.2, b1>0, c0>b0): P0 unstable node alone
  v.push_back({33,
               {{"P0", K::UnstableNode, 0, 0}},
               {{"P0", "O1", true},
                {"P0", "O1'", true},
                {"P0", "O2", true},
                {"P0", "O2'", true},
                {"O1", "O2'", false, nullptr, false, true},
                {"O1'", "O2", false, nullptr, false, true}},
               {{"P0", "inf@a"}, {"P0", "O2'"}, {"P0", "inf@b"}, {"P0", "O2"}},
               {1, 1, 0, 0, 2, 0}});

  return v;
}

}  // namespace

TEST_CASE("compute_invariants on the hand-encoded representative skeletons") {
  for (const auto& fx : fixtures()) {
    CAPTURE(fx.g_number);
    const SeparatrixSkeleton s = build(fx);
    const InvariantVector v = compute_invariants(s);
    const TopoClass t = topo_class({fx.g_number});
    CHECK(v.i1 == fx.expect.i1);
    CHECK(v.i2 == fx.expect.i2);
    CHECK(v.i3 == fx.expect.i3);
    CHECK(v.i4 == fx.expect.i4);
    CHECK(v.i5 == fx.expect.i5);
    CHECK(v.i6 == fx.expect.i6);
    // the class invariants the proof evaluates must agree with the tables
    CHECK(v.i1 == *t.invariants[0]);
    CHECK(v.i2 == *t.invariants[1]);
    if (t.invariants[2]) CHECK(v.i3 == *t.invariants[2]);
    if (t.invariants[3]) CHECK(v.i4 == *t.invariants[3]);
    if (t.invariants[4]) CHECK(v.i5 == *t.invariants[4]);
    if (t.invariants[5]) CHECK(v.i6 == *t.invariants[5]);
    // and the decision tree recovers the class
    auto got = topo_class_from_invariants(v);
    REQUIRE(got.has_value());
    CHECK(*got == t.r);
  }
}

TEST_CASE("single node with no edges") {
  SeparatrixSkeleton s;
  SkeletonNode n;
  n.kind = SkeletonNode::Kind::Finite;
  n.finite_id = PointId::P0;
  n.point_kind = PointKind::UnstableNode;
  n.index = 1;
  s.nodes.push_back(n);
  const InvariantVector v = compute_invariants(s);
  CHECK(v.i1 == 1);
  CHECK(v.i2 == 1);
  CHECK(v.i3 == 0);
  CHECK(v.i4 == 0);
}

TEST_CASE("malformed skeletons are rejected") {
  SeparatrixSkeleton s;
  SkeletonEdge e;
  e.src = 0;
  e.dst = 5;
  s.edges.push_back(e);
  CHECK_THROWS_AS(compute_invariants(s), KolError);
}
