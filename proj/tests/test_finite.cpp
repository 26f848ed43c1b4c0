#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kolportrait/finite.hpp"

#include <cmath>
#include <random>

using namespace kolportrait;

namespace {

ParameterPoint pti(long long b0, long long b1, long long b2, long long b3, long long c0) {
  ParameterPoint p;
  p.b0 = Param::from_int(b0);
  p.b1 = Param::from_int(b1);
  p.b2 = Param::from_int(b2);
  p.b3 = Param::from_int(b3);
  p.c0 = Param::from_int(c0);
  return p;
}

// central finite differences of the field: the independent oracle for jacobian()
JacobianMatrix fd_jacobian(const ParameterPoint& p, double y, double z) {
  const double h = 1e-6 * std::max(1.0, std::max(std::abs(y), std::abs(z)));
  auto fy1 = vector_field(p, y + h, z), fy0 = vector_field(p, y - h, z);
  auto fz1 = vector_field(p, y, z + h), fz0 = vector_field(p, y, z - h);
  return {(fy1[0] - fy0[0]) / (2 * h), (fz1[0] - fz0[0]) / (2 * h),
          (fy1[1] - fy0[1]) / (2 * h), (fz1[1] - fz0[1]) / (2 * h)};
}

PointKind kind_of(const std::vector<SingularPointReport>& v, PointId id) {
  for (auto& r : v)
    if (r.id == id) return r.kind;
  throw std::runtime_error("missing point");
}

// draw one random parameter point inside a given subcase region
ParameterPoint sample_subcase(int major, int minor, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  ParameterPoint p;
  const bool has_b2 = major == 1 || major == 3;
  const bool has_b3 = major == 1 || major == 2;
  p.b2 = Param(has_b2 ? u(rng) : 0.0);
  p.b3 = Param(has_b3 ? u(rng) : 0.0);
  p.b1 = Param(rng() % 2 ? u(rng) : -u(rng));
  if ((p.b2.value == 0 || p.b3.value == 0) && p.b1.value < 0) p.b1.value = -p.b1.value;

  double b0 = u(rng), c0 = u(rng);
  auto sub = [&](int tag) {
    switch (tag) {
      case 1: c0 = -u(rng); break;                        // b0>0, c0<0
      case 2: c0 = b0 * (0.05 + 0.3 * u(rng)); break;     // 0<c0<b0
      case 3: c0 = b0 + u(rng); break;                    // c0>b0
      case 4: c0 = 0; break;                              // c0=0
      case 5: b0 = 0; break;                              // b0=0, c0>0
    }
  };
  if (major == 3) {
    // case-3 numbering: 3.2 is c0>b0, 3.3 is 0<c0<b0
    if (minor == 1) sub(1);
    if (minor == 2) sub(3);
    if (minor == 3) sub(2);
    if (minor == 4) sub(5);
  } else if (major == 4) {
    sub(minor == 1 ? 1 : 3);
  } else {
    sub(minor);
  }
  p.b0 = Param(b0);
  p.c0 = Param(c0);
  return p;
}

}  // namespace

TEST_CASE("finite singular point locations") {
  auto pts = finite_singularities(pti(2, 1, 1, 1, 1));
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].first == PointId::P0);
  CHECK(pts[1].second[1] == doctest::Approx(-1.0));  // P1 = (0, -c0/b3)
  CHECK(pts[2].second[0] == doctest::Approx(-2.0));  // P2 = (-b0/b2, 0)

  auto pts2 = finite_singularities(pti(1, 1, 0, 1, 2));
  REQUIRE(pts2.size() == 2);
  CHECK(pts2[1].first == PointId::P1);
  CHECK(pts2[1].second[1] == doctest::Approx(-2.0));

  // c0 = 0 merges P0 and P1
  auto rep = classify_finite(pti(1, 1, 1, 1, 0));
  REQUIRE(rep.size() == 2);
  CHECK(rep[0].merged_with.has_value());
  CHECK(*rep[0].merged_with == PointId::P1);
  CHECK(rep[0].kind == PointKind::SaddleNode);
  CHECK(kind_of(rep, PointId::P2) == PointKind::StableNode);
}

TEST_CASE("jacobian closed form on the triangular examples") {
  auto p = pti(1, 1, 1, 1, -1);
  auto j0 = jacobian(p, 0, 0);
  CHECK(j0.a11 == doctest::Approx(1));
  CHECK(j0.a12 == 0);
  CHECK(j0.a21 == 0);
  CHECK(j0.a22 == doctest::Approx(-1));

  auto j1 = jacobian(p, 0, 1);  // P1 = (0, 1) for c0 = -1, b3 = 1
  CHECK(j1.a11 == doctest::Approx(2));
  CHECK(j1.a12 == doctest::Approx(0));
  CHECK(j1.a21 == doctest::Approx(2));
  CHECK(j1.a22 == doctest::Approx(1));

  auto j2 = jacobian(p, -1, 0);  // P2
  CHECK(j2.a11 == doctest::Approx(-1));
  CHECK(j2.a12 == doctest::Approx(0));
  CHECK(j2.a21 == doctest::Approx(0));
  CHECK(j2.a22 == doctest::Approx(-2));
}

TEST_CASE("jacobian against the finite-difference oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-10, 10), par(-3, 3);
  for (int i = 0; i < 300; i++) {
    ParameterPoint p;
    p.b0 = Param(par(rng));
    p.b1 = Param(par(rng));
    p.b2 = Param(par(rng));
    p.b3 = Param(par(rng));
    p.c0 = Param(par(rng));
    const double y = coord(rng), z = coord(rng);
    const auto a = jacobian(p, y, z);
    const auto b = fd_jacobian(p, y, z);
    const double scale = std::abs(a.a11) + std::abs(a.a12) + std::abs(a.a21) + std::abs(a.a22) + 1;
    CHECK(std::abs(a.a11 - b.a11) / scale < 1e-6);
    CHECK(std::abs(a.a12 - b.a12) / scale < 1e-6);
    CHECK(std::abs(a.a21 - b.a21) / scale < 1e-6);
    CHECK(std::abs(a.a22 - b.a22) / scale < 1e-6);
  }
}

TEST_CASE("classification agrees with the subcase tables on the examples") {
  auto r1 = classify_finite(pti(1, 1, 1, 1, -1));  // 1.1
  CHECK(kind_of(r1, PointId::P0) == PointKind::Saddle);
  CHECK(kind_of(r1, PointId::P1) == PointKind::UnstableNode);
  CHECK(kind_of(r1, PointId::P2) == PointKind::StableNode);

  auto r2 = classify_finite(pti(2, 1, 1, 1, 1));  // 1.2
  CHECK(kind_of(r2, PointId::P0) == PointKind::UnstableNode);
  CHECK(kind_of(r2, PointId::P1) == PointKind::Saddle);
  CHECK(kind_of(r2, PointId::P2) == PointKind::StableNode);

  CHECK(index_sum(r1) == 1);
  CHECK(index_sum(classify_finite(pti(2, 1, 0, 1, 1))) == 0);  // 2.2: node + saddle
  CHECK(index_sum({}) == 0);
}

TEST_CASE("eigenvalue kinds equal table kinds across all subcase regions") {
  std::mt19937_64 rng(17);
  const int subcases[15][2] = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {2, 3},
                               {2, 4}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 1}, {4, 2}};
  for (auto& sc : subcases) {
    for (int i = 0; i < 1000; i++) {
      const ParameterPoint p = sample_subcase(sc[0], sc[1], rng);
      REQUIRE(validate_classifiable(p).ok);
      const CaseId cid = determine_case(p);
      REQUIRE(cid.major == sc[0]);
      REQUIRE(cid.minor == sc[1]);
      // classify_finite throws TableMismatch if eigenvalues and table disagree
      auto rep = classify_finite(p);
      CHECK(rep.size() == table_kinds(cid).size());
    }
  }
}

TEST_CASE("eigenvalues at P1 and P2 follow the triangular closed forms") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 400; i++) {
    ParameterPoint p;
    p.b0 = Param(u(rng));
    p.b1 = Param(u(rng));
    p.b2 = Param(u(rng));
    p.b3 = Param(u(rng));
    p.c0 = Param(u(rng) - 1.5);
    if (!validate_classifiable(p).ok) continue;
    if (determine_case(p).minor >= 4) continue;
    for (auto& r : classify_finite(p)) {
      if (r.id == PointId::P0) {
        CHECK(r.eigenvalues[0] == doctest::Approx(p.b0.value));
        CHECK(r.eigenvalues[1] == doctest::Approx(p.c0.value));
      } else if (r.id == PointId::P1) {
        CHECK(r.eigenvalues[0] == doctest::Approx(p.b0.value - p.c0.value));
        CHECK(r.eigenvalues[1] == doctest::Approx(-p.c0.value));
      } else {
        CHECK(r.eigenvalues[0] == doctest::Approx(-p.b0.value));
        CHECK(r.eigenvalues[1] == doctest::Approx(p.c0.value - p.b0.value));
      }
    }
  }
}

TEST_CASE("index sums match the equivalence-class table") {
  struct Row { long long b0, b1, b2, b3, c0; int ind; };
  const Row rows[] = {
      {1, 1, 1, 1, -1, 1},  // 1.1 -> class 1
      {2, 1, 1, 1, 1, 1},   // 1.2
      {1, 1, 1, 1, 2, 1},   // 1.3
      {1, 1, 1, 1, 0, 1},   // 1.4 -> class 2
      {0, 1, 1, 1, 1, 1},   // 1.5
      {1, 1, 0, 1, -1, 0},  // 2.1 -> class 3
      {2, 1, 0, 1, 1, 0},   // 2.2
      {1, 1, 0, 1, 2, 2},   // 2.3 -> class 4
      {1, 1, 0, 1, 0, 0},   // 2.4 -> class 5
      {1, 1, 1, 0, -1, 0},  // 3.1 -> class 3
      {1, 1, 1, 0, 2, 0},   // 3.2
      {2, 1, 1, 0, 1, 2},   // 3.3 -> class 4
      {0, 1, 1, 0, 1, 0},   // 3.4 -> class 5
      {1, 1, 0, 0, -1, -1}, // 4.1 -> class 6
      {1, 1, 0, 0, 2, 1},   // 4.2 -> class 7
  };
  for (auto& r : rows)
    CHECK(index_sum(classify_finite(pti(r.b0, r.b1, r.b2, r.b3, r.c0))) == r.ind);
}

TEST_CASE("JSON encoding of a report") {
  auto rep = classify_finite(pti(1, 1, 1, 1, -1));
  const std::string js = singular_point_to_json(rep[0]);
  CHECK(js.find("\"id\":\"P0\"") != std::string::npos);
  CHECK(js.find("\"kind\":\"saddle\"") != std::string::npos);
  CHECK(js.find("\"index\":-1") != std::string::npos);
}
