#include "kolportrait/finite.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace kolportrait {

std::array<double, 2> vector_field(const ParameterPoint& p, double y, double z) {
  const double common = p.b1.value * y * z + p.b2.value * y + p.b3.value * z;
  return {y * (p.b0.value + common), z * (p.c0.value + common)};
}

JacobianMatrix jacobian(const ParameterPoint& p, double y, double z) {
  const double b0 = p.b0.value, b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value,
               c0 = p.c0.value;
  return {b0 + 2 * b1 * y * z + 2 * b2 * y + b3 * z, b1 * y * y + b3 * y,
          b1 * z * z + b2 * z, c0 + 2 * b1 * y * z + b2 * y + 2 * b3 * z};
}

const char* kind_name(PointKind k) {
  switch (k) {
    case PointKind::Saddle: return "saddle";
    case PointKind::StableNode: return "stable_node";
    case PointKind::UnstableNode: return "unstable_node";
    case PointKind::SaddleNode: return "saddle_node";
  }
  return "?";
}

const char* point_name(PointId id) {
  switch (id) {
    case PointId::P0: return "P0";
    case PointId::P1: return "P1";
    case PointId::P2: return "P2";
  }
  return "?";
}

std::vector<std::pair<PointId, std::array<double, 2>>> finite_singularities(
    const ParameterPoint& p) {
  std::vector<std::pair<PointId, std::array<double, 2>>> out;
  out.push_back({PointId::P0, {0.0, 0.0}});
  if (p.sgn_b3() != 0) out.push_back({PointId::P1, {0.0, -p.c0.value / p.b3.value}});
  if (p.sgn_b2() != 0) out.push_back({PointId::P2, {-p.b0.value / p.b2.value, 0.0}});
  return out;
}

namespace {

// Exact eigenvalues: the Jacobian is diagonal at P0 and triangular at P1, P2.
std::array<double, 2> eigenvalues_at(const ParameterPoint& p, PointId id) {
  const double b0 = p.b0.value, c0 = p.c0.value;
  switch (id) {
    case PointId::P0: return {b0, c0};
    case PointId::P1: return {b0 - c0, -c0};
    case PointId::P2: return {-b0, c0 - b0};
  }
  return {0, 0};
}

// Eigenvalue sign pair, exact when the inputs are exact.
std::array<int, 2> eigen_signs_at(const ParameterPoint& p, PointId id) {
  switch (id) {
    case PointId::P0: return {p.sgn_b0(), p.sgn_c0()};
    case PointId::P1: return {-p.sgn_alpha(), -p.sgn_c0()};
    case PointId::P2: return {-p.sgn_b0(), p.sgn_alpha()};
  }
  return {0, 0};
}

PointKind kind_from_signs(std::array<int, 2> s) {
  if (s[0] == 0 || s[1] == 0) return PointKind::SaddleNode;
  if (s[0] * s[1] < 0) return PointKind::Saddle;
  return s[0] > 0 ? PointKind::UnstableNode : PointKind::StableNode;
}

int index_of(PointKind k) {
  switch (k) {
    case PointKind::Saddle: return -1;
    case PointKind::SaddleNode: return 0;
    default: return 1;
  }
}

}  // namespace

std::vector<std::pair<PointId, PointKind>> table_kinds(const CaseId& c) {
  using K = PointKind;
  using P = PointId;
  const int tag = c.major * 10 + c.minor;
  switch (tag) {
    case 11: return {{P::P0, K::Saddle}, {P::P1, K::UnstableNode}, {P::P2, K::StableNode}};
    case 12: return {{P::P0, K::UnstableNode}, {P::P1, K::Saddle}, {P::P2, K::StableNode}};
    case 13: return {{P::P0, K::UnstableNode}, {P::P1, K::StableNode}, {P::P2, K::Saddle}};
    case 14: return {{P::P0, K::SaddleNode}, {P::P2, K::StableNode}};  // P0 = P1
    case 15: return {{P::P0, K::SaddleNode}, {P::P1, K::StableNode}};  // P0 = P2
    case 21: return {{P::P0, K::Saddle}, {P::P1, K::UnstableNode}};
    case 22: return {{P::P0, K::UnstableNode}, {P::P1, K::Saddle}};
    case 23: return {{P::P0, K::UnstableNode}, {P::P1, K::StableNode}};
    case 24: return {{P::P0, K::SaddleNode}};                          // P0 = P1
    case 31: return {{P::P0, K::Saddle}, {P::P2, K::StableNode}};
    case 32: return {{P::P0, K::UnstableNode}, {P::P2, K::Saddle}};
    case 33: return {{P::P0, K::UnstableNode}, {P::P2, K::StableNode}};
    case 34: return {{P::P0, K::SaddleNode}};                          // P0 = P2
    case 41: return {{P::P0, K::Saddle}};
    case 42: return {{P::P0, K::UnstableNode}};
  }
  throw KolError(ErrorCode::UnclassifiableParameters, "unknown subcase " + c.str());
}

std::vector<SingularPointReport> classify_finite(const ParameterPoint& p) {
  const CaseId cid = determine_case(p);
  const auto expected = table_kinds(cid);

  std::vector<SingularPointReport> out;
  const bool p0p1 = (cid.major == 1 && cid.minor == 4) || (cid.major == 2 && cid.minor == 4);
  const bool p0p2 = (cid.major == 1 && cid.minor == 5) || (cid.major == 3 && cid.minor == 4);

  for (auto& [id, loc] : finite_singularities(p)) {
    if (p0p1 && id == PointId::P1) continue;  // coincides with P0
    if (p0p2 && id == PointId::P2) continue;
    SingularPointReport r;
    r.id = id;
    r.y = loc[0];
    r.z = loc[1];
    r.eigenvalues = eigenvalues_at(p, id);
    r.kind = kind_from_signs(eigen_signs_at(p, id));
    r.index = index_of(r.kind);
    if (id == PointId::P0 && p0p1) r.merged_with = PointId::P1;
    if (id == PointId::P0 && p0p2) r.merged_with = PointId::P2;
    out.push_back(r);
  }

  // Cross-check each report against the table row.
  if (out.size() != expected.size())
    throw KolError(ErrorCode::TableMismatch, "singular point count differs from table row " + cid.str());
  for (auto& [want_id, want_kind] : expected) {
    bool found = false;
    for (auto& r : out) {
      if (r.id != want_id) continue;
      found = true;
      if (r.kind != want_kind)
        throw KolError(ErrorCode::TableMismatch,
                       std::string("kind of ") + point_name(want_id) + " disagrees with table row " +
                           cid.str() + ": eigenvalues give " + kind_name(r.kind) + ", table says " +
                           kind_name(want_kind));
    }
    if (!found)
      throw KolError(ErrorCode::TableMismatch,
                     std::string("table row lists ") + point_name(want_id) + " but it was not located");
  }
  return out;
}

int index_sum(const std::vector<SingularPointReport>& reports) {
  int s = 0;
  for (auto& r : reports) s += r.index;
  return s;
}

std::string singular_point_to_json(const SingularPointReport& r) {
  nlohmann::json j;
  j["id"] = point_name(r.id);
  j["location"] = {r.y, r.z};
  j["kind"] = kind_name(r.kind);
  j["eigenvalues"] = {r.eigenvalues[0], r.eigenvalues[1]};
  j["index"] = r.index;
  if (r.merged_with) j["merged_with"] = point_name(*r.merged_with);
  return j.dump();
}

}  // namespace kolportrait
