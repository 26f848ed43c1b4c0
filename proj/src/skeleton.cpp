#include "kolportrait/skeleton.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace kolportrait {

std::string SkeletonNode::name() const {
  switch (kind) {
    case Kind::Finite: return point_name(finite_id);
    case Kind::ChartOrigin: return origin_name(origin);
    case Kind::Contact: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "inf@%.3f", angle);
      return buf;
    }
  }
  return "?";
}

DiscPoint SkeletonNode::disc() const {
  switch (kind) {
    case Kind::Finite: return plane_to_disc(y, z);
    case Kind::ChartOrigin: {
      const double a = origin_angle(origin);
      return {std::cos(a), std::sin(a)};
    }
    case Kind::Contact: return {std::cos(angle), std::sin(angle)};
  }
  return {};
}

int SeparatrixSkeleton::find_finite(PointId id) const {
  for (size_t i = 0; i < nodes.size(); i++)
    if (nodes[i].kind == SkeletonNode::Kind::Finite && nodes[i].finite_id == id) return (int)i;
  return -1;
}

int SeparatrixSkeleton::find_origin(OriginId o) const {
  for (size_t i = 0; i < nodes.size(); i++)
    if (nodes[i].kind == SkeletonNode::Kind::ChartOrigin && nodes[i].origin == o) return (int)i;
  return -1;
}

void validate_skeleton(const SeparatrixSkeleton& s) {
  const int n = (int)s.nodes.size();
  for (auto& e : s.edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw KolError(ErrorCode::MalformedSkeleton, "edge endpoint is not a node");
  }
  if (s.closed_orbit_seen)
    throw KolError(ErrorCode::MalformedSkeleton, "closed orbit in skeleton (family admits none)");
  for (int i = 0; i < n; i++) {
    const auto& nd = s.nodes[i];
    if (nd.kind != SkeletonNode::Kind::Finite) continue;
    if (nd.point_kind != PointKind::Saddle && nd.point_kind != PointKind::SaddleNode) continue;
    int branches = 0;
    bool budget = false;
    for (auto& e : s.edges) {
      if (e.branch_of && *e.branch_of == nd.finite_id && (e.src == i || e.dst == i)) branches++;
      if ((e.src == i || e.dst == i) && e.budget_exceeded) budget = true;
    }
    const int want = nd.point_kind == PointKind::Saddle ? 4 : 3;
    if (branches != want && !budget)
      throw KolError(ErrorCode::MalformedSkeleton,
                     std::string(point_name(nd.finite_id)) + " has " + std::to_string(branches) +
                         " separatrix branches, expected " + std::to_string(want));
  }
}

std::string skeleton_to_json(const SeparatrixSkeleton& s) {
  nlohmann::json j;
  j["schema"] = "kolportrait/1";
  auto& jn = j["nodes"] = nlohmann::json::array();
  for (auto& nd : s.nodes) {
    nlohmann::json n;
    n["name"] = nd.name();
    switch (nd.kind) {
      case SkeletonNode::Kind::Finite:
        n["type"] = "finite";
        n["kind"] = kind_name(nd.point_kind);
        n["location"] = {nd.y, nd.z};
        n["index"] = nd.index;
        break;
      case SkeletonNode::Kind::ChartOrigin:
        n["type"] = "origin";
        if (nd.label) n["label"] = label_name(*nd.label);
        break;
      case SkeletonNode::Kind::Contact:
        n["type"] = "contact";
        n["angle"] = nd.angle;
        break;
    }
    jn.push_back(n);
  }
  auto& je = j["edges"] = nlohmann::json::array();
  for (auto& e : s.edges) {
    nlohmann::json n;
    n["src"] = s.nodes[e.src].name();
    n["dst"] = s.nodes[e.dst].name();
    n["on_axis"] = e.on_axis;
    if (e.branch_of) n["branch_of"] = point_name(*e.branch_of);
    if (e.origin_sep) n["origin_sep"] = true;
    if (e.budget_exceeded) n["budget_exceeded"] = true;
    je.push_back(n);
  }
  j["region_orbits"] = s.region_orbits.size();
  return j.dump();
}

}  // namespace kolportrait
