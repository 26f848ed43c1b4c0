#ifndef KOLPORTRAIT_SKELETON_HPP
#define KOLPORTRAIT_SKELETON_HPP

#include "kolportrait/finite.hpp"
#include "kolportrait/flow.hpp"
#include "kolportrait/infinity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kolportrait {

struct SkeletonNode {
  enum class Kind { Finite, ChartOrigin, Contact } kind;
  // Finite
  PointId finite_id = PointId::P0;
  PointKind point_kind = PointKind::Saddle;
  int index = 0;
  double y = 0, z = 0;
  // ChartOrigin
  OriginId origin = OriginId::O1;
  std::optional<OriginLabel> label;
  // Contact
  double angle = 0;

  std::string name() const;
  DiscPoint disc() const;
};

struct SkeletonEdge {
  int src = -1, dst = -1;                 // node indices; orientation follows the flow
  std::vector<DiscPoint> path;
  bool on_axis = false;                   // lies on one of the invariant axes
  std::optional<PointId> branch_of;       // separatrix branch of this finite saddle / saddle-node
  bool through_parabolic_sector = false;  // leaves a saddle-node inside its parabolic sector
  bool origin_sep = false;                // isolated interior separatrix of a chart origin
  bool budget_exceeded = false;
};

struct RegionOrbit {
  std::vector<DiscPoint> path;
  int alpha_node = -1, omega_node = -1;  // -1: indeterminate (budget)
  bool borders_infinity = false;
};

struct SeparatrixSkeleton {
  std::vector<SkeletonNode> nodes;
  std::vector<SkeletonEdge> edges;
  std::vector<RegionOrbit> region_orbits;
  bool closed_orbit_seen = false;

  int find_finite(PointId id) const;
  int find_origin(OriginId o) const;
};

// Structural checks from the type contract: edge endpoints are nodes, saddles
// carry exactly 4 separatrix branches, saddle-nodes exactly 3, no closed orbit.
void validate_skeleton(const SeparatrixSkeleton& s);

std::string skeleton_to_json(const SeparatrixSkeleton& s);

}  // namespace kolportrait

#endif
