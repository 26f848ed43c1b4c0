#ifndef KOLPORTRAIT_FINITE_HPP
#define KOLPORTRAIT_FINITE_HPP

#include "kolportrait/params.hpp"

#include <array>
#include <optional>
#include <vector>

namespace kolportrait {

// Right-hand side of the planar field at (y,z).
std::array<double, 2> vector_field(const ParameterPoint& p, double y, double z);

struct JacobianMatrix {
  // row-major: [dP/dy, dP/dz; dQ/dy, dQ/dz]
  double a11, a12, a21, a22;
};

JacobianMatrix jacobian(const ParameterPoint& p, double y, double z);

enum class PointKind { Saddle, StableNode, UnstableNode, SaddleNode };

const char* kind_name(PointKind k);

enum class PointId { P0, P1, P2 };

const char* point_name(PointId id);

struct SingularPointReport {
  PointId id;
  double y = 0, z = 0;
  PointKind kind;
  std::array<double, 2> eigenvalues{0, 0};
  int index = 0;  // -1 saddle, +1 node, 0 saddle-node
  std::optional<PointId> merged_with;
};

// P0=(0,0) always; P1=(0,-c0/b3) iff b3 != 0; P2=(-b0/b2,0) iff b2 != 0.
// Coincident points (c0=0 or b0=0) are reported once with merged_with set.
std::vector<std::pair<PointId, std::array<double, 2>>> finite_singularities(const ParameterPoint& p);

// Eigenvalue classification cross-checked against the subcase tables; a
// disagreement throws TableMismatch rather than resolving silently.
std::vector<SingularPointReport> classify_finite(const ParameterPoint& p);

int index_sum(const std::vector<SingularPointReport>& reports);

std::string singular_point_to_json(const SingularPointReport& r);

// Table row for a subcase: expected kinds keyed by point id, used both by
// classify_finite and by the table-consistency tests.
std::vector<std::pair<PointId, PointKind>> table_kinds(const CaseId& c);

}  // namespace kolportrait

#endif
