#ifndef KOLPORTRAIT_GLOBAL_HPP
#define KOLPORTRAIT_GLOBAL_HPP

#include "kolportrait/infinity.hpp"
#include "kolportrait/skeleton.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace kolportrait {

struct PortraitLabel {
  int g = 0;  // 1..36
  std::string str() const { return "G" + std::to_string(g); }
};

struct TopoClass {
  int r = 0;  // 1..13
  std::array<std::optional<int>, 6> invariants;  // I1..I6; unset where the proof leaves them out
  std::string str() const { return "R" + std::to_string(r); }
};

struct GlobalRow {
  CaseId cid;                 // case / subcase / b1 sign (/ alpha sign for 4.2)
  OriginLabel o1, o2;
  std::vector<int> g;         // one entry, or {3,4,5} / {7,8,9} for the split rows
};

// The 32 condition rows of the global table (36 G entries).
const std::vector<GlobalRow>& global_table();

// Row lookup plus the connection-stratum resolution for cases 1.2 and 1.3 with
// b1 > 0: sign(b2*b3 - b1*c0) picks G3/G4/G5, sign(b2*b3 - b1*b0) picks G7/G8/G9.
PortraitLabel assemble_global(const ParameterPoint& p);

TopoClass topo_class(PortraitLabel g);

// Coarse class 1..7 by (number of finite points, index sum).
int classes_table(PortraitLabel g);

// I1..I6 from a separatrix skeleton. I3/I4 are only defined for the classes
// the equivalence proof evaluates them on; they are computed unconditionally
// here and masked by the caller where not applicable.
struct InvariantVector {
  int i1 = 0, i2 = 0, i3 = 0, i4 = 0, i5 = 0, i6 = 0;
};

InvariantVector compute_invariants(const SeparatrixSkeleton& s);

// Decide R from a traced skeleton alone, mirroring the proof's order: (I1,I2),
// then (I3,I4) within a class, then I5 / I6 for the remaining ties.
std::optional<int> topo_class_from_invariants(const InvariantVector& v);

struct ConnectionReport {
  int configuration = 0;     // 1: split outward (G3/G7), 2: connected, 3: split inward (G5/G9)
  int algebraic_sign = 0;    // sign of the stratum expression
  bool agrees = false;
  bool low_confidence = false;  // within eps_conn of the stratum
};

// Numeric cross-check of the heteroclinic-connection strata for cases 1.2/1.3
// with b1 > 0: traces the saddle branch and the arriving origin separatrix of
// the third quadrant and reports which configuration holds.
ConnectionReport detect_connection_boundary(const ParameterPoint& p, double eps_conn = 1e-6);

}  // namespace kolportrait

#endif
