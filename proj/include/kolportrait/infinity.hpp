#ifndef KOLPORTRAIT_INFINITY_HPP
#define KOLPORTRAIT_INFINITY_HPP

#include "kolportrait/flow.hpp"

#include <string>
#include <vector>

namespace kolportrait {

/* Labels for the local phase portraits at the chart origins. */
enum class OriginLabel {
  L1_1, L1_2, L1_3, L1_4, L1_5, L1_6, L1_7, L1_8,
  L2_1, L2_2, L2_3, L2_4, L2_5, L2_6, L2_7, L2_8, L2_9, L2_10,
};

const char* label_name(OriginLabel l);
OriginLabel label_from_name(const std::string& s);

enum class LabelFamily { SaddleNodeSemiHyperbolic, NilpotentSaddle, NilpotentHyperbolicElliptic };

LabelFamily label_family(OriginLabel l);

// Equivalence class of the local portrait within its chart (1..3): the
// semi-hyperbolic labels form class 1; the two nilpotent types classes 2 and 3.
int label_equivalence_class(OriginLabel l);

struct TransversalBehavior {
  enum class Quadrants { Q1Q3, Q2Q4 } quadrants;
  enum class Direction { ArrivesFromInterior, LeavesToInterior } direction;
};

// Behavior of the infinity continuum at (u0, 0), u0 != 0, from the nonzero
// eigenvalue -b1*u0 of the normally hyperbolic line of singular points.
TransversalBehavior classify_infinity_line(const ParameterPoint& p, double u0, ChartId chart);

OriginLabel classify_origin_u1(const ParameterPoint& p);
OriginLabel classify_origin_u2(const ParameterPoint& p);

/* ---- numeric cross-check of the origin portraits ---- */

struct FatePair {
  Fate alpha, omega;
  bool operator==(const FatePair&) const = default;
};

struct RunSpec {
  FatePair fates;
  bool optional = false;  // thin horn sectors whose angular width scales with r0
};

struct SectorPattern {
  std::vector<RunSpec> upper;  // open sectors, angles 0..pi
  std::vector<RunSpec> lower;  // angles pi..2pi
};

// Fate-run pattern implied by a label: for each open sector around the chart
// origin, the (alpha, omega) endpoint pair of its orbits under the direction
// field, with the v<0 half orientation-corrected.
SectorPattern expected_pattern(OriginLabel l);

struct SectorProbeConfig {
  int seeds = 720;
  double r0 = 1e-2;
  double r0_min = 1e-5;
  int min_run = 3;  // shorter fate runs are rejected as noise
  int jobs = 0;     // 0 = library default
};

struct SectorReport {
  bool consistent = false;
  OriginLabel label;
  double r0_used = 0;
  std::vector<std::pair<FatePair, int>> observed_upper, observed_lower;  // run, length
  std::string detail;
};

// Integrates the reduced chart field from a ring of seeds around the origin,
// classifies every seed's fate forward and backward, and checks the merged
// run pattern against expected_pattern(label). Throws SectorMismatch if the
// observed pattern contradicts the label.
SectorReport verify_origin_sectors(const ParameterPoint& p, ChartId chart, OriginLabel label,
                                   const SectorProbeConfig& cfg = {});

/* ---- separatrix stubs the origins contribute to skeletons ---- */

struct OriginSeed {
  bool chart_y;   // true: U1 coordinates, false: U2
  double u, v;
  int time_dir;   // +1: edge leaves the origin, -1: edge arrives, trace backward
  OriginId node;
};

// Seeds for the isolated interior separatrices implied by the origin labels
// (the center-direction branch of the semi-hyperbolic saddle-nodes and the
// second invariant branch of the nilpotent saddles / c0<0 nilpotent type).
std::vector<OriginSeed> origin_interior_seeds(const ParameterPoint& p);

}  // namespace kolportrait

#endif
