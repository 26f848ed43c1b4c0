#ifndef KOLPORTRAIT_TRACE_HPP
#define KOLPORTRAIT_TRACE_HPP

#include "kolportrait/global.hpp"
#include "kolportrait/skeleton.hpp"

namespace kolportrait {

struct TraceConfig {
  IntegratorConfig integrator;
  int region_grid = 361;        // raster resolution for canonical-region detection
  double contact_merge = 1e-3;  // boundary contact points merged within this angle
  int jobs = 0;                 // 0 = KOLPORTRAIT_JOBS or hardware default
};

// Builds the separatrix skeleton of the compactified flow: exact axis edges,
// saddle and saddle-node branches, the interior separatrices of the chart
// origins, and one representative orbit per canonical region (three per
// region bordering the infinity continuum).
SeparatrixSkeleton trace_separatrices(const ParameterPoint& p, const TraceConfig& cfg = {});

}  // namespace kolportrait

#endif
