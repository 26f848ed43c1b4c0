#ifndef KOLPORTRAIT_SVG_HPP
#define KOLPORTRAIT_SVG_HPP

#include "kolportrait/skeleton.hpp"

#include <string>

namespace kolportrait {

struct RenderStyle {
  int size_px = 1000;
  std::string separatrix_color = "#1f4fd8";  // separatrices are drawn in blue
  std::string orbit_color = "#000000";
  std::string boundary_color = "#444444";
  double stroke_width = 2.0;
  double simplify_px = 0.25;  // Ramer-Douglas-Peucker tolerance
  bool arrows = true;
};

// Deterministic standalone SVG of a separatrix skeleton on the Poincare disc:
// the boundary drawn as a ring of singular points, separatrices in the
// separatrix color, one orbit per canonical region in the orbit color, and
// glyphs for the singular points.
std::string render_svg(const SeparatrixSkeleton& s, const RenderStyle& style = {});

}  // namespace kolportrait

#endif
