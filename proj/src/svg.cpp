#include "kolportrait/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace kolportrait {

namespace {

struct Px {
  double x, y;
};

Px to_px(const DiscPoint& d, int size) {
  const double half = size / 2.0;
  return {half + d.x * (half - 10.0), half - d.y * (half - 10.0)};
}

double seg_dist(const Px& p, const Px& a, const Px& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double l2 = vx * vx + vy * vy;
  double t = l2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / l2 : 0;
  t = std::min(1.0, std::max(0.0, t));
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

void rdp(const std::vector<Px>& pts, size_t lo, size_t hi, double tol, std::vector<char>& keep) {
  if (hi <= lo + 1) return;
  double worst = -1;
  size_t idx = lo;
  for (size_t i = lo + 1; i < hi; i++) {
    const double d = seg_dist(pts[i], pts[lo], pts[hi]);
    if (d > worst) {
      worst = d;
      idx = i;
    }
  }
  if (worst > tol) {
    keep[idx] = 1;
    rdp(pts, lo, idx, tol, keep);
    rdp(pts, idx, hi, tol, keep);
  }
}

std::vector<Px> simplify(const std::vector<Px>& pts, double tol) {
  if (pts.size() < 3) return pts;
  std::vector<char> keep(pts.size(), 0);
  keep.front() = keep.back() = 1;
  rdp(pts, 0, pts.size() - 1, tol, keep);
  std::vector<Px> out;
  for (size_t i = 0; i < pts.size(); i++)
    if (keep[i]) out.push_back(pts[i]);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // avoid the "-0.00" artifact so identical inputs render identically
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

void emit_polyline(std::ostringstream& os, const std::vector<Px>& pts, const std::string& color,
                   double width, bool arrow) {
  if (pts.size() < 2) return;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << fmt(width)
     << "\" points=\"";
  for (size_t i = 0; i < pts.size(); i++) {
    if (i) os << ' ';
    os << fmt(pts[i].x) << ',' << fmt(pts[i].y);
  }
  os << "\"/>\n";
  if (!arrow) return;
  // arrowhead at the midpoint, oriented along the flow
  size_t m = pts.size() / 2;
  if (m == 0 || m >= pts.size()) return;
  const Px a = pts[m - 1], b = pts[m];
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double n = std::hypot(dx, dy);
  if (n < 1e-9) return;
  const double ux = dx / n, uy = dy / n;
  const double s = 6.0;
  const Px tip{(a.x + b.x) / 2 + ux * s, (a.y + b.y) / 2 + uy * s};
  const Px l{tip.x - s * (ux + 0.5 * uy) * 1.2, tip.y - s * (uy - 0.5 * ux) * 1.2};
  const Px r{tip.x - s * (ux - 0.5 * uy) * 1.2, tip.y - s * (uy + 0.5 * ux) * 1.2};
  os << "<path fill=\"" << color << "\" d=\"M" << fmt(tip.x) << ' ' << fmt(tip.y) << " L"
     << fmt(l.x) << ' ' << fmt(l.y) << " L" << fmt(r.x) << ' ' << fmt(r.y) << " Z\"/>\n";
}

void emit_glyph(std::ostringstream& os, const SkeletonNode& nd, int size,
                const RenderStyle& style) {
  const Px c = to_px(nd.disc(), size);
  const double r = 7.0;
  switch (nd.kind) {
    case SkeletonNode::Kind::Finite:
      switch (nd.point_kind) {
        case PointKind::Saddle:
          os << "<rect x=\"" << fmt(c.x - r * 0.8) << "\" y=\"" << fmt(c.y - r * 0.8)
             << "\" width=\"" << fmt(1.6 * r) << "\" height=\"" << fmt(1.6 * r)
             << "\" fill=\"" << style.separatrix_color << "\" transform=\"rotate(45 " << fmt(c.x)
             << ' ' << fmt(c.y) << ")\"/>\n";
          break;
        case PointKind::StableNode:
          os << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(r)
             << "\" fill=\"" << style.orbit_color << "\"/>\n";
          break;
        case PointKind::UnstableNode:
          os << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(r)
             << "\" fill=\"#ffffff\" stroke=\"" << style.orbit_color
             << "\" stroke-width=\"2.50\"/>\n";
          break;
        case PointKind::SaddleNode:
          os << "<path d=\"M" << fmt(c.x - r) << ' ' << fmt(c.y) << " A" << fmt(r) << ' ' << fmt(r)
             << " 0 0 1 " << fmt(c.x + r) << ' ' << fmt(c.y) << " Z\" fill=\""
             << style.orbit_color << "\"/>"
             << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(r)
             << "\" fill=\"none\" stroke=\"" << style.orbit_color
             << "\" stroke-width=\"2.00\"/>\n";
          break;
      }
      break;
    case SkeletonNode::Kind::ChartOrigin:
      os << "<rect x=\"" << fmt(c.x - 5) << "\" y=\"" << fmt(c.y - 5)
         << "\" width=\"10.00\" height=\"10.00\" fill=\"" << style.boundary_color << "\"/>\n";
      break;
    case SkeletonNode::Kind::Contact:
      os << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
         << "\" r=\"3.50\" fill=\"" << style.boundary_color << "\"/>\n";
      break;
  }
}

}  // namespace

std::string render_svg(const SeparatrixSkeleton& s, const RenderStyle& style) {
  const int size = style.size_px;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << size << ' ' << size
     << "\" width=\"" << size << "\" height=\"" << size << "\">\n"
     << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"#ffffff\"/>\n";

  // infinity: a ring of singular points
  const double half = size / 2.0, rad = half - 10.0;
  os << "<circle cx=\"" << fmt(half) << "\" cy=\"" << fmt(half) << "\" r=\"" << fmt(rad)
     << "\" fill=\"none\" stroke=\"" << style.boundary_color << "\" stroke-width=\"1.50\"/>\n";
  for (int k = 0; k < 72; k++) {
    const double a = 2 * M_PI * k / 72;
    os << "<circle cx=\"" << fmt(half + rad * std::cos(a)) << "\" cy=\""
       << fmt(half - rad * std::sin(a)) << "\" r=\"2.20\" fill=\"" << style.boundary_color
       << "\"/>\n";
  }

  auto px_path = [&](const std::vector<DiscPoint>& path) {
    std::vector<Px> pts;
    pts.reserve(path.size());
    for (const auto& d : path) pts.push_back(to_px(d, size));
    return simplify(pts, style.simplify_px);
  };

  for (const auto& ro : s.region_orbits)
    emit_polyline(os, px_path(ro.path), style.orbit_color, style.stroke_width * 0.75, style.arrows);
  for (const auto& e : s.edges)
    emit_polyline(os, px_path(e.path), style.separatrix_color, style.stroke_width, style.arrows);
  for (const auto& nd : s.nodes) emit_glyph(os, nd, size, style);

  os << "</svg>\n";
  return os.str();
}

}  // namespace kolportrait
