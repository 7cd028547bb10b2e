#pragma once

#include <string>
#include <vector>

#include "coxpack/balls.hpp"

namespace coxpack {

struct RenderOptions {
  int width_px = 800;
  // When false, the viewport is the given rectangle; when true it is fitted
  // to the finite positive-curvature balls (or a default square).
  bool auto_viewport = true;
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
  std::vector<Eigen::VectorXd> overlay_points;
  double stroke_scale = 1.0;
};

// Deterministic SVG 1.1 document for a plane packing: one circle per
// positive-curvature ball, complements drawn as even-odd filled frames,
// half-spaces as clipped polygons, overlay points as dots. Throws
// UnsupportedDimension if any ball is not two-dimensional.
std::string render_svg(const std::vector<Ball>& balls,
                       const RenderOptions& opts = RenderOptions());

}  // namespace coxpack
