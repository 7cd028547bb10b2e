#include "coxpack/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "coxpack/errors.hpp"

namespace coxpack {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string curvature_color(double k) {
  if (k == 0.0) return "#d9d9d9";
  if (k < 0.0) return "#c8d4ea";
  int hue = static_cast<int>(std::fmod(std::log1p(k) * 137.5, 360.0));
  char buf[48];
  std::snprintf(buf, sizeof(buf), "hsl(%d,65%%,62%%)", hue);
  return buf;
}

struct Rect {
  double xmin, xmax, ymin, ymax;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

// Viewport corners clipped against the half-plane p.n <= c.
std::vector<std::pair<double, double>> clip_halfplane(const Rect& r, double nx,
                                                      double ny, double c) {
  std::vector<std::pair<double, double>> poly = {{r.xmin, r.ymin},
                                                 {r.xmax, r.ymin},
                                                 {r.xmax, r.ymax},
                                                 {r.xmin, r.ymax}};
  std::vector<std::pair<double, double>> out;
  for (size_t i = 0; i < poly.size(); ++i) {
    auto [ax, ay] = poly[i];
    auto [bx, by] = poly[(i + 1) % poly.size()];
    double fa = nx * ax + ny * ay - c;
    double fb = nx * bx + ny * by - c;
    if (fa <= 0) out.emplace_back(ax, ay);
    if ((fa <= 0) != (fb <= 0)) {
      double t = fa / (fa - fb);
      out.emplace_back(ax + t * (bx - ax), ay + t * (by - ay));
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<Ball>& balls,
                       const RenderOptions& opts) {
  for (const Ball& b : balls)
    if (b.dim != 2) throw UnsupportedDimension("rendering is implemented for plane packings only");

  Rect view{opts.xmin, opts.xmax, opts.ymin, opts.ymax};
  if (opts.auto_viewport) {
    bool any = false;
    Rect fit{0, 0, 0, 0};
    for (const Ball& b : balls) {
      if (b.curvature <= 0.0) continue;
      double r = b.radius();
      if (!any) {
        fit = {b.center(0) - r, b.center(0) + r, b.center(1) - r,
               b.center(1) + r};
        any = true;
      } else {
        fit.xmin = std::min(fit.xmin, b.center(0) - r);
        fit.xmax = std::max(fit.xmax, b.center(0) + r);
        fit.ymin = std::min(fit.ymin, b.center(1) - r);
        fit.ymax = std::max(fit.ymax, b.center(1) + r);
      }
    }
    if (any) {
      double pad = 0.05 * std::max(fit.width(), fit.height());
      view = {fit.xmin - pad, fit.xmax + pad, fit.ymin - pad, fit.ymax + pad};
    } else {
      view = {-2, 2, -2, 2};
    }
  }
  if (view.width() <= 0 || view.height() <= 0) view = {-2, 2, -2, 2};

  int height_px = static_cast<int>(
      std::lround(opts.width_px * view.height() / view.width()));
  double stroke = opts.stroke_scale * view.width() / opts.width_px;

  // Geometry is emitted with y negated so the mathematical y-axis points up.
  auto fy = [](double y) { return -y; };
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opts.width_px) + "\" height=\"" +
         std::to_string(height_px) + "\" viewBox=\"" + num(view.xmin) + " " +
         num(-view.ymax) + " " + num(view.width()) + " " + num(view.height()) +
         "\">\n";
  svg += "<rect x=\"" + num(view.xmin) + "\" y=\"" + num(-view.ymax) +
         "\" width=\"" + num(view.width()) + "\" height=\"" +
         num(view.height()) + "\" fill=\"#ffffff\"/>\n";

  for (const Ball& b : balls) {
    std::string color = curvature_color(b.curvature);
    if (b.is_halfspace()) {
      auto poly = clip_halfplane(view, b.normal(0), b.normal(1), b.offset);
      if (poly.size() < 3) continue;
      svg += "<polygon points=\"";
      for (size_t i = 0; i < poly.size(); ++i) {
        if (i) svg += " ";
        svg += num(poly[i].first) + "," + num(fy(poly[i].second));
      }
      svg += "\" fill=\"" + color + "\" stroke=\"#333333\" stroke-width=\"" +
             num(stroke) + "\"/>\n";
    } else if (b.curvature < 0.0) {
      double r = b.radius();
      double cx = b.center(0), cy = fy(b.center(1));
      svg += "<path d=\"M " + num(view.xmin) + " " + num(-view.ymax) + " H " +
             num(view.xmax) + " V " + num(-view.ymin) + " H " + num(view.xmin) +
             " Z M " + num(cx + r) + " " + num(cy) + " A " + num(r) + " " +
             num(r) + " 0 1 0 " + num(cx - r) + " " + num(cy) + " A " + num(r) +
             " " + num(r) + " 0 1 0 " + num(cx + r) + " " + num(cy) +
             " Z\" fill=\"" + color +
             "\" fill-rule=\"evenodd\" stroke=\"#333333\" stroke-width=\"" +
             num(stroke) + "\"/>\n";
    } else {
      svg += "<circle cx=\"" + num(b.center(0)) + "\" cy=\"" +
             num(fy(b.center(1))) + "\" r=\"" + num(b.radius()) + "\" fill=\"" +
             color + "\" stroke=\"#333333\" stroke-width=\"" + num(stroke) +
             "\"/>\n";
    }
  }

  for (const Eigen::VectorXd& p : opts.overlay_points) {
    if (p.size() < 2) continue;
    svg += "<circle cx=\"" + num(p(0)) + "\" cy=\"" + num(fy(p(1))) +
           "\" r=\"" + num(1.2 * stroke) + "\" fill=\"#000000\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace coxpack
