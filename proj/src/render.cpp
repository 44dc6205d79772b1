#include "infspec/render.hpp"

#include <algorithm>
#include <sstream>

#include "infspec/serialize.hpp"

namespace infspec {

namespace {

std::string num(double v) { return format_double(v); }

void circle(std::ostringstream& os, const Point2& c, double radius, const char* stroke,
            double width, bool dashed) {
  os << "  <circle cx=\"" << num(c[0]) << "\" cy=\"" << num(c[1]) << "\" r=\"" << num(radius)
     << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << '"';
  if (dashed) os << " stroke-dasharray=\"" << num(4 * width) << ' ' << num(3 * width) << '"';
  os << "/>\n";
}

}  // namespace

std::string render_svg(const RasterDomain& raster, const std::optional<SandwichCheck>& sandwich,
                       double r) {
  const GridFrame& f = raster.frame();
  double x0 = f.origin[0], y0 = f.origin[1];
  double x1 = x0 + f.width * f.h, y1 = y0 + f.height * f.h;
  if (sandwich) {
    const double big = sandwich->radii.outer_lemma;
    const Point2 c = sandwich->outer_center;
    x0 = std::min(x0, c[0] - big);
    y0 = std::min(y0, c[1] - big);
    x1 = std::max(x1, c[0] + big);
    y1 = std::max(y1, c[1] + big);
  }
  const double margin = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= margin;
  y0 -= margin;
  x1 += margin;
  y1 += margin;
  const double stroke = 0.004 * std::max(x1 - x0, y1 - y0);

  std::ostringstream os;
  // y grows upward in the data; flip it for SVG.
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << ' ' << num(-y1) << ' '
     << num(x1 - x0) << ' ' << num(y1 - y0) << "\" width=\"600\" height=\""
     << static_cast<int>(600.0 * (y1 - y0) / (x1 - x0)) << "\">\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  os << "  <g fill=\"#9fb7d6\" stroke=\"none\">\n";
  for (int j = 0; j < f.height; ++j) {
    int i = 0;
    while (i < f.width) {
      if (!raster.occupied(i, j)) {
        ++i;
        continue;
      }
      const int start = i;
      while (i < f.width && raster.occupied(i, j)) ++i;
      os << "    <rect x=\"" << num(f.origin[0] + start * f.h) << "\" y=\""
         << num(f.origin[1] + j * f.h) << "\" width=\"" << num((i - start) * f.h)
         << "\" height=\"" << num(f.h) << "\"/>\n";
    }
  }
  os << "  </g>\n";
  if (sandwich) {
    circle(os, sandwich->outer_center, r, "#777777", stroke, true);
    circle(os, sandwich->inner_center, sandwich->radii.inner, "#1a9850", stroke, false);
    circle(os, sandwich->outer_center, sandwich->radii.outer_lemma, "#d73027", stroke, false);
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace infspec
