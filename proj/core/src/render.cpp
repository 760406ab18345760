#include "lozenge/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

constexpr const char* kTop = "#e8c547";
constexpr const char* kFaceI = "#3b6ea5";
constexpr const char* kFaceJ = "#c0504d";

struct Projector {
  double unit, x_offset, y_offset;
  // lattice point (a, b, h) -> screen
  std::pair<double, double> operator()(double a, double b, double h) const {
    const double x = (b - a) * std::sqrt(3.0) / 2.0;
    const double y = (a + b) / 2.0 - h;
    return {unit * (x + x_offset), unit * (y + y_offset)};
  }
};

void polygon(std::ostringstream& os, const Projector& pr, const double (*pts)[3], const char* fill) {
  os << "<polygon points=\"";
  for (int k = 0; k < 4; ++k) {
    const auto [x, y] = pr(pts[k][0], pts[k][1], pts[k][2]);
    os << (k ? " " : "") << x << ',' << y;
  }
  os << "\" fill=\"" << fill << "\"/>\n";
}

}  // namespace

RenderStats render_svg(const std::vector<PlanePartition>& partitions, std::string& svg,
                       const RenderOptions& opt) {
  RenderStats st;
  int w = opt.wall_height;
  if (w == 0)
    for (const auto& p : partitions) w = std::max(w, p.max_entry() + 1);
  for (const auto& p : partitions)
    if (p.max_entry() > w) throw DomainError("wall height below the largest entry");
  st.wall_height = w;

  std::ostringstream body;
  body.precision(6);
  double x_cursor = 0.0, width = 0.0, height = 0.0;
  for (const auto& pi : partitions) {
    const BoxDomain& dom = pi.domain();
    const int c = dom.c, d = dom.d;
    // screen extent in lattice units: x in [-c, d] * sqrt3/2, y in [-w, (c + d) / 2]
    const double left = c * std::sqrt(3.0) / 2.0;
    const Projector pr{opt.unit, x_cursor + left, static_cast<double>(w)};
    auto height_at = [&](int i, int j) {
      if (i > c || j > d) return 0;
      if (i < 1 || j < 1) return w;
      return dom.contains(i, j) ? pi.at(i, j) : w;
    };
    body << "<g>\n";
    for (int i = 1; i <= c; ++i)
      for (int j = 1; j <= d; ++j) {
        if (!dom.contains(i, j)) continue;
        const double h = pi.at(i, j);
        const double q[4][3] = {{i - 1.0, j - 1.0, h}, {i - 1.0, j * 1.0, h}, {i * 1.0, j * 1.0, h},
                                {i * 1.0, j - 1.0, h}};
        polygon(body, pr, q, kTop);
        ++st.top_faces;
        ++st.polygons;
      }
    // faces normal to the i axis at a = i, between H(i, j) above and H(i + 1, j)
    for (int j = 1; j <= d; ++j)
      for (int i = 0; i <= c; ++i)
        for (int h = height_at(i + 1, j); h < height_at(i, j); ++h) {
          const double q[4][3] = {{i * 1.0, j - 1.0, h * 1.0}, {i * 1.0, j * 1.0, h * 1.0},
                                  {i * 1.0, j * 1.0, h + 1.0}, {i * 1.0, j - 1.0, h + 1.0}};
          polygon(body, pr, q, kFaceI);
          ++st.polygons;
        }
    for (int i = 1; i <= c; ++i)
      for (int j = 0; j <= d; ++j)
        for (int h = height_at(i, j + 1); h < height_at(i, j); ++h) {
          const double q[4][3] = {{i - 1.0, j * 1.0, h * 1.0}, {i * 1.0, j * 1.0, h * 1.0},
                                  {i * 1.0, j * 1.0, h + 1.0}, {i - 1.0, j * 1.0, h + 1.0}};
          polygon(body, pr, q, kFaceJ);
          ++st.polygons;
        }
    body << "</g>\n";
    const double pic_w = (c + d) * std::sqrt(3.0) / 2.0;
    x_cursor += pic_w + opt.gap;
    width = x_cursor;
    height = std::max(height, w + (c + d) / 2.0);
  }
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width * opt.unit << "\" height=\""
     << height * opt.unit << "\" viewBox=\"0 0 " << width * opt.unit << ' ' << height * opt.unit
     << "\" stroke=\"#222\" stroke-width=\"0.4\">\n"
     << body.str() << "</svg>\n";
  svg = os.str();
  return st;
}

RenderStats render_svg_file(const std::vector<PlanePartition>& partitions, const std::string& path,
                            const RenderOptions& opt) {
  std::string svg;
  const RenderStats st = render_svg(partitions, svg, opt);
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << svg;
  if (!f) throw IoError("write to " + path + " failed");
  return st;
}

}  // namespace lozenge
