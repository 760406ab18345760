#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "gen.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/render.hpp"

using namespace lozenge;

namespace {

long count(const std::string& s, const std::string& what) {
  long n = 0;
  for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("property: every picture has cells + W (c + d) lozenges") {
  gen::Engine e(61);
  for (int rep = 0; rep < 100; ++rep) {
    const BoxDomain box = gen::box(e, 5);
    const PlanePartition pi = gen::plane_partition(e, box, 4);
    RenderOptions opt;
    opt.wall_height = gen::uniform_int(e, 4, 6);
    std::string svg;
    const RenderStats st = render_svg({pi}, svg, opt);
    CHECK(st.wall_height == opt.wall_height);
    CHECK(st.top_faces == box.cell_count());
    CHECK(st.polygons == box.cell_count() + opt.wall_height * (box.c + box.d));
    CHECK(count(svg, "<polygon") == st.polygons);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
}

TEST_CASE("default wall height clears the tallest stack") {
  const BoxDomain box{Partition{}, 2, 2};
  const PlanePartition a(box, {{3, 1}, {1, 0}});
  const PlanePartition b(box);
  std::string svg;
  const RenderStats st = render_svg({a, b}, svg);
  CHECK(st.wall_height == 4);
  CHECK(st.polygons == 2 * (4 + 4 * 4));
  RenderOptions low;
  low.wall_height = 2;
  CHECK_THROWS_AS(render_svg({a}, svg, low), DomainError);
}
