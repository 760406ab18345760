#pragma once

#include <string>
#include <vector>

#include "lozenge/geometry.hpp"

namespace lozenge {

struct RenderOptions {
  int wall_height = 0;  // 0 uses the largest entry + 1 across the inputs
  double unit = 12.0;   // pixels per lattice unit
  double gap = 2.0;     // lattice units between consecutive pictures
};

struct RenderStats {
  long polygons = 0;
  long top_faces = 0;
  int wall_height = 0;
};

// Isometric picture of the stepped surfaces, one per partition, left to right.
// Each unit face is one polygon; per picture the count is cells + W (c + d).
RenderStats render_svg(const std::vector<PlanePartition>& partitions, std::string& svg,
                       const RenderOptions& opt = {});

RenderStats render_svg_file(const std::vector<PlanePartition>& partitions, const std::string& path,
                            const RenderOptions& opt = {});

}  // namespace lozenge
