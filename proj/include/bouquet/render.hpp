#pragma once

#include <cstdint>
#include <vector>

#include "bouquet/log_model.hpp"

namespace bouquet {

struct RenderConfig {
  double xmin = -2.0;
  double xmax = 6.0;
  double ymin = -3.0;
  double ymax = 3.0;
  int width = 400;
  int height = 300;
  double R = 4.0;
  int depth = 40;
  bool log_plane = false;  // pixels are log coordinates instead of f-plane points
  unsigned threads = 0;
};

// Gray level of one point: 0 when |f^j| >= R for j = 1..depth, otherwise
// brighter the earlier the orbit drops below R (255 when it fails at j = 1).
std::uint8_t escape_gray(const LogModel& model, ComplexPoint p, const RenderConfig& cfg);

// Complete binary PPM (P6) file. Pixel (r, c) samples the top-left corner
// x = xmin + (xmax - xmin) c / W, y = ymax - (ymax - ymin) r / H.
std::vector<std::uint8_t> render_ppm(const LogModel& model, const RenderConfig& cfg);

}  // namespace bouquet
