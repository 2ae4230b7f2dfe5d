#include "bouquet/render.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "bouquet/error.hpp"

namespace bouquet {

std::uint8_t escape_gray(const LogModel& model, ComplexPoint p, const RenderConfig& cfg) {
  const double log_r = std::log(cfg.R);
  auto gray = [&](int j) {
    return static_cast<std::uint8_t>(std::lround(255.0 * (cfg.depth - (j - 1)) / cfg.depth));
  };
  // zeta_j = log f^j(w); |f^j(w)| = exp(Re zeta_j)
  ComplexPoint zeta;
  if (cfg.log_plane) {
    try {
      zeta = model.eval_F(p);
    } catch (const Error&) {
      return model.re_overflow_positive(p) ? 0 : gray(1);
    }
  } else {
    ComplexPoint fw = model.eval_f(p);
    if (!(std::abs(fw) >= cfg.R)) return gray(1);
    if (!std::isfinite(std::abs(fw))) return 0;
    zeta = std::log(fw);
  }
  for (int j = 1; j <= cfg.depth; ++j) {
    if (!(zeta.real() >= log_r)) return gray(j);
    if (j == cfg.depth) break;
    try {
      zeta = model.eval_F(zeta);
    } catch (const Error&) {
      return model.re_overflow_positive(zeta) ? 0 : gray(j + 1);
    }
  }
  return 0;
}

std::vector<std::uint8_t> render_ppm(const LogModel& model, const RenderConfig& cfg) {
  if (cfg.width <= 0 || cfg.height <= 0 || !(cfg.xmax > cfg.xmin) || !(cfg.ymax > cfg.ymin)) {
    throw Error(Errc::kInvalidArgument, "zero-area viewport");
  }
  if (cfg.depth <= 0 || !(cfg.R > 0.0)) throw Error(Errc::kInvalidArgument, "depth and R must be positive");
  std::string header = "P6\n" + std::to_string(cfg.width) + " " + std::to_string(cfg.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const std::size_t base = out.size();
  out.resize(base + 3 * static_cast<std::size_t>(cfg.width) * static_cast<std::size_t>(cfg.height));

  auto row = [&](int r) {
    double y = cfg.ymax - (cfg.ymax - cfg.ymin) * r / cfg.height;
    for (int c = 0; c < cfg.width; ++c) {
      double x = cfg.xmin + (cfg.xmax - cfg.xmin) * c / cfg.width;
      std::uint8_t g = escape_gray(model, {x, y}, cfg);
      std::size_t at = base + 3 * (static_cast<std::size_t>(r) * cfg.width + c);
      out[at] = out[at + 1] = out[at + 2] = g;
    }
  };
  unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(cfg.height));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      for (int r = static_cast<int>(w); r < cfg.height; r += static_cast<int>(n)) row(r);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace bouquet
