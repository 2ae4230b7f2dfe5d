#pragma once

#include <string>

#include "bouquet/brush.hpp"
#include "bouquet/log_model.hpp"
#include "bouquet/rays.hpp"

namespace bouquet {

// 12 significant digits, "%.12g" style, negative zero printed as 0.
std::string format_number(double v);

// Header "t,re,im" then one row per traced point, LF endings.
std::string hair_csv(const TracedHair& hair);

// {"family": ..., "lambda": ..., ...} on one line.
std::string model_json(const LogModel& model);

std::string brush_json(const BrushEmbedding& b, const LogModel& model);

}  // namespace bouquet
