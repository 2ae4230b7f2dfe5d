#include "bouquet/export.hpp"

#include <cmath>
#include <cstdio>

namespace bouquet {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string hair_csv(const TracedHair& hair) {
  std::string out = "t,re,im\n";
  for (const auto& p : hair.points) {
    out += format_number(p.t) + "," + format_number(p.z.real()) + "," + format_number(p.z.imag()) + "\n";
  }
  return out;
}

std::string model_json(const LogModel& model) {
  std::string out = "{\"family\": \"" + std::string(family_name(model.family())) + "\"";
  if (model.family() == Family::kComposite) {
    out += ", \"chain\": [";
    for (std::size_t i = 0; i < model.chain().size(); ++i) out += (i ? ", " : "") + model_json(model.chain()[i]);
    out += "]";
  } else {
    out += ", \"lambda\": " + format_number(model.lambda().real());
    out += ", \"lambda_im\": " + format_number(model.lambda().imag());
    out += ", \"Rf\": " + format_number(model.r_f());
  }
  out += ", \"H_threshold\": " + format_number(model.h_threshold());
  out += ", \"disjoint_type\": " + std::string(model.validate_disjoint_type() ? "true" : "false") + "}";
  return out;
}

std::string brush_json(const BrushEmbedding& b, const LogModel& model) {
  std::string out = "{\n  \"model\": " + model_json(model) + ",\n  \"hairs\": [";
  for (std::size_t i = 0; i < b.hairs.size(); ++i) {
    const auto& h = b.hairs[i];
    out += i ? ",\n" : "\n";
    out += "    {\"address\": \"" + h.address.to_string() + "\", \"ordinate\": " + format_number(h.ordinate) +
           ", \"endpoint_t\": " + format_number(h.endpoint_t) + ", \"samples\": [";
    for (std::size_t j = 0; j < h.samples.size(); ++j) {
      const auto& s = h.samples[j];
      out += (j ? ", [" : "[") + format_number(s.t) + ", " + format_number(s.z.real()) + ", " +
             format_number(s.z.imag()) + "]";
    }
    out += "]}";
  }
  out += b.hairs.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace bouquet
