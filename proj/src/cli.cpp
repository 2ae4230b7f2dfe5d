#include "bouquet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bouquet/address.hpp"
#include "bouquet/brush.hpp"
#include "bouquet/error.hpp"
#include "bouquet/export.hpp"
#include "bouquet/log_model.hpp"
#include "bouquet/rays.hpp"
#include "bouquet/render.hpp"
#include "sampling.hpp"

namespace bouquet {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kEmptyResult = 3;
constexpr int kVerifyFailed = 4;

struct RunConfig {
  std::string command;
  std::string model = "exp";
  std::optional<double> lambda;
  std::optional<double> rf;
  bool allow_non_disjoint = false;
  std::string address = "0";
  std::string t_spec;
  double M = 2.0;
  double K = 1.0;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::string suite;
  std::string symbols = "-1,0,1";
  std::size_t max_period = 2;
  std::string viewport = "-2:6:-3:3";
  std::string size = "400x300";
  double R = 4.0;
  std::optional<int> depth;
  double tol = 1e-2;
  std::string plane = "f";
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::kParse:
    case Errc::kInvalidArgument:
    case Errc::kInfeasibleModel:
    case Errc::kModelMismatch:
    case Errc::kBadPhi:
    case Errc::kBadSpec:
    case Errc::kEmptyInput:
      return kUsage;
    default:
      return kEmptyResult;
  }
}

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + part + "' in '" + text + "'");
    }
    if (used != part.size() || !std::isfinite(v)) throw UsageError("bad number '" + part + "' in '" + text + "'");
    out.push_back(v);
  }
  if (!text.empty() && text.back() == sep) throw UsageError("trailing separator in '" + text + "'");
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  auto v = split_numbers(spec, ':');
  if (v.size() != 3 || !(v[2] > 0.0) || v[1] < v[0]) throw UsageError("--t expects a:b:step with a <= b, step > 0");
  auto n = static_cast<std::size_t>(std::floor((v[1] - v[0]) / v[2] + 1e-9)) + 1;
  if (n > 1000000) throw UsageError("--t grid too large");
  std::vector<double> grid;
  for (std::size_t i = 0; i < n; ++i) grid.push_back(v[0] + static_cast<double>(i) * v[2]);
  return grid;
}

LogModel make_model(const RunConfig& cfg, bool require_disjoint) {
  ModelOptions opts{require_disjoint && !cfg.allow_non_disjoint};
  if (cfg.model == "exp") return LogModel::exp(cfg.lambda.value_or(0.25), cfg.rf.value_or(2.0), opts);
  if (cfg.model == "sine") return LogModel::sine(cfg.lambda.value_or(0.5), cfg.rf.value_or(1.0), opts);
  if (cfg.model == "composite") {
    ModelOptions part{false};
    LogModel f = LogModel::exp(cfg.lambda.value_or(0.25), cfg.rf.value_or(2.0), part);
    return LogModel::composite({f, f}, opts);
  }
  throw UsageError("unknown model '" + cfg.model + "'");
}

void require_alphabet(const LogModel& model, const ExternalAddress& s) {
  for (const auto* part : {&s.preperiod(), &s.period()}) {
    for (const auto& id : *part) {
      if (!model.accepts(id)) {
        throw Error(Errc::kModelMismatch, "symbol " + id.to_string() + " does not belong to the model");
      }
    }
  }
}

json config_json(const RunConfig& cfg, const json& effective) {
  json j = effective;
  j["command"] = cfg.command;
  j["model"] = cfg.model;
  j["allow_non_disjoint"] = cfg.allow_non_disjoint;
  return j;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw UsageError("write to '" + path + "' failed");
}

void emit(const RunConfig& cfg, const std::string& bytes) {
  if (cfg.out.empty()) {
    std::cout << bytes;
  } else {
    write_file(cfg.out, bytes);
  }
}

void emit_meta(const RunConfig& cfg, const json& meta) {
  if (!cfg.out.empty()) write_file(cfg.out + ".meta.json", meta.dump(2) + "\n");
}

json model_meta(const LogModel& model) { return json::parse(model_json(model)); }

json complex_json(ComplexPoint z) { return json::array({z.real(), z.imag()}); }

std::vector<TractId> parse_symbol_list(const std::string& text) {
  std::vector<TractId> out;
  if (text.empty()) return out;
  auto colon = text.find(':');
  if (colon != std::string::npos && text.find(',') == std::string::npos && text.find('.') == std::string::npos) {
    auto v = split_numbers(text, ':');
    if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
      throw UsageError("--symbols range expects integers a:b");
    }
    for (auto k = static_cast<std::int64_t>(v[0]); k <= static_cast<std::int64_t>(v[1]); ++k) out.emplace_back(k);
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw UsageError("empty symbol in --symbols");
    out.push_back(TractId::parse(part));
  }
  return out;
}

// ---------------------------------------------------------------- trace

int cmd_trace(const RunConfig& cfg) {
  LogModel model = make_model(cfg, true);
  ExternalAddress s = ExternalAddress::parse(cfg.address);
  require_alphabet(model, s);
  std::string t_spec = cfg.t_spec.empty() ? "1:10:0.5" : cfg.t_spec;
  std::vector<double> grid = parse_grid(t_spec);
  if (grid.front() < kTFloor) throw UsageError("--t must start at or above t_floor = 0.1");

  TracedHair hair = trace_hair(model, s, grid);
  emit(cfg, hair_csv(hair));

  json failures = json::array();
  for (const auto& f : hair.failures) failures.push_back({{"t", f.t}, {"reason", f.reason}});
  json meta = {{"config", config_json(cfg, {{"address", s.to_string()}, {"t", t_spec}})},
               {"model", model_meta(model)},
               {"t_floor", kTFloor},
               {"rows", hair.points.size()},
               {"failures", failures}};
  if (hair.endpoint_t) meta["endpoint_t"] = *hair.endpoint_t;
  emit_meta(cfg, meta);
  return kOk;
}

// ---------------------------------------------------------------- verify

json check_entry(const std::string& name, bool pass, json details = json::object()) {
  details["name"] = name;
  details["pass"] = pass;
  return details;
}

json disjoint_check(const LogModel& model) {
  json w = {{"H_threshold", model.h_threshold()}, {"tract_min_re", model.tract_min_re()}};
  if (model.family() == Family::kExp) {
    double a = std::abs(model.lambda());
    w["lhs_ln_Rf_plus_ln_inv_lambda"] = std::log(model.r_f()) + std::log(1.0 / a);
    w["rhs_Rf"] = model.r_f();
  }
  return check_entry("disjoint-type", model.validate_disjoint_type(), {{"witness", w}});
}

json suite_headstart(const LogModel& model, const RunConfig& cfg) {
  HeadStartReport rep = head_start_verify(model, {cfg.M, cfg.K}, cfg.samples, cfg.seed);
  json v = json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i) {
    const auto& x = rep.violations[i];
    v.push_back({{"z", complex_json(x.z)}, {"w", complex_json(x.w)}, {"re_Fz", x.re_fz}, {"re_Fw", x.re_fw}});
  }
  return json::array({check_entry("head-start", rep.passed(),
                                  {{"M", cfg.M},
                                   {"K", cfg.K},
                                   {"requested", rep.requested},
                                   {"attempts", rep.attempts},
                                   {"applicable", rep.applicable},
                                   {"not_applicable", rep.not_applicable},
                                   {"min_applicable", rep.min_applicable},
                                   {"sampled_range", {rep.x_min, rep.x_max}},
                                   {"violation_count", rep.violations.size()},
                                   {"violations", v}})});
}

json suite_expansion(const LogModel& model, const RunConfig& cfg) {
  ExpansionReport rep = expansion_verify(model, cfg.samples, cfg.seed);
  json v = json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i) {
    const auto& x = rep.violations[i];
    v.push_back({{"z", complex_json(x.z)}, {"abs_F_prime", x.derivative}, {"bound", x.bound}});
  }
  return json::array({check_entry("expansion", rep.passed(),
                                  {{"samples", rep.samples},
                                   {"min_ratio", rep.min_ratio},
                                   {"violation_count", rep.violations.size()},
                                   {"violations", v}})});
}

json suite_speedorder(const LogModel& model, const RunConfig& cfg) {
  ExternalAddress s = ExternalAddress::parse(cfg.address);
  require_alphabet(model, s);
  HeadStartParams phi{cfg.M, cfg.K};
  detail::Sampler rng(cfg.seed);
  std::size_t n_triples = std::min<std::size_t>(cfg.samples, 1000);
  std::size_t decided = 0;
  json anti = json::array();
  json trans = json::array();
  std::size_t anti_count = 0;
  std::size_t trans_count = 0;
  auto verdict = [&](ComplexPoint a, ComplexPoint b) {
    try {
      return speed_compare(model, phi, a, b).verdict;
    } catch (const Error&) {
      return SpeedVerdict::kUndecided;
    }
  };
  for (std::size_t i = 0; i < n_triples; ++i) {
    double t[3];
    ComplexPoint z[3];
    for (int k = 0; k < 3; ++k) {
      t[k] = rng.uniform(kTFloor, 6.0);
      z[k] = point_at_potential(model, s, t[k]).z;
    }
    SpeedVerdict v[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) v[a][b] = a == b ? SpeedVerdict::kUndecided : verdict(z[a], z[b]);
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        SpeedVerdict x = v[a][b];
        SpeedVerdict y = v[b][a];
        if (x != SpeedVerdict::kUndecided) ++decided;
        bool ok = (x == SpeedVerdict::kGT && y == SpeedVerdict::kLT) ||
                  (x == SpeedVerdict::kLT && y == SpeedVerdict::kGT) ||
                  (x == SpeedVerdict::kUndecided && y == SpeedVerdict::kUndecided);
        if (!ok && anti_count++ < 20) {
          anti.push_back({{"t", {t[a], t[b]}}, {"forward", verdict_name(x)}, {"backward", verdict_name(y)}});
        }
      }
    }
    // a before b (b ahead) and b before c must give c ahead of a
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          if (a == b || b == c || a == c) continue;
          if (v[a][b] == SpeedVerdict::kGT && v[b][c] == SpeedVerdict::kGT && v[a][c] != SpeedVerdict::kGT) {
            if (trans_count++ < 20) {
              trans.push_back({{"t", {t[a], t[b], t[c]}}, {"a_vs_c", verdict_name(v[a][c])}});
            }
          }
        }
      }
    }
  }
  json checks = json::array();
  checks.push_back(check_entry("antisymmetry", anti_count == 0,
                               {{"triples", n_triples}, {"decided_pairs", decided}, {"violation_count", anti_count},
                                {"violations", anti}}));
  checks.push_back(check_entry("transitivity", trans_count == 0,
                               {{"triples", n_triples}, {"violation_count", trans_count}, {"violations", trans}}));

  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(kTFloor + (5.0 - kTFloor) * i / 19.0);
  std::vector<ComplexPoint> pts;
  for (double t : grid) pts.push_back(point_at_potential(model, s, t).z);
  json bad = json::array();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (!(grid[j] >= grid[i] + 1.0)) continue;
      ++pairs;
      SpeedVerdict x = verdict(pts[i], pts[j]);
      if (x != SpeedVerdict::kGT) bad.push_back({{"t", grid[i]}, {"t_prime", grid[j]}, {"verdict", verdict_name(x)}});
    }
  }
  checks.push_back(check_entry("monotone-escape", bad.empty(), {{"pairs", pairs}, {"violations", bad}}));
  return checks;
}

json suite_accumulation(const LogModel& model, const RunConfig& cfg) {
  ExternalAddress s = ExternalAddress::parse(cfg.address);
  require_alphabet(model, s);
  int depth = cfg.depth.value_or(8);
  if (depth < 2) throw UsageError("--depth must be at least 2 for the accumulation suite");
  Endpoint ep = endpoint_estimate(model, s);
  json levels = json::array();
  bool straddle_ok = true;
  bool itinerary_ok = true;
  bool decrease_ok = true;
  bool ratio_ok = true;
  double prev[2] = {0.0, 0.0};
  for (int n = 1; n <= depth; ++n) {
    AccumulationPair p = accumulation_neighbors(model, ep.z, s, static_cast<std::size_t>(n));
    double d[2] = {std::abs(p.minus - ep.z), std::abs(p.plus - ep.z)};
    bool straddles = lex_compare(p.address_minus, s) < 0 && lex_compare(s, p.address_plus) < 0;
    straddle_ok = straddle_ok && straddles;
    for (int side = 0; side < 2; ++side) {
      const ExternalAddress& claimed = side ? p.address_plus : p.address_minus;
      auto it = itinerary(model, side ? p.plus : p.minus, static_cast<std::size_t>(n) + 2);
      bool ok = it.size() == static_cast<std::size_t>(n) + 2;
      for (std::size_t j = 0; ok && j < it.size(); ++j) ok = it[j] == claimed[j];
      itinerary_ok = itinerary_ok && ok;
      if (n > 1) {
        decrease_ok = decrease_ok && d[side] < prev[side];
        ratio_ok = ratio_ok && d[side] / prev[side] <= 0.9;
      }
      prev[side] = d[side];
    }
    levels.push_back({{"n", n},
                      {"z_minus", complex_json(p.minus)},
                      {"z_plus", complex_json(p.plus)},
                      {"address_minus", p.address_minus.to_string()},
                      {"address_plus", p.address_plus.to_string()},
                      {"dist_minus", d[0]},
                      {"dist_plus", d[1]},
                      {"straddles", straddles}});
  }
  json base = {{"address", s.to_string()}, {"z0", complex_json(ep.z)}, {"levels", levels}};
  json checks = json::array();
  checks.push_back(check_entry("straddle", straddle_ok, base));
  checks.push_back(check_entry("itinerary", itinerary_ok));
  checks.push_back(check_entry("distance-decrease", decrease_ok));
  checks.push_back(check_entry("contraction-ratio", ratio_ok, {{"max_ratio", 0.9}, {"from_n", 2}}));
  return checks;
}

json report_json(const CombCheckReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(check_entry(c.name, c.status == CheckStatus::kPass,
                                 {{"status", status_name(c.status)}, {"witnesses", c.witnesses}}));
  }
  json refinements = json::array();
  for (const auto& r : rep.refinements) {
    refinements.push_back(
        {{"address", r.address}, {"dt", r.dt}, {"dphi", r.dphi}, {"dz", r.dz}, {"hausdorff", r.hausdorff}});
  }
  return {{"checks", checks},
          {"refinements", refinements},
          {"depth", rep.options.depth},
          {"tol", rep.options.tol},
          {"arc_T", rep.options.arc_T},
          {"arc_samples", rep.options.arc_samples}};
}

std::vector<ExternalAddress> family_from(const RunConfig& cfg, const LogModel& model) {
  std::vector<TractId> symbols = parse_symbol_list(cfg.symbols);
  for (const auto& id : symbols) {
    if (!model.accepts(id)) throw Error(Errc::kModelMismatch, "symbol " + id.to_string());
  }
  auto family = periodic_family(symbols, cfg.max_period);
  if (family.empty()) throw Error(Errc::kEmptyInput, "empty address family");
  return family;
}

std::vector<double> brush_grid(const RunConfig& cfg) {
  return parse_grid(cfg.t_spec.empty() ? "0.1:5:0.1" : cfg.t_spec);
}

json suite_brush(const LogModel& model, const RunConfig& cfg) {
  auto family = family_from(cfg, model);
  BrushEmbedding b = build_brush(model, family, brush_grid(cfg), cfg.symbols);
  CheckOptions opts;
  opts.depth = static_cast<std::size_t>(cfg.depth.value_or(4));
  opts.tol = cfg.tol;
  CombCheckReport rep = check_brush_axioms(b, model, opts);
  json out = report_json(rep)["checks"];
  out.push_back(check_entry("hair-count", b.hairs.size() == family.size(),
                            {{"hairs", b.hairs.size()}, {"addresses", family.size()}}));
  return out;
}

int cmd_verify(const RunConfig& cfg) {
  static const std::vector<std::string> suites = {"headstart", "expansion", "speedorder", "accumulation",
                                                  "brush-axioms"};
  if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
    throw UsageError("--suite must be one of headstart, expansion, speedorder, accumulation, brush-axioms");
  }
  LogModel model = make_model(cfg, false);
  if (cfg.suite == "headstart") {
    // phi must beat the identity on the sampled range before anything runs
    HeadStartParams phi{cfg.M, cfg.K};
    for (double x : {model.tract_min_re(), detail::kSampleReMax}) {
      if (!(phi.phi(x) > x)) throw Error(Errc::kBadPhi, "phi(x) <= x at x = " + std::to_string(x));
    }
  }
  json checks = json::array({disjoint_check(model)});
  json suite_checks;
  try {
    if (cfg.suite == "headstart") suite_checks = suite_headstart(model, cfg);
    if (cfg.suite == "expansion") suite_checks = suite_expansion(model, cfg);
    if (cfg.suite == "speedorder") suite_checks = suite_speedorder(model, cfg);
    if (cfg.suite == "accumulation") suite_checks = suite_accumulation(model, cfg);
    if (cfg.suite == "brush-axioms") suite_checks = suite_brush(model, cfg);
  } catch (const Error& e) {
    if (exit_code_for(e) == kUsage && model.validate_disjoint_type()) throw;
    suite_checks = json::array({check_entry(cfg.suite, false, {{"error", e.what()}})});
  }
  for (auto& c : suite_checks) checks.push_back(c);
  bool pass = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c["pass"].get<bool>(); });
  json effective = {{"suite", cfg.suite},  {"samples", cfg.samples}, {"seed", cfg.seed},
                    {"M", cfg.M},          {"K", cfg.K},             {"address", cfg.address},
                    {"symbols", cfg.symbols}, {"max_period", cfg.max_period}, {"tol", cfg.tol}};
  if (cfg.depth) effective["depth"] = *cfg.depth;
  if (!cfg.t_spec.empty()) effective["t"] = cfg.t_spec;
  json report = {{"suite", cfg.suite},
                 {"model", model_meta(model)},
                 {"config", config_json(cfg, effective)},
                 {"checks", checks},
                 {"pass", pass}};
  emit(cfg, report.dump(2) + "\n");
  return pass ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- brush

int cmd_brush(const RunConfig& cfg) {
  LogModel model = make_model(cfg, true);
  if (cfg.max_period == 0) throw Error(Errc::kEmptyInput, "--max-period must be positive");
  auto family = family_from(cfg, model);
  std::string t_spec = cfg.t_spec.empty() ? "0.1:5:0.1" : cfg.t_spec;
  std::string generation = "symbols=" + cfg.symbols + " max_period=" + std::to_string(cfg.max_period);
  BrushEmbedding b = build_brush(model, family, parse_grid(t_spec), generation);
  CheckOptions opts;
  opts.depth = static_cast<std::size_t>(cfg.depth.value_or(4));
  opts.tol = cfg.tol;
  CombCheckReport rep = check_brush_axioms(b, model, opts);
  emit(cfg, brush_json(b, model));

  json failures = json::array();
  for (const auto& f : b.failures) failures.push_back({{"address", f.address}, {"reason", f.reason}});
  json effective = {{"symbols", cfg.symbols}, {"max_period", cfg.max_period}, {"t", t_spec},
                    {"depth", opts.depth},    {"tol", opts.tol}};
  emit_meta(cfg, {{"config", config_json(cfg, effective)},
                  {"model", model_meta(model)},
                  {"generation", generation},
                  {"hairs", b.hairs.size()},
                  {"trace_failures", failures},
                  {"axioms", report_json(rep)},
                  {"pass", rep.passed()}});
  return rep.passed() ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- render

int cmd_render(const RunConfig& cfg) {
  LogModel model = make_model(cfg, true);
  auto vp = split_numbers(cfg.viewport, ':');
  if (vp.size() != 4) throw UsageError("--viewport expects xmin:xmax:ymin:ymax");
  RenderConfig rc;
  rc.xmin = vp[0];
  rc.xmax = vp[1];
  rc.ymin = vp[2];
  rc.ymax = vp[3];
  if (!(rc.xmax > rc.xmin) || !(rc.ymax > rc.ymin)) throw UsageError("zero-area viewport");
  auto x = cfg.size.find('x');
  if (x == std::string::npos) throw UsageError("--size expects WxH");
  auto wh = std::vector<double>{split_numbers(cfg.size.substr(0, x), ':').at(0),
                                split_numbers(cfg.size.substr(x + 1), ':').at(0)};
  if (wh[0] < 1 || wh[1] < 1 || wh[0] != std::floor(wh[0]) || wh[1] != std::floor(wh[1]) || wh[0] * wh[1] > 1e8) {
    throw UsageError("--size expects positive integers WxH");
  }
  rc.width = static_cast<int>(wh[0]);
  rc.height = static_cast<int>(wh[1]);
  rc.R = cfg.R;
  rc.depth = cfg.depth.value_or(40);
  if (cfg.plane != "f" && cfg.plane != "log") throw UsageError("--plane must be f or log");
  rc.log_plane = cfg.plane == "log";
  if (!(rc.R > 0.0) || rc.depth <= 0) throw UsageError("--R and --depth must be positive");
  if (cfg.out.empty()) throw UsageError("render needs --out");
  auto bytes = render_ppm(model, rc);
  write_file(cfg.out, std::string(bytes.begin(), bytes.end()));
  json effective = {{"viewport", cfg.viewport}, {"size", cfg.size}, {"R", rc.R},
                    {"depth", rc.depth},        {"plane", cfg.plane}};
  emit_meta(cfg, {{"config", config_json(cfg, effective)}, {"model", model_meta(model)}});
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Hairs and Cantor bouquets of model transcendental entire functions"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("command", cfg.command, "trace | verify | brush | render")
      ->required()
      ->check(CLI::IsMember({"trace", "verify", "brush", "render"}));
  app.add_option("--model", cfg.model, "exp | sine | composite")->check(CLI::IsMember({"exp", "sine", "composite"}));
  app.add_option("--lambda", cfg.lambda, "model parameter (exp 0.25, sine 0.5)");
  app.add_option("--Rf", cfg.rf, "excluded disk radius (exp 2, sine 1)");
  app.add_flag("--allow-non-disjoint", cfg.allow_non_disjoint, "skip the disjoint-type gate");
  app.add_option("--address", cfg.address, "external address, e.g. \"1 2;3\"");
  app.add_option("--t", cfg.t_spec, "potential grid a:b:step");
  app.add_option("--M", cfg.M, "head-start slope");
  app.add_option("--K", cfg.K, "head-start offset");
  app.add_option("--samples", cfg.samples, "sample count");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--suite", cfg.suite, "headstart | expansion | speedorder | accumulation | brush-axioms");
  app.add_option("--symbols", cfg.symbols, "brush symbols, comma list or a:b range");
  app.add_option("--max-period", cfg.max_period, "largest period of brush addresses");
  app.add_option("--viewport", cfg.viewport, "xmin:xmax:ymin:ymax");
  app.add_option("--size", cfg.size, "WxH");
  app.add_option("--R", cfg.R, "escape radius");
  app.add_option("--depth", cfg.depth, "render depth / refinement depth / accumulation depth");
  app.add_option("--tol", cfg.tol, "brush endpoint tolerance");
  app.add_option("--plane", cfg.plane, "f | log");
  app.add_option("--out", cfg.out, "output path (stdout when omitted, except render)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cfg.command == "trace") return cmd_trace(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "brush") return cmd_brush(cfg);
    return cmd_render(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEmptyResult;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"bouquet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace bouquet
