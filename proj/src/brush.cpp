#include "bouquet/brush.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "bouquet/error.hpp"

namespace bouquet {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct HairResult {
  std::optional<BrushHair> hair;
  std::vector<BrushFailure> failures;
};

HairResult trace_one(const LogModel& model, const ExternalAddress& s, const std::vector<double>& grid) {
  HairResult out;
  BrushHair hair{s, 0.0, 0.0, {}, {}};
  hair.ordinate = embed_ordinate(s);
  try {
    Endpoint ep = endpoint_estimate(model, s);
    hair.endpoint_t = ep.t;
    hair.endpoint_z = ep.z;
  } catch (const Error& e) {
    out.failures.push_back({s.to_string(), e.what()});
    return out;
  }
  hair.samples.push_back({hair.endpoint_t, hair.endpoint_z});
  for (double t : grid) {
    try {
      RayPoint p = point_at_potential(model, s, t);
      hair.samples.push_back({t, p.z});
    } catch (const Error& e) {
      out.failures.push_back({s.to_string(), "t=" + fmt(t) + ": " + e.what()});
    }
  }
  out.hair = std::move(hair);
  return out;
}

// Levels from 3 on may not increase.
bool settles(const std::vector<double>& v) {
  for (std::size_t i = 2; i < v.size(); ++i) {
    if (!(v[i] <= v[i - 1] * (1.0 + 1e-9) + 1e-12)) return false;
  }
  return true;
}

std::vector<ComplexPoint> arc(const LogModel& model, const ExternalAddress& s, ComplexPoint endpoint,
                              const std::vector<double>& ts) {
  std::vector<ComplexPoint> pts{endpoint};
  for (std::size_t i = 1; i < ts.size(); ++i) pts.push_back(point_at_potential(model, s, ts[i]).z);
  return pts;
}

struct OrbitPotentials {
  bool endpoint = false;
  double endpoint_t = 0.0;
  std::size_t escape_step = 0;
  double escape_re = 0.0;
};

OrbitPotentials orbit_potentials(const LogModel& model, ComplexPoint z, const ExternalAddress& s) {
  OrbitPotentials out;
  Endpoint ep = endpoint_estimate(model, s);
  if (std::abs(z - ep.z) <= 1e-6 * (1.0 + std::abs(ep.z))) {
    out.endpoint = true;
    out.endpoint_t = ep.t;
    return out;
  }
  const double top = std::log(kAnchorCap);
  ComplexPoint x = z;
  for (std::size_t j = 0; j < 4000; ++j) {
    if (x.real() > top) {
      out.escape_step = j;
      out.escape_re = x.real();
      break;
    }
    auto id = model.classify(x);
    if (!id || *id != s[j]) throw Error(Errc::kNotOnHair, "orbit leaves the address at step " + std::to_string(j));
    if (j + 1 == 4000) throw Error(Errc::kNotOnHair, "orbit does not escape");
    x = model.eval_F(x);
  }
  double t = out.escape_re;
  for (std::size_t i = 0; i < out.escape_step; ++i) t = potential_unlevel(model, t);
  RayPoint check;
  try {
    check = point_at_potential(model, s, t);
  } catch (const Error& e) {
    throw Error(Errc::kNotOnHair, e.what());
  }
  if (std::abs(check.z - z) > 1e-6 * (1.0 + std::abs(z))) {
    throw Error(Errc::kNotOnHair, "re-traced point differs by " + fmt(std::abs(check.z - z)));
  }
  return out;
}

}  // namespace

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "PASS";
    case CheckStatus::kFail: return "FAIL";
    case CheckStatus::kInsufficientFamily: return "INSUFFICIENT_FAMILY";
  }
  return "FAIL";
}

BrushEmbedding build_brush(const LogModel& model, const std::vector<ExternalAddress>& addresses,
                           const std::vector<double>& t_grid, std::string generation, unsigned threads) {
  if (addresses.empty()) throw Error(Errc::kEmptyInput, "no addresses");
  std::vector<ExternalAddress> unique = addresses;
  std::sort(unique.begin(), unique.end(), [](const auto& a, const auto& b) { return lex_compare(a, b) < 0; });
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  for (const auto& a : unique) {
    for (const auto* part : {&a.preperiod(), &a.period()}) {
      for (const auto& id : *part) {
        if (!model.accepts(id)) throw Error(Errc::kModelMismatch, "symbol " + id.to_string() + " in " + a.to_string());
      }
    }
  }

  std::vector<double> grid;
  for (double t : t_grid) {
    if (t >= kTFloor) grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<HairResult> results(unique.size());
  unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(unique.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < unique.size(); ++i) results[i] = trace_one(model, unique[i], grid);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < unique.size(); i += n_threads) results[i] = trace_one(model, unique[i], grid);
      });
    }
    for (auto& th : pool) th.join();
  }

  BrushEmbedding b;
  b.model_tag = model.describe();
  b.generation = std::move(generation);
  b.t_grid = grid;
  for (auto& r : results) {
    if (r.hair) b.hairs.push_back(std::move(*r.hair));
    b.failures.insert(b.failures.end(), r.failures.begin(), r.failures.end());
  }
  if (b.hairs.empty()) throw Error(Errc::kEmpty, "every address failed to trace");
  std::stable_sort(b.hairs.begin(), b.hairs.end(),
                   [](const auto& x, const auto& y) { return x.ordinate < y.ordinate; });
  return b;
}

ExternalAddress bump_refinement(const ExternalAddress& base, std::size_t n, int side) {
  return base.with_entry(n, base[n].translated(side < 0 ? -1 : 1));
}

bool CombCheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::kPass; });
}

const AxiomCheck* CombCheckReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double hausdorff_distance(const std::vector<ComplexPoint>& a, const std::vector<ComplexPoint>& b) {
  auto directed = [](const auto& p, const auto& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

CombCheckReport check_brush_axioms(const BrushEmbedding& b, const LogModel& model, CheckOptions options) {
  CombCheckReport rep;
  rep.options = options;
  const auto& hairs = b.hairs;
  const bool enough = hairs.size() >= 2;

  AxiomCheck shape{"hair-shape", CheckStatus::kPass, {}};
  for (const auto& h : hairs) {
    std::string id = "hair " + h.address.to_string() + ": ";
    if (!(h.ordinate > 0.0 && h.ordinate < 1.0)) shape.witnesses.push_back(id + "ordinate " + fmt(h.ordinate));
    for (const auto& s : h.samples) {
      if (s.t < h.endpoint_t - 1e-9) {
        shape.witnesses.push_back(id + "sample at t=" + fmt(s.t) + " below endpoint_t=" + fmt(h.endpoint_t));
        break;
      }
    }
    try {
      Endpoint ep = endpoint_estimate(model, h.address);
      if (std::abs(ep.t - h.endpoint_t) > options.tol || std::abs(ep.z - h.endpoint_z) > options.tol) {
        shape.witnesses.push_back(id + "recorded endpoint (t=" + fmt(h.endpoint_t) + ") is " +
                                  fmt(std::abs(ep.z - h.endpoint_z)) + " from the recomputed one (t=" + fmt(ep.t) + ")");
      }
    } catch (const Error& e) {
      shape.witnesses.push_back(id + e.what());
    }
  }
  if (!shape.witnesses.empty()) shape.status = CheckStatus::kFail;

  AxiomCheck order{"order-fidelity", CheckStatus::kPass, {}};
  for (std::size_t i = 0; i < hairs.size(); ++i) {
    if (std::abs(embed_ordinate(hairs[i].address) - hairs[i].ordinate) > 1e-12) {
      order.witnesses.push_back("hair " + hairs[i].address.to_string() + ": ordinate differs from Phi(address)");
    }
    for (std::size_t j = i + 1; j < hairs.size(); ++j) {
      auto lex = lex_compare(hairs[i].address, hairs[j].address);
      double d = hairs[j].ordinate - hairs[i].ordinate;
      bool ok = (lex < 0 && d > 0) || (lex > 0 && d < 0);
      if (!ok || (i + 1 == j && !(d > 0))) {
        order.witnesses.push_back(hairs[i].address.to_string() + " vs " + hairs[j].address.to_string() +
                                  ": ordinate difference " + fmt(d));
      }
    }
  }
  if (!order.witnesses.empty()) order.status = CheckStatus::kFail;

  AxiomCheck straddle{"straddle", CheckStatus::kPass, {}};
  AxiomCheck accumulation{"endpoint-accumulation", CheckStatus::kPass, {}};
  AxiomCheck closed{"closedness-proxy", CheckStatus::kPass, {}};
  AxiomCheck comb{"comb-hausdorff", CheckStatus::kPass, {}};
  if (!enough) {
    for (auto* c : {&straddle, &accumulation, &closed, &comb}) {
      c->status = CheckStatus::kInsufficientFamily;
      c->witnesses.push_back("brush has " + std::to_string(hairs.size()) + " hair(s); at least 2 are required");
    }
  } else {
    for (const auto& h : hairs) {
      const std::string id = h.address.to_string();
      RefinementTrace tr{id, {}, {}, {}, {}};
      std::vector<double> ts;
      double t_hi = std::max(options.arc_T, h.endpoint_t + 1.0);
      for (std::size_t i = 0; i < options.arc_samples; ++i) {
        ts.push_back(h.endpoint_t + (t_hi - h.endpoint_t) * static_cast<double>(i) /
                                        static_cast<double>(options.arc_samples - 1));
      }
      try {
        auto arc_y = arc(model, h.address, h.endpoint_z, ts);
        for (std::size_t n = 1; n <= options.depth; ++n) {
          double dt = 0.0;
          double dphi = 0.0;
          double dz = 0.0;
          double dh = 0.0;
          for (int side : {-1, 1}) {
            ExternalAddress r = options.refine(h.address, n, side);
            auto c = lex_compare(r, h.address);
            double pr = embed_ordinate(r);
            if ((side < 0 && !(c < 0 && pr < h.ordinate)) || (side > 0 && !(c > 0 && pr > h.ordinate))) {
              straddle.witnesses.push_back("hair " + id + " level " + std::to_string(n) + ": " + r.to_string() +
                                           " does not straddle from " + (side < 0 ? "below" : "above"));
            }
            Endpoint ep = endpoint_estimate(model, r);
            dt = std::max(dt, std::abs(ep.t - h.endpoint_t));
            dphi = std::max(dphi, std::abs(pr - h.ordinate));
            dz = std::max(dz, std::abs(ep.z - h.endpoint_z));
            dh = std::max(dh, hausdorff_distance(arc_y, arc(model, r, ep.z, ts)));
          }
          tr.dt.push_back(dt);
          tr.dphi.push_back(dphi);
          tr.dz.push_back(dz);
          tr.hausdorff.push_back(dh);
        }
      } catch (const Error& e) {
        accumulation.witnesses.push_back("hair " + id + ": " + e.what());
        rep.refinements.push_back(tr);
        continue;
      }
      if (!settles(tr.dt) || tr.dt.back() > options.tol) {
        accumulation.witnesses.push_back("hair " + id + ": |t_beta - t_y| at level " + std::to_string(options.depth) +
                                         " is " + fmt(tr.dt.back()));
      }
      if (!settles(tr.dphi) || tr.dphi.back() > options.tol) {
        accumulation.witnesses.push_back("hair " + id + ": ordinate gap at level " + std::to_string(options.depth) +
                                         " is " + fmt(tr.dphi.back()));
      }
      if (!settles(tr.dz)) closed.witnesses.push_back("hair " + id + ": endpoint distances increase after level 2");
      if (!settles(tr.hausdorff)) {
        comb.witnesses.push_back("hair " + id + ": arc Hausdorff distances increase after level 2");
      }
      rep.refinements.push_back(std::move(tr));
    }
    for (auto* c : {&straddle, &accumulation, &closed, &comb}) {
      if (!c->witnesses.empty()) c->status = CheckStatus::kFail;
    }
  }

  AxiomCheck density{"density", CheckStatus::kPass, {}};
  if (!enough) {
    density.status = CheckStatus::kInsufficientFamily;
    density.witnesses.push_back("brush has " + std::to_string(hairs.size()) + " hair(s); at least 2 are required");
  } else {
    for (std::size_t i = 0; i + 1 < hairs.size(); ++i) {
      const auto& a = hairs[i].address;
      const auto& c = hairs[i + 1].address;
      IntermediateAddress mid = intermediate_between(a, c);
      ExternalAddress ext = external_between(a, mid);
      double pa = embed_ordinate(a);
      double pm = embed_ordinate(mid);
      double pe = embed_ordinate(ext);
      double pc = embed_ordinate(c);
      bool ok = lex_compare(a, mid) < 0 && lex_compare(mid, c) < 0 && lex_compare(a, ext) < 0 &&
                lex_compare(ext, mid) < 0 && pa < pe && pe < pm && pm < pc;
      if (!ok) {
        density.witnesses.push_back("gap " + a.to_string() + " | " + c.to_string() + ": intermediate " +
                                    mid.to_string() + ", external " + ext.to_string());
      }
    }
    if (!density.witnesses.empty()) density.status = CheckStatus::kFail;
  }

  rep.checks = {shape, order, straddle, accumulation, closed, comb, density};
  return rep;
}

double potential_rho(const LogModel& model, ComplexPoint z, const ExternalAddress& s) {
  OrbitPotentials op = orbit_potentials(model, z, s);
  if (op.endpoint) return op.endpoint_t;
  double t = op.escape_re;
  for (std::size_t i = 0; i < op.escape_step; ++i) t = potential_unlevel(model, t);
  return t;
}

ZResult hairy_subset_Z(const LogModel& model, double K_rho, ComplexPoint z, const ExternalAddress& s, int depth) {
  OrbitPotentials op = orbit_potentials(model, z, s);
  ZResult out;
  for (int j = 0; j <= depth; ++j) {
    double rho;
    if (op.endpoint) {
      rho = op.endpoint_t;
    } else if (static_cast<std::size_t>(j) <= op.escape_step) {
      rho = op.escape_re;
      for (std::size_t i = static_cast<std::size_t>(j); i < op.escape_step; ++i) rho = potential_unlevel(model, rho);
    } else {
      // beyond the representable orbit the potential only grows
      out.overflowed = true;
      out.member = true;
      return out;
    }
    if (!(rho >= K_rho)) {
      out.failed_at = j;
      return out;
    }
    out.steps_checked = j + 1;
  }
  out.member = true;
  return out;
}

}  // namespace bouquet
