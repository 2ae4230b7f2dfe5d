#include "bouquet/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bouquet/error.hpp"
#include "sampling.hpp"

namespace bouquet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSlope = std::exp(kTFloor) / kTFloor;
const double kFloorImage = std::exp(kTFloor);
constexpr int kMaxLevels = 4000;

// Values of the potential tower t, E(t), E^2(t), ... up to the anchor cap.
// Empty when the tower does not escape (t <= 0).
std::vector<double> tower(const LogModel& model, double t) {
  std::vector<double> out;
  if (!(t > 0.0) || !std::isfinite(t)) return out;
  out.push_back(t);
  while (static_cast<int>(out.size()) <= kMaxLevels) {
    double next = potential_level(model, out.back());
    if (!(next <= kAnchorCap)) return out;
    out.push_back(next);
  }
  return {};
}

}  // namespace

namespace detail {

ComplexPoint sample_in_tract(const LogModel& model, const TractId& id, Sampler& rng) {
  if (model.family() == Family::kComposite) {
    const auto& chain = model.chain();
    std::size_t n = chain.size();
    TractId last(id[n - 1].k, id[n - 1].half);
    ComplexPoint z = sample_in_tract(chain.back(), last, rng);
    for (std::size_t i = n - 1; i-- > 0;) z = chain[i].inverse_branch(TractId(id[i].k, id[i].half), z);
    return z;
  }
  double x_lo = model.tract_min_re();
  double c = model.tract_center_im(id);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    double x = rng.log_offset(x_lo, 1e-3, kSampleReMax - x_lo);
    double y = rng.uniform(c - std::numbers::pi / 2, c + std::numbers::pi / 2);
    ComplexPoint z{x, y};
    auto got = model.classify(z);
    if (got && *got == id) return z;
  }
  throw Error(Errc::kNoConvergence, "could not sample tract " + id.to_string());
}

}  // namespace detail

double potential_step(double t) { return t >= kTFloor ? std::exp(t) : kSlope * t; }

double potential_unstep(double x) { return x >= kFloorImage ? std::log(x) : x / kSlope; }

double potential_level(const LogModel& model, double t) {
  for (std::size_t i = 0; i < model.chain_length(); ++i) t = potential_step(t);
  return t;
}

double potential_unlevel(const LogModel& model, double x) {
  for (std::size_t i = 0; i < model.chain_length(); ++i) x = potential_unstep(x);
  return x;
}

ComplexPoint pullback_chain(const LogModel& model, const ExternalAddress& s, std::size_t n, ComplexPoint anchor,
                            std::vector<ComplexPoint>* chain) {
  if (!(anchor.real() > model.h_threshold())) throw Error(Errc::kLeftH, "anchor outside H");
  if (chain) chain->assign(n + 1, ComplexPoint{});
  ComplexPoint w = anchor;
  if (chain) (*chain)[n] = w;
  for (std::size_t j = n; j-- > 0;) {
    try {
      w = model.inverse_branch(s[j], w);
    } catch (const Error& e) {
      if (e.code() == Errc::kOutOfH) throw Error(Errc::kLeftH, "pullback left H at level " + std::to_string(j));
      throw;
    }
    if (chain) (*chain)[j] = w;
  }
  return w;
}

RayPoint point_at_potential(const LogModel& model, const ExternalAddress& s, double t) {
  std::vector<double> levels = tower(model, t);
  if (levels.empty()) throw Error(Errc::kLeftH, "potential " + std::to_string(t) + " does not escape");
  std::size_t n = levels.size() - 1;
  ComplexPoint anchor{levels[n], model.tract_center_im(s[n])};
  std::vector<ComplexPoint> chain;
  ComplexPoint z = pullback_chain(model, s, n, anchor, &chain);
  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexPoint fz = model.eval_F(chain[j]);
    residual = std::max(residual, std::abs(fz - chain[j + 1]) / (1.0 + std::abs(chain[j + 1])));
  }
  auto id = model.classify(z);
  if (!id || *id != s[0]) throw Error(Errc::kLeftH, "traced point is not in tract " + s[0].to_string());
  return {t, z, static_cast<int>(n), residual};
}

TracedHair trace_hair(const LogModel& model, const ExternalAddress& s, const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= kTFloor)) throw Error(Errc::kInvalidArgument, "t below t_floor in grid");
    if (i && !(t_grid[i] > t_grid[i - 1])) throw Error(Errc::kInvalidArgument, "t grid must be increasing");
  }
  TracedHair hair{s, {}, std::nullopt, {}};
  for (double t : t_grid) {
    try {
      hair.points.push_back(point_at_potential(model, s, t));
    } catch (const Error& e) {
      hair.failures.push_back({t, e.what()});
    }
  }
  if (hair.points.empty()) throw Error(Errc::kEmpty, "no grid point could be traced for " + s.to_string());
  try {
    hair.endpoint_t = endpoint_estimate(model, s).t;
  } catch (const Error&) {
    hair.endpoint_t.reset();
  }
  return hair;
}

Endpoint endpoint_estimate(const LogModel& model, const ExternalAddress& s) {
  // z*: attracting fixed point of the composed period branches, then the preperiod.
  const auto& per = s.period();
  const auto& pre = s.preperiod();
  ComplexPoint w{model.h_threshold() + 10.0, model.tract_center_im(per.front())};
  bool converged = false;
  for (int it = 0; it < 5000 && !converged; ++it) {
    ComplexPoint prev = w;
    for (std::size_t j = per.size(); j-- > 0;) w = model.inverse_branch(per[j], w);
    converged = std::abs(w - prev) <= 1e-15 * (1.0 + std::abs(w));
    if (!converged && it > 100 && std::abs(w - prev) <= 1e-13 * (1.0 + std::abs(w))) converged = true;
  }
  if (!converged) throw Error(Errc::kNoEndpointFound, "period fixed point did not converge for " + s.to_string());
  for (std::size_t j = pre.size(); j-- > 0;) w = model.inverse_branch(pre[j], w);

  auto exists = [&](double t) {
    try {
      point_at_potential(model, s, t);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  double lo = -1.0;
  double hi = kTFloor;
  if (exists(lo) || !exists(hi)) {
    throw Error(Errc::kNoEndpointFound, "no potential bracket in [-1, t_floor] for " + s.to_string());
  }
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    (exists(mid) ? hi : lo) = mid;
  }
  return {hi, w};
}

HeadStartReport head_start_verify(const LogModel& model, HeadStartParams params, std::size_t n_samples,
                                  std::uint64_t seed) {
  HeadStartReport rep;
  rep.params = params;
  rep.seed = seed;
  rep.requested = n_samples;
  rep.x_min = model.tract_min_re();
  rep.x_max = detail::kSampleReMax;
  for (double x : {rep.x_min, rep.x_max}) {
    if (!(params.phi(x) > x)) {
      throw Error(Errc::kBadPhi, "phi(x) <= x at x = " + std::to_string(x));
    }
  }
  detail::Sampler rng(seed);
  const auto window = model.tract_window(-3, 3);
  const std::size_t max_attempts = 50 * std::max<std::size_t>(n_samples, 1);
  while (rep.applicable < n_samples && rep.attempts < max_attempts) {
    ++rep.attempts;
    const TractId& image = window[rng.index(window.size())];
    const TractId& source = window[rng.index(window.size())];
    ComplexPoint zeta = detail::sample_in_tract(model, image, rng);
    ComplexPoint omega = detail::sample_in_tract(model, image, rng);
    ComplexPoint z = model.inverse_branch(source, zeta);
    ComplexPoint w = model.inverse_branch(source, omega);
    if (w.real() > params.phi(z.real())) {
      ++rep.applicable;
      if (!(omega.real() > params.phi(zeta.real()))) {
        rep.violations.push_back({z, w, zeta.real(), omega.real()});
      }
    } else if (z.real() > params.phi(w.real())) {
      ++rep.applicable;
      if (!(zeta.real() > params.phi(omega.real()))) {
        rep.violations.push_back({w, z, omega.real(), zeta.real()});
      }
    } else {
      ++rep.not_applicable;
    }
  }
  return rep;
}

ExpansionReport expansion_verify(const LogModel& model, std::size_t n_samples, std::uint64_t seed) {
  ExpansionReport rep;
  rep.seed = seed;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  detail::Sampler rng(seed);
  const auto window = model.tract_window(-3, 3);
  for (std::size_t i = 0; i < n_samples; ++i) {
    ComplexPoint z = detail::sample_in_tract(model, window[rng.index(window.size())], rng);
    double d = std::abs(model.eval_F_prime(z));
    double bound = model.expansion_lower_bound(z);
    ++rep.samples;
    if (bound > 0.0) rep.min_ratio = std::min(rep.min_ratio, d / bound);
    if (!(d >= bound)) rep.violations.push_back({z, d, bound});
  }
  return rep;
}

std::string_view verdict_name(SpeedVerdict v) {
  switch (v) {
    case SpeedVerdict::kLT: return "LT";
    case SpeedVerdict::kGT: return "GT";
    case SpeedVerdict::kUndecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

namespace {

// One forward step that reports growth past the representable range as +inf.
struct Orbit {
  ComplexPoint z;
  bool infinite = false;
  bool lost = false;  // overflow without a definite sign

  double re() const { return infinite ? std::numeric_limits<double>::infinity() : z.real(); }

  void advance(const LogModel& model) {
    if (infinite || lost) return;
    // Im z no longer resolves a tract this far out
    if (z.real() > kOverflowRe) {
      infinite = true;
      return;
    }
    try {
      z = model.eval_F(z);
    } catch (const Error& e) {
      if (e.code() != Errc::kOverflow) throw;
      (model.re_overflow_positive(z) ? infinite : lost) = true;
    }
  }
};

}  // namespace

SpeedOrderResult speed_compare(const LogModel& model, HeadStartParams params, ComplexPoint z, ComplexPoint w,
                               int j_max) {
  Orbit a{z};
  Orbit b{w};
  for (int j = 0; j <= j_max; ++j) {
    if (a.lost || b.lost || (a.infinite && b.infinite)) break;
    if (b.re() > params.phi(a.re())) return {SpeedVerdict::kGT, j};
    if (a.re() > params.phi(b.re())) return {SpeedVerdict::kLT, j};
    auto ta = model.classify(a.z);
    auto tb = model.classify(b.z);
    bool resolved = a.z.real() <= kOverflowRe && b.z.real() <= kOverflowRe;
    if (resolved && (!ta || !tb || *ta != *tb)) {
      throw Error(Errc::kAddressMismatch, "itineraries differ at step " + std::to_string(j));
    }
    a.advance(model);
    b.advance(model);
  }
  return {SpeedVerdict::kUndecided, std::nullopt};
}

JRResult in_JR(const LogModel& model, ComplexPoint z, double R, int depth) {
  JRResult out;
  Orbit o{z};
  for (int j = 0; j <= depth; ++j) {
    if (o.infinite) {
      out.member = true;
      out.overflowed = true;
      out.reason = "Re grew past the representable range at step " + std::to_string(j);
      return out;
    }
    if (o.lost) {
      out.reason = "overflow with undetermined real part at step " + std::to_string(j);
      return out;
    }
    if (!(o.z.real() >= R)) {
      out.reason = "Re F^" + std::to_string(j) + "(z) < R";
      return out;
    }
    if (o.z.real() <= kOverflowRe && !model.classify(o.z)) {
      out.reason = "F^" + std::to_string(j) + "(z) left the tracts";
      return out;
    }
    out.steps_checked = j + 1;
    o.advance(model);
  }
  out.member = true;
  out.reason = "depth reached";
  return out;
}

AccumulationPair accumulation_neighbors(const LogModel& model, ComplexPoint z0, const ExternalAddress& s,
                                        std::size_t n) {
  ComplexPoint x = z0;
  for (std::size_t j = 0; j < n; ++j) {
    auto id = model.classify(x);
    if (!id || *id != s[j]) throw Error(Errc::kAddressMismatch, "orbit of z0 leaves s at step " + std::to_string(j));
    x = model.eval_F(x);
  }
  const ComplexPoint shift{0.0, kTwoPi};
  return {pullback_chain(model, s, n, x - shift), pullback_chain(model, s, n, x + shift),
          s.with_entry(n, s[n].translated(-1)), s.with_entry(n, s[n].translated(1))};
}

std::vector<TractId> itinerary(const LogModel& model, ComplexPoint z, std::size_t length) {
  std::vector<TractId> out;
  for (std::size_t j = 0; j < length && z.real() <= kOverflowRe; ++j) {
    auto id = model.classify(z);
    if (!id) break;
    out.push_back(*id);
    if (j + 1 == length) break;
    try {
      z = model.eval_F(z);
    } catch (const Error&) {
      break;
    }
  }
  return out;
}

}  // namespace bouquet
