#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bouquet/address.hpp"
#include "bouquet/log_model.hpp"

namespace bouquet {

// Smallest potential accepted by trace_hair.
inline constexpr double kTFloor = 0.1;
// Anchor towers stop at the last level not exceeding this value.
inline constexpr double kAnchorCap = 1e300;

// Model map on potentials: e^t above kTFloor, the linear continuation with
// slope e^kTFloor / kTFloor below it. Its repelling fixed point 0 is the
// potential of every endpoint.
double potential_step(double t);
double potential_unstep(double x);
// One application per constituent map of the model.
double potential_level(const LogModel& model, double t);
double potential_unlevel(const LogModel& model, double x);

// F_{s_0}^{-1} o ... o F_{s_{n-1}}^{-1}(anchor). If `chain` is given it receives
// the intermediate points, chain[j] being the point mapped into s_j.
ComplexPoint pullback_chain(const LogModel& model, const ExternalAddress& s, std::size_t n, ComplexPoint anchor,
                            std::vector<ComplexPoint>* chain = nullptr);

struct RayPoint {
  double t = 0.0;
  ComplexPoint z;
  int depth = 0;
  double residual = 0.0;
};

struct TraceFailure {
  double t = 0.0;
  std::string reason;
};

struct TracedHair {
  ExternalAddress address;
  std::vector<RayPoint> points;
  std::optional<double> endpoint_t;
  std::vector<TraceFailure> failures;
};

// Point of the hair at potential t > 0 (below kTFloor as well).
RayPoint point_at_potential(const LogModel& model, const ExternalAddress& s, double t);
TracedHair trace_hair(const LogModel& model, const ExternalAddress& s, const std::vector<double>& t_grid);

struct Endpoint {
  double t = 0.0;
  ComplexPoint z;
};

Endpoint endpoint_estimate(const LogModel& model, const ExternalAddress& s);

struct HeadStartParams {
  double M = 2.0;
  double K = 1.0;
  double phi(double x) const { return M * x + K; }
};

struct HeadStartViolation {
  ComplexPoint z;
  ComplexPoint w;
  double re_fz = 0.0;
  double re_fw = 0.0;
};

struct HeadStartReport {
  HeadStartParams params;
  std::uint64_t seed = 0;
  std::size_t requested = 0;
  std::size_t attempts = 0;
  std::size_t applicable = 0;
  std::size_t not_applicable = 0;
  std::size_t min_applicable = 100;
  double x_min = 0.0;
  double x_max = 0.0;
  std::vector<HeadStartViolation> violations;

  bool passed() const { return violations.empty() && applicable >= min_applicable; }
};

HeadStartReport head_start_verify(const LogModel& model, HeadStartParams params, std::size_t n_samples,
                                  std::uint64_t seed);

struct ExpansionViolation {
  ComplexPoint z;
  double derivative = 0.0;
  double bound = 0.0;
};

struct ExpansionReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double min_ratio = 0.0;  // min |F'| / bound over samples with bound > 0
  std::vector<ExpansionViolation> violations;

  bool passed() const { return samples > 0 && violations.empty(); }
};

ExpansionReport expansion_verify(const LogModel& model, std::size_t n_samples, std::uint64_t seed);

enum class SpeedVerdict { kLT, kGT, kUndecided };

std::string_view verdict_name(SpeedVerdict v);

struct SpeedOrderResult {
  SpeedVerdict verdict = SpeedVerdict::kUndecided;
  std::optional<int> witness_j;
};

SpeedOrderResult speed_compare(const LogModel& model, HeadStartParams params, ComplexPoint z, ComplexPoint w,
                               int j_max = 50);

struct JRResult {
  bool member = false;
  int steps_checked = 0;   // iterates F^0 .. F^{steps_checked - 1} were verified
  bool overflowed = false; // stopped early because Re grew past the representable range
  std::string reason;

  explicit operator bool() const { return member; }
};

JRResult in_JR(const LogModel& model, ComplexPoint z, double R, int depth = 60);

struct AccumulationPair {
  ComplexPoint minus;
  ComplexPoint plus;
  ExternalAddress address_minus;
  ExternalAddress address_plus;
};

AccumulationPair accumulation_neighbors(const LogModel& model, ComplexPoint z0, const ExternalAddress& s,
                                        std::size_t n);

// Tract itinerary of z for `length` steps; shorter when the orbit leaves the
// tracts or overflows.
std::vector<TractId> itinerary(const LogModel& model, ComplexPoint z, std::size_t length);

}  // namespace bouquet
