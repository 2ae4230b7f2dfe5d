#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bouquet/address.hpp"
#include "bouquet/log_model.hpp"
#include "bouquet/rays.hpp"

namespace bouquet {

struct BrushSample {
  double t = 0.0;
  ComplexPoint z;
};

struct BrushHair {
  ExternalAddress address;
  double ordinate = 0.0;
  double endpoint_t = 0.0;
  ComplexPoint endpoint_z;
  std::vector<BrushSample> samples;  // endpoint first, then the grid
};

struct BrushFailure {
  std::string address;
  std::string reason;
};

struct BrushEmbedding {
  std::vector<BrushHair> hairs;  // sorted by ordinate
  std::string model_tag;
  std::string generation;
  std::vector<double> t_grid;
  std::vector<BrushFailure> failures;
};

// Traces every address (concurrently when threads != 1) and assembles the
// hairs in ordinate order. Grid values below kTFloor are ignored.
BrushEmbedding build_brush(const LogModel& model, const std::vector<ExternalAddress>& addresses,
                           const std::vector<double>& t_grid, std::string generation = {}, unsigned threads = 0);

enum class CheckStatus { kPass, kFail, kInsufficientFamily };

std::string_view status_name(CheckStatus s);

struct AxiomCheck {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::vector<std::string> witnesses;
};

// Distances along the refinement sequence of one hair, indexed by level - 1.
struct RefinementTrace {
  std::string address;
  std::vector<double> dt;         // max over both sides of |t_beta - t_y|
  std::vector<double> dphi;       // max |Phi(beta) - Phi(y)|
  std::vector<double> dz;         // max |z*_beta - z*_y| (closedness proxy)
  std::vector<double> hausdorff;  // arc tails over [t_y, T]
};

// Address straddling `base` from below (side < 0) or above at refinement level n.
using RefineFn = std::function<ExternalAddress(const ExternalAddress& base, std::size_t n, int side)>;

ExternalAddress bump_refinement(const ExternalAddress& base, std::size_t n, int side);

struct CheckOptions {
  std::size_t depth = 4;
  double tol = 1e-2;
  double arc_T = 3.0;
  std::size_t arc_samples = 12;
  RefineFn refine = bump_refinement;
};

struct CombCheckReport {
  CheckOptions options;
  std::vector<AxiomCheck> checks;
  std::vector<RefinementTrace> refinements;

  bool passed() const;
  const AxiomCheck* find(std::string_view name) const;
};

CombCheckReport check_brush_axioms(const BrushEmbedding& b, const LogModel& model, CheckOptions options = {});

// Discrete symmetric Hausdorff distance between two point sets.
double hausdorff_distance(const std::vector<ComplexPoint>& a, const std::vector<ComplexPoint>& b);

// Potential of a point on the hair of s.
double potential_rho(const LogModel& model, ComplexPoint z, const ExternalAddress& s);

struct ZResult {
  bool member = false;
  int steps_checked = 0;
  std::optional<int> failed_at;
  bool overflowed = false;

  explicit operator bool() const { return member; }
};

// rho(F^j(z)) >= K_rho for j = 0..depth, z on the hair of s.
ZResult hairy_subset_Z(const LogModel& model, double K_rho, ComplexPoint z, const ExternalAddress& s,
                       int depth = 60);

}  // namespace bouquet
