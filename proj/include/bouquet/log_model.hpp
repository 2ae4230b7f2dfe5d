#pragma once

#include <compare>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bouquet/tract.hpp"

namespace bouquet {

using ComplexPoint = std::complex<double>;

enum class Family { kExp, kSine, kComposite };

std::string_view family_name(Family f);

// Re z beyond this raises kOverflow in every evaluation.
inline constexpr double kOverflowRe = 700.0;

struct ModelOptions {
  bool require_disjoint = true;
};

// Logarithmic transform F : T -> H of a model entire function f, with
// exp(F(z)) = f(exp(z)). Immutable after construction.
class LogModel {
 public:
  // f(w) = lambda * e^w
  static LogModel exp(std::complex<double> lambda, double r_f = 2.0, ModelOptions opts = {});
  // f(w) = lambda * sin(w)
  static LogModel sine(std::complex<double> lambda = 0.5, double r_f = 1.0, ModelOptions opts = {});
  // f = chain.back() o ... o chain.front()
  static LogModel composite(std::vector<LogModel> chain, ModelOptions opts = {});

  // Closed-form disjoint-type test for f = lambda e^w.
  static bool exp_disjoint_type(double abs_lambda, double r_f);

  Family family() const { return family_; }
  std::complex<double> lambda() const { return lambda_; }
  std::complex<double> c() const { return c_; }
  double r_f() const { return r_f_; }
  double c0() const { return c0_; }
  double h_threshold() const { return h_threshold_; }
  const std::vector<LogModel>& chain() const { return chain_; }
  // Number of exponential-type maps composed in one application of F.
  std::size_t chain_length() const { return family_ == Family::kComposite ? chain_.size() : 1; }

  ComplexPoint eval_F(ComplexPoint z) const;
  ComplexPoint eval_F_prime(ComplexPoint z) const;
  ComplexPoint eval_f(ComplexPoint w) const;

  // True when F(z) is not representable because Re F(z) is huge and positive.
  bool re_overflow_positive(ComplexPoint z) const;

  std::optional<TractId> classify(ComplexPoint z) const;
  ComplexPoint inverse_branch(const TractId& target, ComplexPoint w) const;
  std::strong_ordering vertical_compare(const TractId& a, const TractId& b) const;
  bool validate_disjoint_type() const;
  double expansion_lower_bound(ComplexPoint z) const;

  // Position of z in the vertical order of tracts and gaps. Meaningful for z in
  // H; nullopt when it cannot be resolved numerically.
  std::optional<ExtendedSymbol> vertical_position(ComplexPoint z) const;

  // Im-coordinate of the tract's central line far to the right.
  double tract_center_im(const TractId& id) const;
  // Lower bound for Re over the closure of the tracts.
  double tract_min_re() const;

  bool accepts(const TractId& id) const;
  // All tract ids whose first atom has k in [kmin, kmax] (one per half and per
  // constituent combination).
  std::vector<TractId> tract_window(std::int64_t kmin, std::int64_t kmax) const;

  std::string describe() const;

 private:
  LogModel() = default;

  ComplexPoint sine_F(ComplexPoint z) const;
  ComplexPoint sine_inverse(const TractId& target, ComplexPoint w) const;
  double sine_band_midpoint(const TractId& id) const;

  Family family_ = Family::kExp;
  std::complex<double> lambda_{0.25, 0.0};
  std::complex<double> c_{};
  std::complex<double> log_half_lambda_{};
  double r_f_ = 2.0;
  double c0_ = 0.0;
  double h_threshold_ = 0.0;
  double min_re_ = 0.0;
  std::vector<LogModel> chain_;
};

}  // namespace bouquet
