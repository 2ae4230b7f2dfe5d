#include "bouquet/log_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bouquet/error.hpp"

namespace bouquet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

void check_overflow(ComplexPoint z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(Errc::kOverflow, "non-finite argument");
  }
  if (z.real() > kOverflowRe) throw Error(Errc::kOverflow, "Re z = " + std::to_string(z.real()));
}

// ln|sin u| without overflowing for large |Im u|.
double log_abs_sin(std::complex<double> u) {
  double y = std::abs(u.imag());
  if (y > 20.0) {
    // |sin u| = e^{|y|}/2 * |1 - e^{2iu sign}|, the correction is below 1e-17
    return y - std::numbers::ln2;
  }
  return std::log(std::abs(std::sin(u)));
}

// Split Im z into 2*pi*k + y' with y' in [-pi, pi].
std::pair<std::int64_t, double> band_split(double im) {
  double y = std::remainder(im, kTwoPi);
  auto k = static_cast<std::int64_t>(std::llround((im - y) / kTwoPi));
  return {k, y};
}

}  // namespace

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kOverflow: return "OVERFLOW";
    case Errc::kNotInTract: return "NOT_IN_TRACT";
    case Errc::kOutOfH: return "OUT_OF_H";
    case Errc::kNoConvergence: return "NO_CONVERGENCE";
    case Errc::kModelMismatch: return "MODEL_MISMATCH";
    case Errc::kInfeasibleModel: return "INFEASIBLE_MODEL";
    case Errc::kParse: return "PARSE";
    case Errc::kEqualInputs: return "EQUAL_INPUTS";
    case Errc::kInvalidArgument: return "INVALID_ARGUMENT";
    case Errc::kBadSpec: return "BAD_SPEC";
    case Errc::kNotInJulia: return "NOT_IN_JULIA";
    case Errc::kLeftH: return "LEFT_H";
    case Errc::kEmpty: return "EMPTY";
    case Errc::kEmptyInput: return "EMPTY_INPUT";
    case Errc::kNoEndpointFound: return "NO_ENDPOINT_FOUND";
    case Errc::kBadPhi: return "BAD_PHI";
    case Errc::kAddressMismatch: return "ADDRESS_MISMATCH";
    case Errc::kNotOnHair: return "NOT_ON_HAIR";
  }
  return "UNKNOWN";
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kExp: return "exp";
    case Family::kSine: return "sine";
    case Family::kComposite: return "composite";
  }
  return "unknown";
}

bool LogModel::exp_disjoint_type(double abs_lambda, double r_f) {
  if (!(abs_lambda > 0.0) || !(r_f > 0.0)) return false;
  return std::log(r_f) + std::log(1.0 / abs_lambda) >= r_f;
}

LogModel LogModel::exp(std::complex<double> lambda, double r_f, ModelOptions opts) {
  double a = std::abs(lambda);
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(Errc::kInfeasibleModel, "lambda must be nonzero");
  if (!(r_f > a) || !std::isfinite(r_f)) {
    throw Error(Errc::kInfeasibleModel, "R_f must exceed |lambda| so the disk covers {0, f(0)}");
  }
  LogModel m;
  m.family_ = Family::kExp;
  m.lambda_ = lambda;
  m.c_ = std::log(lambda);
  m.r_f_ = r_f;
  m.c0_ = std::log(r_f / a);
  m.h_threshold_ = std::log(r_f);
  m.min_re_ = std::log(m.c0_);
  if (opts.require_disjoint && !m.validate_disjoint_type()) {
    std::ostringstream msg;
    msg << "not of disjoint type: ln Rf + ln(1/|lambda|) = " << m.c0_ << " < Rf = " << r_f;
    throw Error(Errc::kInfeasibleModel, msg.str());
  }
  return m;
}

LogModel LogModel::sine(std::complex<double> lambda, double r_f, ModelOptions opts) {
  double a = std::abs(lambda);
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(Errc::kInfeasibleModel, "lambda must be nonzero");
  if (!(r_f > a) || !std::isfinite(r_f)) {
    throw Error(Errc::kInfeasibleModel, "R_f must exceed |lambda| so the disk covers the critical values");
  }
  LogModel m;
  m.family_ = Family::kSine;
  m.lambda_ = lambda;
  m.c_ = std::log(lambda);
  m.log_half_lambda_ = std::log(lambda / 2.0);
  m.r_f_ = r_f;
  m.c0_ = std::log(r_f / a);
  m.h_threshold_ = std::log(r_f);

  // Leftmost boundary point of the upper tract, scanned over the band. The
  // tract geometry depends on |lambda| only, and the lower tract is the mirror.
  double log_a = std::log(a);
  auto inside = [&](double x, double y) {
    return log_a + log_abs_sin(std::exp(std::complex<double>(x, y))) > m.h_threshold_;
  };
  double best = 1e300;
  constexpr int kRows = 400;
  for (int r = 1; r < kRows; ++r) {
    double y = kPi * r / kRows;
    double x = -6.0;
    while (x < 80.0 && !inside(x, y)) x += 0.02;
    double lo = x - 0.02;
    double hi = x;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (inside(mid, y) ? hi : lo) = mid;
    }
    best = std::min(best, lo);
  }
  m.min_re_ = best;
  if (opts.require_disjoint && !m.validate_disjoint_type()) {
    std::ostringstream msg;
    msg << "not of disjoint type: tract boundary reaches Re = " << best << " <= " << m.h_threshold_;
    throw Error(Errc::kInfeasibleModel, msg.str());
  }
  return m;
}

LogModel LogModel::composite(std::vector<LogModel> chain, ModelOptions opts) {
  std::vector<LogModel> flat;
  for (auto& part : chain) {
    if (part.family_ == Family::kComposite) {
      flat.insert(flat.end(), part.chain_.begin(), part.chain_.end());
    } else {
      flat.push_back(std::move(part));
    }
  }
  if (flat.size() < 2) throw Error(Errc::kInfeasibleModel, "composite needs at least two maps");
  if (flat.size() > TractId::kMaxChain) throw Error(Errc::kInfeasibleModel, "composite chain too long");
  LogModel m;
  m.family_ = Family::kComposite;
  m.chain_ = std::move(flat);
  m.r_f_ = m.chain_.back().r_f_;
  m.h_threshold_ = m.chain_.back().h_threshold_;
  m.min_re_ = m.chain_.front().min_re_;
  m.lambda_ = m.chain_.front().lambda_;
  m.c_ = m.chain_.front().c_;
  m.c0_ = m.chain_.front().c0_;
  if (opts.require_disjoint && !m.validate_disjoint_type()) {
    throw Error(Errc::kInfeasibleModel, "composite chain is not of disjoint type");
  }
  return m;
}

ComplexPoint LogModel::sine_F(ComplexPoint z) const {
  check_overflow(z);
  std::complex<double> u = std::exp(z);
  if (u.imag() >= 0.0) {
    return log_half_lambda_ + kI * (kPi / 2) - kI * u + std::log(1.0 - std::exp(2.0 * kI * u));
  }
  return log_half_lambda_ - kI * (kPi / 2) + kI * u + std::log(1.0 - std::exp(-2.0 * kI * u));
}

ComplexPoint LogModel::eval_F(ComplexPoint z) const {
  switch (family_) {
    case Family::kExp:
      check_overflow(z);
      return std::exp(z) + c_;
    case Family::kSine:
      return sine_F(z);
    case Family::kComposite: {
      ComplexPoint w = z;
      for (const auto& part : chain_) w = part.eval_F(w);
      return w;
    }
  }
  return {};
}

ComplexPoint LogModel::eval_F_prime(ComplexPoint z) const {
  switch (family_) {
    case Family::kExp:
      check_overflow(z);
      return std::exp(z);
    case Family::kSine: {
      check_overflow(z);
      std::complex<double> u = std::exp(z);
      std::complex<double> cot;
      if (u.imag() >= 0.0) {
        std::complex<double> q = std::exp(2.0 * kI * u);
        cot = -kI * (1.0 + q) / (1.0 - q);
      } else {
        std::complex<double> q = std::exp(-2.0 * kI * u);
        cot = kI * (1.0 + q) / (1.0 - q);
      }
      return u * cot;
    }
    case Family::kComposite: {
      ComplexPoint w = z;
      ComplexPoint d = 1.0;
      for (const auto& part : chain_) {
        d *= part.eval_F_prime(w);
        w = part.eval_F(w);
      }
      return d;
    }
  }
  return {};
}

ComplexPoint LogModel::eval_f(ComplexPoint w) const {
  switch (family_) {
    case Family::kExp:
      return lambda_ * std::exp(w);
    case Family::kSine:
      return lambda_ * std::sin(w);
    case Family::kComposite: {
      for (const auto& part : chain_) w = part.eval_f(w);
      return w;
    }
  }
  return {};
}

bool LogModel::re_overflow_positive(ComplexPoint z) const {
  switch (family_) {
    case Family::kExp: {
      double cy = std::cos(z.imag());
      return cy > 0.0 && z.real() + std::log(cy) > kOverflowRe;
    }
    case Family::kSine: {
      double s = std::abs(std::sin(z.imag()));
      return s > 0.0 && z.real() + std::log(s) > kOverflowRe;
    }
    case Family::kComposite: {
      ComplexPoint w = z;
      for (const auto& part : chain_) {
        if (part.re_overflow_positive(w)) return true;
        try {
          w = part.eval_F(w);
        } catch (const Error&) {
          return false;
        }
      }
      return false;
    }
  }
  return false;
}

std::optional<TractId> LogModel::classify(ComplexPoint z) const {
  switch (family_) {
    case Family::kExp: {
      double cy = std::cos(z.imag());
      if (!(cy > 0.0)) return std::nullopt;
      // Re e^z > c0, written so large Re z cannot overflow
      if (!(std::log(cy) + z.real() > std::log(c0_))) return std::nullopt;
      return TractId(static_cast<std::int64_t>(std::llround(z.imag() / kTwoPi)));
    }
    case Family::kSine: {
      auto [k, y] = band_split(z.imag());
      double s = std::sin(y);
      if (s == 0.0 || std::abs(y) >= kPi) return std::nullopt;
      Half half = s > 0.0 ? Half::kUpper : Half::kLower;
      double re;
      if (z.real() > kOverflowRe) {
        double lg = z.real() + std::log(std::abs(s));
        if (lg > kOverflowRe) return TractId(k, half);
        throw Error(Errc::kOverflow, "cannot classify at Re z = " + std::to_string(z.real()));
      }
      re = std::log(std::abs(lambda_)) + log_abs_sin(std::exp(z));
      if (!(re > h_threshold_)) return std::nullopt;
      return TractId(k, half);
    }
    case Family::kComposite: {
      ComplexPoint w = z;
      std::optional<TractId> out;
      for (const auto& part : chain_) {
        auto id = part.classify(w);
        if (!id) return std::nullopt;
        out = out ? TractId::product(*out, *id) : *id;
        if (&part != &chain_.back()) w = part.eval_F(w);
      }
      return out;
    }
  }
  return std::nullopt;
}

ComplexPoint LogModel::sine_inverse(const TractId& target, ComplexPoint w) const {
  const bool upper = target[0].half == Half::kUpper;
  const double sign = upper ? 1.0 : -1.0;
  auto h = [&](std::complex<double> u) {
    return log_half_lambda_ + sign * kI * (kPi / 2) - sign * kI * u +
           std::log(1.0 - std::exp(sign * 2.0 * kI * u));
  };
  auto dh = [&](std::complex<double> u) {
    std::complex<double> q = std::exp(sign * 2.0 * kI * u);
    return -sign * kI * (1.0 + q) / (1.0 - q);
  };
  const double tol = 1e-12 * (1.0 + std::abs(w));
  std::complex<double> u = sign * kI * (w - log_half_lambda_) + kPi / 2;
  std::complex<double> r = h(u) - w;
  for (int step = 0; step < 60 && std::abs(r) > tol; ++step) {
    std::complex<double> delta = r / dh(u);
    double alpha = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving) {
      std::complex<double> trial = u - alpha * delta;
      if (sign * trial.imag() > 0.0) {
        std::complex<double> rt = h(trial) - w;
        if (std::abs(rt) < std::abs(r)) {
          u = trial;
          r = rt;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  ComplexPoint z = std::log(u) + kI * (kTwoPi * static_cast<double>(target.k()));
  ComplexPoint back = eval_F(z);
  auto got = classify(z);
  if (std::abs(back - w) > 1e-10 * (1.0 + std::abs(w)) || !got || *got != target) {
    throw Error(Errc::kNoConvergence, "Newton inverse failed for tract " + target.to_string());
  }
  return z;
}

ComplexPoint LogModel::inverse_branch(const TractId& target, ComplexPoint w) const {
  if (!accepts(target)) throw Error(Errc::kModelMismatch, "tract id " + target.to_string());
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw Error(Errc::kOutOfH, "non-finite w");
  switch (family_) {
    case Family::kExp:
      if (!(w.real() > h_threshold_)) throw Error(Errc::kOutOfH, "Re w = " + std::to_string(w.real()));
      return std::log(w - c_) + kI * (kTwoPi * static_cast<double>(target.k()));
    case Family::kSine:
      if (!(w.real() > h_threshold_)) throw Error(Errc::kOutOfH, "Re w = " + std::to_string(w.real()));
      return sine_inverse(target, w);
    case Family::kComposite: {
      ComplexPoint z = w;
      for (std::size_t i = chain_.size(); i-- > 0;) {
        TractId atom(target[i].k, target[i].half);
        z = chain_[i].inverse_branch(atom, z);
      }
      return z;
    }
  }
  return {};
}

double LogModel::sine_band_midpoint(const TractId& id) const {
  constexpr double kX = 50.0;
  double c = tract_center_im(id);
  auto inside = [&](double y) {
    auto got = classify({kX, y});
    return got && *got == id;
  };
  if (!inside(c)) throw Error(Errc::kNoConvergence, "band centre outside tract " + id.to_string());
  auto edge = [&](double out) {
    double in = c;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (in + out);
      (inside(mid) ? in : out) = mid;
    }
    return in;
  };
  return 0.5 * (edge(c - kPi / 2) + edge(c + kPi / 2));
}

std::strong_ordering LogModel::vertical_compare(const TractId& a, const TractId& b) const {
  if (!accepts(a) || !accepts(b)) throw Error(Errc::kModelMismatch, "tract ids do not belong to this model");
  switch (family_) {
    case Family::kExp:
      return a.k() <=> b.k();
    case Family::kSine: {
      if (a == b) return std::strong_ordering::equal;
      double ma = sine_band_midpoint(a);
      double mb = sine_band_midpoint(b);
      return ma < mb ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    case Family::kComposite:
      for (std::size_t i = 0; i < chain_.size(); ++i) {
        auto c = chain_[i].vertical_compare(TractId(a[i].k, a[i].half), TractId(b[i].k, b[i].half));
        if (c != 0) return c;
      }
      return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

bool LogModel::validate_disjoint_type() const {
  switch (family_) {
    case Family::kExp:
      return exp_disjoint_type(std::abs(lambda_), r_f_);
    case Family::kSine:
      return min_re_ > h_threshold_;
    case Family::kComposite:
      for (std::size_t i = 0; i < chain_.size(); ++i) {
        if (!chain_[i].validate_disjoint_type()) return false;
        if (i > 0 && !(chain_[i].min_re_ > chain_[i - 1].h_threshold_)) return false;
      }
      return chain_.front().min_re_ > h_threshold_;
  }
  return false;
}

double LogModel::expansion_lower_bound(ComplexPoint z) const {
  ComplexPoint fz = eval_F(z);
  if (!(fz.real() >= h_threshold_ - 1e-12 * (1.0 + std::abs(h_threshold_)))) {
    throw Error(Errc::kNotInTract, "F(z) is not in the closure of H");
  }
  return std::max(0.0, fz.real() - h_threshold_) / (4.0 * kPi);
}

std::optional<ExtendedSymbol> LogModel::vertical_position(ComplexPoint z) const {
  auto id = classify(z);
  if (family_ != Family::kComposite && id) return ExtendedSymbol::tract(*id);
  switch (family_) {
    case Family::kExp: {
      auto [k, y] = band_split(z.imag());
      return ExtendedSymbol::cut(TractId(y >= 0.0 ? k : k - 1));
    }
    case Family::kSine: {
      auto [k, y] = band_split(z.imag());
      if (y >= kPi / 2) return ExtendedSymbol::cut(TractId(k, Half::kUpper));
      if (y >= 0.0) return ExtendedSymbol::cut(TractId(k, Half::kLower));
      if (y >= -kPi / 2) return ExtendedSymbol::cut(TractId(k, Half::kLower));
      return ExtendedSymbol::cut(TractId(k - 1, Half::kUpper));
    }
    case Family::kComposite: {
      auto pos = chain_.front().vertical_position(z);
      if (!pos || pos->is_cut()) return std::nullopt;
      ComplexPoint w = z;
      TractId acc = pos->id;
      for (std::size_t i = 1; i < chain_.size(); ++i) {
        w = chain_[i - 1].eval_F(w);
        auto p = chain_[i].vertical_position(w);
        if (!p) return std::nullopt;
        acc = TractId::product(acc, p->id);
        if (p->is_cut()) return ExtendedSymbol::cut(acc);
      }
      return ExtendedSymbol::tract(acc);
    }
  }
  return std::nullopt;
}

double LogModel::tract_center_im(const TractId& id) const {
  double base = kTwoPi * static_cast<double>(id.k());
  switch (id[0].half) {
    case Half::kUpper: return base + kPi / 2;
    case Half::kLower: return base - kPi / 2;
    case Half::kNone: return base;
  }
  return base;
}

double LogModel::tract_min_re() const { return min_re_; }

bool LogModel::accepts(const TractId& id) const {
  switch (family_) {
    case Family::kExp:
      return id.size() == 1 && id[0].half == Half::kNone;
    case Family::kSine:
      return id.size() == 1 && id[0].half != Half::kNone;
    case Family::kComposite:
      if (id.size() != chain_.size()) return false;
      for (std::size_t i = 0; i < chain_.size(); ++i) {
        if (!chain_[i].accepts(TractId(id[i].k, id[i].half))) return false;
      }
      return true;
  }
  return false;
}

std::vector<TractId> LogModel::tract_window(std::int64_t kmin, std::int64_t kmax) const {
  std::vector<TractId> out;
  switch (family_) {
    case Family::kExp:
      for (auto k = kmin; k <= kmax; ++k) out.emplace_back(k);
      break;
    case Family::kSine:
      for (auto k = kmin; k <= kmax; ++k) {
        out.emplace_back(k, Half::kLower);
        out.emplace_back(k, Half::kUpper);
      }
      break;
    case Family::kComposite: {
      out = chain_.front().tract_window(kmin, kmax);
      for (std::size_t i = 1; i < chain_.size(); ++i) {
        std::vector<TractId> next;
        for (const auto& a : out) {
          for (const auto& b : chain_[i].tract_window(kmin, kmax)) next.push_back(TractId::product(a, b));
        }
        out = std::move(next);
      }
      break;
    }
  }
  return out;
}

std::string LogModel::describe() const {
  std::ostringstream s;
  s.precision(12);
  if (family_ == Family::kComposite) {
    s << "composite(";
    for (std::size_t i = 0; i < chain_.size(); ++i) s << (i ? ", " : "") << chain_[i].describe();
    s << ")";
    return s.str();
  }
  s << family_name(family_) << "(lambda=" << lambda_.real();
  if (lambda_.imag() != 0.0) s << (lambda_.imag() > 0 ? "+" : "") << lambda_.imag() << "i";
  s << ", Rf=" << r_f_ << ")";
  return s.str();
}

}  // namespace bouquet
