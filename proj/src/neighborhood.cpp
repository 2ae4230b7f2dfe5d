#include "bouquet/neighborhood.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "bouquet/error.hpp"

namespace bouquet {

namespace {

enum class Step { kOk, kGrew, kLost };

Step advance(const LogModel& model, ComplexPoint& z) {
  // past the overflow bound Im z carries no tract information
  if (z.real() > kOverflowRe) return Step::kGrew;
  try {
    z = model.eval_F(z);
    return Step::kOk;
  } catch (const Error& e) {
    if (e.code() != Errc::kOverflow) throw;
    return model.re_overflow_positive(z) ? Step::kGrew : Step::kLost;
  }
}

// Sequence strictly above (sign = +1) or below (sign = -1) every sequence that
// starts with `word`.
bool beyond_cylinder(const std::vector<ExtendedSymbol>& seq, const std::vector<TractId>& word, int sign) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i >= seq.size()) return false;
    auto c = seq[i] <=> ExtendedSymbol::tract(word[i]);
    if (c == 0) continue;
    return sign > 0 ? c > 0 : c < 0;
  }
  return false;
}

std::vector<TractId> bound_word(const Type2Neighborhood& nb, bool upper) {
  std::vector<TractId> w = nb.s.prefix;
  w.push_back(upper ? nb.upper_n : nb.lower_n);
  w.push_back(upper ? nb.upper_next : nb.lower_next);
  return w;
}

// Height of the polyline at abscissa x, if x lies within its span.
std::optional<double> polyline_height(const std::vector<ComplexPoint>& g, double x) {
  if (x < g.front().real() || x > g.back().real()) return std::nullopt;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (x <= g[i].real()) {
      double a = g[i - 1].real();
      double b = g[i].real();
      double u = b > a ? (x - a) / (b - a) : 0.0;
      return g[i - 1].imag() + u * (g[i].imag() - g[i - 1].imag());
    }
  }
  return g.back().imag();
}

bool contains_plane(const LogModel& model, const Type1Neighborhood& nb, ComplexPoint z) {
  for (std::size_t j = 0; j <= nb.n; ++j) {
    if (z.real() > kOverflowRe) return true;
    auto id = model.classify(z);
    if (!id || *id != nb.s[j]) return false;
    if (j == nb.n) return z.real() > nb.R;
    Step st = advance(model, z);
    if (st == Step::kGrew) return true;
    if (st == Step::kLost) return false;
  }
  return false;
}

bool contains_plane(const LogModel& model, const Type2Neighborhood& nb, ComplexPoint z) {
  for (const auto& sym : nb.s.prefix) {
    auto id = model.classify(z);
    if (!id || *id != sym) return false;
    if (advance(model, z) != Step::kOk) return false;
  }
  if (!(z.real() > nb.R)) return false;
  std::vector<ExtendedSymbol> seq(nb.s.prefix.size(), ExtendedSymbol{});
  for (std::size_t i = 0; i < nb.s.prefix.size(); ++i) seq[i] = ExtendedSymbol::tract(nb.s.prefix[i]);
  auto first = model.vertical_position(z);
  if (!first) return false;
  seq.push_back(*first);
  if (!first->is_cut()) {
    if (advance(model, z) != Step::kOk) return false;
    auto second = model.vertical_position(z);
    if (!second) return false;
    seq.push_back(*second);
  }
  return beyond_cylinder(seq, bound_word(nb, false), +1) && beyond_cylinder(seq, bound_word(nb, true), -1);
}

bool contains_plane(const LogModel& model, const Type3Neighborhood& nb, ComplexPoint z) {
  if (z.real() < model.h_threshold()) return false;
  auto id = model.classify(z);
  if (id && *id == nb.tract) return false;
  if (auto h = polyline_height(nb.gamma, z.real())) {
    return nb.plus_infinity ? z.imag() > *h : z.imag() < *h;
  }
  if (z.real() < nb.gamma.front().real()) return false;
  auto pos = model.vertical_position(z);
  if (!pos) return false;
  auto c = *pos <=> ExtendedSymbol::tract(nb.tract);
  return nb.plus_infinity ? c > 0 : c < 0;
}

}  // namespace

void validate_neighborhood(const LogModel& model, const NeighborhoodSpec& spec) {
  if (const auto* a = std::get_if<Type1Neighborhood>(&spec)) {
    if (!(a->R >= model.h_threshold())) throw Error(Errc::kBadSpec, "R below H_threshold");
    if (!model.accepts(a->s[0])) throw Error(Errc::kModelMismatch, "address alphabet");
  } else if (const auto* b = std::get_if<Type2Neighborhood>(&spec)) {
    if (!(b->R >= model.h_threshold())) throw Error(Errc::kBadSpec, "R below H_threshold");
    ExtendedSymbol cut = ExtendedSymbol::cut(b->s.cut_below);
    if (!(ExtendedSymbol::tract(b->lower_n) < cut && cut < ExtendedSymbol::tract(b->upper_n))) {
      throw Error(Errc::kBadSpec, "flanking tracts must surround the cut");
    }
  } else {
    const auto& c = std::get<Type3Neighborhood>(spec);
    if (c.gamma.empty()) throw Error(Errc::kBadSpec, "empty polyline");
    for (std::size_t i = 1; i < c.gamma.size(); ++i) {
      if (!(c.gamma[i].real() > c.gamma[i - 1].real())) throw Error(Errc::kBadSpec, "polyline is not x-monotone");
    }
    if (std::abs(c.gamma.front().real() - model.h_threshold()) > kPolylineTolerance) {
      throw Error(Errc::kBadSpec, "polyline does not start on the boundary of H");
    }
    bool touches = false;
    ComplexPoint end = c.gamma.back();
    for (int i = 0; i <= 64 && !touches; ++i) {
      double r = kPolylineTolerance * (i % 8 + 1) / 8.0;
      double a = 2.0 * std::numbers::pi * (i / 8) / 8.0;
      auto id = model.classify(end + std::polar(i == 64 ? 0.0 : r, a));
      touches = id && *id == c.tract;
    }
    if (!touches) throw Error(Errc::kBadSpec, "polyline does not end at the tract");
  }
}

bool neighborhood_contains(const LogModel& model, const NeighborhoodSpec& spec, ComplexPoint q) {
  validate_neighborhood(model, spec);
  return std::visit([&](const auto& nb) { return contains_plane(model, nb, q); }, spec);
}

bool neighborhood_contains(const LogModel& model, const NeighborhoodSpec& spec, const AddressPoint& q) {
  validate_neighborhood(model, spec);
  if (const auto* a = std::get_if<Type1Neighborhood>(&spec)) {
    for (std::size_t j = 0; j <= a->n; ++j) {
      auto sym = symbol_at(q, j);
      if (!sym || *sym != ExtendedSymbol::tract(a->s[j])) return false;
    }
    return true;
  }
  if (const auto* b = std::get_if<Type2Neighborhood>(&spec)) {
    std::vector<ExtendedSymbol> seq;
    for (std::size_t i = 0; i < b->s.prefix.size() + 2; ++i) {
      auto sym = symbol_at(q, i);
      if (!sym) break;
      seq.push_back(*sym);
    }
    return beyond_cylinder(seq, bound_word(*b, false), +1) && beyond_cylinder(seq, bound_word(*b, true), -1);
  }
  const auto& c = std::get<Type3Neighborhood>(spec);
  if (std::holds_alternative<PlusInf>(q)) return c.plus_infinity;
  if (std::holds_alternative<MinusInf>(q)) return !c.plus_infinity;
  auto first = symbol_at(q, 0);
  auto cmp = *first <=> ExtendedSymbol::tract(c.tract);
  return c.plus_infinity ? cmp > 0 : cmp < 0;
}

bool converges_to_address(const std::vector<ComplexPoint>& samples, const ExternalAddress& s, const LogModel& model,
                          std::size_t n_max, double R_max) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ComplexPoint z = samples[i];
    for (std::size_t j = 0; j <= n_max; ++j) {
      if (z.real() > kOverflowRe) break;
      if (!model.classify(z)) {
        throw Error(Errc::kNotInJulia, "sample " + std::to_string(i) + " leaves the tracts at step " + std::to_string(j));
      }
      if (j == n_max) break;
      Step st = advance(model, z);
      if (st == Step::kGrew) break;
      if (st == Step::kLost) throw Error(Errc::kNotInJulia, "sample " + std::to_string(i) + " overflowed");
    }
  }
  if (samples.empty()) return false;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (int halving = 0; halving < 4; ++halving) {
      double R = R_max / static_cast<double>(1 << halving);
      if (R < model.h_threshold()) continue;
      NeighborhoodSpec nb = Type1Neighborhood{s, n, R};
      bool seen_inside = false;
      for (const auto& z : samples) {
        bool in = neighborhood_contains(model, nb, z);
        if (seen_inside && !in) return false;
        seen_inside = seen_inside || in;
      }
      if (!seen_inside) return false;
    }
  }
  return true;
}

}  // namespace bouquet
