#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bouquet {

// Half-plane selector for SINE tracts; kNone for integer (EXP) symbols.
enum class Half : std::uint8_t { kNone = 0, kLower = 1, kUpper = 2 };

struct TractAtom {
  std::int64_t k = 0;
  Half half = Half::kNone;

  // Position in the fixed bijection of this atom's alphabet onto Z.
  std::int64_t index() const;
  static TractAtom from_index(std::int64_t idx, Half kind);

  friend bool operator==(const TractAtom&, const TractAtom&) = default;
  friend std::strong_ordering operator<=>(const TractAtom& a, const TractAtom& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    return static_cast<int>(a.half) <=> static_cast<int>(b.half);
  }
};

// A tract symbol. EXP and SINE symbols hold one atom; a COMPOSITE symbol holds
// one atom per constituent map, the first applied map first.
class TractId {
 public:
  static constexpr std::size_t kMaxChain = 4;

  TractId() = default;
  explicit TractId(std::int64_t k) { atoms_[0] = {k, Half::kNone}; }
  TractId(std::int64_t k, Half half) { atoms_[0] = {k, half}; }

  static TractId product(const TractId& head, const TractId& tail);

  std::size_t size() const { return n_; }
  const TractAtom& operator[](std::size_t i) const { return atoms_[i]; }
  const TractAtom& last() const { return atoms_[n_ - 1]; }
  std::int64_t k() const { return atoms_[0].k; }

  TractId head() const;  // first atom only
  TractId tail() const;  // everything after the first atom; requires size() > 1

  // 2*pi*i translation by m (acts on the first atom).
  TractId translated(std::int64_t m) const;
  // Neighbours in the symbol order (act on the last atom).
  TractId successor() const;
  TractId predecessor() const;
  TractId with_last(const TractAtom& a) const;

  bool same_shape(const TractId& other) const;

  std::string to_string() const;
  static TractId parse(std::string_view text);

  friend bool operator==(const TractId& a, const TractId& b);
  friend std::strong_ordering operator<=>(const TractId& a, const TractId& b);

 private:
  std::array<TractAtom, kMaxChain> atoms_{};
  std::uint8_t n_ = 1;
};

// Element of the cut completion of the alphabet: a tract, or the cut lying
// directly above `id` (between id and id.successor()).
struct ExtendedSymbol {
  enum class Kind : std::uint8_t { kTract, kCut };
  Kind kind = Kind::kTract;
  TractId id;

  static ExtendedSymbol tract(const TractId& id) { return {Kind::kTract, id}; }
  static ExtendedSymbol cut(const TractId& below) { return {Kind::kCut, below}; }
  bool is_cut() const { return kind == Kind::kCut; }

  friend bool operator==(const ExtendedSymbol&, const ExtendedSymbol&) = default;
  friend std::strong_ordering operator<=>(const ExtendedSymbol& a, const ExtendedSymbol& b);
};

}  // namespace bouquet
