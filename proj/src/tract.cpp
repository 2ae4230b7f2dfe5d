#include "bouquet/tract.hpp"

#include <charconv>

#include "bouquet/error.hpp"

namespace bouquet {

std::int64_t TractAtom::index() const {
  switch (half) {
    case Half::kNone:
      return k;
    case Half::kLower:
      return 2 * k;
    case Half::kUpper:
      return 2 * k + 1;
  }
  return k;
}

TractAtom TractAtom::from_index(std::int64_t idx, Half kind) {
  if (kind == Half::kNone) return {idx, Half::kNone};
  // floor division so that negative indices map to the right k
  std::int64_t k = idx >= 0 ? idx / 2 : -((-idx + 1) / 2);
  return {k, idx - 2 * k == 0 ? Half::kLower : Half::kUpper};
}

TractId TractId::product(const TractId& head, const TractId& tail) {
  if (head.n_ + tail.n_ > kMaxChain) throw Error(Errc::kInvalidArgument, "composite chain too long");
  TractId out = head;
  for (std::size_t i = 0; i < tail.n_; ++i) out.atoms_[out.n_ + i] = tail.atoms_[i];
  out.n_ = static_cast<std::uint8_t>(head.n_ + tail.n_);
  return out;
}

TractId TractId::head() const {
  TractId out;
  out.atoms_[0] = atoms_[0];
  return out;
}

TractId TractId::tail() const {
  if (n_ < 2) throw Error(Errc::kInvalidArgument, "tail of a single-atom tract id");
  TractId out;
  for (std::size_t i = 1; i < n_; ++i) out.atoms_[i - 1] = atoms_[i];
  out.n_ = static_cast<std::uint8_t>(n_ - 1);
  return out;
}

TractId TractId::translated(std::int64_t m) const {
  TractId out = *this;
  out.atoms_[0].k += m;
  return out;
}

TractId TractId::with_last(const TractAtom& a) const {
  TractId out = *this;
  out.atoms_[n_ - 1] = a;
  return out;
}

TractId TractId::successor() const {
  const TractAtom& a = last();
  return with_last(TractAtom::from_index(a.index() + 1, a.half));
}

TractId TractId::predecessor() const {
  const TractAtom& a = last();
  return with_last(TractAtom::from_index(a.index() - 1, a.half));
}

bool TractId::same_shape(const TractId& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    if ((atoms_[i].half == Half::kNone) != (other.atoms_[i].half == Half::kNone)) return false;
  }
  return true;
}

std::string TractId::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out += '/';
    out += std::to_string(atoms_[i].k);
    if (atoms_[i].half == Half::kUpper) out += ".U";
    if (atoms_[i].half == Half::kLower) out += ".L";
  }
  return out;
}

namespace {

TractAtom parse_atom(std::string_view text) {
  Half half = Half::kNone;
  if (text.size() > 2 && text[text.size() - 2] == '.') {
    char h = text.back();
    if (h == 'U') {
      half = Half::kUpper;
    } else if (h == 'L') {
      half = Half::kLower;
    } else {
      throw Error(Errc::kParse, "bad half marker in symbol '" + std::string(text) + "'");
    }
    text.remove_suffix(2);
  }
  std::int64_t k = 0;
  const char* first = text.data();
  const char* end = text.data() + text.size();
  if (first != end && *first == '+') throw Error(Errc::kParse, "bad integer '" + std::string(text) + "'");
  auto [ptr, ec] = std::from_chars(first, end, k);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(Errc::kParse, "bad integer '" + std::string(text) + "'");
  }
  return {k, half};
}

}  // namespace

TractId TractId::parse(std::string_view text) {
  TractId out;
  out.n_ = 0;
  while (true) {
    auto slash = text.find('/');
    std::string_view part = text.substr(0, slash);
    if (out.n_ == kMaxChain) throw Error(Errc::kParse, "too many components in symbol");
    out.atoms_[out.n_++] = parse_atom(part);
    if (slash == std::string_view::npos) break;
    text.remove_prefix(slash + 1);
  }
  return out;
}

bool operator==(const TractId& a, const TractId& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t i = 0; i < a.n_; ++i) {
    if (a.atoms_[i] != b.atoms_[i]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const TractId& a, const TractId& b) {
  std::size_t n = std::min(a.n_, b.n_);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.atoms_[i] <=> b.atoms_[i]; c != 0) return c;
  }
  return a.n_ <=> b.n_;
}

std::strong_ordering operator<=>(const ExtendedSymbol& a, const ExtendedSymbol& b) {
  using K = ExtendedSymbol::Kind;
  if (a.kind == b.kind) return a.id <=> b.id;
  if (a.kind == K::kTract) {
    // tract a vs cut above b.id
    return a.id <= b.id ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.id < b.id ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace bouquet
