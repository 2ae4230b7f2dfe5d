#include "bouquet/address.hpp"

#include <algorithm>
#include <optional>

#include "bouquet/error.hpp"

namespace bouquet {

namespace {

void require_uniform_shape(const std::vector<TractId>& a, const std::vector<TractId>& b) {
  const TractId* ref = !a.empty() ? &a.front() : (!b.empty() ? &b.front() : nullptr);
  if (!ref) return;
  for (const auto* v : {&a, &b}) {
    for (const auto& id : *v) {
      if (!id.same_shape(*ref)) throw Error(Errc::kModelMismatch, "mixed symbol alphabets in one address");
    }
  }
}

std::vector<TractId> parse_symbols(std::string_view text) {
  if (text.empty()) throw Error(Errc::kParse, "empty symbol list");
  std::vector<TractId> out;
  while (true) {
    auto sp = text.find(' ');
    std::string_view tok = text.substr(0, sp);
    if (tok.empty()) throw Error(Errc::kParse, "symbols must be separated by single spaces");
    out.push_back(TractId::parse(tok));
    if (sp == std::string_view::npos) break;
    text.remove_prefix(sp + 1);
  }
  return out;
}

std::string join(const std::vector<TractId>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i].to_string();
  }
  return out;
}

}  // namespace

ExternalAddress::ExternalAddress(std::vector<TractId> preperiod, std::vector<TractId> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw Error(Errc::kInvalidArgument, "empty period");
  require_uniform_shape(pre_, per_);
  canonicalize();
}

void ExternalAddress::canonicalize() {
  const std::size_t p = per_.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d) continue;
    bool root = true;
    for (std::size_t i = d; i < p && root; ++i) root = per_[i] == per_[i - d];
    if (root) {
      per_.resize(d);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

const TractId& ExternalAddress::operator[](std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

ExternalAddress ExternalAddress::shift() const {
  if (!pre_.empty()) return {{pre_.begin() + 1, pre_.end()}, per_};
  std::vector<TractId> per = per_;
  std::rotate(per.begin(), per.begin() + 1, per.end());
  return {{}, std::move(per)};
}

ExternalAddress ExternalAddress::with_entry(std::size_t n, const TractId& symbol) const {
  std::vector<TractId> pre;
  for (std::size_t i = 0; i <= n; ++i) pre.push_back((*this)[i]);
  pre[n] = symbol;
  std::vector<TractId> per;
  std::size_t start = n + 1;
  if (start < pre_.size()) {
    pre.insert(pre.end(), pre_.begin() + static_cast<std::ptrdiff_t>(start), pre_.end());
    per = per_;
  } else {
    std::size_t r = (start - pre_.size()) % per_.size();
    for (std::size_t i = 0; i < per_.size(); ++i) per.push_back(per_[(r + i) % per_.size()]);
  }
  return {std::move(pre), std::move(per)};
}

std::string ExternalAddress::to_string() const {
  if (pre_.empty()) return join(per_);
  return join(pre_) + ";" + join(per_);
}

ExternalAddress ExternalAddress::parse(std::string_view text) {
  if (text.find("cut(") != std::string_view::npos) throw Error(Errc::kParse, "expected an external address");
  auto semi = text.find(';');
  if (semi == std::string_view::npos) return periodic(parse_symbols(text));
  if (text.find(';', semi + 1) != std::string_view::npos) throw Error(Errc::kParse, "more than one ';'");
  std::string_view left = text.substr(0, semi);
  std::string_view right = text.substr(semi + 1);
  if (right.empty()) throw Error(Errc::kParse, "empty period");
  std::vector<TractId> pre;
  if (!left.empty()) pre = parse_symbols(left);
  return {std::move(pre), parse_symbols(right)};
}

std::string IntermediateAddress::to_string() const {
  std::string out = join(prefix);
  if (!out.empty()) out += ' ';
  return out + "cut(" + cut_below.to_string() + ")";
}

IntermediateAddress IntermediateAddress::parse(std::string_view text) {
  auto pos = text.rfind("cut(");
  if (pos == std::string_view::npos || text.empty() || text.back() != ')') {
    throw Error(Errc::kParse, "expected '... cut(symbol)'");
  }
  IntermediateAddress out;
  out.cut_below = TractId::parse(text.substr(pos + 4, text.size() - pos - 5));
  if (pos > 0) {
    if (text[pos - 1] != ' ') throw Error(Errc::kParse, "cut must follow a single space");
    out.prefix = parse_symbols(text.substr(0, pos - 1));
  }
  require_uniform_shape(out.prefix, {out.cut_below});
  return out;
}

AddressPoint parse_address_point(std::string_view text) {
  if (text == "-inf") return MinusInf{};
  if (text == "+inf") return PlusInf{};
  if (text.find("cut(") != std::string_view::npos) return IntermediateAddress::parse(text);
  return ExternalAddress::parse(text);
}

std::string to_string(const AddressPoint& p) {
  struct V {
    std::string operator()(MinusInf) const { return "-inf"; }
    std::string operator()(PlusInf) const { return "+inf"; }
    std::string operator()(const ExternalAddress& a) const { return a.to_string(); }
    std::string operator()(const IntermediateAddress& a) const { return a.to_string(); }
  };
  return std::visit(V{}, p);
}

std::optional<ExtendedSymbol> symbol_at(const AddressPoint& p, std::size_t i) {
  if (const auto* e = std::get_if<ExternalAddress>(&p)) return ExtendedSymbol::tract((*e)[i]);
  const auto* m = std::get_if<IntermediateAddress>(&p);
  if (!m) return std::nullopt;
  if (i < m->prefix.size()) return ExtendedSymbol::tract(m->prefix[i]);
  if (i == m->prefix.size()) return ExtendedSymbol::cut(m->cut_below);
  return std::nullopt;
}

namespace {

const TractId* any_symbol(const AddressPoint& p) {
  if (const auto* e = std::get_if<ExternalAddress>(&p)) return &e->period().front();
  if (const auto* m = std::get_if<IntermediateAddress>(&p)) return &m->cut_below;
  return nullptr;
}

int rank(const AddressPoint& p) {
  if (std::holds_alternative<MinusInf>(p)) return -1;
  if (std::holds_alternative<PlusInf>(p)) return 1;
  return 0;
}

// Index of the first position where a and b differ (a != b, both finite).
std::size_t first_difference(const AddressPoint& a, const AddressPoint& b) {
  for (std::size_t i = 0;; ++i) {
    if (symbol_at(a, i) != symbol_at(b, i)) return i;
  }
}

std::size_t comparison_horizon(const AddressPoint& p) {
  if (const auto* e = std::get_if<ExternalAddress>(&p)) return e->preperiod().size() + e->period().size();
  return std::get<IntermediateAddress>(p).prefix.size() + 1;
}

}  // namespace

std::strong_ordering lex_compare(const AddressPoint& a, const AddressPoint& b) {
  int ra = rank(a);
  int rb = rank(b);
  if (ra != 0 || rb != 0) return ra <=> rb;
  const TractId* sa = any_symbol(a);
  const TractId* sb = any_symbol(b);
  if (!sa->same_shape(*sb)) throw Error(Errc::kModelMismatch, "addresses over different alphabets");

  const bool ext_a = std::holds_alternative<ExternalAddress>(a);
  const bool ext_b = std::holds_alternative<ExternalAddress>(b);
  std::size_t limit;
  if (ext_a && ext_b) {
    // two eventually periodic sequences that agree this long agree forever
    limit = comparison_horizon(a) + comparison_horizon(b);
  } else {
    limit = std::min(ext_a ? SIZE_MAX : comparison_horizon(a), ext_b ? SIZE_MAX : comparison_horizon(b));
  }
  for (std::size_t i = 0; i < limit; ++i) {
    auto x = symbol_at(a, i);
    auto y = symbol_at(b, i);
    if (!x || !y) break;
    if (!x->id.same_shape(y->id)) throw Error(Errc::kModelMismatch, "addresses over different alphabets");
    if (auto c = *x <=> *y; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

IntermediateAddress intermediate_between(const ExternalAddress& a, const ExternalAddress& b) {
  auto c = lex_compare(a, b);
  if (c == 0) throw Error(Errc::kEqualInputs, "addresses are equal");
  const ExternalAddress& lo = c < 0 ? a : b;
  const ExternalAddress& hi = c < 0 ? b : a;
  std::size_t i = first_difference(lo, hi);
  IntermediateAddress out;
  for (std::size_t j = 0; j < i; ++j) out.prefix.push_back(lo[j]);
  const TractId& x = lo[i];
  const TractId& y = hi[i];
  bool same_head = true;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) same_head = same_head && x[j] == y[j];
  if (same_head) {
    std::int64_t ix = x.last().index();
    std::int64_t iy = y.last().index();
    std::int64_t sum = ix + iy;
    std::int64_t mean = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
    out.cut_below = x.with_last(TractAtom::from_index(mean, x.last().half));
  } else {
    out.cut_below = x;
  }
  return out;
}

namespace {

ExternalAddress starting_with(std::vector<TractId> prefix, const TractId& then) {
  prefix.push_back(then);
  return {std::move(prefix), {then}};
}

// A tract symbol strictly above / below the extended symbol e.
TractId tract_above(const ExtendedSymbol& e) { return e.id.successor(); }
TractId tract_below(const ExtendedSymbol& e) { return e.is_cut() ? e.id : e.id.predecessor(); }

}  // namespace

ExternalAddress external_between(const AddressPoint& a, const AddressPoint& b) {
  if (lex_compare(a, b) >= 0) throw Error(Errc::kInvalidArgument, "external_between needs a < b");
  if (std::holds_alternative<MinusInf>(a)) {
    if (std::holds_alternative<PlusInf>(b)) return ExternalAddress::constant(TractId(0));
    return ExternalAddress::constant(tract_below(*symbol_at(b, 0)));
  }
  if (std::holds_alternative<PlusInf>(b)) return ExternalAddress::constant(tract_above(*symbol_at(a, 0)));

  std::size_t i = first_difference(a, b);
  ExtendedSymbol x = *symbol_at(a, i);
  ExtendedSymbol y = *symbol_at(b, i);
  std::vector<TractId> prefix;
  for (std::size_t j = 0; j < i; ++j) prefix.push_back(symbol_at(a, j)->id);

  TractId cand = tract_above(x);
  if (ExtendedSymbol::tract(cand) < y) return starting_with(prefix, cand);
  if (!x.is_cut()) {
    // a = prefix x ..., continue above a's tail
    prefix.push_back(x.id);
    return starting_with(prefix, tract_above(*symbol_at(a, i + 1)));
  }
  // x is a cut and y the tract right above it: continue below b's tail
  prefix.push_back(y.id);
  return starting_with(prefix, tract_below(*symbol_at(b, i + 1)));
}

CircularAddress circular_normalize(const ExternalAddress& a) {
  std::int64_t k = a[0].k();
  return {a.translated_first(-k), k};
}

std::vector<ExternalAddress> periodic_family(const std::vector<TractId>& symbols, std::size_t max_period) {
  std::vector<TractId> alphabet = symbols;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<ExternalAddress> out;
  if (alphabet.empty()) return out;
  for (std::size_t p = 1; p <= max_period; ++p) {
    std::vector<std::size_t> digits(p, 0);
    while (true) {
      std::vector<TractId> word;
      for (auto d : digits) word.push_back(alphabet[d]);
      ExternalAddress addr = ExternalAddress::periodic(word);
      if (addr.period().size() == p) out.push_back(std::move(addr));
      std::size_t pos = p;
      while (pos > 0 && ++digits[pos - 1] == alphabet.size()) digits[--pos] = 0;
      if (pos == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return lex_compare(x, y) < 0; });
  return out;
}

}  // namespace bouquet
