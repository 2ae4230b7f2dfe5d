#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bouquet/tract.hpp"

namespace bouquet {

// Eventually periodic address preperiod . period^inf, always kept canonical:
// the period is primitive and the preperiod is as short as possible.
class ExternalAddress {
 public:
  ExternalAddress(std::vector<TractId> preperiod, std::vector<TractId> period);
  static ExternalAddress periodic(std::vector<TractId> period) { return {{}, std::move(period)}; }
  static ExternalAddress constant(const TractId& id) { return {{}, {id}}; }

  const std::vector<TractId>& preperiod() const { return pre_; }
  const std::vector<TractId>& period() const { return per_; }

  // Entry s_i of the infinite sequence.
  const TractId& operator[](std::size_t i) const;

  ExternalAddress shift() const;
  ExternalAddress with_entry(std::size_t n, const TractId& symbol) const;
  ExternalAddress translated_first(std::int64_t m) const { return with_entry(0, (*this)[0].translated(m)); }

  std::string to_string() const;
  static ExternalAddress parse(std::string_view text);

  friend bool operator==(const ExternalAddress&, const ExternalAddress&) = default;

 private:
  void canonicalize();

  std::vector<TractId> pre_;
  std::vector<TractId> per_;
};

// prefix followed by the cut directly above `cut_below`.
struct IntermediateAddress {
  std::vector<TractId> prefix;
  TractId cut_below;

  std::string to_string() const;
  static IntermediateAddress parse(std::string_view text);

  friend bool operator==(const IntermediateAddress&, const IntermediateAddress&) = default;
};

struct MinusInf {
  friend bool operator==(MinusInf, MinusInf) { return true; }
};
struct PlusInf {
  friend bool operator==(PlusInf, PlusInf) { return true; }
};

using AddressPoint = std::variant<MinusInf, ExternalAddress, IntermediateAddress, PlusInf>;

// Accepts "-inf", "+inf", intermediate and external addresses.
AddressPoint parse_address_point(std::string_view text);
std::string to_string(const AddressPoint& p);

// Extended symbol at position i; nullopt for +-inf and past the cut of an
// intermediate address.
std::optional<ExtendedSymbol> symbol_at(const AddressPoint& p, std::size_t i);

std::strong_ordering lex_compare(const AddressPoint& a, const AddressPoint& b);

inline ExternalAddress shift(const ExternalAddress& a) { return a.shift(); }

// Intermediate address strictly between a and b (either order).
IntermediateAddress intermediate_between(const ExternalAddress& a, const ExternalAddress& b);
// External address strictly between two address points, a < b required.
ExternalAddress external_between(const AddressPoint& a, const AddressPoint& b);

struct CircularAddress {
  ExternalAddress representative;
  std::int64_t k = 0;
};

CircularAddress circular_normalize(const ExternalAddress& a);

// Order embedding of the compactified address line into [0, 1].
double embed_ordinate(const AddressPoint& p);

// All purely periodic addresses with primitive period of length 1..max_period
// over the given symbols, in lexicographic order.
std::vector<ExternalAddress> periodic_family(const std::vector<TractId>& symbols, std::size_t max_period);

}  // namespace bouquet
