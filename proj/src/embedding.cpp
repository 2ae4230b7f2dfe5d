#include <cmath>
#include <cstdint>

#include "bouquet/address.hpp"

namespace bouquet {

namespace {

// Symbol k occupies [L_k, L_k + w_k] with w_k = 2^-|k| / 3. Both are kept in
// thirds so that the subdivision arithmetic stays dyadic.
double offset_thirds(std::int64_t k) {
  if (k <= 0) return std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(k, -2000)));
  return 3.0 - std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(k - 1, 2000)));
}

double weight_thirds(std::int64_t k) {
  return std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(k < 0 ? -k : k, 2000)));
}

void flatten(const TractId& id, std::vector<std::int64_t>& out) {
  for (std::size_t i = 0; i < id.size(); ++i) out.push_back(id[i].index());
}

double apply_prefix(const std::vector<std::int64_t>& prefix, double x) {
  for (std::size_t i = prefix.size(); i-- > 0;) {
    x = (offset_thirds(prefix[i]) + weight_thirds(prefix[i]) * x) / 3.0;
  }
  return x;
}

}  // namespace

double embed_ordinate(const AddressPoint& p) {
  if (std::holds_alternative<MinusInf>(p)) return 0.0;
  if (std::holds_alternative<PlusInf>(p)) return 1.0;
  std::vector<std::int64_t> prefix;
  if (const auto* m = std::get_if<IntermediateAddress>(&p)) {
    for (const auto& id : m->prefix) flatten(id, prefix);
    flatten(m->cut_below, prefix);
    std::int64_t c = prefix.back();
    prefix.pop_back();
    return apply_prefix(prefix, offset_thirds(c + 1) / 3.0);
  }
  const auto& e = std::get<ExternalAddress>(p);
  std::vector<std::int64_t> period;
  for (const auto& id : e.preperiod()) flatten(id, prefix);
  for (const auto& id : e.period()) flatten(id, period);
  // period map x -> (A + B x) / D, fixed point A / (D - B)
  double a = 0.0;
  double b = 1.0;
  double d = 1.0;
  for (std::size_t i = period.size(); i-- > 0;) {
    double ak = offset_thirds(period[i]);
    double bk = weight_thirds(period[i]);
    a = ak * d + bk * a;
    b = bk * b;
    d = 3.0 * d;
  }
  return apply_prefix(prefix, a / (d - b));
}

}  // namespace bouquet
