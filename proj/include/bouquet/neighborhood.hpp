#pragma once

#include <variant>
#include <vector>

#include "bouquet/address.hpp"
#include "bouquet/log_model.hpp"

namespace bouquet {

// Points whose orbit follows s_0 ... s_{n-1} and lands in the part of T_{s_n}
// right of Re = R; addresses agreeing with s on entries 0..n.
struct Type1Neighborhood {
  ExternalAddress s;
  std::size_t n = 0;
  double R = 0.0;
};

// Around an intermediate address prefix . cut with n = prefix.size(): strictly
// between the cylinders prefix . lower_n . lower_next and
// prefix . upper_n . upper_next, with lower_n < cut < upper_n.
struct Type2Neighborhood {
  IntermediateAddress s;
  TractId lower_n;
  TractId upper_n;
  TractId lower_next;
  TractId upper_next;
  double R = 0.0;
};

// Around +inf (or -inf): points of the closed half-plane above (below) the
// closed tract T and the x-monotone polyline gamma joining the boundary of H
// to T.
struct Type3Neighborhood {
  bool plus_infinity = true;
  TractId tract;
  std::vector<ComplexPoint> gamma;
};

using NeighborhoodSpec = std::variant<Type1Neighborhood, Type2Neighborhood, Type3Neighborhood>;

// Polyline endpoints may miss the boundary of H and the tract by this much.
inline constexpr double kPolylineTolerance = 0.1;

void validate_neighborhood(const LogModel& model, const NeighborhoodSpec& spec);

// Orbits that overflow with growing real part count as staying to the right,
// as in in_JR.
bool neighborhood_contains(const LogModel& model, const NeighborhoodSpec& spec, ComplexPoint q);
bool neighborhood_contains(const LogModel& model, const NeighborhoodSpec& spec, const AddressPoint& q);

// Finite-sample convergence: for every TYPE1 neighbourhood of s with n <= n_max
// and R in {R_max, R_max/2, R_max/4, R_max/8} (R >= H_threshold), the indices
// of samples inside form a nonempty final segment.
bool converges_to_address(const std::vector<ComplexPoint>& samples, const ExternalAddress& s, const LogModel& model,
                          std::size_t n_max = 3, double R_max = 10.0);

}  // namespace bouquet
