#pragma once

#include <string>
#include <vector>

#include "conelab/market.hpp"

namespace conelab {

// Built-in benchmark markets. The countable-atom ones are truncated to
// atoms {1..n} with weights 2^-k renormalized by 1/(1 - 2^-n):
//   eg1  : d=2, T=1, costly trade at time 0, frictionless at time 1
//   eg3  : d=2, T=1, frictionless at time 0, costly at time 1
//   eg32 : d=4, T=1, time-1 matrices completed by minimum chain products,
//          atom k trades asset 1 against 4 at rate k
//   eg41 : d=4, T=1, two equally likely atoms (n ignored)
BidAskProcess make_example(const std::string& name, int n);

std::vector<std::string> example_names();

}  // namespace conelab
