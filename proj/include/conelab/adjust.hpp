#pragma once

#include "conelab/price.hpp"

namespace conelab {

// Atoms where the reverse of the (i, j) trade at time t is attainable:
// u belongs to b[(t, i, j)] iff -z(i,j)_t(u) localized below u lies in A.
// On a finite tree the closure of A equals A (a finite sum of polyhedral
// cones is closed), so the table is computed against A directly.
struct BSetTable {
    std::map<std::tuple<int, int, int>, std::set<int>> b;  // (t, i, j) -> atoms

    const std::set<int>& at(int t, int i, int j) const { return b.at({t, i, j}); }
};

BSetTable compute_B_sets(const BidAskProcess& market);

struct AdjustedMarket {
    BSetTable bsets;
    BidAskProcess adjusted;  // triangle_required = false on every node
};

// Per node u at t: adjusted[j][i] = 1/pi[i][j] when u is in B(t,i,j), else
// pi[j][i]. The adjusted entries are never re-tightened; the trading cone is
// generated from the stored entries as-is.
AdjustedMarket adjusted_market(const BidAskProcess& market);

struct T2Report {
    bool a_subset_adjusted = false;
    bool adjusted_arbitrage_free = false;
    bool adjusted_equals_a = false;  // meaningful only when arbitrage-free
};

T2Report verify_t2(const BidAskProcess& market);

}  // namespace conelab
