#pragma once

#include "conelab/attain.hpp"

namespace conelab {

// Search for a consistent price process: a martingale selection of the
// polar cones K*_t minus the origin. Non-strict mode maximizes the minimum
// terminal component, so success means a consistent Z with Z_T > 0 on every
// leaf. Strict mode maximizes a uniform slack on every frictional polar row
// (pairs with pi[i][j]*pi[j][i] > 1) and on the terminal components; a
// positive optimum is equivalent to a process valued in the relative
// interior of each polar cone.
struct ConsistentSearch {
    bool found = false;
    AdaptedProcess z;
    Rational level;      // LP optimum: min terminal component, or the strict slack
    Rational epsilon;    // strict mode: scale-invariant margin of the witness
    Vec certificate;     // Farkas multipliers when even the base LP is infeasible
};

ConsistentSearch find_consistent(const BidAskProcess& market, bool strict);

// Exact re-verification of a candidate process against the market.
bool verify_consistent(const BidAskProcess& market, const AdaptedProcess& z);

struct ArbitrageWitness {
    AdaptedVector claim;   // >= 0 everywhere, nonzero
    Strategy strategy;     // realizes the claim exactly
};

// LP search for a nonnegative nonzero attainable claim.
std::optional<ArbitrageWitness> check_arbitrage(const BidAskProcess& market);

class ArbitragePresentError : public std::runtime_error {
public:
    ArbitragePresentError(ArbitrageWitness w)
        : std::runtime_error("market admits an arbitrage; superhedging price is ill-posed"),
          witness(std::move(w)) {}
    ArbitrageWitness witness;
};

struct SuperhedgeResult {
    Rational price;          // least x with claim - x e_i attainable
    Strategy strategy;       // attains claim - price * e_i
    AdaptedProcess dual_z;   // optimizer of max E[Z_T.claim] with Z^i_0 = 1
    Rational dual_value;     // equals price (exact LP duality)
};

// numeraire is 0-based. Throws ArbitragePresentError when the market admits
// an arbitrage.
SuperhedgeResult superhedge_price(const BidAskProcess& market, const AdaptedVector& claim,
                                  int numeraire);

struct DualMembership {
    bool member = false;
    Rational dual_value;  // max E[Z_T.claim] over consistent Z, sum Z_0 = 1
    AdaptedProcess argmax_z;
};

// Dual characterization of claim membership in A: true iff the dual value
// is <= 0. Agrees with member_A on arbitrage-free markets.
DualMembership member_dual(const BidAskProcess& market, const AdaptedVector& claim);

struct RepresentationReport {
    std::vector<bool> xi_in_Ct;        // per t: eta_t - eta_{t-1} in C_t
    bool all_in_Ct = false;
    bool checked_supermartingale = false;  // false when no consistent Z exists
    bool supermartingale_ok = false;       // M^Z_t = eta_{t-1}.Z_t decreasing in mean
    bool terminal_dominates = false;       // M^Z_T >= theta.Z_T per leaf
};

// Per-time verification that eta represents theta: requires eta_T = theta.
RepresentationReport verify_representation(const BidAskProcess& market, const AdaptedVector& theta,
                                           const AdaptedProcess& eta);

}  // namespace conelab
