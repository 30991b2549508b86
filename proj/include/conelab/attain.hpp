#pragma once

#include <map>
#include <optional>
#include <set>

#include "conelab/market.hpp"
#include "conelab/ratlp.hpp"

namespace conelab {

// The attainable-claims cone, assembled in terminal-wealth coordinates:
// ambient dimension d * (number of leaves), leaves in ascending id order.
// Each generator is a local trading-cone generator at some node, replicated
// onto every leaf below that node and zero elsewhere.
struct GlobalCone {
    TreePtr tree;
    int d = 0;
    std::vector<int> leaf_order;
    Mat generators;
    struct Tag {
        int node;
        int local;  // index into node_cone(matrix at node).generators
    };
    std::vector<Tag> tags;

    int ambient_dim() const { return d * static_cast<int>(leaf_order.size()); }
};

// Nonnegative coefficients over the local generators at each node.
struct Strategy {
    std::map<int, Vec> coeffs;  // node id -> local coefficient vector
};

// Replicates the d-vector g held at node u onto every leaf below u.
Vec embed_at_node(const ScenarioTree& tree, const std::vector<int>& leaf_order, int d, int u,
                  const Vec& g);

// Flattens a terminal adapted vector into ambient coordinates (and back).
Vec flatten_terminal(const ScenarioTree& tree, const std::vector<int>& leaf_order,
                     const AdaptedVector& claim);
AdaptedVector unflatten_terminal(const ScenarioTree& tree, const std::vector<int>& leaf_order, int d,
                                 const Vec& flat);

// A = (-K_0) + ... + (-K_T); with a node filter, the partial sum over the
// selected nodes only.
GlobalCone assemble_A(const BidAskProcess& market,
                      const std::optional<std::set<int>>& node_filter = std::nullopt);

struct MemberAResult {
    bool member = false;
    Strategy strategy;   // realizes the claim exactly when member
    Vec certificate;     // w with w.g <= 0 on generators, w.claim > 0 otherwise
};

MemberAResult member_A(const GlobalCone& cone, const Vec& claim);
MemberAResult member_A(const GlobalCone& cone, const AdaptedVector& claim);

// Terminal claim realized by a strategy through the cone's generators.
Vec realized_claim(const GlobalCone& cone, const Strategy& s);

// The trade the strategy executes at time t, as an adapted vector.
AdaptedVector strategy_trade_at(const BidAskProcess& market, const Strategy& s, int t);

struct CtAtomVerdict {
    bool member = false;
    Strategy strategy;
    Vec certificate;
};

struct CtMembershipReport {
    int time = 0;
    std::map<int, CtAtomVerdict> atoms;
    bool all_member() const;
};

// X in C_t iff every atom verdict is member: atom u tests X(u) replicated on
// the leaves below u, zero elsewhere, against the full cone A. On a finite
// tree this atom-wise reduction is exact: the indicators of atoms generate
// the bounded nonnegative F_t-measurable scalars as a cone, and A is a cone.
CtMembershipReport member_Ct(const BidAskProcess& market, const AdaptedVector& x);

// Constraint matrix M of the null-strategy cone {lambda >= 0, M lambda = 0}:
// rows are ambient coordinates, columns the generators of A.
Mat null_strategy_matrix(const GlobalCone& cone);

struct NullSpaceResult {
    bool linear = true;
    Vec ray;          // offending extreme ray when not linear
    int bad_time = -1;  // time with -xi_t outside -K_t
};

// True iff for every extreme ray of the null cone the reversed per-period
// trades again form a null strategy. Desk-scale only.
NullSpaceResult is_null_space_linear(const BidAskProcess& market);

// Mutual generator membership.
bool cone_equal(const GlobalCone& a, const GlobalCone& b);

// Joint LP for the staged decomposition X = xi_0 + ... + xi_t with each
// xi_s in C_s. Feasible iff X lies in C_0 + ... + C_t.
bool decompose_through_Ct(const BidAskProcess& market, const AdaptedVector& x);

}  // namespace conelab
