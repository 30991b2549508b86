#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "conelab/rational.hpp"
#include "conelab/tree.hpp"

namespace conelab {

// d x d bid-ask matrix: pi[i][j] is the number of units of asset i needed to
// buy one unit of asset j. Adjusted matrices are stored with
// triangle_required = false and may violate the chain condition.
struct BidAskMatrix {
    int d = 0;
    Mat pi;
    bool triangle_required = true;
};

// All violated conditions, as human-readable strings; empty means valid.
std::vector<std::string> validate(const BidAskMatrix& m);

// All-pairs minimum product over directed chains. Output satisfies the
// triangle condition and the map is idempotent. Throws if some cycle has
// product < 1 (the infimum over chains is then not attained).
BidAskMatrix chain_tighten(const BidAskMatrix& m);

// Builds a full matrix from a partial list of directed rates by taking the
// minimum chain product, as in "defined implicitly" matrix completions.
// edges: (i, j, rate), 0-based, i != j. Every pair must be reachable.
BidAskMatrix complete_from_chains(int d, const std::vector<std::tuple<int, int, Rational>>& edges);

// The trading cone -K(pi) and its polar, both in canonical generator order:
// generators: -e_1..-e_d, then z(i,j) = e_j - pi[i][j] e_i for i != j in
// lexicographic (i, j) order; polar rows: e_1..e_d, then pi[i][j] e_i - e_j
// in the same pair order.
struct NodeCone {
    int d = 0;
    Mat generators;
    Mat polar_rows;
};

NodeCone node_cone(const BidAskMatrix& m);

int local_generator_count(int d);  // d + d(d-1)

// Human tag for generator k of node_cone: "-e1" or "z(i,j)" (1-based).
std::string local_generator_name(int d, int k);

// Bid-ask process: one matrix per tree node. This is the market object the
// analysis modules consume.
struct BidAskProcess {
    TreePtr tree;
    std::map<int, BidAskMatrix> at;  // node id -> matrix

    int dim() const { return at.empty() ? 0 : at.begin()->second.d; }
};

// Structural + per-matrix validation; empty means valid.
std::vector<std::string> validate(const BidAskProcess& market);

}  // namespace conelab
