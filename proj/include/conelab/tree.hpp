#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

// Finite filtered probability space as an event tree. One root at t = 0,
// every non-root node's parent sits one period earlier, all leaves at the
// horizon. Leaf probabilities are strictly positive and sum to 1, so every
// almost-sure statement in the library is a per-atom statement.
class ScenarioTree {
public:
    struct Node {
        int id;
        int time;
        int parent;  // -1 for the root
        std::vector<int> children;
    };

    // nodes: (id, time, parent id or -1). Throws std::invalid_argument on
    // any structural violation.
    ScenarioTree(int horizon, const std::vector<std::array<int, 3>>& nodes,
                 const std::map<int, Rational>& leaf_probabilities);

    int horizon() const { return horizon_; }
    int root() const { return root_; }
    bool contains(int id) const { return by_id_.count(id) != 0; }
    const Node& node(int id) const;
    std::vector<int> ids_at(int t) const;
    const std::vector<int>& leaves() const { return leaves_; }
    std::vector<int> leaves_under(int id) const;
    std::vector<int> nodes_in_order() const;  // ascending (time, id)

    // Ancestor of `id` at time s <= time(id).
    int ancestor_at(int id, int s) const;

    const Rational& leaf_probability(int leaf) const;
    std::map<int, Rational> leaf_probabilities() const;

    // Same shape, different strictly positive leaf weights (renormalized
    // internally if they do not sum to 1 they are rejected).
    std::shared_ptr<const ScenarioTree> with_probabilities(
        const std::map<int, Rational>& leaf_probabilities) const;

private:
    int horizon_;
    int root_ = -1;
    std::map<int, Node> by_id_;
    std::vector<int> leaves_;
    std::map<int, Rational> leaf_prob_;
};

using TreePtr = std::shared_ptr<const ScenarioTree>;

// Rational d-vector per node at one time level (an element of L^0_t).
struct AdaptedVector {
    int time = 0;
    std::map<int, Vec> values;  // node id -> d-vector
};

struct AdaptedProcess {
    std::vector<AdaptedVector> at;  // index t = 0..T
};

// Sum of descendant-leaf probabilities; the root maps to 1.
Rational node_probability(const ScenarioTree& tree, int id);

// E[X | F_t] for X adapted at time s >= t. Exact.
AdaptedVector conditional_expectation(const ScenarioTree& tree, const AdaptedVector& x, int t);

bool is_martingale(const ScenarioTree& tree, const AdaptedProcess& z);

// Checks that x is defined on exactly the nodes at its time level with a
// consistent dimension d; throws std::invalid_argument otherwise.
void check_adapted(const ScenarioTree& tree, const AdaptedVector& x, int expected_dim = -1);

}  // namespace conelab
