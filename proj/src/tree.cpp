#include "conelab/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace conelab {

ScenarioTree::ScenarioTree(int horizon, const std::vector<std::array<int, 3>>& nodes,
                           const std::map<int, Rational>& leaf_probabilities)
    : horizon_(horizon) {
    if (horizon < 0) throw std::invalid_argument("tree: negative horizon");
    for (const auto& [id, time, parent] : nodes) {
        if (by_id_.count(id)) throw std::invalid_argument("tree: duplicate node id " + std::to_string(id));
        by_id_[id] = Node{id, time, parent, {}};
    }
    for (auto& [id, n] : by_id_) {
        if (n.time < 0 || n.time > horizon)
            throw std::invalid_argument("tree: node " + std::to_string(id) + " outside horizon");
        if (n.parent < 0) {
            if (n.time != 0) throw std::invalid_argument("tree: parentless node not at t=0");
            if (root_ >= 0) throw std::invalid_argument("tree: more than one root");
            root_ = id;
        } else {
            auto it = by_id_.find(n.parent);
            if (it == by_id_.end())
                throw std::invalid_argument("tree: unknown parent of node " + std::to_string(id));
            if (it->second.time != n.time - 1)
                throw std::invalid_argument("tree: parent of node " + std::to_string(id) +
                                            " is not one period earlier");
            it->second.children.push_back(id);
        }
    }
    if (root_ < 0) throw std::invalid_argument("tree: no root");
    for (auto& [id, n] : by_id_) {
        std::sort(n.children.begin(), n.children.end());
        if (n.time < horizon && n.children.empty())
            throw std::invalid_argument("tree: interior node " + std::to_string(id) + " has no child");
        if (n.time == horizon) leaves_.push_back(id);
    }
    std::sort(leaves_.begin(), leaves_.end());

    Rational total = 0;
    for (int leaf : leaves_) {
        auto it = leaf_probabilities.find(leaf);
        if (it == leaf_probabilities.end())
            throw std::invalid_argument("tree: missing probability for leaf " + std::to_string(leaf));
        if (it->second <= 0)
            throw std::invalid_argument("tree: nonpositive probability at leaf " + std::to_string(leaf));
        leaf_prob_[leaf] = it->second;
        total += it->second;
    }
    if (leaf_probabilities.size() != leaves_.size())
        throw std::invalid_argument("tree: probability given for a non-leaf node");
    if (total != 1) throw std::invalid_argument("tree: leaf probabilities sum to " + conelab::to_string(total));
}

const ScenarioTree::Node& ScenarioTree::node(int id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw std::invalid_argument("tree: unknown node id " + std::to_string(id));
    return it->second;
}

std::vector<int> ScenarioTree::ids_at(int t) const {
    std::vector<int> out;
    for (const auto& [id, n] : by_id_)
        if (n.time == t) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> ScenarioTree::leaves_under(int id) const {
    const Node& n = node(id);
    if (n.time == horizon_) return {id};
    std::vector<int> out;
    for (int c : n.children) {
        auto sub = leaves_under(c);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

std::vector<int> ScenarioTree::nodes_in_order() const {
    std::vector<int> out;
    for (const auto& [id, n] : by_id_) out.push_back(id);
    std::sort(out.begin(), out.end(), [this](int a, int b) {
        const Node &na = by_id_.at(a), &nb = by_id_.at(b);
        return std::tie(na.time, na.id) < std::tie(nb.time, nb.id);
    });
    return out;
}

int ScenarioTree::ancestor_at(int id, int s) const {
    const Node* n = &node(id);
    if (s > n->time) throw std::invalid_argument("tree: ancestor_at beyond node time");
    while (n->time > s) n = &node(n->parent);
    return n->id;
}

const Rational& ScenarioTree::leaf_probability(int leaf) const {
    auto it = leaf_prob_.find(leaf);
    if (it == leaf_prob_.end())
        throw std::invalid_argument("tree: node " + std::to_string(leaf) + " is not a leaf");
    return it->second;
}

std::map<int, Rational> ScenarioTree::leaf_probabilities() const { return leaf_prob_; }

std::shared_ptr<const ScenarioTree> ScenarioTree::with_probabilities(
    const std::map<int, Rational>& leaf_probabilities) const {
    std::vector<std::array<int, 3>> nodes;
    for (const auto& [id, n] : by_id_) nodes.push_back({n.id, n.time, n.parent});
    return std::make_shared<ScenarioTree>(horizon_, nodes, leaf_probabilities);
}

Rational node_probability(const ScenarioTree& tree, int id) {
    Rational p = 0;
    for (int leaf : tree.leaves_under(id)) p += tree.leaf_probability(leaf);
    return p;
}

void check_adapted(const ScenarioTree& tree, const AdaptedVector& x, int expected_dim) {
    auto level = tree.ids_at(x.time);
    if (x.values.size() != level.size())
        throw std::invalid_argument("adapted vector: wrong node count at its time level");
    int d = expected_dim;
    for (int id : level) {
        auto it = x.values.find(id);
        if (it == x.values.end())
            throw std::invalid_argument("adapted vector: missing node " + std::to_string(id));
        if (d < 0) d = static_cast<int>(it->second.size());
        if (static_cast<int>(it->second.size()) != d)
            throw std::invalid_argument("adapted vector: inconsistent dimension");
    }
}

AdaptedVector conditional_expectation(const ScenarioTree& tree, const AdaptedVector& x, int t) {
    if (t > x.time) throw std::invalid_argument("conditional_expectation: t exceeds variable time");
    check_adapted(tree, x);
    if (t == x.time) return x;
    AdaptedVector out;
    out.time = t;
    for (int u : tree.ids_at(t)) {
        Vec acc;
        Rational mass = 0;
        for (int leaf : tree.leaves_under(u)) {
            int w = tree.ancestor_at(leaf, x.time);
            const Rational& p = tree.leaf_probability(leaf);
            const Vec& val = x.values.at(w);
            if (acc.empty()) acc = zero_vec(static_cast<int>(val.size()));
            acc = acc + p * val;
            mass += p;
        }
        out.values[u] = (1 / mass) * acc;
    }
    return out;
}

bool is_martingale(const ScenarioTree& tree, const AdaptedProcess& z) {
    if (static_cast<int>(z.at.size()) != tree.horizon() + 1)
        throw std::invalid_argument("is_martingale: process must cover t = 0..T");
    for (int t = 0; t < tree.horizon(); ++t) {
        AdaptedVector e = conditional_expectation(tree, z.at[t + 1], t);
        for (const auto& [u, v] : e.values)
            if (z.at[t].values.at(u) != v) return false;
    }
    return true;
}

}  // namespace conelab
