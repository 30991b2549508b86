#include "conelab/attain.hpp"

#include <algorithm>
#include <stdexcept>

namespace conelab {

Vec embed_at_node(const ScenarioTree& tree, const std::vector<int>& leaf_order, int d, int u,
                  const Vec& g) {
    if (static_cast<int>(g.size()) != d) throw std::invalid_argument("embed_at_node: bad dimension");
    Vec out(d * leaf_order.size(), Rational(0));
    auto below = tree.leaves_under(u);
    for (int leaf : below) {
        auto it = std::find(leaf_order.begin(), leaf_order.end(), leaf);
        if (it == leaf_order.end()) throw std::invalid_argument("embed_at_node: leaf not in order");
        std::size_t block = static_cast<std::size_t>(it - leaf_order.begin()) * d;
        for (int c = 0; c < d; ++c) out[block + c] = g[c];
    }
    return out;
}

Vec flatten_terminal(const ScenarioTree& tree, const std::vector<int>& leaf_order,
                     const AdaptedVector& claim) {
    if (claim.time != tree.horizon())
        throw std::invalid_argument("flatten_terminal: claim not at the horizon");
    check_adapted(tree, claim);
    int d = static_cast<int>(claim.values.begin()->second.size());
    Vec out(d * leaf_order.size());
    for (std::size_t l = 0; l < leaf_order.size(); ++l) {
        const Vec& v = claim.values.at(leaf_order[l]);
        for (int c = 0; c < d; ++c) out[l * d + c] = v[c];
    }
    return out;
}

AdaptedVector unflatten_terminal(const ScenarioTree& tree, const std::vector<int>& leaf_order, int d,
                                 const Vec& flat) {
    AdaptedVector out;
    out.time = tree.horizon();
    for (std::size_t l = 0; l < leaf_order.size(); ++l) {
        Vec v(d);
        for (int c = 0; c < d; ++c) v[c] = flat[l * d + c];
        out.values[leaf_order[l]] = std::move(v);
    }
    return out;
}

GlobalCone assemble_A(const BidAskProcess& market, const std::optional<std::set<int>>& node_filter) {
    GlobalCone cone;
    cone.tree = market.tree;
    cone.d = market.dim();
    cone.leaf_order = market.tree->leaves();
    for (int u : market.tree->nodes_in_order()) {
        if (node_filter && !node_filter->count(u)) continue;
        NodeCone local = node_cone(market.at.at(u));
        for (std::size_t k = 0; k < local.generators.size(); ++k) {
            cone.generators.push_back(
                embed_at_node(*market.tree, cone.leaf_order, cone.d, u, local.generators[k]));
            cone.tags.push_back({u, static_cast<int>(k)});
        }
    }
    return cone;
}

MemberAResult member_A(const GlobalCone& cone, const Vec& claim) {
    if (static_cast<int>(claim.size()) != cone.ambient_dim())
        throw std::invalid_argument("member_A: claim dimension mismatch");
    ConeMembership cm = cone_member(cone.generators, claim);
    MemberAResult res;
    res.member = cm.member;
    if (cm.member) {
        int nloc = local_generator_count(cone.d);
        for (std::size_t g = 0; g < cone.tags.size(); ++g) {
            const auto& tag = cone.tags[g];
            auto& c = res.strategy.coeffs[tag.node];
            if (c.empty()) c = zero_vec(nloc);
            c[tag.local] += cm.coefficients[g];
        }
    } else {
        res.certificate = cm.certificate;
    }
    return res;
}

MemberAResult member_A(const GlobalCone& cone, const AdaptedVector& claim) {
    return member_A(cone, flatten_terminal(*cone.tree, cone.leaf_order, claim));
}

Vec realized_claim(const GlobalCone& cone, const Strategy& s) {
    Vec out = zero_vec(cone.ambient_dim());
    for (std::size_t g = 0; g < cone.tags.size(); ++g) {
        auto it = s.coeffs.find(cone.tags[g].node);
        if (it == s.coeffs.end()) continue;
        out = out + it->second.at(cone.tags[g].local) * cone.generators[g];
    }
    return out;
}

AdaptedVector strategy_trade_at(const BidAskProcess& market, const Strategy& s, int t) {
    AdaptedVector out;
    out.time = t;
    int d = market.dim();
    for (int u : market.tree->ids_at(t)) {
        Vec v = zero_vec(d);
        auto it = s.coeffs.find(u);
        if (it != s.coeffs.end()) {
            NodeCone local = node_cone(market.at.at(u));
            for (std::size_t k = 0; k < local.generators.size(); ++k)
                v = v + it->second.at(k) * local.generators[k];
        }
        out.values[u] = std::move(v);
    }
    return out;
}

bool CtMembershipReport::all_member() const {
    for (const auto& [u, v] : atoms)
        if (!v.member) return false;
    return true;
}

CtMembershipReport member_Ct(const BidAskProcess& market, const AdaptedVector& x) {
    check_adapted(*market.tree, x, market.dim());
    GlobalCone cone = assemble_A(market);
    CtMembershipReport report;
    report.time = x.time;
    for (const auto& [u, v] : x.values) {
        Vec claim = embed_at_node(*market.tree, cone.leaf_order, cone.d, u, v);
        MemberAResult r = member_A(cone, claim);
        report.atoms[u] = CtAtomVerdict{r.member, std::move(r.strategy), std::move(r.certificate)};
    }
    return report;
}

Mat null_strategy_matrix(const GlobalCone& cone) {
    Mat m(cone.ambient_dim(), Vec(cone.generators.size(), Rational(0)));
    for (std::size_t g = 0; g < cone.generators.size(); ++g)
        for (int k = 0; k < cone.ambient_dim(); ++k) m[k][g] = cone.generators[g][k];
    return m;
}

NullSpaceResult is_null_space_linear(const BidAskProcess& market) {
    GlobalCone cone = assemble_A(market);
    Mat m = null_strategy_matrix(cone);
    Mat rays = extreme_rays(m, static_cast<int>(cone.generators.size()));
    NullSpaceResult res;
    for (const auto& ray : rays) {
        // Reconstruct the per-period trades of the null strategy and test
        // each reversed trade for membership in the local trading cone.
        Strategy s;
        int nloc = local_generator_count(cone.d);
        for (std::size_t g = 0; g < ray.size(); ++g) {
            if (ray[g] == 0) continue;
            auto& c = s.coeffs[cone.tags[g].node];
            if (c.empty()) c = zero_vec(nloc);
            c[cone.tags[g].local] += ray[g];
        }
        for (int t = 0; t <= market.tree->horizon(); ++t) {
            AdaptedVector xi = strategy_trade_at(market, s, t);
            for (const auto& [u, v] : xi.values) {
                NodeCone local = node_cone(market.at.at(u));
                if (!cone_member(local.generators, Rational(-1) * v).member) {
                    res.linear = false;
                    res.ray = ray;
                    res.bad_time = t;
                    return res;
                }
            }
        }
    }
    return res;
}

bool cone_equal(const GlobalCone& a, const GlobalCone& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("cone_equal: ambient dimension mismatch");
    for (const auto& g : a.generators)
        if (!member_A(b, g).member) return false;
    for (const auto& g : b.generators)
        if (!member_A(a, g).member) return false;
    return true;
}

bool decompose_through_Ct(const BidAskProcess& market, const AdaptedVector& x) {
    const ScenarioTree& tree = *market.tree;
    check_adapted(tree, x, market.dim());
    GlobalCone cone = assemble_A(market);
    const int d = cone.d;
    const int ambient = cone.ambient_dim();
    const int ngen = static_cast<int>(cone.generators.size());
    const int t = x.time;

    // Variable layout: for each s <= t and atom u at s, a free block xi_s(u)
    // of size d, followed by a nonnegative block mu^{s,u} of size ngen
    // certifying that xi_s(u) localized below u lies in A.
    struct AtomVars {
        int s;
        int u;
        int xi_base;
        int mu_base;
    };
    std::vector<AtomVars> atoms;
    int nv = 0;
    for (int s = 0; s <= t; ++s)
        for (int u : tree.ids_at(s)) {
            atoms.push_back({s, u, nv, nv + d});
            nv += d + ngen;
        }

    LinearSystem sys;
    sys.num_vars = nv;
    sys.nonneg.assign(nv, true);
    for (const auto& a : atoms)
        for (int c = 0; c < d; ++c) sys.nonneg[a.xi_base + c] = false;

    // G mu^{s,u} = xi_s(u) replicated below u.
    for (const auto& a : atoms) {
        auto below = tree.leaves_under(a.u);
        for (int k = 0; k < ambient; ++k) {
            Vec row(nv, Rational(0));
            for (int g = 0; g < ngen; ++g) row[a.mu_base + g] = cone.generators[g][k];
            int leaf = cone.leaf_order[k / d];
            int c = k % d;
            if (std::find(below.begin(), below.end(), leaf) != below.end())
                row[a.xi_base + c] = -1;
            sys.eq_rows.push_back(std::move(row));
            sys.eq_rhs.push_back(0);
        }
    }
    // Per leaf: sum over s of xi_s at the ancestor equals X at the time-t
    // ancestor.
    for (std::size_t l = 0; l < cone.leaf_order.size(); ++l) {
        int leaf = cone.leaf_order[l];
        const Vec& target = x.values.at(tree.ancestor_at(leaf, t));
        for (int c = 0; c < d; ++c) {
            Vec row(nv, Rational(0));
            for (const auto& a : atoms)
                if (tree.ancestor_at(leaf, a.s) == a.u) row[a.xi_base + c] = 1;
            sys.eq_rows.push_back(std::move(row));
            sys.eq_rhs.push_back(target[c]);
        }
    }
    return solve(sys).status == LpStatus::Feasible;
}

}  // namespace conelab
