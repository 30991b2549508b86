#include "conelab/price.hpp"

#include <stdexcept>

namespace conelab {

namespace {

// Shared variable layout for the consistent-process LPs: one block of d
// nonnegative variables per node (nodes in (time, id) order), optional
// extra scalar at the end.
struct ZLayout {
    const BidAskProcess* market;
    std::vector<int> order;
    std::map<int, int> base;
    int d;
    int extra = -1;

    explicit ZLayout(const BidAskProcess& m, bool with_extra) : market(&m) {
        d = m.dim();
        order = m.tree->nodes_in_order();
        int nv = 0;
        for (int u : order) {
            base[u] = nv;
            nv += d;
        }
        if (with_extra) {
            extra = nv;
            ++nv;
        }
        num_vars = nv;
    }

    int num_vars;
    int idx(int u, int i) const { return base.at(u) + i; }

    void add_martingale_rows(LinearSystem& sys) const {
        const ScenarioTree& tree = *market->tree;
        for (int u : order) {
            const auto& n = tree.node(u);
            if (n.time == tree.horizon()) continue;
            Rational pu = node_probability(tree, u);
            for (int i = 0; i < d; ++i) {
                Vec row(num_vars, Rational(0));
                row[idx(u, i)] = pu;
                for (int v : n.children) row[idx(v, i)] = -node_probability(tree, v);
                sys.eq_rows.push_back(std::move(row));
                sys.eq_rhs.push_back(0);
            }
        }
    }

    // Polar rows pi[i][j] Z_i - Z_j >= slack at every node; the slack
    // variable is attached only where `slacked` says so.
    void add_polar_rows(LinearSystem& sys, bool strict_slack) const {
        for (int u : order) {
            const BidAskMatrix& m = market->at.at(u);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    if (i == j) continue;
                    Vec row(num_vars, Rational(0));
                    row[idx(u, i)] = m.pi[i][j];
                    row[idx(u, j)] -= 1;
                    if (strict_slack && extra >= 0 && m.pi[i][j] * m.pi[j][i] > 1)
                        row[extra] = -1;
                    sys.ge_rows.push_back(std::move(row));
                    sys.ge_rhs.push_back(0);
                }
        }
    }

    void add_terminal_floor(LinearSystem& sys) const {
        for (int leaf : market->tree->leaves())
            for (int i = 0; i < d; ++i) {
                Vec row(num_vars, Rational(0));
                row[idx(leaf, i)] = 1;
                row[extra] = -1;
                sys.ge_rows.push_back(std::move(row));
                sys.ge_rhs.push_back(0);
            }
    }

    AdaptedProcess extract(const Vec& witness) const {
        const ScenarioTree& tree = *market->tree;
        AdaptedProcess z;
        z.at.resize(tree.horizon() + 1);
        for (int t = 0; t <= tree.horizon(); ++t) z.at[t].time = t;
        for (int u : order) {
            Vec v(d);
            for (int i = 0; i < d; ++i) v[i] = witness[idx(u, i)];
            z.at[tree.node(u).time].values[u] = std::move(v);
        }
        return z;
    }
};

}  // namespace

ConsistentSearch find_consistent(const BidAskProcess& market, bool strict) {
    ZLayout lay(market, /*with_extra=*/true);
    LinearSystem sys;
    sys.num_vars = lay.num_vars;

    Vec norm(lay.num_vars, Rational(0));
    for (int i = 0; i < lay.d; ++i) norm[lay.idx(market.tree->root(), i)] = 1;
    sys.eq_rows.push_back(std::move(norm));
    sys.eq_rhs.push_back(1);

    lay.add_martingale_rows(sys);
    lay.add_polar_rows(sys, strict);
    lay.add_terminal_floor(sys);

    Vec obj(lay.num_vars, Rational(0));
    obj[lay.extra] = 1;
    sys.objective = std::move(obj);

    ConsistentSearch res;
    LpOutcome out = solve(sys);
    if (out.status == LpStatus::Infeasible) {
        res.certificate = std::move(out.certificate);
        return res;
    }
    if (out.status != LpStatus::Optimal)
        throw std::logic_error("find_consistent: normalized LP should be bounded");
    res.level = out.objective_value;
    res.found = res.level > 0;
    if (res.found) {
        res.z = lay.extract(out.witness);
        if (strict) {
            // Scale-invariant margin of the witness over the frictional rows.
            bool first = true;
            for (int u : lay.order) {
                const BidAskMatrix& m = market.at.at(u);
                const Vec& zu = res.z.at[market.tree->node(u).time].values.at(u);
                for (int i = 0; i < lay.d; ++i)
                    for (int j = 0; j < lay.d; ++j) {
                        if (i == j || m.pi[i][j] * m.pi[j][i] <= 1) continue;
                        Rational margin = (m.pi[i][j] * zu[i] - zu[j]) / (zu[i] + zu[j]);
                        if (first || margin < res.epsilon) res.epsilon = margin;
                        first = false;
                    }
            }
            if (first) res.epsilon = res.level;  // fully frictionless market
        }
        if (!verify_consistent(market, res.z))
            throw std::logic_error("find_consistent: witness failed re-verification");
    }
    return res;
}

bool verify_consistent(const BidAskProcess& market, const AdaptedProcess& z) {
    const ScenarioTree& tree = *market.tree;
    if (!is_martingale(tree, z)) return false;
    int d = market.dim();
    for (int u : tree.nodes_in_order()) {
        const auto& n = tree.node(u);
        const Vec& zu = z.at.at(n.time).values.at(u);
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
            if (zu[i] < 0) return false;
            if (zu[i] != 0) nonzero = true;
        }
        if (!nonzero) return false;
        const BidAskMatrix& m = market.at.at(u);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (i != j && m.pi[i][j] * zu[i] - zu[j] < 0) return false;
        if (n.time == tree.horizon())
            for (int i = 0; i < d; ++i)
                if (zu[i] <= 0) return false;
    }
    return true;
}

std::optional<ArbitrageWitness> check_arbitrage(const BidAskProcess& market) {
    GlobalCone cone = assemble_A(market);
    const int ngen = static_cast<int>(cone.generators.size());
    const int ambient = cone.ambient_dim();

    LinearSystem sys;
    sys.num_vars = ngen + ambient;
    // lambda >= 0, X >= 0; G lambda = X; X <= 1; maximize sum X.
    for (int k = 0; k < ambient; ++k) {
        Vec row(sys.num_vars, Rational(0));
        for (int g = 0; g < ngen; ++g) row[g] = cone.generators[g][k];
        row[ngen + k] = -1;
        sys.eq_rows.push_back(std::move(row));
        sys.eq_rhs.push_back(0);
    }
    for (int k = 0; k < ambient; ++k) {
        Vec row(sys.num_vars, Rational(0));
        row[ngen + k] = -1;
        sys.ge_rows.push_back(std::move(row));
        sys.ge_rhs.push_back(-1);
    }
    Vec obj(sys.num_vars, Rational(0));
    for (int k = 0; k < ambient; ++k) obj[ngen + k] = 1;
    sys.objective = std::move(obj);

    LpOutcome out = solve(sys);
    if (out.status != LpStatus::Optimal)
        throw std::logic_error("check_arbitrage: bounded LP expected");
    if (out.objective_value == 0) return std::nullopt;

    ArbitrageWitness w;
    Vec flat(out.witness.begin() + ngen, out.witness.end());
    w.claim = unflatten_terminal(*market.tree, cone.leaf_order, cone.d, flat);
    int nloc = local_generator_count(cone.d);
    for (int g = 0; g < ngen; ++g) {
        if (out.witness[g] == 0) continue;
        auto& c = w.strategy.coeffs[cone.tags[g].node];
        if (c.empty()) c = zero_vec(nloc);
        c[cone.tags[g].local] += out.witness[g];
    }
    if (realized_claim(cone, w.strategy) != flat)
        throw std::logic_error("check_arbitrage: witness strategy mismatch");
    return w;
}

SuperhedgeResult superhedge_price(const BidAskProcess& market, const AdaptedVector& claim,
                                  int numeraire) {
    if (numeraire < 0 || numeraire >= market.dim())
        throw std::invalid_argument("superhedge_price: numeraire out of range");
    if (auto w = check_arbitrage(market)) throw ArbitragePresentError(std::move(*w));

    GlobalCone cone = assemble_A(market);
    Vec flat = flatten_terminal(*market.tree, cone.leaf_order, claim);
    const int ngen = static_cast<int>(cone.generators.size());
    const int ambient = cone.ambient_dim();

    // Primal: min x with claim - x e_numeraire (held to maturity) in A.
    LinearSystem primal;
    primal.num_vars = ngen + 1;
    primal.nonneg.assign(primal.num_vars, true);
    primal.nonneg[ngen] = false;
    for (int k = 0; k < ambient; ++k) {
        Vec row(primal.num_vars, Rational(0));
        for (int g = 0; g < ngen; ++g) row[g] = cone.generators[g][k];
        if (k % cone.d == numeraire) row[ngen] = 1;
        primal.eq_rows.push_back(std::move(row));
        primal.eq_rhs.push_back(flat[k]);
    }
    Vec pobj(primal.num_vars, Rational(0));
    pobj[ngen] = -1;
    primal.objective = std::move(pobj);
    LpOutcome pout = solve(primal);
    if (pout.status != LpStatus::Optimal)
        throw std::logic_error("superhedge_price: primal LP not optimal on arbitrage-free market");

    SuperhedgeResult res;
    res.price = pout.witness[ngen];
    int nloc = local_generator_count(cone.d);
    for (int g = 0; g < ngen; ++g) {
        if (pout.witness[g] == 0) continue;
        auto& c = res.strategy.coeffs[cone.tags[g].node];
        if (c.empty()) c = zero_vec(nloc);
        c[cone.tags[g].local] += pout.witness[g];
    }

    // Dual: max E[Z_T.claim] over consistent Z with Z^numeraire_0 = 1.
    ZLayout lay(market, /*with_extra=*/false);
    LinearSystem dual;
    dual.num_vars = lay.num_vars;
    Vec norm(lay.num_vars, Rational(0));
    norm[lay.idx(market.tree->root(), numeraire)] = 1;
    dual.eq_rows.push_back(std::move(norm));
    dual.eq_rhs.push_back(1);
    lay.add_martingale_rows(dual);
    lay.add_polar_rows(dual, false);
    Vec dobj(lay.num_vars, Rational(0));
    for (int leaf : market.tree->leaves()) {
        const Rational& p = market.tree->leaf_probability(leaf);
        const Vec& cv = claim.values.at(leaf);
        for (int i = 0; i < lay.d; ++i) dobj[lay.idx(leaf, i)] = p * cv[i];
    }
    dual.objective = std::move(dobj);
    LpOutcome dout = solve(dual);
    if (dout.status != LpStatus::Optimal)
        throw std::logic_error("superhedge_price: dual LP not optimal");
    res.dual_value = dout.objective_value;
    res.dual_z = lay.extract(dout.witness);
    return res;
}

DualMembership member_dual(const BidAskProcess& market, const AdaptedVector& claim) {
    if (auto w = check_arbitrage(market)) throw ArbitragePresentError(std::move(*w));
    ZLayout lay(market, /*with_extra=*/false);
    LinearSystem sys;
    sys.num_vars = lay.num_vars;
    Vec norm(lay.num_vars, Rational(0));
    for (int i = 0; i < lay.d; ++i) norm[lay.idx(market.tree->root(), i)] = 1;
    sys.eq_rows.push_back(std::move(norm));
    sys.eq_rhs.push_back(1);
    lay.add_martingale_rows(sys);
    lay.add_polar_rows(sys, false);
    Vec obj(lay.num_vars, Rational(0));
    for (int leaf : market.tree->leaves()) {
        const Rational& p = market.tree->leaf_probability(leaf);
        const Vec& cv = claim.values.at(leaf);
        for (int i = 0; i < lay.d; ++i) obj[lay.idx(leaf, i)] = p * cv[i];
    }
    sys.objective = std::move(obj);
    LpOutcome out = solve(sys);
    if (out.status != LpStatus::Optimal) throw std::logic_error("member_dual: bounded LP expected");
    DualMembership res;
    res.dual_value = out.objective_value;
    res.member = res.dual_value <= 0;
    res.argmax_z = lay.extract(out.witness);
    return res;
}

RepresentationReport verify_representation(const BidAskProcess& market, const AdaptedVector& theta,
                                           const AdaptedProcess& eta) {
    const ScenarioTree& tree = *market.tree;
    const int T = tree.horizon();
    const int d = market.dim();
    if (static_cast<int>(eta.at.size()) != T + 1)
        throw std::invalid_argument("verify_representation: eta must cover t = 0..T");
    for (int t = 0; t <= T; ++t) check_adapted(tree, eta.at[t], d);
    check_adapted(tree, theta, d);
    for (int leaf : tree.leaves())
        if (eta.at[T].values.at(leaf) != theta.values.at(leaf))
            throw std::invalid_argument("verify_representation: eta_T != theta");

    RepresentationReport rep;
    rep.xi_in_Ct.resize(T + 1);
    rep.all_in_Ct = true;
    for (int t = 0; t <= T; ++t) {
        AdaptedVector xi;
        xi.time = t;
        for (int u : tree.ids_at(t)) {
            Vec prev = (t == 0) ? zero_vec(d) : eta.at[t - 1].values.at(tree.node(u).parent);
            xi.values[u] = eta.at[t].values.at(u) - prev;
        }
        rep.xi_in_Ct[t] = member_Ct(market, xi).all_member();
        if (!rep.xi_in_Ct[t]) rep.all_in_Ct = false;
    }

    ConsistentSearch cs = find_consistent(market, false);
    if (cs.found) {
        rep.checked_supermartingale = true;
        rep.supermartingale_ok = true;
        rep.terminal_dominates = true;
        // M^Z_t = eta_{t-1}.Z_t, with M^Z_0 = 0.
        std::map<int, Rational> m_prev;
        m_prev[tree.root()] = 0;
        for (int t = 0; t < T; ++t) {
            for (int u : tree.ids_at(t)) {
                Rational expect = 0;
                Rational pu = node_probability(tree, u);
                for (int v : tree.node(u).children) {
                    Rational mv = dot(eta.at[t].values.at(u), cs.z.at[t + 1].values.at(v));
                    expect += node_probability(tree, v) * mv;
                }
                if (expect > pu * m_prev.at(u)) rep.supermartingale_ok = false;
            }
            std::map<int, Rational> m_next;
            for (int u : tree.ids_at(t))
                for (int v : tree.node(u).children)
                    m_next[v] = dot(eta.at[t].values.at(u), cs.z.at[t + 1].values.at(v));
            m_prev = std::move(m_next);
        }
        for (int leaf : tree.leaves()) {
            Rational mt = m_prev.at(leaf);
            if (T == 0) mt = 0;
            if (mt < dot(theta.values.at(leaf), cs.z.at[T].values.at(leaf)))
                rep.terminal_dominates = false;
        }
    }
    return rep;
}

}  // namespace conelab
