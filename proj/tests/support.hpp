#pragma once

// Test-only helpers: brute-force oracles kept independent of the library's
// LP path, plus deterministic random instance generators.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>

#include "conelab/attain.hpp"
#include "conelab/market.hpp"
#include "conelab/ratlp.hpp"
#include "conelab/tree.hpp"

namespace conelab::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// --- exact dense linear algebra for the oracles ---------------------------

// Solves A x = b where A has full column rank; returns nullopt when the
// system is inconsistent or the columns are dependent.
inline std::optional<Vec> solve_unique(const Mat& columns, const Vec& rhs) {
    const int m = static_cast<int>(rhs.size());
    const int n = static_cast<int>(columns.size());
    Mat aug(m, Vec(n + 1));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) aug[r][c] = columns[c][r];
        aug[r][n] = rhs[r];
    }
    std::vector<int> pivot_row(n, -1);
    int rank = 0;
    for (int c = 0; c < n && rank < m; ++c) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (aug[r][c] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;  // dependent columns
        std::swap(aug[rank], aug[piv]);
        for (int r = 0; r < m; ++r) {
            if (r == rank || aug[r][c] == 0) continue;
            Rational f = aug[r][c] / aug[rank][c];
            for (int j = c; j <= n; ++j) aug[r][j] -= f * aug[rank][j];
        }
        pivot_row[c] = rank;
        ++rank;
    }
    for (int r = rank; r < m; ++r)
        if (aug[r][n] != 0) return std::nullopt;  // inconsistent
    Vec x(n);
    for (int c = 0; c < n; ++c) x[c] = aug[pivot_row[c]][n] / aug[pivot_row[c]][c];
    return x;
}

// Caratheodory-style membership oracle: target lies in the cone iff some
// linearly independent generator subset of size <= dim carries it with
// nonnegative weights.
inline bool oracle_cone_member(const Mat& generators, const Vec& target) {
    if (is_zero(target)) return true;
    const int dim = static_cast<int>(target.size());
    const int n = static_cast<int>(generators.size());
    std::vector<int> subset;
    std::function<bool(int, int)> rec = [&](int start, int remaining) {
        if (!subset.empty()) {
            Mat cols;
            for (int g : subset) cols.push_back(generators[g]);
            if (auto x = solve_unique(cols, target)) {
                bool ok = true;
                for (const auto& v : *x)
                    if (v < 0) ok = false;
                if (ok) return true;
            }
        }
        if (remaining == 0) return false;
        for (int g = start; g < n; ++g) {
            subset.push_back(g);
            if (rec(g + 1, remaining - 1)) return true;
            subset.pop_back();
        }
        return false;
    };
    return rec(0, std::min(dim, n));
}

inline Mat nullspace(const Mat& rows, int n) {
    Mat a = rows;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < n && rank < static_cast<int>(a.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(a.size()); ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int r = 0; r < static_cast<int>(a.size()); ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rank][c];
            for (int j = 0; j < n; ++j) a[r][j] -= f * a[rank][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    Mat basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(n);
        v[free] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free] / a[r][pivot_col[r]];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Support-enumeration oracle for extreme rays of {x >= 0, M x = 0}.
inline Mat oracle_extreme_rays(const Mat& m, int n) {
    auto vec_less = [](const Vec& a, const Vec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    };
    std::set<Vec, decltype(vec_less)> found(vec_less);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Mat active = m;
        for (int i = 0; i < n; ++i)
            if (!(mask & (1u << i))) active.push_back(unit(n, i));
        Mat ns = nullspace(active, n);
        if (ns.size() != 1) continue;
        Vec r = primitive(ns[0]);
        bool neg = false, pos = false;
        for (const auto& x : r) {
            if (x < 0) neg = true;
            if (x > 0) pos = true;
        }
        if (neg && pos) continue;
        if (neg) r = Rational(-1) * r;
        found.insert(primitive(r));
    }
    Mat out;
    for (const auto& r : found) out.push_back(r);
    return out;
}

// Minimum product over simple directed chains, by DFS. Independent of the
// Floyd-Warshall closure in the library.
inline std::optional<Rational> oracle_min_chain(const Mat& pi, int from, int to) {
    const int d = static_cast<int>(pi.size());
    std::optional<Rational> best;
    std::vector<bool> used(d, false);
    std::function<void(int, Rational)> dfs = [&](int at, Rational prod) {
        if (at == to) {
            if (!best || prod < *best) best = prod;
            return;
        }
        used[at] = true;
        for (int nxt = 0; nxt < d; ++nxt) {
            if (used[nxt] || nxt == at) continue;
            dfs(nxt, prod * pi[at][nxt]);
        }
        used[at] = false;
    };
    if (from == to) return Rational(1);
    dfs(from, Rational(1));
    return best;
}

// --- random instances -----------------------------------------------------

inline Rational random_price(Rng& rng) {
    static const std::vector<Rational> pool = {rat(1, 2), rat(2, 3), Rational(1), rat(3, 2),
                                               Rational(2), Rational(3), Rational(4)};
    return pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
}

inline Rational random_spread(Rng& rng) {
    static const std::vector<Rational> pool = {Rational(1), Rational(1), rat(9, 8), rat(3, 2),
                                               Rational(2), Rational(4)};
    return pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
}

inline TreePtr random_tree(Rng& rng, int max_horizon, int max_leaves) {
    int horizon = pick(rng, 1, max_horizon);
    std::vector<std::array<int, 3>> nodes{{0, 0, -1}};
    std::vector<int> frontier{0};
    int next_id = 1;
    for (int t = 1; t <= horizon; ++t) {
        std::vector<int> level;
        int budget = max_leaves;
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            int remaining_parents = static_cast<int>(frontier.size() - k - 1);
            int max_kids = std::max(1, budget - remaining_parents);
            int kids = pick(rng, 1, std::min(3, max_kids));
            budget -= kids;
            for (int c = 0; c < kids; ++c) {
                nodes.push_back({next_id, t, frontier[k]});
                level.push_back(next_id);
                ++next_id;
            }
        }
        frontier = std::move(level);
    }
    std::map<int, Rational> probs;
    Rational total = 0;
    std::vector<Rational> weights;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
        Rational w(pick(rng, 1, 4));
        weights.push_back(w);
        total += w;
    }
    for (std::size_t k = 0; k < frontier.size(); ++k) probs[frontier[k]] = weights[k] / total;
    return std::make_shared<ScenarioTree>(horizon, nodes, probs);
}

// Random market: per-node frictionless mid prices wrapped in multiplicative
// spreads in [1, 4], then chain-tightened. Price movement across nodes makes
// both arbitrage-free and arbitrage cases show up.
inline BidAskProcess random_market(Rng& rng, int max_d = 3, int max_horizon = 2,
                                   int max_leaves = 6) {
    BidAskProcess mk;
    mk.tree = random_tree(rng, max_horizon, max_leaves);
    int d = pick(rng, 2, max_d);
    for (int u : mk.tree->nodes_in_order()) {
        Vec price(d);
        for (int i = 0; i < d; ++i) price[i] = random_price(rng);
        BidAskMatrix m;
        m.d = d;
        m.pi.assign(d, Vec(d, Rational(1)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (i != j) m.pi[i][j] = random_spread(rng) * price[j] / price[i];
        mk.at[u] = chain_tighten(m);
    }
    return mk;
}

inline AdaptedVector random_adapted(Rng& rng, const ScenarioTree& tree, int d, int t) {
    AdaptedVector x;
    x.time = t;
    for (int u : tree.ids_at(t)) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = rat(pick(rng, -3, 3), pick(rng, 1, 2));
        x.values[u] = std::move(v);
    }
    return x;
}

inline AdaptedVector constant_claim(const ScenarioTree& tree, const Vec& v) {
    AdaptedVector x;
    x.time = tree.horizon();
    for (int leaf : tree.leaves()) x.values[leaf] = v;
    return x;
}

}  // namespace conelab::testing
