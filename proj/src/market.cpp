#include "conelab/market.hpp"

#include <stdexcept>

namespace conelab {

std::vector<std::string> validate(const BidAskMatrix& m) {
    std::vector<std::string> out;
    auto entry = [](int i, int j) {
        return "pi[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
    };
    if (m.d < 2) {
        out.push_back("dimension d must be >= 2");
        return out;
    }
    if (static_cast<int>(m.pi.size()) != m.d) {
        out.push_back("matrix has wrong row count");
        return out;
    }
    for (int i = 0; i < m.d; ++i)
        if (static_cast<int>(m.pi[i].size()) != m.d) {
            out.push_back("matrix row " + std::to_string(i + 1) + " has wrong width");
            return out;
        }
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j)
            if (m.pi[i][j] <= 0)
                out.push_back(entry(i, j) + " must be positive, got " + to_string(m.pi[i][j]));
    for (int i = 0; i < m.d; ++i)
        if (m.pi[i][i] != 1)
            out.push_back(entry(i, i) + " must equal 1, got " + to_string(m.pi[i][i]));
    if (m.triangle_required) {
        for (int i = 0; i < m.d; ++i)
            for (int j = 0; j < m.d; ++j)
                for (int k = 0; k < m.d; ++k)
                    if (m.pi[i][j] > 0 && m.pi[j][k] > 0 && m.pi[i][k] > 0 &&
                        m.pi[i][j] * m.pi[j][k] < m.pi[i][k])
                        out.push_back("chain condition fails: " + entry(i, j) + "*" + entry(j, k) +
                                      " = " + to_string(m.pi[i][j] * m.pi[j][k]) + " < " +
                                      entry(i, k) + " = " + to_string(m.pi[i][k]));
    }
    return out;
}

namespace {

// Floyd-Warshall over multiplicative weights; nullopt = no chain yet.
void min_product_closure(std::vector<std::vector<std::optional<Rational>>>& w) {
    int d = static_cast<int>(w.size());
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (!w[i][k] || !w[k][j]) continue;
                Rational via = *w[i][k] * *w[k][j];
                if (!w[i][j] || via < *w[i][j]) w[i][j] = via;
            }
}

}  // namespace

BidAskMatrix chain_tighten(const BidAskMatrix& m) {
    std::vector<std::vector<std::optional<Rational>>> w(m.d,
                                                        std::vector<std::optional<Rational>>(m.d));
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) w[i][j] = m.pi[i][j];
    min_product_closure(w);
    BidAskMatrix out;
    out.d = m.d;
    out.triangle_required = true;
    out.pi.assign(m.d, Vec(m.d));
    for (int i = 0; i < m.d; ++i) {
        if (*w[i][i] < 1)
            throw std::invalid_argument("chain_tighten: cycle with product below 1 through asset " +
                                        std::to_string(i + 1));
        for (int j = 0; j < m.d; ++j) out.pi[i][j] = *w[i][j];
    }
    return out;
}

BidAskMatrix complete_from_chains(int d, const std::vector<std::tuple<int, int, Rational>>& edges) {
    std::vector<std::vector<std::optional<Rational>>> w(d, std::vector<std::optional<Rational>>(d));
    for (int i = 0; i < d; ++i) w[i][i] = Rational(1);
    for (const auto& [i, j, rate] : edges) {
        if (i < 0 || i >= d || j < 0 || j >= d || i == j || rate <= 0)
            throw std::invalid_argument("complete_from_chains: bad edge");
        if (!w[i][j] || rate < *w[i][j]) w[i][j] = rate;
    }
    min_product_closure(w);
    BidAskMatrix out;
    out.d = d;
    out.triangle_required = true;
    out.pi.assign(d, Vec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (!w[i][j])
                throw std::invalid_argument("complete_from_chains: no chain from asset " +
                                            std::to_string(i + 1) + " to " + std::to_string(j + 1));
            out.pi[i][j] = *w[i][j];
        }
    for (int i = 0; i < d; ++i)
        if (out.pi[i][i] < 1)
            throw std::invalid_argument("complete_from_chains: cycle with product below 1");
    return out;
}

int local_generator_count(int d) { return d * d; }

std::string local_generator_name(int d, int k) {
    if (k < d) return "-e" + std::to_string(k + 1);
    int pair = k - d;
    int count = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            if (count == pair)
                return "z(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            ++count;
        }
    throw std::invalid_argument("local_generator_name: index out of range");
}

NodeCone node_cone(const BidAskMatrix& m) {
    NodeCone c;
    c.d = m.d;
    for (int i = 0; i < m.d; ++i) c.generators.push_back(Rational(-1) * unit(m.d, i));
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) {
            if (i == j) continue;
            Vec z = unit(m.d, j) - m.pi[i][j] * unit(m.d, i);
            c.generators.push_back(std::move(z));
        }
    for (int i = 0; i < m.d; ++i) c.polar_rows.push_back(unit(m.d, i));
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) {
            if (i == j) continue;
            Vec row = m.pi[i][j] * unit(m.d, i) - unit(m.d, j);
            c.polar_rows.push_back(std::move(row));
        }
    return c;
}

std::vector<std::string> validate(const BidAskProcess& market) {
    std::vector<std::string> out;
    if (!market.tree) {
        out.push_back("market has no scenario tree");
        return out;
    }
    int d = -1;
    for (int id : market.tree->nodes_in_order()) {
        auto it = market.at.find(id);
        if (it == market.at.end()) {
            out.push_back("node " + std::to_string(id) + " has no bid-ask matrix");
            continue;
        }
        if (d < 0) d = it->second.d;
        if (it->second.d != d)
            out.push_back("node " + std::to_string(id) + " has mismatched dimension");
        for (auto& v : validate(it->second))
            out.push_back("node " + std::to_string(id) + ": " + v);
    }
    if (market.at.size() != market.tree->nodes_in_order().size())
        out.push_back("market carries matrices for unknown nodes");
    return out;
}

}  // namespace conelab
