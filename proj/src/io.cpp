#include "conelab/io.hpp"

#include <fstream>
#include <sstream>

namespace conelab {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, int line, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(line, std::string("bad ") + what + ": '" + tok + "'");
    }
}

Rational parse_rat_at(const std::string& tok, int line, const char* what) {
    try {
        return parse_rational(tok);
    } catch (const std::exception& e) {
        throw ParseError(line, std::string("bad ") + what + ": " + e.what());
    }
}

}  // namespace

BidAskProcess parse_market(std::istream& in) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) lines.push_back(raw);

    std::size_t pos = 0;
    auto next = [&]() -> std::pair<int, std::vector<std::string>> {
        while (pos < lines.size()) {
            int ln = static_cast<int>(pos) + 1;
            auto toks = split_ws(lines[pos]);
            ++pos;
            if (toks.empty() || toks[0][0] == '#') continue;
            return {ln, toks};
        }
        throw ParseError(static_cast<int>(lines.size()), "unexpected end of file");
    };
    auto expect = [&](const std::string& key, std::size_t ntok) {
        auto [ln, toks] = next();
        if (toks[0] != key || toks.size() != ntok)
            throw ParseError(ln, "expected '" + key + "' record");
        return std::make_pair(ln, toks);
    };

    {
        auto [ln, toks] = next();
        if (toks.size() != 1 || toks[0] != "conelab-market")
            throw ParseError(ln, "missing 'conelab-market' header");
    }
    auto [dln, dtok] = expect("d", 2);
    int d = parse_int(dtok[1], dln, "dimension");
    if (d < 2) throw ParseError(dln, "dimension must be >= 2");
    auto [tln, ttok] = expect("T", 2);
    int horizon = parse_int(ttok[1], tln, "horizon");
    if (horizon < 0) throw ParseError(tln, "horizon must be >= 0");
    auto [nln, ntok] = expect("nodes", 2);
    int ncount = parse_int(ntok[1], nln, "node count");
    if (ncount < 1) throw ParseError(nln, "node count must be >= 1");

    std::vector<std::array<int, 3>> nodes;
    for (int k = 0; k < ncount; ++k) {
        auto [ln, toks] = next();
        if (toks[0] != "node" || toks.size() != 4) throw ParseError(ln, "expected 'node <id> <t> <parent>'");
        int id = parse_int(toks[1], ln, "node id");
        int t = parse_int(toks[2], ln, "node time");
        int parent = (toks[3] == "-") ? -1 : parse_int(toks[3], ln, "parent id");
        nodes.push_back({id, t, parent});
    }

    std::map<int, Rational> probs;
    int nleaves = 0;
    for (const auto& n : nodes)
        if (n[1] == horizon) ++nleaves;
    for (int k = 0; k < nleaves; ++k) {
        auto [ln, toks] = next();
        if (toks[0] != "prob" || toks.size() != 3) throw ParseError(ln, "expected 'prob <leaf> <p/q>'");
        int leaf = parse_int(toks[1], ln, "leaf id");
        Rational p = parse_rat_at(toks[2], ln, "probability");
        if (p <= 0) throw ParseError(ln, "probability must be positive");
        if (!probs.emplace(leaf, p).second) throw ParseError(ln, "duplicate probability record");
    }

    BidAskProcess market;
    int tree_line = 0;
    try {
        market.tree = std::make_shared<ScenarioTree>(horizon, nodes, probs);
    } catch (const std::exception& e) {
        throw ParseError(tree_line + 1, std::string("invalid tree: ") + e.what());
    }

    for (int k = 0; k < ncount; ++k) {
        auto [ln, toks] = next();
        bool relaxed = toks.size() == 3 && toks[2] == "relaxed";
        if (toks[0] != "matrix" || (toks.size() != 2 && !relaxed))
            throw ParseError(ln, "expected 'matrix <node id> [relaxed]'");
        int id = parse_int(toks[1], ln, "node id");
        if (!market.tree->contains(id)) throw ParseError(ln, "matrix for unknown node " + toks[1]);
        if (market.at.count(id)) throw ParseError(ln, "duplicate matrix for node " + toks[1]);
        BidAskMatrix m;
        m.d = d;
        m.triangle_required = !relaxed;
        for (int r = 0; r < d; ++r) {
            auto [rl, row] = next();
            if (static_cast<int>(row.size()) != d)
                throw ParseError(rl, "matrix row needs exactly " + std::to_string(d) + " entries");
            Vec v(d);
            for (int c = 0; c < d; ++c) v[c] = parse_rat_at(row[c], rl, "matrix entry");
            m.pi.push_back(std::move(v));
        }
        market.at[id] = std::move(m);
    }
    while (pos < lines.size()) {
        auto toks = split_ws(lines[pos]);
        if (!toks.empty() && toks[0][0] != '#')
            throw ParseError(static_cast<int>(pos) + 1, "trailing content after market");
        ++pos;
    }
    return market;
}

BidAskProcess parse_market_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_market(ss);
}

BidAskProcess load_market(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open market file: " + path);
    return parse_market(f);
}

std::string emit_market(const BidAskProcess& market) {
    const ScenarioTree& tree = *market.tree;
    std::ostringstream out;
    out << "conelab-market\n";
    out << "d " << market.dim() << "\n";
    out << "T " << tree.horizon() << "\n";
    auto order = tree.nodes_in_order();
    out << "nodes " << order.size() << "\n";
    for (int id : order) {
        const auto& n = tree.node(id);
        out << "node " << id << " " << n.time << " ";
        if (n.parent < 0)
            out << "-";
        else
            out << n.parent;
        out << "\n";
    }
    for (int leaf : tree.leaves())
        out << "prob " << leaf << " " << to_string(tree.leaf_probability(leaf)) << "\n";
    for (int id : order) {
        const BidAskMatrix& m = market.at.at(id);
        out << "matrix " << id << (m.triangle_required ? "" : " relaxed") << "\n";
        for (int r = 0; r < m.d; ++r) {
            for (int c = 0; c < m.d; ++c) out << (c ? " " : "") << to_string(m.pi[r][c]);
            out << "\n";
        }
    }
    return out.str();
}

void save_market(const BidAskProcess& market, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write market file: " + path);
    f << emit_market(market);
}

}  // namespace conelab
