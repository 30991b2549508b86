#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "conelab/adjust.hpp"
#include "conelab/examples.hpp"
#include "conelab/io.hpp"
#include "conelab/price.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace conelab;

// Exit codes: 0 = ran (verdict in the report), 1 = tool failure,
// 2 = negative validation verdict, 3 = superhedge refused (arbitrage).
namespace exit_code {
constexpr int ok = 0;
constexpr int failure = 1;
constexpr int invalid = 2;
constexpr int refused = 3;
}  // namespace exit_code

namespace {

json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

json adapted_json(const AdaptedVector& x) {
    json o;
    o["time"] = x.time;
    for (const auto& [u, v] : x.values) o["values"][std::to_string(u)] = vec_json(v);
    return o;
}

json process_json(const AdaptedProcess& z) {
    json a = json::array();
    for (const auto& x : z.at) a.push_back(adapted_json(x));
    return a;
}

json strategy_json(const BidAskProcess& market, const Strategy& s) {
    json o;
    for (const auto& [u, lambda] : s.coeffs) {
        int d = market.at.at(u).d;
        json node;
        for (int k = 0; k < static_cast<int>(lambda.size()); ++k)
            if (lambda[k] != 0) node[local_generator_name(d, k)] = to_string(lambda[k]);
        o[std::to_string(u)] = std::move(node);
    }
    return o;
}

json matrix_json(const BidAskMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.pi) rows.push_back(vec_json(r));
    return rows;
}

// Claims come in two shapes: a comma-separated rational list ("1,0,-1/2") or
// a signed combination of basis vectors ("e1-e4", "2e1+1/2e3").
Vec parse_claim_vector(const std::string& text, int d) {
    if (text.find(',') != std::string::npos) {
        Vec v;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(parse_rational(tok));
        if (static_cast<int>(v.size()) != d)
            throw std::invalid_argument("claim has " + std::to_string(v.size()) +
                                        " entries, market has d = " + std::to_string(d));
        return v;
    }
    Vec v = zero_vec(d);
    std::size_t pos = 0;
    while (pos < text.size()) {
        Rational sign = 1;
        if (text[pos] == '+') {
            ++pos;
        } else if (text[pos] == '-') {
            sign = -1;
            ++pos;
        }
        std::size_t e = text.find('e', pos);
        if (e == std::string::npos) throw std::invalid_argument("bad claim term near '" + text.substr(pos) + "'");
        Rational coef = (e == pos) ? Rational(1) : parse_rational(text.substr(pos, e - pos));
        pos = e + 1;
        std::size_t end = pos;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos) throw std::invalid_argument("bad asset index in claim");
        int idx = std::stoi(text.substr(pos, end - pos));
        if (idx < 1 || idx > d) throw std::invalid_argument("asset index out of range in claim");
        v[idx - 1] += sign * coef;
        pos = end;
    }
    return v;
}

AdaptedVector constant_terminal_claim(const ScenarioTree& tree, const Vec& v) {
    AdaptedVector x;
    x.time = tree.horizon();
    for (int leaf : tree.leaves()) x.values[leaf] = v;
    return x;
}

// Eta files: one line per node, "<node id> <d rationals>", '#' comments.
// Every node of the tree must appear.
AdaptedProcess parse_eta_file(const std::string& path, const ScenarioTree& tree, int d) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open eta file: " + path);
    std::map<int, Vec> rows;
    std::string line;
    int ln = 0;
    while (std::getline(f, line)) {
        ++ln;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#') continue;
        int id = std::stoi(first);
        if (!tree.contains(id))
            throw std::runtime_error("eta line " + std::to_string(ln) + ": unknown node " + first);
        Vec v(d);
        for (int i = 0; i < d; ++i) {
            std::string tok;
            if (!(ss >> tok))
                throw std::runtime_error("eta line " + std::to_string(ln) + ": expected " +
                                         std::to_string(d) + " entries");
            v[i] = parse_rational(tok);
        }
        rows[id] = std::move(v);
    }
    AdaptedProcess eta;
    for (int t = 0; t <= tree.horizon(); ++t) {
        AdaptedVector x;
        x.time = t;
        for (int u : tree.ids_at(t)) {
            auto it = rows.find(u);
            if (it == rows.end())
                throw std::runtime_error("eta file misses node " + std::to_string(u));
            x.values[u] = it->second;
        }
        eta.at.push_back(std::move(x));
    }
    return eta;
}

void emit_report(const json& report, bool as_json) {
    if (as_json) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::cout << "command: " << report.at("command").get<std::string>() << "\n";
    for (const auto& [key, val] : report.items()) {
        if (key == "command" || key == "elapsed_ms") continue;
        if (val.is_string())
            std::cout << key << ": " << val.get<std::string>() << "\n";
        else if (val.is_boolean())
            std::cout << key << ": " << (val.get<bool>() ? "yes" : "no") << "\n";
        else
            std::cout << key << ": " << val.dump() << "\n";
    }
}

struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw VerifyFailure("verification failed: " + what);
}

int run_analyze(const std::string& path, const std::string& kind, const std::string& claim_text,
                int numeraire, const std::string& eta_path, bool verify, bool as_json) {
    auto started = std::chrono::steady_clock::now();
    BidAskProcess market = load_market(path);
    if (auto problems = validate(market); !problems.empty()) {
        std::cerr << "market is invalid:\n";
        for (const auto& p : problems) std::cerr << "  " << p << "\n";
        return exit_code::failure;
    }
    const ScenarioTree& tree = *market.tree;
    int d = market.dim();

    json report;
    report["command"] = "analyze " + kind;
    int code = exit_code::ok;

    if (kind == "arbitrage") {
        auto w = check_arbitrage(market);
        report["arbitrage"] = w.has_value();
        report["verdict"] = w ? "arbitrage exists" : "no arbitrage";
        if (w) {
            report["claim"] = adapted_json(w->claim);
            report["strategy"] = strategy_json(market, w->strategy);
            if (verify) {
                GlobalCone cone = assemble_A(market);
                Vec flat = flatten_terminal(tree, cone.leaf_order, w->claim);
                require(realized_claim(cone, w->strategy) == flat, "arbitrage strategy");
                bool nonneg = true, nonzero = false;
                for (const auto& q : flat) {
                    if (q < 0) nonneg = false;
                    if (q > 0) nonzero = true;
                }
                require(nonneg && nonzero, "arbitrage claim sign");
            }
        }
    } else if (kind == "rna") {
        auto plain = find_consistent(market, false);
        auto strict = find_consistent(market, true);
        report["na"] = plain.found;
        report["rna"] = strict.found;
        if (plain.found && !strict.found)
            report["verdict"] = "RNA fails, NA holds";
        else if (strict.found)
            report["verdict"] = "RNA holds";
        else
            report["verdict"] = "NA fails";
        if (plain.found) report["consistent_z"] = process_json(plain.z);
        report["strict_epsilon"] = to_string(strict.found ? strict.epsilon : Rational(0));
        if (strict.found) report["strict_z"] = process_json(strict.z);
        if (verify) {
            if (plain.found) require(verify_consistent(market, plain.z), "consistent process");
            if (strict.found) require(verify_consistent(market, strict.z), "strict process");
        }
    } else if (kind == "adjust") {
        AdjustedMarket adj = adjusted_market(market);
        report["adjusted_market"] = emit_market(adj.adjusted);
        json per_node;
        for (int u : tree.nodes_in_order()) per_node[std::to_string(u)] = matrix_json(adj.adjusted.at.at(u));
        report["adjusted_pi"] = per_node;
        if (verify) {
            for (int u : tree.nodes_in_order())
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        require(adj.adjusted.at.at(u).pi[i][j] <= market.at.at(u).pi[i][j],
                                "adjusted rates never exceed the originals");
        }
        if (!as_json) {
            std::cout << emit_market(adj.adjusted);
            return exit_code::ok;
        }
    } else if (kind == "t2") {
        T2Report t2 = verify_t2(market);
        report["a_subset_adjusted"] = t2.a_subset_adjusted;
        report["adjusted_arbitrage_free"] = t2.adjusted_arbitrage_free;
        report["adjusted_equals_a"] = t2.adjusted_equals_a;
    } else if (kind == "member") {
        if (claim_text.empty()) throw std::runtime_error("member analysis needs --claim");
        AdaptedVector claim = constant_terminal_claim(tree, parse_claim_vector(claim_text, d));
        GlobalCone cone = assemble_A(market);
        MemberAResult res = member_A(cone, claim);
        report["member"] = res.member;
        report["verdict"] = res.member ? "attainable" : "not attainable";
        if (res.member)
            report["strategy"] = strategy_json(market, res.strategy);
        else
            report["certificate"] = vec_json(res.certificate);
        if (verify) {
            Vec flat = flatten_terminal(tree, cone.leaf_order, claim);
            if (res.member) {
                require(realized_claim(cone, res.strategy) == flat, "membership strategy");
            } else {
                for (const auto& g : cone.generators)
                    require(dot(res.certificate, g) <= 0, "certificate against generators");
                require(dot(res.certificate, flat) > 0, "certificate against claim");
            }
        }
    } else if (kind == "superhedge") {
        if (claim_text.empty()) throw std::runtime_error("superhedge analysis needs --claim");
        AdaptedVector claim = constant_terminal_claim(tree, parse_claim_vector(claim_text, d));
        if (numeraire < 1 || numeraire > d) throw std::runtime_error("numeraire out of range");
        try {
            SuperhedgeResult res = superhedge_price(market, claim, numeraire - 1);
            report["price"] = to_string(res.price);
            report["dual_value"] = to_string(res.dual_value);
            report["strategy"] = strategy_json(market, res.strategy);
            report["dual_z"] = process_json(res.dual_z);
            if (verify) {
                require(res.price == res.dual_value, "primal/dual agreement");
                GlobalCone cone = assemble_A(market);
                Vec flat = flatten_terminal(tree, cone.leaf_order, claim);
                Vec endow = zero_vec(cone.ambient_dim());
                for (std::size_t k = 0; k < cone.leaf_order.size(); ++k)
                    endow[k * d + (numeraire - 1)] = res.price;
                require(realized_claim(cone, res.strategy) == flat - endow, "superhedge strategy");
            }
        } catch (const ArbitragePresentError& e) {
            report["refused"] = true;
            report["verdict"] = e.what();
            report["arbitrage_claim"] = adapted_json(e.witness.claim);
            code = exit_code::refused;
        }
    } else if (kind == "represent") {
        if (claim_text.empty()) throw std::runtime_error("represent analysis needs --claim");
        if (eta_path.empty()) throw std::runtime_error("represent analysis needs --eta");
        AdaptedVector theta = constant_terminal_claim(tree, parse_claim_vector(claim_text, d));
        AdaptedProcess eta = parse_eta_file(eta_path, tree, d);
        RepresentationReport res = verify_representation(market, theta, eta);
        json per_t = json::array();
        for (bool ok : res.xi_in_Ct) per_t.push_back(ok);
        report["xi_in_Ct"] = per_t;
        report["all_in_Ct"] = res.all_in_Ct;
        report["checked_supermartingale"] = res.checked_supermartingale;
        report["supermartingale_ok"] = res.supermartingale_ok;
        report["terminal_dominates"] = res.terminal_dominates;
    } else {
        throw CLI::ValidationError("unknown analysis kind: " + kind);
    }

    auto elapsed = std::chrono::steady_clock::now() - started;
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    emit_report(report, as_json);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conelab: exact analysis of bid-ask markets on event trees"};
    app.require_subcommand(1);

    std::string v_path;
    auto* v = app.add_subcommand("validate", "parse and validate a market file");
    v->add_option("file", v_path, "market file")->required();

    std::string e_name, e_out;
    int e_n = 2;
    auto* e = app.add_subcommand("example", "emit a built-in market");
    e->add_option("name", e_name, "one of eg1, eg3, eg32, eg41")->required();
    e->add_option("--n", e_n, "truncation size (ignored by eg41)");
    e->add_option("-o,--output", e_out, "write to file instead of stdout");

    std::string a_path, a_kind, a_claim, a_eta;
    int a_numeraire = 1;
    bool a_verify = false, a_json = false;
    auto* a = app.add_subcommand("analyze", "run an analysis on a market file");
    a->add_option("file", a_path, "market file")->required();
    a->add_option("kind", a_kind, "arbitrage | rna | adjust | superhedge | member | represent | t2")
        ->required();
    a->add_option("--claim", a_claim, "terminal claim, e.g. 'e1-e4' or '1,0,0,-1'");
    a->add_option("--numeraire", a_numeraire, "1-based numeraire asset (superhedge)");
    a->add_option("--eta", a_eta, "representation file (represent)");
    a->add_flag("--verify", a_verify, "re-check every witness by substitution");
    a->add_flag("--json", a_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*v) {
            BidAskProcess market = load_market(v_path);
            auto problems = validate(market);
            if (problems.empty()) {
                std::cout << "valid\n";
                return exit_code::ok;
            }
            std::cout << "invalid:\n";
            for (const auto& p : problems) std::cout << "  " << p << "\n";
            return exit_code::invalid;
        }
        if (*e) {
            BidAskProcess market = make_example(e_name, e_n);
            if (e_out.empty())
                std::cout << emit_market(market);
            else
                save_market(market, e_out);
            return exit_code::ok;
        }
        return run_analyze(a_path, a_kind, a_claim, a_numeraire, a_eta, a_verify, a_json);
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return exit_code::failure;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::failure;
    }
}
