#include "conelab/examples.hpp"

#include <stdexcept>

namespace conelab {

namespace {

// Root id 0, leaves 1..n with probability 2^(n-k) / (2^n - 1) at leaf k.
TreePtr geometric_tree(int n) {
    std::vector<std::array<int, 3>> nodes;
    nodes.push_back({0, 0, -1});
    std::map<int, Rational> probs;
    mpz_class two_n = 1;
    mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n);
    for (int k = 1; k <= n; ++k) {
        nodes.push_back({k, 1, 0});
        mpz_class num = 1;
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), n - k);
        Rational p(num, two_n - 1);
        p.canonicalize();
        probs[k] = p;
    }
    return std::make_shared<ScenarioTree>(1, nodes, probs);
}

BidAskMatrix ones_matrix(int d) {
    BidAskMatrix m;
    m.d = d;
    m.pi.assign(d, Vec(d, Rational(1)));
    return m;
}

BidAskMatrix filled_matrix(int d, const Rational& off_diag) {
    BidAskMatrix m = ones_matrix(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) m.pi[i][j] = off_diag;
    return m;
}

BidAskProcess make_eg1(int n, bool costly_at_zero) {
    BidAskProcess mk;
    mk.tree = geometric_tree(n);
    BidAskMatrix costly = ones_matrix(2);
    costly.pi[1][0] = 2;  // selling asset 2 for 1 costs two units
    BidAskMatrix free2 = ones_matrix(2);
    mk.at[0] = costly_at_zero ? costly : free2;
    for (int k = 1; k <= n; ++k) mk.at[k] = costly_at_zero ? free2 : costly;
    return mk;
}

BidAskProcess make_eg32(int n) {
    BidAskProcess mk;
    mk.tree = geometric_tree(n);
    BidAskMatrix t0 = filled_matrix(4, 3);
    t0.pi[1][0] = 1;
    t0.pi[3][2] = 1;
    mk.at[0] = t0;
    for (int k = 1; k <= n; ++k) {
        Rational w(k);
        mk.at[k] = complete_from_chains(4, {{0, 3, w},
                                            {3, 0, 1 / w},
                                            {1, 2, w},
                                            {2, 1, 1 / w},
                                            {3, 2, Rational(1)},
                                            {2, 3, Rational(3)}});
    }
    return mk;
}

BidAskProcess make_eg41() {
    std::vector<std::array<int, 3>> nodes{{0, 0, -1}, {1, 1, 0}, {2, 1, 0}};
    std::map<int, Rational> probs{{1, rat(1, 2)}, {2, rat(1, 2)}};
    BidAskProcess mk;
    mk.tree = std::make_shared<ScenarioTree>(1, nodes, probs);
    BidAskMatrix t0 = filled_matrix(4, 4);
    t0.pi[3][2] = 1;
    t0.pi[3][1] = 1;
    mk.at[0] = t0;
    // the cheap rates into asset 1 undercut some direct rates through
    // chains, so these matrices are stored without the chain condition
    BidAskMatrix up = filled_matrix(4, 4);
    up.triangle_required = false;
    up.pi[1][0] = rat(4, 3);
    up.pi[2][0] = rat(2, 3);
    BidAskMatrix down = filled_matrix(4, 4);
    down.triangle_required = false;
    down.pi[1][0] = rat(2, 3);
    down.pi[2][0] = rat(4, 3);
    mk.at[1] = up;
    mk.at[2] = down;
    return mk;
}

}  // namespace

BidAskProcess make_example(const std::string& name, int n) {
    if (name == "eg41") return make_eg41();
    if (n < 2) throw std::invalid_argument("example " + name + " needs a truncation n >= 2");
    if (name == "eg1") return make_eg1(n, true);
    if (name == "eg3") return make_eg1(n, false);
    if (name == "eg32") return make_eg32(n);
    throw std::invalid_argument("unknown example: " + name);
}

std::vector<std::string> example_names() { return {"eg1", "eg3", "eg32", "eg41"}; }

}  // namespace conelab
