#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "conelab/attain.hpp"
#include "conelab/examples.hpp"
#include "support.hpp"

using namespace conelab;
using conelab::testing::Rng;

namespace {

AdaptedVector claim_at(const ScenarioTree& tree, int t, const Vec& v) {
    AdaptedVector x;
    x.time = t;
    for (int u : tree.ids_at(t)) x.values[u] = v;
    return x;
}

BidAskProcess frictionless_market(TreePtr tree, int d) {
    BidAskProcess mk;
    mk.tree = tree;
    BidAskMatrix ones;
    ones.d = d;
    ones.pi.assign(d, Vec(d, Rational(1)));
    for (int u : tree->nodes_in_order()) mk.at[u] = ones;
    return mk;
}

}  // namespace

TEST_CASE("global cone assembly shape") {
    BidAskProcess mk = make_example("eg1", 2);
    GlobalCone cone = assemble_A(mk);
    CHECK(cone.ambient_dim() == 4);
    CHECK(cone.leaf_order == std::vector<int>{1, 2});
    CHECK(cone.generators.size() == 3 * 4);  // three nodes, four local generators each
    // a time-1 generator is supported on its own leaf only
    for (std::size_t k = 0; k < cone.tags.size(); ++k) {
        if (cone.tags[k].node != 2) continue;
        CHECK(cone.generators[k][0] == 0);
        CHECK(cone.generators[k][1] == 0);
    }
}

TEST_CASE("embedding and flattening round trip") {
    BidAskProcess mk = make_example("eg1", 3);
    GlobalCone cone = assemble_A(mk);
    AdaptedVector claim;
    claim.time = 1;
    claim.values[1] = {rat(1), rat(2)};
    claim.values[2] = {rat(3), rat(4)};
    claim.values[3] = {rat(5), rat(6)};
    Vec flat = flatten_terminal(*mk.tree, cone.leaf_order, claim);
    AdaptedVector back = unflatten_terminal(*mk.tree, cone.leaf_order, 2, flat);
    CHECK(back.values == claim.values);
    // root embedding replicates across every leaf
    Vec e = embed_at_node(*mk.tree, cone.leaf_order, 2, 0, {rat(1), rat(-1)});
    CHECK(e == Vec{rat(1), rat(-1), rat(1), rat(-1), rat(1), rat(-1)});
}

TEST_CASE("transfer of one unit between assets") {
    BidAskProcess mk = make_example("eg41", 0);
    GlobalCone cone = assemble_A(mk);
    Vec target = unit(4, 0) - unit(4, 3);
    auto res = member_A(cone, testing::constant_claim(*mk.tree, target));
    CHECK(res.member);
    // the time-0 cone alone cannot do it
    NodeCone k0 = node_cone(mk.at.at(0));
    auto local = cone_member(k0.generators, target);
    CHECK_FALSE(local.member);
    CHECK(dot(local.certificate, target) > 0);
}

TEST_CASE("strategies realize their claims exactly") {
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        BidAskProcess mk = testing::random_market(rng);
        GlobalCone cone = assemble_A(mk);
        AdaptedVector x = testing::random_adapted(rng, *mk.tree, mk.dim(), mk.tree->horizon());
        auto res = member_A(cone, x);
        Vec flat = flatten_terminal(*mk.tree, cone.leaf_order, x);
        if (res.member) {
            CHECK(realized_claim(cone, res.strategy) == flat);
        } else {
            for (const auto& g : cone.generators) CHECK(dot(res.certificate, g) <= 0);
            CHECK(dot(res.certificate, flat) > 0);
        }
    }
}

TEST_CASE("time-0 claims against the staged cone") {
    BidAskProcess mk = make_example("eg1", 2);
    // inside the time-0 cone already
    CHECK(member_Ct(mk, claim_at(*mk.tree, 0, {rat(1), rat(-1)})).all_member());
    // dominated by nothing attainable: total mass stays positive
    auto rep = member_Ct(mk, claim_at(*mk.tree, 0, {rat(2), rat(-1)}));
    CHECK_FALSE(rep.all_member());
    // free disposal
    CHECK(member_Ct(mk, claim_at(*mk.tree, 0, {rat(-1), rat(0)})).all_member());
}

TEST_CASE("atom-wise verdicts at the terminal date") {
    BidAskProcess mk = make_example("eg1", 2);
    AdaptedVector x;
    x.time = 1;
    x.values[1] = {rat(-1), rat(1)};  // fine: frictionless swap at the leaf
    x.values[2] = {rat(1), rat(1)};   // positive claim from nothing
    auto rep = member_Ct(mk, x);
    CHECK(rep.atoms.at(1).member);
    CHECK_FALSE(rep.atoms.at(2).member);
    CHECK_FALSE(rep.all_member());
}

TEST_CASE("null strategies reverse only in reversible markets") {
    // one costly date makes the swap one-way
    auto eg1 = make_example("eg1", 2);
    auto res = is_null_space_linear(eg1);
    CHECK_FALSE(res.linear);
    CHECK(res.bad_time >= 0);

    auto fric = frictionless_market(eg1.tree, 2);
    CHECK(is_null_space_linear(fric).linear);
}

TEST_CASE("cone comparison") {
    BidAskProcess mk = make_example("eg1", 2);
    GlobalCone a = assemble_A(mk);
    GlobalCone a2 = assemble_A(mk);
    CHECK(cone_equal(a, a2));
    GlobalCone k0 = assemble_A(mk, std::set<int>{0});
    CHECK_FALSE(cone_equal(a, k0));
}

TEST_CASE("staged decomposition matches direct membership") {
    Rng rng(626);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        BidAskProcess mk = testing::random_market(rng);
        GlobalCone cone = assemble_A(mk);
        for (int probe = 0; probe < 3; ++probe) {
            int t = testing::pick(rng, 0, mk.tree->horizon());
            AdaptedVector x = testing::random_adapted(rng, *mk.tree, mk.dim(), t);
            AdaptedVector terminal;
            terminal.time = mk.tree->horizon();
            for (int leaf : mk.tree->leaves())
                terminal.values[leaf] = x.values.at(mk.tree->ancestor_at(leaf, t));
            bool direct = member_A(cone, terminal).member;
            CHECK(decompose_through_Ct(mk, x) == direct);
            ++checked;
        }
    }
    CHECK(checked > 0);
}
