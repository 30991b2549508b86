#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "conelab/ratlp.hpp"
#include "support.hpp"

using namespace conelab;
using conelab::testing::Rng;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-1/2") == rat(-1, 2));
    CHECK(parse_rational("+4/6") == rat(2, 3));
    CHECK(to_string(rat(4, 6)) == "2/3");
    CHECK(to_string(rat(-7)) == "-7");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2/-3"), std::invalid_argument);
}

TEST_CASE("primitive scaling") {
    CHECK(primitive({rat(2, 3), rat(-4, 9)}) == Vec{rat(3), rat(-2)});
    CHECK(primitive({rat(0), rat(0)}) == Vec{rat(0), rat(0)});
}

TEST_CASE("bounded maximization") {
    LinearSystem sys;
    sys.num_vars = 1;
    sys.ge_rows = {{rat(-1)}};  // x <= 3
    sys.ge_rhs = {rat(-3)};
    sys.objective = Vec{rat(1)};
    auto out = solve(sys);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.objective_value == 3);
    CHECK(out.witness == Vec{rat(3)});
    CHECK(witness_satisfies(sys, out.witness));
}

TEST_CASE("infeasible system yields a checkable certificate") {
    LinearSystem sys;
    sys.num_vars = 1;
    sys.ge_rows = {{rat(1)}, {rat(-1)}};  // x >= 1 and x <= 0
    sys.ge_rhs = {rat(1), rat(0)};
    auto out = solve(sys);
    REQUIRE(out.status == LpStatus::Infeasible);
    CHECK(certificate_refutes(sys, out.certificate));
}

TEST_CASE("unbounded objective reports an improving ray") {
    LinearSystem sys;
    sys.num_vars = 2;
    sys.ge_rows = {{rat(1), rat(-1)}};  // x >= y
    sys.ge_rhs = {rat(0)};
    sys.objective = Vec{rat(1), rat(0)};
    auto out = solve(sys);
    REQUIRE(out.status == LpStatus::Unbounded);
    CHECK(witness_satisfies(sys, out.witness));
    CHECK(dot(*sys.objective, out.ray) > 0);
    // the ray stays feasible from the witness
    Vec moved = out.witness + out.ray;
    CHECK(witness_satisfies(sys, moved));
}

TEST_CASE("free variables and equalities") {
    LinearSystem sys;
    sys.num_vars = 2;
    sys.nonneg = {false, true};
    sys.eq_rows = {{rat(1), rat(1)}};  // x + y = 1
    sys.eq_rhs = {rat(1)};
    sys.ge_rows = {{rat(1), rat(0)}};  // x >= -5
    sys.ge_rhs = {rat(-5)};
    sys.objective = Vec{rat(-1), rat(0)};  // minimize x
    auto out = solve(sys);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.witness[0] == -5);
    CHECK(out.witness[1] == 6);
}

TEST_CASE("feasibility without an objective") {
    LinearSystem sys;
    sys.num_vars = 2;
    sys.eq_rows = {{rat(1), rat(2)}};
    sys.eq_rhs = {rat(4)};
    auto out = solve(sys);
    REQUIRE(out.status == LpStatus::Feasible);
    CHECK(witness_satisfies(sys, out.witness));
}

TEST_CASE("cone membership with one costly pair") {
    // generators of the trading cone for pi = [[1,1],[2,1]]
    Mat gens = {{rat(-1), rat(0)},
                {rat(0), rat(-1)},
                {rat(-1), rat(1)},    // buy asset 2 at rate 1
                {rat(1), rat(-2)}};   // buy asset 1 at rate 2
    auto in = cone_member(gens, {rat(-1), rat(-1)});
    CHECK(in.member);
    auto out = cone_member(gens, {rat(1), rat(0)});
    REQUIRE_FALSE(out.member);
    for (const auto& g : gens) CHECK(dot(out.certificate, g) <= 0);
    CHECK(dot(out.certificate, Vec{rat(1), rat(0)}) > 0);
}

TEST_CASE("zero target and empty generator list") {
    CHECK(cone_member({}, {rat(0), rat(0)}).member);
    auto res = cone_member({}, {rat(0), rat(1)});
    CHECK_FALSE(res.member);
    CHECK(dot(res.certificate, Vec{rat(0), rat(1)}) > 0);
}

TEST_CASE("cone membership agrees with the subset oracle") {
    Rng rng(7121);
    for (int trial = 0; trial < 300; ++trial) {
        int dim = testing::pick(rng, 1, 3);
        int n = testing::pick(rng, 1, 5);
        Mat gens(n, Vec(dim));
        for (auto& g : gens)
            for (auto& x : g) x = rat(testing::pick(rng, -2, 2), testing::pick(rng, 1, 2));
        Vec target(dim);
        for (auto& x : target) x = rat(testing::pick(rng, -3, 3), testing::pick(rng, 1, 2));
        auto res = cone_member(gens, target);
        CHECK(res.member == testing::oracle_cone_member(gens, target));
    }
}

TEST_CASE("extreme rays of a simple flow cone") {
    Mat m = {{rat(1), rat(1), rat(-1)}};
    Mat rays = extreme_rays(m, 3);
    Mat expect = {{rat(0), rat(1), rat(1)}, {rat(1), rat(0), rat(1)}};
    REQUIRE(rays.size() == 2);
    CHECK((rays[0] == expect[0] || rays[0] == expect[1]));
    CHECK((rays[1] == expect[0] || rays[1] == expect[1]));
    CHECK(rays[0] != rays[1]);
}

TEST_CASE("extreme rays agree with support enumeration") {
    Rng rng(9321);
    for (int trial = 0; trial < 60; ++trial) {
        int n = testing::pick(rng, 2, 5);
        int rows = testing::pick(rng, 1, 3);
        Mat m(rows, Vec(n));
        for (auto& r : m)
            for (auto& x : r) x = rat(testing::pick(rng, -2, 2));
        Mat got = extreme_rays(m, n);
        Mat want = testing::oracle_extreme_rays(m, n);
        auto key = [](const Mat& a) {
            std::set<std::string> s;
            for (const auto& r : a) {
                std::string k;
                for (const auto& x : r) k += to_string(x) + ",";
                s.insert(k);
            }
            return s;
        };
        CHECK(key(got) == key(want));
    }
}

TEST_CASE("extreme ray enumeration refuses oversized systems") {
    Mat m(1, Vec(65, rat(1)));
    CHECK_THROWS_AS(extreme_rays(m, 65), DeskScaleError);
}

TEST_CASE("random LPs: every witness and certificate re-verifies") {
    Rng rng(40813);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int trial = 0; trial < 250; ++trial) {
        LinearSystem sys;
        sys.num_vars = testing::pick(rng, 1, 4);
        int ne = testing::pick(rng, 0, 2), ng = testing::pick(rng, 0, 3);
        for (int r = 0; r < ne; ++r) {
            Vec row(sys.num_vars);
            for (auto& x : row) x = rat(testing::pick(rng, -2, 2));
            sys.eq_rows.push_back(row);
            sys.eq_rhs.push_back(rat(testing::pick(rng, -2, 2)));
        }
        for (int r = 0; r < ng; ++r) {
            Vec row(sys.num_vars);
            for (auto& x : row) x = rat(testing::pick(rng, -2, 2));
            sys.ge_rows.push_back(row);
            sys.ge_rhs.push_back(rat(testing::pick(rng, -2, 2)));
        }
        for (int i = 0; i < sys.num_vars; ++i) sys.nonneg.push_back(testing::pick(rng, 0, 3) > 0);
        if (testing::pick(rng, 0, 1)) {
            Vec obj(sys.num_vars);
            for (auto& x : obj) x = rat(testing::pick(rng, -2, 2));
            sys.objective = obj;
        }
        auto out = solve(sys);
        switch (out.status) {
            case LpStatus::Feasible:
            case LpStatus::Optimal:
                ++optimal;
                CHECK(witness_satisfies(sys, out.witness));
                break;
            case LpStatus::Unbounded:
                ++unbounded;
                CHECK(witness_satisfies(sys, out.witness));
                CHECK(witness_satisfies(sys, out.witness + out.ray));
                CHECK(dot(*sys.objective, out.ray) > 0);
                break;
            case LpStatus::Infeasible:
                ++infeasible;
                CHECK(certificate_refutes(sys, out.certificate));
                break;
        }
    }
    // the generator should exercise every branch
    CHECK(optimal > 0);
    CHECK(infeasible > 0);
    CHECK(unbounded > 0);
}
