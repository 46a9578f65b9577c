/*
 ubcount

 Copyright (c) 2026, the ubcount authors

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
 */

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ubcount/bench.hpp"
#include "ubcount/support.hpp"

using namespace ubc;

namespace {

Formula equiv12() {
    Formula f(2);
    f.add_clause({Lit::neg(1), Lit::pos(2)});
    f.add_clause({Lit::pos(1), Lit::neg(2)});
    return f;
}

Formula or12() {
    Formula f(2);
    f.add_clause({Lit::pos(1), Lit::pos(2)});
    return f;
}

bool satisfiable(const Formula& f) {
    if (f.has_empty_clause()) return false;
    return solve(f.xors.empty() ? f : blast_xor(f), {}, SolverConfig::unlimited()).sat();
}

}  // namespace

TEST_CASE("build_xi") {
    CHECK_FALSE(satisfiable(build_xi(equiv12(), {1, 2}, {}, {1}, {}, 2)));
    CHECK(satisfiable(build_xi(or12(), {1, 2}, {}, {1}, {}, 2)));

    const Formula marker = build_xi(or12(), {1}, {}, {1}, {}, 2);
    CHECK(marker.has_empty_clause());
    CHECK(marker.clauses.size() == 1);

    CHECK_THROWS_AS(build_xi(or12(), {1, 2}, {1}, {1}, {}, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_xi(or12(), {1, 2}, {}, {}, {}, 2), std::invalid_argument);
}

TEST_CASE("build_xi agrees with the pairwise definition") {
    // xi is unsat iff agreement on J ∪ Q\z forces agreement on P ∩ (D ∪ {z}).
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const std::uint32_t n = 2 + rng() % 7;
        const Formula f = oracle::random_cnf(rng, n, rng() % (3 * n), 1, 3);
        const ProjectionSet p(oracle::random_subset(rng, n, 0.6));
        const VarSet uni = candidate_universe(f, p);
        if (uni.empty()) continue;
        const Var z = uni[rng() % uni.size()];
        VarSet j, q, d;
        for (Var v : uni) {
            if (v == z) continue;
            switch (rng() % 3) {
                case 0: j.push_back(v); break;
                case 1: q.push_back(v); break;
                default: d.push_back(v); break;
            }
        }
        const VarSet keep = set_union(j, q);
        const VarSet differ = set_intersection(p.vars, set_union(d, {z}));
        const bool expect_unsat = oracle::is_ubs(f, differ, keep);
        CHECK(satisfiable(build_xi(f, p, j, q, d, z)) == !expect_unsat);
    }
}

TEST_CASE("build_padoa") {
    CHECK_FALSE(satisfiable(build_padoa(equiv12(), {1, 2}, 2)));
    CHECK(satisfiable(build_padoa(or12(), {1, 2}, 2)));
    Formula unit(2);
    unit.add_clause({Lit::pos(2)});
    CHECK_FALSE(satisfiable(build_padoa(unit, {1, 2}, 2)));
    CHECK_THROWS_AS(build_padoa(unit, {1}, 2), std::invalid_argument);
}

TEST_CASE("find_ubs on the first family") {
    const auto phi4 = gen_theorem1(4);
    const auto ubs = find_ubs(phi4.formula, phi4.projection, VarOrderStrategy::NonProjectionFirst);
    CHECK(ubs.vars == phi4.y_vars);
    CHECK(ubs.vars.size() == 2);
    CHECK(ubs.minimal);
    CHECK_FALSE(ubs.timed_out);

    const auto is = find_ubs(phi4.formula, phi4.projection, VarOrderStrategy::ProjectionOnly);
    CHECK(is.vars == phi4.x_vars);
}

TEST_CASE("find_ubs on the second family") {
    for (std::uint32_t n : {4U, 8U}) {
        const auto psi = gen_theorem2(n);
        const auto ubs = find_ubs(psi.formula, psi.projection, VarOrderStrategy::NonProjectionFirst);
        CHECK(ubs.vars == psi.projection.vars);
    }
    CHECK(gen_theorem2(4).projection.vars == VarSet{3});
}

TEST_CASE("find_is") {
    const auto phi4 = gen_theorem1(4);
    CHECK(find_is(phi4.formula, phi4.projection).vars == phi4.x_vars);

    Formula chain(3);
    for (Var v : {1U, 2U}) {
        chain.add_clause({Lit::neg(v), Lit::pos(v + 1)});
        chain.add_clause({Lit::pos(v), Lit::neg(v + 1)});
    }
    const auto is = find_is(chain, {1, 2, 3});
    CHECK(is.vars.size() == 1);
    CHECK(oracle::is_ubs(chain, {1, 2, 3}, is.vars));

    CHECK(find_is(chain, {}).vars.empty());
}

TEST_CASE("every strategy yields a valid ubs") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint32_t n = 2 + rng() % 9;
        const Formula f = oracle::random_cnf(rng, n, rng() % (4 * n), 1, 3);
        const ProjectionSet p(oracle::random_subset(rng, n, 0.5));
        for (auto strat : {VarOrderStrategy::NonProjectionFirst, VarOrderStrategy::ProjectionOnly,
                           VarOrderStrategy::IndexOrder, VarOrderStrategy::OccurrenceAscending}) {
            const auto s = find_ubs(f, p, strat);
            CHECK(oracle::is_ubs(f, p.vars, s.vars));
            CHECK(oracle::projected_count(f, p.vars) <= oracle::projected_count(f, s.vars));
        }
        const auto is = find_is(f, p);
        CHECK(is_subset(is.vars, p.vars));
        CHECK(oracle::is_ubs(f, p.vars, is.vars));
    }
}

TEST_CASE("elimination order") {
    Formula f(4);
    f.add_clause({Lit::pos(1), Lit::pos(2)});
    f.add_clause({Lit::pos(1), Lit::pos(3)});
    f.add_clause({Lit::pos(4), Lit::pos(3)});
    f.add_clause({Lit::pos(4), Lit::pos(1)});
    const ProjectionSet p{1, 2};
    CHECK(elimination_order(f, p, VarOrderStrategy::NonProjectionFirst) == std::vector<Var>{2, 1, 3, 4});
    CHECK(elimination_order(f, p, VarOrderStrategy::ProjectionOnly) == std::vector<Var>{3, 4, 2, 1});
    CHECK(elimination_order(f, p, VarOrderStrategy::IndexOrder) == std::vector<Var>{1, 2, 3, 4});
    CHECK(elimination_order(f, p, VarOrderStrategy::OccurrenceAscending) == std::vector<Var>{2, 3, 4, 1});
    CHECK(parse_strategy("occ-asc") == VarOrderStrategy::OccurrenceAscending);
    CHECK_THROWS_AS(parse_strategy("nope"), std::invalid_argument);
}

TEST_CASE("unused projection variables stay in the support") {
    Formula f(3);
    f.add_clause({Lit::pos(1)});
    const auto s = find_ubs(f, {1, 3}, VarOrderStrategy::NonProjectionFirst);
    CHECK(s.vars == VarSet{3});
    CHECK(oracle::is_ubs(f, {1, 3}, s.vars));
}

TEST_CASE("expired deadline returns the current J and Q") {
    const auto phi8 = gen_theorem1(8);
    const auto s = find_ubs(phi8.formula, phi8.projection, VarOrderStrategy::NonProjectionFirst, {},
                            Deadline::after(Seconds(0)));
    CHECK(s.timed_out);
    CHECK_FALSE(s.minimal);
    CHECK(s.vars == candidate_universe(phi8.formula, phi8.projection));
}

TEST_CASE("exhausted budget keeps the variable") {
    std::mt19937_64 rng(33);
    SolverConfig none;
    none.conflict_limit = 0;
    bool saw_budget = false;
    for (int trial = 0; trial < 30; ++trial) {
        const Formula f = oracle::random_cnf(rng, 12, 40, 3, 3);
        const ProjectionSet p(oracle::random_subset(rng, 12, 0.5));
        const auto s = find_ubs(f, p, VarOrderStrategy::NonProjectionFirst, none);
        CHECK(oracle::is_ubs(f, p.vars, s.vars));
        for (const auto& e : s.log)
            if (e.verdict == VarVerdict::BudgetKept) {
                saw_budget = true;
                CHECK_FALSE(s.minimal);
                CHECK(set_contains(s.vars, e.var));
            }
    }
    CHECK(saw_budget);
}

TEST_CASE("observer sees a partition of the universe") {
    const auto phi4 = gen_theorem1(4);
    const VarSet uni = candidate_universe(phi4.formula, phi4.projection);
    int calls = 0;
    find_ubs(phi4.formula, phi4.projection, VarOrderStrategy::NonProjectionFirst, {}, Deadline::never(),
             [&](const VarSet& j, const VarSet& q) {
                 ++calls;
                 CHECK(set_intersection(j, q).empty());
                 CHECK(is_subset(set_union(j, q), uni));
             });
    CHECK(calls == static_cast<int>(uni.size()) + 1);
}
