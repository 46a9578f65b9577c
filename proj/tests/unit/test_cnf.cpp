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

#include "doctest.h"
#include "ubcount/cnf.hpp"

using namespace ubc;

TEST_CASE("literals round-trip through dimacs integers") {
    CHECK(Lit::from_dimacs(-3) == Lit::neg(3));
    CHECK(Lit::from_dimacs(7).to_dimacs() == 7);
    CHECK((~Lit::pos(2)) == Lit::neg(2));
    CHECK_THROWS_AS(Lit::from_dimacs(0), std::invalid_argument);
}

TEST_CASE("clause normalization") {
    Clause c{Lit::pos(1), Lit::neg(2), Lit::pos(1)};
    CHECK(c.lits.size() == 2);
    CHECK_FALSE(c.tautology);
    Clause t{Lit::pos(1), Lit::neg(1)};
    CHECK(t.tautology);
}

TEST_CASE("xor clause duplicates cancel") {
    XorClause x({3, 1, 3, 2}, true);
    CHECK(x.vars == VarSet{1, 2});
    CHECK(x.rhs);
}

TEST_CASE("formula range checks") {
    Formula f(2);
    CHECK_THROWS_AS(f.add_clause({Lit::pos(3)}), std::invalid_argument);
    f.add_clause({Lit::pos(1), Lit::neg(2)});
    CHECK(f.occurring_vars() == VarSet{1, 2});
    CHECK_FALSE(f.has_empty_clause());
    f.clauses.emplace_back();
    CHECK(f.has_empty_clause());
}

TEST_CASE("evaluate") {
    Formula f(2);
    f.add_clause({Lit::pos(1), Lit::pos(2)});
    Assignment a(2);
    a.set(2, true);
    CHECK(evaluate(f, a));

    Formula g(1);
    g.add_clause({Lit::pos(1)});
    g.add_clause({Lit::neg(1)});
    for (std::uint64_t bits = 0; bits < 2; ++bits) CHECK_FALSE(evaluate(g, Assignment::from_bits(1, bits)));

    Formula x(2);
    x.add_xor(XorClause({1, 2}, true));
    CHECK_FALSE(evaluate(x, Assignment::from_bits(2, 0b11)));
    CHECK(evaluate(x, Assignment::from_bits(2, 0b01)));

    CHECK_THROWS_AS(evaluate(f, Assignment(1)), std::invalid_argument);
}

TEST_CASE("project") {
    Assignment a(3);
    a.set(1, true);
    a.set(3, true);
    const auto p = project(a, {1, 3});
    CHECK(p.vars() == VarSet{1, 3});
    CHECK(p.at(1));
    CHECK(p.at(3));
    CHECK_THROWS_AS(p.at(2), std::out_of_range);

    CHECK(project(a, {}).size() == 0);

    const auto full = project(a, {1, 2, 3});
    CHECK(full.size() == 3);
    CHECK(full.at(1) == a[1]);
    CHECK(full.at(2) == a[2]);
    CHECK(full.at(3) == a[3]);
    CHECK(project(full, {1, 3}) == p);

    CHECK_THROWS_AS(project(a, {4}), std::invalid_argument);
}

TEST_CASE("rename_apart") {
    Formula f(2);
    f.add_clause({Lit::pos(1), Lit::pos(2)});

    SUBCASE("keep one var") {
        const Renaming r = rename_apart(f, 2, {1});
        CHECK(r.mapping == std::map<Var, Var>{{2, 3}});
        REQUIRE(r.formula.clauses.size() == 1);
        CHECK(r.formula.clauses[0] == Clause{Lit::pos(1), Lit::pos(3)});
        CHECK(r.formula.num_vars == 3);
    }
    SUBCASE("keep everything") {
        const Renaming r = rename_apart(f, 2, {1, 2});
        CHECK(r.mapping.empty());
        CHECK(r.formula == f);
    }
    SUBCASE("keep nothing") {
        Formula g(3);
        g.add_clause({Lit::pos(1), Lit::neg(2), Lit::pos(3)});
        const Renaming r = rename_apart(g, 3, {});
        CHECK(r.mapping == std::map<Var, Var>{{1, 4}, {2, 5}, {3, 6}});
        CHECK(r.formula.num_vars == 6);
        CHECK(r(Lit::neg(2)) == Lit::neg(5));
    }
}

TEST_CASE("set helpers") {
    CHECK(make_var_set({3, 1, 3}) == VarSet{1, 3});
    CHECK(set_union({1, 3}, {2, 3}) == VarSet{1, 2, 3});
    CHECK(set_intersection({1, 3}, {2, 3}) == VarSet{3});
    CHECK(set_difference({1, 2, 3}, {2}) == VarSet{1, 3});
    CHECK(is_subset({1, 3}, {1, 2, 3}));
    CHECK_FALSE(is_subset({4}, {1, 2, 3}));
    CHECK(ProjectionSet({4, 2, 2}).vars == VarSet{2, 4});
}

TEST_CASE("occurrence counts") {
    Formula f(3);
    f.add_clause({Lit::pos(1), Lit::neg(2)});
    f.add_clause({Lit::pos(1)});
    f.add_xor(XorClause({1, 3}, false));
    const auto occ = occurrence_counts(f);
    CHECK(occ[1] == 3);
    CHECK(occ[2] == 1);
    CHECK(occ[3] == 1);
}
