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
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "ubcount/dimacs.hpp"

using namespace ubc;

TEST_CASE("parse minimal file") {
    const auto doc = parse_dimacs("p cnf 2 1\n1 2 0\n");
    CHECK(doc.formula.num_vars == 2);
    REQUIRE(doc.formula.clauses.size() == 1);
    CHECK(doc.formula.clauses[0] == Clause{Lit::pos(1), Lit::pos(2)});
    CHECK_FALSE(doc.projection.has_value());
}

TEST_CASE("parse projection line") {
    const auto doc = parse_dimacs("p cnf 3 2\nc ind 1 3 0\n1 -2 0\n2 3 0\n");
    REQUIRE(doc.projection.has_value());
    CHECK(doc.projection->vars == VarSet{1, 3});
    CHECK(doc.formula.clauses.size() == 2);
}

TEST_CASE("multiple projection lines union") {
    const auto doc = parse_dimacs("p cnf 4 1\nc ind 1 0\nc ind 4 1 0\nc a comment\n1 2 0\n");
    CHECK(doc.projection->vars == VarSet{1, 4});
}

TEST_CASE("clauses may span lines") {
    const auto doc = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n");
    REQUIRE(doc.formula.clauses.size() == 2);
    CHECK(doc.formula.clauses[1] == Clause{Lit::neg(1)});
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("literal out of range") {
        try {
            parse_dimacs("p cnf 2 1\n1 3 0\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("3") != std::string::npos);
        }
    }
    SUBCASE("missing header") { CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError); }
    SUBCASE("duplicate header") { CHECK_THROWS_AS(parse_dimacs("p cnf 1 0\np cnf 1 0\n"), ParseError); }
    SUBCASE("bad token") { CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError); }
    SUBCASE("unterminated clause") { CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError); }
    SUBCASE("projection out of range") { CHECK_THROWS_AS(parse_dimacs("p cnf 2 0\nc ind 5 0\n"), ParseError); }
}

TEST_CASE("emit") {
    CHECK(emit_dimacs(Formula{}) == "p cnf 0 0\n");

    Formula f(2);
    f.add_clause({Lit::pos(1), Lit::neg(2)});
    const std::string text = emit_dimacs(f, ProjectionSet{2});
    CHECK(text == "p cnf 2 1\nc ind 2 0\n1 -2 0\n");

    Formula x(3);
    x.add_xor(XorClause({1, 2, 3}, true));
    CHECK_THROWS_AS(emit_dimacs(x), std::invalid_argument);
    const auto blasted = parse_dimacs(emit_dimacs(x, std::nullopt, XorEmit::Blast));
    CHECK(oracle::projected_count(blasted.formula, {1, 2, 3}) == 4);
}

TEST_CASE("emit and parse round-trip random formulas") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t n = 1 + rng() % 12;
        const Formula f = oracle::random_cnf(rng, n, rng() % 20, 1, 4);
        const ProjectionSet p(oracle::random_subset(rng, n, 0.5));
        const auto doc = parse_dimacs(emit_dimacs(f, p));
        CHECK(doc.formula == f);
        REQUIRE(doc.projection.has_value());
        CHECK(*doc.projection == p);
    }
}

TEST_CASE("projection list files") {
    std::istringstream in("c ind 3 1 0\n2\n");
    CHECK(parse_projection_list(in, 3).vars == VarSet{1, 2, 3});
    std::istringstream bad("4 0\n");
    CHECK_THROWS_AS(parse_projection_list(bad, 3), ParseError);
}
