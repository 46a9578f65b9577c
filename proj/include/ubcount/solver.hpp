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

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ubcount/cnf.hpp"

namespace ubc {

struct SolverConfig {
    /// Per-call conflict budget; nullopt means unlimited.
    std::optional<std::uint64_t> conflict_limit = 100000;
    std::uint64_t seed = 0;
    double var_decay = 0.95;
    double clause_decay = 0.999;
    std::uint64_t restart_first = 100;
    double restart_inc = 1.5;
    /// Fraction of decisions taken on a seeded random variable. 0 keeps the
    /// search fully activity driven.
    double random_var_freq = 0.0;

    static SolverConfig unlimited() {
        SolverConfig c;
        c.conflict_limit.reset();
        return c;
    }
};

enum class Verdict { Satisfiable, Unsatisfiable, Unknown };

const char* to_string(Verdict v);

struct SolveOutcome {
    Verdict verdict = Verdict::Unknown;
    /// Present iff verdict == Satisfiable; total over the solver's variables.
    std::optional<Assignment> model;
    std::uint64_t conflicts_used = 0;

    bool sat() const { return verdict == Verdict::Satisfiable; }
    bool unsat() const { return verdict == Verdict::Unsatisfiable; }
    bool unknown() const { return verdict == Verdict::Unknown; }
};

/// CDCL engine: two watched literals, first-UIP learning with local
/// minimization, VSIDS (ties to the lowest index), phase saving, geometric
/// restarts. Clauses may be added between solve() calls. Not thread safe.
class Solver {
public:
    explicit Solver(SolverConfig cfg = {});
    ~Solver();
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    Var new_var();
    /// Ensures vars 1..n exist.
    void reserve_vars(std::uint32_t n);
    std::uint32_t num_vars() const;

    /// Returns false once the clause database is unsatisfiable at level 0.
    bool add_clause(std::span<const Lit> lits);
    bool add_clause(std::initializer_list<Lit> lits) {
        return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
    }
    /// Adds clauses and blasts xors of f.
    void add_formula(const Formula& f);
    /// Adds the CNF expansion of x; when `guard` is set every generated clause
    /// gets ~guard, so the constraint is only active while guard is true.
    void add_xor(const XorClause& x, std::optional<Lit> guard = std::nullopt);

    SolveOutcome solve(std::span<const Lit> assumptions = {});

    std::uint64_t total_conflicts() const;
    const SolverConfig& config() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot solve on a pure CNF formula. Deterministic in (f, assumptions, cfg).
/// Throws std::invalid_argument when f still holds xor clauses.
SolveOutcome solve(const Formula& f, std::span<const Lit> assumptions = {},
                   const SolverConfig& cfg = {});

/// Pure-CNF copy of f. Each xor is cut into chunks of width <= 4 linked by
/// fresh auxiliaries (x1^x2^x3^a = 0, then a^x4^... = rhs); a width-k chunk
/// expands to the 2^(k-1) clauses forbidding wrong-parity assignments.
Formula blast_xor(const Formula& f);

/// Streams the chunked CNF of x to `emit`; `fresh` allocates auxiliaries.
void expand_xor(const XorClause& x, const std::function<Var()>& fresh,
                const std::function<void(std::vector<Lit>)>& emit);

}  // namespace ubc
