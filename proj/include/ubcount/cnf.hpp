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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ubc {

/// Variable index, 1-based to match DIMACS numbering. 0 is never a valid var.
using Var = std::uint32_t;

/// Sorted, duplicate-free list of variables.
using VarSet = std::vector<Var>;

class Lit {
public:
    constexpr Lit() = default;
    constexpr Lit(Var v, bool negated) : var_(v), negated_(negated) {}

    static Lit pos(Var v) { return Lit(v, false); }
    static Lit neg(Var v) { return Lit(v, true); }
    /// From a nonzero signed DIMACS integer.
    static Lit from_dimacs(long long x) {
        if (x == 0) throw std::invalid_argument("0 is not a literal");
        return x > 0 ? Lit(static_cast<Var>(x), false) : Lit(static_cast<Var>(-x), true);
    }

    constexpr Var var() const { return var_; }
    constexpr bool negated() const { return negated_; }
    long long to_dimacs() const {
        return negated_ ? -static_cast<long long>(var_) : static_cast<long long>(var_);
    }

    constexpr Lit operator~() const { return Lit(var_, !negated_); }
    constexpr bool operator==(const Lit&) const = default;
    constexpr auto operator<=>(const Lit& o) const {
        if (var_ != o.var_) return var_ <=> o.var_;
        return negated_ <=> o.negated_;
    }

private:
    Var var_ = 0;
    bool negated_ = false;
};

struct Clause {
    std::vector<Lit> lits;
    /// Set by normalize() when the clause contains both l and ~l.
    bool tautology = false;

    Clause() = default;
    Clause(std::initializer_list<Lit> l) : lits(l) { normalize(); }
    explicit Clause(std::vector<Lit> l) : lits(std::move(l)) { normalize(); }

    /// Drops duplicate literals (keeping first occurrence order) and flags tautologies.
    void normalize();
    bool empty() const { return lits.empty(); }
    bool operator==(const Clause& o) const { return lits == o.lits; }
};

/// Parity constraint: XOR of vars == rhs.
struct XorClause {
    VarSet vars;
    bool rhs = false;

    XorClause() = default;
    /// Repeated variables cancel pairwise.
    XorClause(std::vector<Var> v, bool rhs);
    bool operator==(const XorClause&) const = default;
};

struct Formula {
    std::uint32_t num_vars = 0;
    std::vector<Clause> clauses;
    std::vector<XorClause> xors;

    Formula() = default;
    explicit Formula(std::uint32_t n) : num_vars(n) {}

    Var new_var() { return ++num_vars; }
    void add_clause(Clause c);
    void add_clause(std::initializer_list<Lit> lits) { add_clause(Clause(lits)); }
    void add_xor(XorClause x);

    /// Throws std::invalid_argument when a clause or xor mentions a var > num_vars.
    void check() const;
    /// True when some clause is empty (unsatisfiable by construction).
    bool has_empty_clause() const;
    /// Vars that occur in clauses or xors, sorted.
    VarSet occurring_vars() const;
    bool operator==(const Formula&) const = default;
};

struct ProjectionSet {
    VarSet vars;

    ProjectionSet() = default;
    explicit ProjectionSet(std::vector<Var> v);
    ProjectionSet(std::initializer_list<Var> v) : ProjectionSet(std::vector<Var>(v)) {}

    bool contains(Var v) const;
    std::size_t size() const { return vars.size(); }
    bool empty() const { return vars.empty(); }
    bool operator==(const ProjectionSet&) const = default;
};

/// Total assignment over 1..num_vars.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::uint32_t num_vars) : values_(num_vars + 1, 0) {}
    /// Bit i of `bits` is the value of var i+1.
    static Assignment from_bits(std::uint32_t num_vars, std::uint64_t bits);

    std::uint32_t num_vars() const {
        return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1);
    }
    bool operator[](Var v) const { return values_.at(v) != 0; }
    void set(Var v, bool b) { values_.at(v) = b ? 1 : 0; }
    bool satisfies(Lit l) const { return (*this)[l.var()] != l.negated(); }
    bool operator==(const Assignment&) const = default;

private:
    std::vector<std::uint8_t> values_;
};

/// An assignment restricted to an explicit variable subset.
class ProjectedAssignment {
public:
    ProjectedAssignment() = default;
    ProjectedAssignment(VarSet vars, std::vector<std::uint8_t> values);

    const VarSet& vars() const { return vars_; }
    std::size_t size() const { return vars_.size(); }
    /// Throws std::out_of_range when v is outside the domain.
    bool at(Var v) const;
    bool operator==(const ProjectedAssignment&) const = default;
    auto operator<=>(const ProjectedAssignment&) const = default;

private:
    VarSet vars_;
    std::vector<std::uint8_t> values_;
};

VarSet make_var_set(std::vector<Var> v);
bool set_contains(const VarSet& s, Var v);
bool is_subset(const VarSet& sub, const VarSet& super);
VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_intersection(const VarSet& a, const VarSet& b);
VarSet set_difference(const VarSet& a, const VarSet& b);

/// True iff every clause has a true literal and every xor has matching parity.
/// Throws std::invalid_argument when `a` does not cover 1..f.num_vars.
bool evaluate(const Formula& f, const Assignment& a);

/// Throws std::invalid_argument when s is not within a's domain.
ProjectedAssignment project(const Assignment& a, const VarSet& s);
ProjectedAssignment project(const ProjectedAssignment& a, const VarSet& s);

struct Renaming {
    Formula formula;
    /// Only renamed vars appear here; kept vars map to themselves implicitly.
    std::map<Var, Var> mapping;

    Var operator()(Var v) const {
        auto it = mapping.find(v);
        return it == mapping.end() ? v : it->second;
    }
    Lit operator()(Lit l) const { return Lit((*this)(l.var()), l.negated()); }
};

/// Copy of f where every var in 1..num_vars not in `keep` gets a fresh index
/// base+1, base+2, ... (ascending original order). The result has
/// num_vars = base + (number of renamed vars), or f.num_vars if nothing moved.
Renaming rename_apart(const Formula& f, std::uint32_t base, const VarSet& keep);

/// Number of clause/xor occurrences per variable, index 0 unused.
std::vector<std::size_t> occurrence_counts(const Formula& f);

}  // namespace ubc
