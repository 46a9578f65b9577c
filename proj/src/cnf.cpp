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

#include "ubcount/cnf.hpp"

#include <algorithm>
#include <iterator>

namespace ubc {

void Clause::normalize() {
    std::vector<Lit> out;
    out.reserve(lits.size());
    tautology = false;
    for (Lit l : lits) {
        if (std::find(out.begin(), out.end(), l) != out.end()) continue;
        if (std::find(out.begin(), out.end(), ~l) != out.end()) tautology = true;
        out.push_back(l);
    }
    lits = std::move(out);
}

XorClause::XorClause(std::vector<Var> v, bool r) : rhs(r) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) % 2 == 1) vars.push_back(v[i]);
        i = j;
    }
}

void Formula::add_clause(Clause c) {
    for (Lit l : c.lits)
        if (l.var() == 0 || l.var() > num_vars)
            throw std::invalid_argument("clause literal " + std::to_string(l.to_dimacs()) +
                                        " out of range 1.." + std::to_string(num_vars));
    clauses.push_back(std::move(c));
}

void Formula::add_xor(XorClause x) {
    for (Var v : x.vars)
        if (v == 0 || v > num_vars)
            throw std::invalid_argument("xor variable " + std::to_string(v) + " out of range");
    xors.push_back(std::move(x));
}

void Formula::check() const {
    for (const auto& c : clauses)
        for (Lit l : c.lits)
            if (l.var() == 0 || l.var() > num_vars)
                throw std::invalid_argument("literal out of range: " + std::to_string(l.to_dimacs()));
    for (const auto& x : xors)
        for (Var v : x.vars)
            if (v == 0 || v > num_vars)
                throw std::invalid_argument("xor variable out of range: " + std::to_string(v));
}

bool Formula::has_empty_clause() const {
    return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.empty(); });
}

VarSet Formula::occurring_vars() const {
    std::vector<std::uint8_t> seen(num_vars + 1, 0);
    for (const auto& c : clauses)
        for (Lit l : c.lits) seen[l.var()] = 1;
    for (const auto& x : xors)
        for (Var v : x.vars) seen[v] = 1;
    VarSet out;
    for (Var v = 1; v <= num_vars; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

ProjectionSet::ProjectionSet(std::vector<Var> v) : vars(make_var_set(std::move(v))) {}

bool ProjectionSet::contains(Var v) const { return set_contains(vars, v); }

Assignment Assignment::from_bits(std::uint32_t num_vars, std::uint64_t bits) {
    Assignment a(num_vars);
    for (Var v = 1; v <= num_vars && v <= 64; ++v) a.set(v, (bits >> (v - 1)) & 1U);
    return a;
}

ProjectedAssignment::ProjectedAssignment(VarSet vars, std::vector<std::uint8_t> values)
    : vars_(std::move(vars)), values_(std::move(values)) {
    if (vars_.size() != values_.size())
        throw std::invalid_argument("projected assignment: domain/value size mismatch");
}

bool ProjectedAssignment::at(Var v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || *it != v)
        throw std::out_of_range("var " + std::to_string(v) + " not in projected domain");
    return values_[static_cast<std::size_t>(it - vars_.begin())] != 0;
}

VarSet make_var_set(std::vector<Var> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool set_contains(const VarSet& s, Var v) { return std::binary_search(s.begin(), s.end(), v); }

bool is_subset(const VarSet& sub, const VarSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet set_intersection(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet set_difference(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool evaluate(const Formula& f, const Assignment& a) {
    if (a.num_vars() < f.num_vars)
        throw std::invalid_argument("assignment covers " + std::to_string(a.num_vars()) +
                                    " vars, formula has " + std::to_string(f.num_vars));
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (Lit l : c.lits)
            if (a.satisfies(l)) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    for (const auto& x : f.xors) {
        bool parity = false;
        for (Var v : x.vars) parity ^= a[v];
        if (parity != x.rhs) return false;
    }
    return true;
}

ProjectedAssignment project(const Assignment& a, const VarSet& s) {
    std::vector<std::uint8_t> values;
    values.reserve(s.size());
    for (Var v : s) {
        if (v == 0 || v > a.num_vars())
            throw std::invalid_argument("project: var " + std::to_string(v) + " outside assignment");
        values.push_back(a[v] ? 1 : 0);
    }
    return ProjectedAssignment(s, std::move(values));
}

ProjectedAssignment project(const ProjectedAssignment& a, const VarSet& s) {
    if (!is_subset(s, a.vars())) throw std::invalid_argument("project: subset not in domain");
    std::vector<std::uint8_t> values;
    values.reserve(s.size());
    for (Var v : s) values.push_back(a.at(v) ? 1 : 0);
    return ProjectedAssignment(s, std::move(values));
}

Renaming rename_apart(const Formula& f, std::uint32_t base, const VarSet& keep) {
    if (base < f.num_vars) throw std::invalid_argument("rename_apart: base below num_vars");
    Renaming r;
    Var next = base;
    for (Var v = 1; v <= f.num_vars; ++v)
        if (!set_contains(keep, v)) r.mapping.emplace(v, ++next);

    r.formula.num_vars = r.mapping.empty() ? f.num_vars : next;
    r.formula.clauses.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        Clause out;
        out.lits.reserve(c.lits.size());
        for (Lit l : c.lits) out.lits.push_back(r(l));
        out.tautology = c.tautology;
        r.formula.clauses.push_back(std::move(out));
    }
    for (const auto& x : f.xors) {
        std::vector<Var> vs;
        for (Var v : x.vars) vs.push_back(r(v));
        r.formula.xors.emplace_back(std::move(vs), x.rhs);
    }
    return r;
}

std::vector<std::size_t> occurrence_counts(const Formula& f) {
    std::vector<std::size_t> occ(f.num_vars + 1, 0);
    for (const auto& c : f.clauses)
        for (Lit l : c.lits) ++occ[l.var()];
    for (const auto& x : f.xors)
        for (Var v : x.vars) ++occ[v];
    return occ;
}

}  // namespace ubc
