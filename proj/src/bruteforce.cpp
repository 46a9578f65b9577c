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

#include "ubcount/bruteforce.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace ubc {

namespace {

struct MaskedClause {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
};

struct MaskedXor {
    std::uint64_t vars = 0;
    bool rhs = false;
};

}  // namespace

ModelTable::ModelTable(const Formula& f, std::uint32_t max_vars) : num_vars_(f.num_vars) {
    if (f.num_vars > max_vars || f.num_vars > 63)
        throw std::invalid_argument("formula with " + std::to_string(f.num_vars) +
                                    " vars is too large for enumeration (max " +
                                    std::to_string(max_vars) + ")");
    f.check();
    const std::uint32_t n = f.num_vars;

    // Constraints bucketed by their highest variable; bucket 0 holds empty ones.
    std::vector<std::vector<MaskedClause>> clauses_at(n + 1);
    std::vector<std::vector<MaskedXor>> xors_at(n + 1);
    for (const auto& c : f.clauses) {
        MaskedClause mc;
        Var top = 0;
        for (Lit l : c.lits) {
            (l.negated() ? mc.neg : mc.pos) |= std::uint64_t{1} << (l.var() - 1);
            top = std::max(top, l.var());
        }
        clauses_at[top].push_back(mc);
    }
    for (const auto& x : f.xors) {
        MaskedXor mx{mask(x.vars), x.rhs};
        Var top = x.vars.empty() ? 0 : x.vars.back();
        xors_at[top].push_back(mx);
    }

    auto ok_at = [&](std::uint32_t depth, std::uint64_t a) {
        for (const auto& c : clauses_at[depth])
            if (((a & c.pos) | (~a & c.neg)) == 0) return false;
        for (const auto& x : xors_at[depth])
            if ((__builtin_popcountll(a & x.vars) & 1) != static_cast<int>(x.rhs)) return false;
        return true;
    };

    if (!ok_at(0, 0)) return;
    auto dfs = [&](auto&& self, std::uint32_t v, std::uint64_t a) -> void {
        if (v > n) {
            models_.push_back(a);
            return;
        }
        const std::uint64_t bit = std::uint64_t{1} << (v - 1);
        if (ok_at(v, a)) self(self, v + 1, a);
        if (ok_at(v, a | bit)) self(self, v + 1, a | bit);
    };
    dfs(dfs, 1, 0);
}

std::uint64_t ModelTable::mask(const VarSet& s) {
    std::uint64_t m = 0;
    for (Var v : s) {
        if (v == 0 || v > 64) throw std::invalid_argument("mask: var out of range");
        m |= std::uint64_t{1} << (v - 1);
    }
    return m;
}

bool ModelTable::upper_bounds(const VarSet& u, const VarSet& p) const {
    const std::uint64_t um = mask(u), pm = mask(p);
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    seen.reserve(models_.size());
    for (std::uint64_t m : models_) {
        auto [it, fresh] = seen.emplace(m & um, m & pm);
        if (!fresh && it->second != (m & pm)) return false;
    }
    return true;
}

std::uint64_t ModelTable::projected_count(const VarSet& s) const {
    const std::uint64_t sm = mask(s);
    std::unordered_set<std::uint64_t> distinct;
    distinct.reserve(models_.size());
    for (std::uint64_t m : models_) distinct.insert(m & sm);
    return distinct.size();
}

bool verify_ubs_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& u) {
    return ModelTable(f).upper_bounds(u, p.vars);
}

bool verify_is_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& s) {
    if (!is_subset(s, p.vars)) return false;
    return verify_ubs_bruteforce(f, p, s);
}

bool verify_gis_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& s) {
    ModelTable t(f);
    return t.upper_bounds(s, p.vars) && t.upper_bounds(p.vars, s);
}

bool verify_lbs_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& s) {
    return ModelTable(f).upper_bounds(p.vars, s);
}

}  // namespace ubc
