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

#include "ubcount/support.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ubc {

const char* to_string(SupportKind k) { return k == SupportKind::IS ? "is" : "ubs"; }

const char* to_string(VarVerdict v) {
    switch (v) {
        case VarVerdict::Kept: return "kept";
        case VarVerdict::Dropped: return "dropped";
        case VarVerdict::BudgetKept: return "budget-kept";
    }
    return "?";
}

const char* to_string(VarOrderStrategy s) {
    switch (s) {
        case VarOrderStrategy::NonProjectionFirst: return "nonproj-first";
        case VarOrderStrategy::ProjectionOnly: return "proj-only";
        case VarOrderStrategy::IndexOrder: return "index";
        case VarOrderStrategy::OccurrenceAscending: return "occ-asc";
    }
    return "?";
}

VarOrderStrategy parse_strategy(const std::string& name) {
    for (auto s : {VarOrderStrategy::NonProjectionFirst, VarOrderStrategy::ProjectionOnly,
                   VarOrderStrategy::IndexOrder, VarOrderStrategy::OccurrenceAscending})
        if (name == to_string(s)) return s;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

VarSet candidate_universe(const Formula& f, const ProjectionSet& p) {
    for (Var v : p.vars)
        if (v == 0 || v > f.num_vars)
            throw std::invalid_argument("projection variable " + std::to_string(v) + " out of range");
    return set_union(f.occurring_vars(), p.vars);
}

std::vector<Var> elimination_order(const Formula& f, const ProjectionSet& p, VarOrderStrategy strat) {
    const auto occ = occurrence_counts(f);
    std::vector<std::tuple<int, std::size_t, Var>> keyed;
    for (Var v : candidate_universe(f, p)) {
        const bool in_p = p.contains(v);
        int group = 0;
        std::size_t o = occ[v];
        switch (strat) {
            case VarOrderStrategy::NonProjectionFirst: group = in_p ? 0 : 1; break;
            case VarOrderStrategy::ProjectionOnly: group = in_p ? 1 : 0; break;
            case VarOrderStrategy::IndexOrder: o = 0; break;
            case VarOrderStrategy::OccurrenceAscending: break;
        }
        keyed.emplace_back(group, o, v);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Var> order;
    order.reserve(keyed.size());
    for (const auto& k : keyed) order.push_back(std::get<2>(k));
    return order;
}

namespace {

Formula unsat_marker() {
    Formula f;
    f.clauses.emplace_back();
    return f;
}

void append(Formula& into, const Formula& from) {
    into.num_vars = std::max(into.num_vars, from.num_vars);
    into.clauses.insert(into.clauses.end(), from.clauses.begin(), from.clauses.end());
    into.xors.insert(into.xors.end(), from.xors.begin(), from.xors.end());
}

VarSet without(VarSet s, Var v) {
    s.erase(std::remove(s.begin(), s.end(), v), s.end());
    return s;
}

SolveOutcome run_check(const Formula& f, const SolverConfig& cfg) {
    if (f.has_empty_clause()) return SolveOutcome{Verdict::Unsatisfiable, std::nullopt, 0};
    if (f.xors.empty()) return solve(f, {}, cfg);
    return solve(blast_xor(f), {}, cfg);
}

}  // namespace

Formula build_xi(const Formula& phi, const ProjectionSet& p, const VarSet& j, const VarSet& q_minus_z,
                 const VarSet& d, Var z) {
    const VarSet z_set{z};
    const VarSet parts[] = {j, q_minus_z, d, z_set};
    VarSet all;
    for (const auto& part : parts) {
        if (!set_intersection(all, part).empty())
            throw std::invalid_argument("build_xi: J, Q\\z, D and z must be disjoint");
        all = set_union(all, part);
    }
    if (!is_subset(phi.occurring_vars(), all) || !is_subset(p.vars, all))
        throw std::invalid_argument("build_xi: partition does not cover the support and projection");

    const VarSet differ = set_intersection(p.vars, set_union(d, z_set));
    if (differ.empty()) return unsat_marker();

    const Renaming copy = rename_apart(phi, phi.num_vars, set_union(j, q_minus_z));
    Formula xi = phi;
    append(xi, copy.formula);

    std::vector<Lit> any_differs;
    for (Var x : differ) {
        const Var xp = copy(x);
        const Var sel = xi.new_var();
        xi.add_clause({Lit::neg(sel), Lit::pos(x), Lit::pos(xp)});
        xi.add_clause({Lit::neg(sel), Lit::neg(x), Lit::neg(xp)});
        any_differs.push_back(Lit::pos(sel));
    }
    xi.add_clause(Clause(std::move(any_differs)));
    return xi;
}

Formula build_padoa(const Formula& phi, const VarSet& s, Var i) {
    if (!set_contains(s, i)) throw std::invalid_argument("build_padoa: tested var not in s");
    for (Var v : s)
        if (v == 0 || v > phi.num_vars) throw std::invalid_argument("build_padoa: var out of range");

    const Renaming copy = rename_apart(phi, phi.num_vars, {});
    Formula psi = phi;
    append(psi, copy.formula);
    for (Var v : s) {
        if (v == i) continue;
        const Var vp = copy(v);
        psi.add_clause({Lit::neg(v), Lit::pos(vp)});
        psi.add_clause({Lit::pos(v), Lit::neg(vp)});
    }
    psi.add_clause({Lit::pos(i)});
    psi.add_clause({Lit::neg(copy(i))});
    return psi;
}

SupportSet find_ubs(const Formula& phi, const ProjectionSet& p, VarOrderStrategy strat,
                    const SolverConfig& cfg, Deadline deadline, const LoopObserver& observer) {
    SupportSet out;
    out.kind = SupportKind::UBS;
    VarSet j, d;
    VarSet q = candidate_universe(phi, p);
    bool budget_hit = false;

    for (Var z : elimination_order(phi, p, strat)) {
        if (observer) observer(j, q);
        if (deadline.expired()) {
            out.vars = set_union(j, q);
            out.minimal = false;
            out.timed_out = true;
            return out;
        }
        VarSet q_minus_z = without(q, z);
        const Formula xi = build_xi(phi, p, j, q_minus_z, d, z);
        if (!xi.has_empty_clause()) ++out.sat_calls;
        const SolveOutcome r = run_check(xi, cfg);

        VarLogEntry entry{z, VarVerdict::Kept, r.conflicts_used};
        if (r.unsat()) {
            d = set_union(d, {z});
            entry.verdict = VarVerdict::Dropped;
        } else {
            j = set_union(j, {z});
            if (r.unknown()) {
                entry.verdict = VarVerdict::BudgetKept;
                budget_hit = true;
            }
        }
        out.log.push_back(entry);
        q = std::move(q_minus_z);
    }
    if (observer) observer(j, q);
    out.vars = std::move(j);
    out.minimal = !budget_hit;
    return out;
}

SupportSet find_is(const Formula& phi, const ProjectionSet& p, const SolverConfig& cfg, Deadline deadline) {
    SupportSet out;
    out.kind = SupportKind::IS;
    VarSet current = p.vars;
    for (Var v : current)
        if (v == 0 || v > phi.num_vars)
            throw std::invalid_argument("projection variable " + std::to_string(v) + " out of range");

    const auto occ = occurrence_counts(phi);
    std::vector<Var> order = p.vars;
    std::stable_sort(order.begin(), order.end(), [&](Var a, Var b) { return occ[a] < occ[b]; });

    bool budget_hit = false;
    for (Var z : order) {
        if (deadline.expired()) {
            out.vars = std::move(current);
            out.timed_out = true;
            out.minimal = false;
            return out;
        }
        ++out.sat_calls;
        const SolveOutcome r = run_check(build_padoa(phi, current, z), cfg);
        VarLogEntry entry{z, VarVerdict::Kept, r.conflicts_used};
        if (r.unsat()) {
            current = without(std::move(current), z);
            entry.verdict = VarVerdict::Dropped;
        } else if (r.unknown()) {
            entry.verdict = VarVerdict::BudgetKept;
            budget_hit = true;
        }
        out.log.push_back(entry);
    }
    out.vars = std::move(current);
    out.minimal = !budget_hit;
    return out;
}

}  // namespace ubc
