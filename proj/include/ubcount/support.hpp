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
#include <string>
#include <vector>

#include "ubcount/cnf.hpp"
#include "ubcount/deadline.hpp"
#include "ubcount/solver.hpp"

namespace ubc {

enum class SupportKind { IS, UBS };

enum class VarVerdict {
    Kept,        // the check was SAT, var is needed
    Dropped,     // the check was UNSAT
    BudgetKept,  // conflict budget ran out, kept to stay sound
};

struct VarLogEntry {
    Var var = 0;
    VarVerdict verdict = VarVerdict::Kept;
    std::uint64_t conflicts = 0;
};

struct SupportSet {
    VarSet vars;
    SupportKind kind = SupportKind::UBS;
    /// No single variable can be removed. False after a budget or deadline hit.
    bool minimal = false;
    bool timed_out = false;
    std::vector<VarLogEntry> log;
    std::size_t sat_calls = 0;
};

/// Order in which candidates are offered for elimination.
enum class VarOrderStrategy {
    /// Bias the result toward non-projection variables: projection variables
    /// are offered for elimination first, the rest afterwards.
    NonProjectionFirst,
    /// Non-projection variables are eliminated up front (each check is
    /// vacuous), then projection variables are tested. The result is an IS.
    ProjectionOnly,
    IndexOrder,
    OccurrenceAscending,
};

const char* to_string(SupportKind k);
const char* to_string(VarVerdict v);
const char* to_string(VarOrderStrategy s);
/// Accepts nonproj-first, proj-only, index, occ-asc.
VarOrderStrategy parse_strategy(const std::string& name);

/// Variables find_ubs works over: those occurring in f, plus p.
VarSet candidate_universe(const Formula& f, const ProjectionSet& p);

/// Static elimination order under `strat`. Within a group, rarer variables
/// come first, ties by index (IndexOrder ignores occurrence counts).
std::vector<Var> elimination_order(const Formula& f, const ProjectionSet& p, VarOrderStrategy strat);

/// Two-copy drop check for z: phi over (J, Q\z, D, z), a second copy with D
/// and z renamed apart, and a selector-encoded disjunction requiring some
/// projection variable in D ∪ {z} to differ between copies. When P ∩ (D ∪ {z})
/// is empty the result is a single empty clause (unsatisfiable marker).
/// Throws std::invalid_argument when the parts overlap or miss a support var.
Formula build_xi(const Formula& phi, const ProjectionSet& p, const VarSet& j, const VarSet& q_minus_z,
                 const VarSet& d, Var z);

/// Padoa check: phi(X) ∧ phi(X') ∧ (x_j <-> x_j' for j in s, j != i) ∧ x_i ∧ ¬x_i'.
/// Unsatisfiable iff i is defined by s \ {i}. Throws when i is not in s.
Formula build_padoa(const Formula& phi, const VarSet& s, Var i);

/// Called at every loop head with the current (J, Q), and once more at exit.
using LoopObserver = std::function<void(const VarSet& j, const VarSet& q)>;

/// Greedy UBS elimination. UNSAT drop check moves z to D, SAT keeps it in J,
/// an exhausted conflict budget keeps it and clears `minimal`. On deadline
/// expiry returns J ∪ Q with timed_out set.
SupportSet find_ubs(const Formula& phi, const ProjectionSet& p, VarOrderStrategy strat,
                    const SolverConfig& cfg = {}, Deadline deadline = Deadline::never(),
                    const LoopObserver& observer = nullptr);

/// Greedy Padoa elimination over P in rarest-first order.
SupportSet find_is(const Formula& phi, const ProjectionSet& p, const SolverConfig& cfg = {},
                   Deadline deadline = Deadline::never());

}  // namespace ubc
