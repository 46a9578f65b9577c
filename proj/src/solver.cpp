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

#include "ubcount/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ubc {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Satisfiable: return "SAT";
        case Verdict::Unsatisfiable: return "UNSAT";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

namespace {

// Internal literal code: 2*(var-1) + negated.
using Code = std::uint32_t;
using CRef = std::uint32_t;

constexpr CRef kNoReason = ~CRef{0};
constexpr Code kNoLit = ~Code{0};
constexpr std::uint8_t kFalse = 0;
constexpr std::uint8_t kTrue = 1;
constexpr std::uint8_t kUndef = 2;

Code encode(Lit l) { return 2 * (l.var() - 1) + (l.negated() ? 1 : 0); }
std::uint32_t var_of(Code c) { return c >> 1; }

struct ClauseRec {
    std::vector<Code> lits;
    double activity = 0;
    bool learnt = false;
    bool deleted = false;
};

struct Watcher {
    CRef cref;
    Code blocker;
};

// Binary max-heap over variable activity; ties go to the lower index.
class VarHeap {
public:
    explicit VarHeap(const std::vector<double>& act) : act_(act) {}

    bool empty() const { return heap_.empty(); }
    bool contains(std::uint32_t v) const { return v < pos_.size() && pos_[v] >= 0; }

    void grow(std::uint32_t n) {
        if (pos_.size() < n) pos_.resize(n, -1);
    }

    void insert(std::uint32_t v) {
        grow(v + 1);
        if (contains(v)) return;
        pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        up(heap_.size() - 1);
    }

    void increased(std::uint32_t v) {
        if (contains(v)) up(static_cast<std::size_t>(pos_[v]));
    }

    std::uint32_t pop() {
        std::uint32_t top = heap_.front();
        swap_at(0, heap_.size() - 1);
        heap_.pop_back();
        pos_[top] = -1;
        if (!heap_.empty()) down(0);
        return top;
    }

    void rebuild() {
        for (std::size_t i = heap_.size(); i-- > 0;) down(i);
    }

private:
    bool before(std::uint32_t a, std::uint32_t b) const {
        return act_[a] > act_[b] || (act_[a] == act_[b] && a < b);
    }
    void swap_at(std::size_t i, std::size_t j) {
        std::swap(heap_[i], heap_[j]);
        pos_[heap_[i]] = static_cast<int>(i);
        pos_[heap_[j]] = static_cast<int>(j);
    }
    void up(std::size_t i) {
        while (i > 0) {
            std::size_t p = (i - 1) / 2;
            if (!before(heap_[i], heap_[p])) break;
            swap_at(i, p);
            i = p;
        }
    }
    void down(std::size_t i) {
        for (;;) {
            std::size_t l = 2 * i + 1, r = l + 1, best = i;
            if (l < heap_.size() && before(heap_[l], heap_[best])) best = l;
            if (r < heap_.size() && before(heap_[r], heap_[best])) best = r;
            if (best == i) return;
            swap_at(i, best);
            i = best;
        }
    }

    const std::vector<double>& act_;
    std::vector<std::uint32_t> heap_;
    std::vector<int> pos_;
};

enum class SearchResult { Sat, Unsat, Restart, Budget };

}  // namespace

struct Solver::Impl {
    SolverConfig cfg;
    std::mt19937_64 rng;

    bool ok = true;
    std::vector<ClauseRec> db;
    std::vector<CRef> learnts;
    std::size_t num_original = 0;
    std::vector<std::vector<Watcher>> watches;  // by literal code; clauses watching it

    std::vector<std::uint8_t> assigns;
    std::vector<std::uint8_t> phase;
    std::vector<int> level;
    std::vector<CRef> reason;
    std::vector<double> activity;
    std::vector<std::uint8_t> seen;
    VarHeap heap{activity};

    std::vector<Code> trail;
    std::vector<std::size_t> trail_lim;
    std::size_t qhead = 0;

    double var_inc = 1.0;
    double cla_inc = 1.0;
    double max_learnts = 0;
    std::uint64_t conflicts = 0;

    explicit Impl(SolverConfig c) : cfg(std::move(c)), rng(cfg.seed) {}

    std::uint32_t nvars() const { return static_cast<std::uint32_t>(assigns.size()); }
    int decision_level() const { return static_cast<int>(trail_lim.size()); }

    std::uint8_t value(Code c) const {
        std::uint8_t a = assigns[var_of(c)];
        return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ (c & 1U));
    }

    void add_var() {
        std::uint32_t v = nvars();
        assigns.push_back(kUndef);
        phase.push_back(0);
        level.push_back(0);
        reason.push_back(kNoReason);
        activity.push_back(0.0);
        seen.push_back(0);
        watches.emplace_back();
        watches.emplace_back();
        heap.insert(v);
    }

    void enqueue(Code c, CRef from) {
        std::uint32_t v = var_of(c);
        assigns[v] = (c & 1U) ? kFalse : kTrue;
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(c);
    }

    void attach(CRef cr) {
        const auto& c = db[cr].lits;
        watches[c[0]].push_back({cr, c[1]});
        watches[c[1]].push_back({cr, c[0]});
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (std::size_t i = trail.size(); i-- > trail_lim[static_cast<std::size_t>(lvl)];) {
            std::uint32_t v = var_of(trail[i]);
            phase[v] = assigns[v];
            assigns[v] = kUndef;
            reason[v] = kNoReason;
            heap.insert(v);
        }
        trail.resize(trail_lim[static_cast<std::size_t>(lvl)]);
        trail_lim.resize(static_cast<std::size_t>(lvl));
        qhead = trail.size();
    }

    CRef propagate() {
        CRef confl = kNoReason;
        while (qhead < trail.size()) {
            const Code false_lit = trail[qhead++] ^ 1U;
            auto& ws = watches[false_lit];
            std::size_t i = 0, j = 0;
            const std::size_t n = ws.size();
            while (i < n) {
                const Watcher w = ws[i];
                if (value(w.blocker) == kTrue) {
                    ws[j++] = ws[i++];
                    continue;
                }
                auto& c = db[w.cref].lits;
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                ++i;
                const Code first = c[0];
                const Watcher nw{w.cref, first};
                if (first != w.blocker && value(first) == kTrue) {
                    ws[j++] = nw;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (value(c[k]) != kFalse) {
                        std::swap(c[1], c[k]);
                        watches[c[1]].push_back(nw);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = nw;
                if (value(first) == kFalse) {
                    confl = w.cref;
                    qhead = trail.size();
                    while (i < n) ws[j++] = ws[i++];
                } else {
                    enqueue(first, w.cref);
                }
            }
            ws.resize(j);
            if (confl != kNoReason) break;
        }
        return confl;
    }

    void bump_var(std::uint32_t v) {
        if ((activity[v] += var_inc) > 1e100) {
            for (auto& a : activity) a *= 1e-100;
            var_inc *= 1e-100;
            heap.rebuild();
        }
        heap.increased(v);
    }

    void bump_clause(ClauseRec& c) {
        if ((c.activity += cla_inc) > 1e20) {
            for (CRef cr : learnts) db[cr].activity *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    // First-UIP conflict analysis; returns the backjump level.
    int analyze(CRef confl, std::vector<Code>& out) {
        out.clear();
        out.push_back(kNoLit);
        int path = 0;
        Code p = kNoLit;
        std::size_t idx = trail.size();
        do {
            ClauseRec& c = db[confl];
            if (c.learnt) bump_clause(c);
            for (std::size_t k = (p == kNoLit ? 0 : 1); k < c.lits.size(); ++k) {
                const Code q = c.lits[k];
                const std::uint32_t v = var_of(q);
                if (!seen[v] && level[v] > 0) {
                    bump_var(v);
                    seen[v] = 1;
                    if (level[v] >= decision_level())
                        ++path;
                    else
                        out.push_back(q);
                }
            }
            while (!seen[var_of(trail[--idx])]) {
            }
            p = trail[idx];
            confl = reason[var_of(p)];
            seen[var_of(p)] = 0;
            --path;
        } while (path > 0);
        out[0] = p ^ 1U;

        // Local minimization: drop literals implied by other learnt literals.
        std::vector<Code> full(out.begin(), out.end());
        std::size_t j = 1;
        for (std::size_t i = 1; i < out.size(); ++i) {
            const CRef r = reason[var_of(out[i])];
            bool keep = r == kNoReason;
            if (!keep) {
                const auto& rc = db[r].lits;
                for (std::size_t k = 1; k < rc.size(); ++k) {
                    const std::uint32_t v = var_of(rc[k]);
                    if (!seen[v] && level[v] > 0) {
                        keep = true;
                        break;
                    }
                }
            }
            if (keep) out[j++] = out[i];
        }
        out.resize(j);
        for (Code c : full) seen[var_of(c)] = 0;

        if (out.size() == 1) return 0;
        std::size_t max_i = 1;
        for (std::size_t i = 2; i < out.size(); ++i)
            if (level[var_of(out[i])] > level[var_of(out[max_i])]) max_i = i;
        std::swap(out[1], out[max_i]);
        return level[var_of(out[1])];
    }

    bool locked(CRef cr) const {
        const Code c0 = db[cr].lits[0];
        return reason[var_of(c0)] == cr && value(c0) == kTrue;
    }

    void reduce_db() {
        std::vector<CRef> order = learnts;
        std::stable_sort(order.begin(), order.end(), [&](CRef a, CRef b) {
            if (db[a].activity != db[b].activity) return db[a].activity < db[b].activity;
            return a < b;
        });
        const double extra_lim = cla_inc / static_cast<double>(std::max<std::size_t>(learnts.size(), 1));
        for (std::size_t i = 0; i < order.size(); ++i) {
            ClauseRec& c = db[order[i]];
            if (c.lits.size() <= 2 || locked(order[i])) continue;
            if (i < order.size() / 2 || c.activity < extra_lim) {
                c.deleted = true;
                c.lits.clear();
                c.lits.shrink_to_fit();
            }
        }
        learnts.erase(std::remove_if(learnts.begin(), learnts.end(),
                                     [&](CRef cr) { return db[cr].deleted; }),
                      learnts.end());
        for (auto& ws : watches) ws.clear();
        for (CRef cr = 0; cr < db.size(); ++cr)
            if (!db[cr].deleted) attach(cr);
    }

    Code pick_branch() {
        if (cfg.random_var_freq > 0 && nvars() > 0) {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            if (coin(rng) < cfg.random_var_freq) {
                std::uint32_t v = static_cast<std::uint32_t>(rng() % nvars());
                if (assigns[v] == kUndef) return 2 * v + (phase[v] == kTrue ? 0 : 1);
            }
        }
        while (!heap.empty()) {
            std::uint32_t v = heap.pop();
            if (assigns[v] == kUndef) return 2 * v + (phase[v] == kTrue ? 0 : 1);
        }
        return kNoLit;
    }

    SearchResult search(std::uint64_t nof_conflicts, const std::vector<Code>& assumptions,
                        std::uint64_t& call_conflicts) {
        std::uint64_t local = 0;
        std::vector<Code> learnt;
        for (;;) {
            const CRef confl = propagate();
            if (confl != kNoReason) {
                ++conflicts;
                ++call_conflicts;
                ++local;
                if (decision_level() == 0) {
                    ok = false;
                    return SearchResult::Unsat;
                }
                const int bt = analyze(confl, learnt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                } else {
                    const CRef cr = static_cast<CRef>(db.size());
                    db.push_back({learnt, 0.0, true, false});
                    learnts.push_back(cr);
                    attach(cr);
                    bump_clause(db[cr]);
                    enqueue(learnt[0], cr);
                }
                var_inc /= cfg.var_decay;
                cla_inc /= cfg.clause_decay;
                if (cfg.conflict_limit && call_conflicts >= *cfg.conflict_limit) return SearchResult::Budget;
                continue;
            }
            if (local >= nof_conflicts) return SearchResult::Restart;
            if (static_cast<double>(learnts.size()) - static_cast<double>(trail.size()) >= max_learnts)
                reduce_db();

            Code next = kNoLit;
            while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
                const Code a = assumptions[static_cast<std::size_t>(decision_level())];
                const std::uint8_t val = value(a);
                if (val == kTrue) {
                    trail_lim.push_back(trail.size());
                } else if (val == kFalse) {
                    return SearchResult::Unsat;
                } else {
                    next = a;
                    break;
                }
            }
            if (next == kNoLit) {
                next = pick_branch();
                if (next == kNoLit) return SearchResult::Sat;
            }
            trail_lim.push_back(trail.size());
            enqueue(next, kNoReason);
        }
    }
};

Solver::Solver(SolverConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

Var Solver::new_var() {
    impl_->add_var();
    return impl_->nvars();
}

void Solver::reserve_vars(std::uint32_t n) {
    while (impl_->nvars() < n) impl_->add_var();
}

std::uint32_t Solver::num_vars() const { return impl_->nvars(); }
std::uint64_t Solver::total_conflicts() const { return impl_->conflicts; }
const SolverConfig& Solver::config() const { return impl_->cfg; }

bool Solver::add_clause(std::span<const Lit> lits) {
    Impl& s = *impl_;
    if (!s.ok) return false;
    s.cancel_until(0);
    std::vector<Code> c;
    c.reserve(lits.size());
    for (Lit l : lits) {
        if (l.var() == 0) throw std::invalid_argument("add_clause: var 0");
        reserve_vars(l.var());
        c.push_back(encode(l));
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i + 1 < c.size() && c[i + 1] == (c[i] ^ 1U)) return true;  // tautology
        const std::uint8_t val = s.value(c[i]);
        if (val == kTrue) return true;
        if (val == kFalse) continue;
        c[j++] = c[i];
    }
    c.resize(j);
    if (c.empty()) {
        s.ok = false;
        return false;
    }
    if (c.size() == 1) {
        s.enqueue(c[0], kNoReason);
        if (s.propagate() != kNoReason) s.ok = false;
        return s.ok;
    }
    const CRef cr = static_cast<CRef>(s.db.size());
    s.db.push_back({std::move(c), 0.0, false, false});
    ++s.num_original;
    s.attach(cr);
    return true;
}

void Solver::add_formula(const Formula& f) {
    reserve_vars(f.num_vars);
    for (const auto& c : f.clauses) add_clause(std::span<const Lit>(c.lits));
    for (const auto& x : f.xors) add_xor(x);
}

void Solver::add_xor(const XorClause& x, std::optional<Lit> guard) {
    expand_xor(
        x, [&] { return new_var(); },
        [&](std::vector<Lit> c) {
            if (guard) c.push_back(~*guard);
            add_clause(std::span<const Lit>(c));
        });
}

SolveOutcome Solver::solve(std::span<const Lit> assumptions) {
    Impl& s = *impl_;
    SolveOutcome out;
    out.verdict = Verdict::Unsatisfiable;
    if (!s.ok) return out;

    std::vector<Code> assumps;
    assumps.reserve(assumptions.size());
    for (Lit l : assumptions) {
        reserve_vars(l.var());
        assumps.push_back(encode(l));
    }
    s.cancel_until(0);
    if (s.propagate() != kNoReason) {
        s.ok = false;
        return out;
    }
    if (s.max_learnts == 0)
        s.max_learnts = std::max(static_cast<double>(s.num_original) / 3.0, 2000.0);

    std::uint64_t call_conflicts = 0;
    for (int restarts = 0;; ++restarts) {
        const auto budget = static_cast<std::uint64_t>(
            static_cast<double>(s.cfg.restart_first) * std::pow(s.cfg.restart_inc, restarts));
        const SearchResult r = s.search(std::max<std::uint64_t>(budget, 1), assumps, call_conflicts);
        if (r == SearchResult::Restart) {
            s.cancel_until(0);
            s.max_learnts *= 1.1;
            continue;
        }
        if (r == SearchResult::Sat) {
            Assignment a(s.nvars());
            for (std::uint32_t v = 0; v < s.nvars(); ++v) a.set(v + 1, s.assigns[v] == kTrue);
            out.verdict = Verdict::Satisfiable;
            out.model = std::move(a);
        } else if (r == SearchResult::Budget) {
            out.verdict = Verdict::Unknown;
        }
        break;
    }
    s.cancel_until(0);
    out.conflicts_used = call_conflicts;
    return out;
}

SolveOutcome solve(const Formula& f, std::span<const Lit> assumptions, const SolverConfig& cfg) {
    if (!f.xors.empty()) throw std::invalid_argument("solve: blast xor clauses first");
    for (Lit l : assumptions)
        if (l.var() == 0 || l.var() > f.num_vars)
            throw std::invalid_argument("solve: assumption outside formula variables");
    Solver s(cfg);
    s.add_formula(f);
    SolveOutcome out = s.solve(assumptions);
    if (out.model && out.model->num_vars() != f.num_vars) {
        Assignment trimmed(f.num_vars);
        for (Var v = 1; v <= f.num_vars; ++v) trimmed.set(v, (*out.model)[v]);
        out.model = std::move(trimmed);
    }
    return out;
}

}  // namespace ubc
