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

#include "ubcount/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace ubc {

const char* to_string(CountStatus s) {
    switch (s) {
        case CountStatus::Ok: return "ok";
        case CountStatus::LowerBound: return "lower-bound";
        case CountStatus::Unknown: return "unknown";
        case CountStatus::Timeout: return "timeout";
    }
    return "?";
}

std::string ApproxCount::str() const { return std::to_string(mantissa) + "*2^" + std::to_string(exponent); }

double ApproxCount::log2_value() const {
    if (mantissa == 0) return -std::numeric_limits<double>::infinity();
    return std::log2(static_cast<double>(mantissa)) + static_cast<double>(exponent);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_vars(const Formula& phi, const VarSet& s) {
    for (Var v : s)
        if (v == 0 || v > phi.num_vars)
            throw std::invalid_argument("counting variable " + std::to_string(v) + " out of range");
}

struct CellResult {
    std::uint64_t count = 0;
    CountStatus status = CountStatus::Ok;
};

// Incremental bounded counter over phi with guarded hash constraints. Hash k
// is active iff its guard is assumed true; each count() call guards its
// blocking clauses with a fresh literal that is retired afterwards.
class CellCounter {
public:
    CellCounter(const Formula& phi, const VarSet& s, const std::vector<XorClause>& hashes,
                const SolverConfig& cfg)
        : solver_(cfg), s_(s) {
        solver_.add_formula(phi);
        for (const auto& h : hashes) {
            const Var g = solver_.new_var();
            solver_.add_xor(h, Lit::pos(g));
            guards_.push_back(g);
        }
    }

    CellResult count(std::size_t active, std::uint64_t limit, const Deadline& deadline) {
        CellResult out;
        const Var block_guard = solver_.new_var();
        std::vector<Lit> assumps;
        for (std::size_t k = 0; k < guards_.size(); ++k) assumps.emplace_back(guards_[k], k >= active);
        assumps.push_back(Lit::pos(block_guard));

        std::vector<Lit> block;
        while (out.count < limit) {
            if (deadline.expired()) {
                out.status = CountStatus::Timeout;
                break;
            }
            const SolveOutcome r = solver_.solve(assumps);
            if (r.unknown()) {
                out.status = CountStatus::Unknown;
                break;
            }
            if (!r.sat()) break;
            ++out.count;
            block.assign({Lit::neg(block_guard)});
            for (Var v : s_) block.emplace_back(v, (*r.model)[v]);
            solver_.add_clause(std::span<const Lit>(block));
        }
        solver_.add_clause({Lit::neg(block_guard)});
        return out;
    }

private:
    Solver solver_;
    VarSet s_;
    std::vector<Var> guards_;
};

struct RoundResult {
    std::uint64_t cell = 0;
    std::uint64_t hashes = 0;
    CountStatus status = CountStatus::Ok;
};

// Smallest i in [1, n] with cell(i) <= pivot, given cell(0) > pivot. Cells
// shrink monotonically in i because hash prefixes are nested, so the answer
// does not depend on where the search starts.
RoundResult run_round(const Formula& phi, const VarSet& s, std::uint64_t pivot, std::uint64_t round_seed,
                      std::size_t& hint, const ApproxOptions& opts) {
    const std::size_t n = s.size();
    Rng rng(round_seed);
    std::vector<XorClause> hashes;
    hashes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) hashes.push_back(sample_xor(s, rng));
    CellCounter counter(phi, s, hashes, opts.solver);

    RoundResult out;
    std::map<std::size_t, std::uint64_t> memo;
    auto probe = [&](std::size_t i) -> std::optional<std::uint64_t> {
        if (auto it = memo.find(i); it != memo.end()) return it->second;
        const CellResult c = counter.count(i, pivot + 1, opts.deadline);
        if (c.status != CountStatus::Ok) {
            out.status = c.status;
            return std::nullopt;
        }
        memo[i] = c.count;
        return c.count;
    };

    std::size_t lo = 0, hi = n + 1;  // cell(lo) > pivot; cell(hi) <= pivot, n+1 is a sentinel
    const std::size_t start = std::clamp<std::size_t>(hint, 1, n);
    auto c = probe(start);
    if (!c) return out;
    if (*c <= pivot) {
        hi = start;
        for (std::size_t step = 1; hi - lo > 1; step *= 2) {
            const std::size_t j = hi > lo + step ? hi - step : lo + 1;
            if (j <= lo || j >= hi) break;
            c = probe(j);
            if (!c) return out;
            if (*c <= pivot) {
                hi = j;
            } else {
                lo = j;
                break;
            }
        }
    } else {
        lo = start;
        for (std::size_t step = 1; lo < n; step *= 2) {
            const std::size_t j = std::min(n, lo + step);
            c = probe(j);
            if (!c) return out;
            if (*c <= pivot) {
                hi = j;
                break;
            }
            lo = j;
        }
    }
    while (hi <= n && hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        c = probe(mid);
        if (!c) return out;
        (*c <= pivot ? hi : lo) = mid;
    }
    const std::size_t chosen = hi <= n ? hi : n;
    auto cell = probe(chosen);
    if (!cell) return out;
    out.cell = *cell;
    out.hashes = chosen;
    hint = chosen;
    return out;
}

}  // namespace

ExactCount count_exact_projected(const Formula& phi, const VarSet& s_in, std::optional<std::uint64_t> limit,
                                 const SolverConfig& cfg, Deadline deadline) {
    const VarSet s = make_var_set(s_in);
    check_vars(phi, s);
    const VarSet used = set_intersection(s, phi.occurring_vars());
    const std::size_t free_vars = s.size() - used.size();

    ExactCount out;
    const std::uint64_t cap = limit ? *limit + 1 : std::numeric_limits<std::uint64_t>::max();
    CellCounter counter(phi, used, {}, cfg);
    const CellResult r = counter.count(0, cap, deadline);
    out.status = r.status;
    if (r.status == CountStatus::Ok && limit && r.count > *limit) out.status = CountStatus::LowerBound;
    out.value = BigInt(r.count) << static_cast<unsigned>(free_vars);
    return out;
}

XorClause sample_xor(const VarSet& s, Rng& rng) {
    if (s.empty()) throw std::invalid_argument("sample_xor: empty variable set");
    std::vector<Var> picked;
    for (Var v : s)
        if (rng() & 1U) picked.push_back(v);
    const bool rhs = (rng() & 1U) != 0;
    return XorClause(std::move(picked), rhs);
}

std::uint64_t approx_pivot(double epsilon) {
    const double inv = 1.0 + 1.0 / epsilon;
    return static_cast<std::uint64_t>(std::ceil(9.84 * (1.0 + epsilon / (1.0 + epsilon)) * inv * inv));
}

std::uint64_t approx_rounds(double delta) {
    return static_cast<std::uint64_t>(std::ceil(17.0 * std::log2(3.0 / delta)));
}

ApproxCount approx_count(const Formula& phi, const VarSet& s_in, const ApproxOptions& opts) {
    if (!(opts.epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
    if (!(opts.delta > 0 && opts.delta <= 1)) throw std::invalid_argument("delta must be in (0, 1]");
    const VarSet s = make_var_set(s_in);
    check_vars(phi, s);
    const VarSet used = set_intersection(s, phi.occurring_vars());
    const std::uint64_t free_vars = s.size() - used.size();

    const Stopwatch clock;
    ApproxCount out;
    out.epsilon = opts.epsilon;
    out.delta = opts.delta;
    out.pivot = approx_pivot(opts.epsilon);

    {
        CellCounter base(phi, used, {}, opts.solver);
        const CellResult c0 = base.count(0, out.pivot + 1, opts.deadline);
        out.count_time_s = clock.seconds();
        if (c0.status != CountStatus::Ok) {
            out.status = c0.status;
            return out;
        }
        if (c0.count <= out.pivot) {
            out.mantissa = c0.count;
            out.exponent = c0.count == 0 ? 0 : free_vars;
            return out;
        }
    }

    const std::uint64_t rounds = approx_rounds(opts.delta);
    out.rounds = rounds;
    std::vector<RoundResult> results(rounds);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        std::size_t hint = 1;
        for (std::uint64_t r = next++; r < rounds; r = next++) {
            const std::uint64_t seed = splitmix64(opts.seed + 0x9E3779B97F4A7C15ULL * (r + 1));
            results[r] = run_round(phi, used, out.pivot, seed, hint, opts);
            if (results[r].status != CountStatus::Ok) next = rounds;
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(rounds)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    out.count_time_s = clock.seconds();
    for (const auto& r : results)
        if (r.status != CountStatus::Ok) {
            out.status = r.status;
            return out;
        }
    std::sort(results.begin(), results.end(), [](const RoundResult& a, const RoundResult& b) {
        const BigInt va = BigInt(a.cell) << static_cast<unsigned>(a.hashes);
        const BigInt vb = BigInt(b.cell) << static_cast<unsigned>(b.hashes);
        if (va != vb) return va < vb;
        return a.hashes < b.hashes;
    });
    const RoundResult& median = results[results.size() / 2];
    out.mantissa = median.cell;
    out.exponent = median.cell == 0 ? 0 : median.hashes + free_vars;
    return out;
}

ApproxCount ubcount(const Formula& phi, const ProjectionSet& p, const CountJobConfig& cfg) {
    if (cfg.tau_pre.count() < 0 || cfg.tau_count.count() < 0)
        throw std::invalid_argument("timeouts must be nonnegative");
    const Stopwatch pre_clock;
    SupportSet support = find_ubs(phi, p, cfg.strategy, cfg.pre_solver, Deadline::after(cfg.tau_pre));
    const double pre_time = pre_clock.seconds();
    if (support.timed_out && support.vars.size() >= p.size()) {
        SupportSet fallback;
        fallback.vars = p.vars;
        fallback.kind = SupportKind::UBS;
        fallback.minimal = false;
        fallback.timed_out = true;
        fallback.log = std::move(support.log);
        fallback.sat_calls = support.sat_calls;
        support = std::move(fallback);
    }

    ApproxOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.delta = cfg.delta;
    opts.seed = cfg.seed;
    opts.deadline = Deadline::after(cfg.tau_count);
    opts.solver = cfg.count_solver;
    opts.threads = cfg.threads;
    ApproxCount out = approx_count(phi, support.vars, opts);
    out.support_used = std::move(support);
    out.pre_time_s = pre_time;
    return out;
}

}  // namespace ubc
