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
#include <optional>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ubcount/cnf.hpp"
#include "ubcount/deadline.hpp"
#include "ubcount/solver.hpp"
#include "ubcount/support.hpp"

namespace ubc {

using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

enum class CountStatus {
    Ok,
    LowerBound,  // exact enumeration stopped at its limit
    Unknown,     // a solver call ran out of conflict budget
    Timeout,
};

const char* to_string(CountStatus s);

struct ExactCount {
    BigInt value = 0;
    CountStatus status = CountStatus::Ok;
};

/// |sol(phi) projected on s| by solve + block over s. Variables of s that do
/// not occur in phi contribute a factor 2 each without enumeration.
/// With `limit`, stops once more than limit cells were found (LowerBound).
ExactCount count_exact_projected(const Formula& phi, const VarSet& s,
                                 std::optional<std::uint64_t> limit = std::nullopt,
                                 const SolverConfig& cfg = SolverConfig::unlimited(),
                                 Deadline deadline = Deadline::never());

/// Each var of s kept with probability 1/2, rhs a fair coin.
/// Throws std::invalid_argument on empty s.
XorClause sample_xor(const VarSet& s, Rng& rng);

struct ApproxCount {
    std::uint64_t mantissa = 0;
    std::uint64_t exponent = 0;
    double epsilon = 0.8;
    double delta = 0.2;
    CountStatus status = CountStatus::Ok;
    std::optional<SupportSet> support_used;
    std::uint64_t pivot = 0;
    std::uint64_t rounds = 0;
    double pre_time_s = 0;
    double count_time_s = 0;

    /// "<mantissa>*2^<exponent>"
    std::string str() const;
    double log2_value() const;
    BigInt value() const { return BigInt(mantissa) << static_cast<unsigned>(exponent); }
    bool ok() const { return status == CountStatus::Ok; }
};

struct ApproxOptions {
    double epsilon = 0.8;
    double delta = 0.2;
    std::uint64_t seed = 1;
    Deadline deadline;  // unbounded by default
    SolverConfig solver{.conflict_limit = std::nullopt};
    /// Rounds are independent; results do not depend on the thread count.
    unsigned threads = 1;
};

/// ceil(9.84 (1 + eps/(1+eps)) (1 + 1/eps)^2)
std::uint64_t approx_pivot(double epsilon);
/// ceil(17 log2(3/delta))
std::uint64_t approx_rounds(double delta);

/// Hashing counter over s. Per round, nested random xors h1..hi over s are
/// added until the cell holds at most `pivot` solutions; the round estimate
/// is cell_count * 2^i, and the median over all rounds is returned.
ApproxCount approx_count(const Formula& phi, const VarSet& s, const ApproxOptions& opts = {});

struct CountJobConfig {
    Seconds tau_pre{5000};
    Seconds tau_count{5000};
    std::uint64_t seed = 1;
    double epsilon = 0.8;
    double delta = 0.2;
    VarOrderStrategy strategy = VarOrderStrategy::NonProjectionFirst;
    /// Budget for definability checks.
    SolverConfig pre_solver{};
    SolverConfig count_solver{.conflict_limit = std::nullopt};
    unsigned threads = 1;
};

/// UBS-based upper bound: find_ubs under tau_pre, falling back to P on
/// timeout (or to the partial J ∪ Q when strictly smaller), then approx_count
/// over the chosen support under tau_count.
ApproxCount ubcount(const Formula& phi, const ProjectionSet& p, const CountJobConfig& cfg);

}  // namespace ubc
