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
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ubcount/cnf.hpp"
#include "ubcount/counting.hpp"
#include "ubcount/support.hpp"

namespace ubc {

struct FamilyInstance {
    std::string name;
    Formula formula;
    ProjectionSet projection;
    std::size_t expected_ubs_size = 0;
    std::size_t expected_is_size = 0;
    std::uint64_t expected_projected_count = 0;
    /// x_1..x_{n-1} and y_1..y_{log2 n} (y_1 most significant).
    VarSet x_vars;
    VarSet y_vars;
};

/// n models: sigma_0 all zero, sigma_i sets x_i and y = binary(i). Encoded as
/// x_i <-> (y == bin(i)) per i. P = {x_i}. Throws unless n is a power of two >= 2.
FamilyInstance gen_theorem1(std::uint32_t n);

/// Same x/y variables; y_j forced 0 and the x's pairwise at-most-one.
/// P = Q_n = {x_i : i not a power of two}. Throws unless n is a power of two >= 4.
FamilyInstance gen_theorem2(std::uint32_t n);

struct RandomInstance {
    Formula formula;
    ProjectionSet projection;
};

/// Uniform random clauses of `clause_width` distinct vars with random signs;
/// projection is a uniform subset of ceil(proj_fraction * num_vars) vars.
RandomInstance gen_random(std::uint32_t num_vars, std::uint32_t num_clauses, std::uint32_t clause_width,
                          double proj_fraction, std::uint64_t seed);

/// Unbiased draw from [0, bound).
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// log2(c_ubs) - log2(c_is). A zero count gives +/-infinity (NaN if both are zero).
double error_metric(const ApproxCount& c_ubs, const ApproxCount& c_is);

enum class RunMode { IS, UBS, None };
enum class RunStatus { Solved, Timeout, Memout };

const char* to_string(RunMode m);
const char* to_string(RunStatus s);
RunMode parse_run_mode(const std::string& s);
RunStatus parse_run_status(const std::string& s);

struct RunRecord {
    std::string instance;
    RunMode mode = RunMode::None;
    std::size_t support_size = 0;
    double pre_time = 0;
    double count_time = 0;
    RunStatus status = RunStatus::Timeout;
    /// Present iff status == Solved.
    std::optional<ApproxCount> count;

    double elapsed() const { return pre_time + count_time; }
};

/// Mean of elapsed time for solved records and 2 * timeout otherwise.
double par2(const std::vector<RunRecord>& records, double timeout_s);

struct GeomeanResult {
    double value = 0;
    std::size_t substitutions = 0;  // zero entries replaced by the floor
    std::size_t used = 0;           // finite entries aggregated
};

inline constexpr double kGeomeanZeroFloor = 1.0 / 1024.0;

/// exp(mean(ln|e|)) over finite entries, zeros replaced by 2^-10.
GeomeanResult geomean_abs(const std::vector<double>& errors);

struct BenchInstance {
    std::string name;
    Formula formula;
    ProjectionSet projection;
};

struct BenchConfig {
    Seconds tau_pre{5000};
    Seconds tau_count{5000};
    std::uint64_t seed = 1;
    double epsilon = 0.8;
    double delta = 0.2;
    VarOrderStrategy strategy = VarOrderStrategy::NonProjectionFirst;
    std::optional<std::uint64_t> conflict_limit = 100000;
    unsigned jobs = 1;
};

/// Runs the IS pipeline (find_is + approx_count) and the UBS pipeline
/// (ubcount) on every instance. Records come back ordered by instance name,
/// IS before UBS, regardless of `jobs`.
std::vector<RunRecord> compare_run(const std::vector<BenchInstance>& instances, const BenchConfig& cfg);

/// Both families for n = 4..32 plus a few seeded random formulas.
std::vector<BenchInstance> builtin_suite();

struct BenchSummary {
    std::size_t instances = 0;
    std::size_t solved_is = 0;
    std::size_t solved_ubs = 0;
    std::size_t solved_both = 0;
    double par2_is = 0;
    double par2_ubs = 0;
    GeomeanResult geomean_abs_error;
    double mean_signed_error = 0;
};

BenchSummary summarize(const std::vector<RunRecord>& records, double timeout_s);

std::string record_to_json(const RunRecord& r);
RunRecord record_from_json(const std::string& line);
std::string records_to_jsonl(const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_jsonl(std::istream& in);

/// Columns: instance, mode, support_size, pre_time_s, count_time_s, status,
/// mantissa, exponent, error. error is filled on UBS rows whose instance
/// was solved by both pipelines.
std::string summary_csv(const std::vector<RunRecord>& records);

}  // namespace ubc
