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

#include "ubcount/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace ubc {

using json = nlohmann::ordered_json;

namespace {

std::uint32_t exact_log2(std::uint32_t n, std::uint32_t min_n, const char* who) {
    if (n < min_n || (n & (n - 1)) != 0)
        throw std::invalid_argument(std::string(who) + ": n must be a power of two >= " + std::to_string(min_n));
    std::uint32_t k = 0;
    while ((1U << k) < n) ++k;
    return k;
}

// x_1..x_{n-1} are vars 1..n-1, y_1..y_k follow.
FamilyInstance family_skeleton(std::uint32_t n, std::uint32_t k) {
    FamilyInstance fi;
    fi.formula = Formula(n - 1 + k);
    for (Var i = 1; i < n; ++i) fi.x_vars.push_back(i);
    for (Var j = 0; j < k; ++j) fi.y_vars.push_back(n + j);
    return fi;
}

}  // namespace

FamilyInstance gen_theorem1(std::uint32_t n) {
    const std::uint32_t k = exact_log2(n, 2, "gen_theorem1");
    FamilyInstance fi = family_skeleton(n, k);
    fi.name = "theorem1_n" + std::to_string(n);
    for (std::uint32_t i = 1; i < n; ++i) {
        const Var x = fi.x_vars[i - 1];
        // y_1 is the most significant bit of i.
        std::vector<Lit> code;
        for (std::uint32_t j = 0; j < k; ++j) {
            const bool bit = ((i >> (k - 1 - j)) & 1U) != 0;
            code.emplace_back(fi.y_vars[j], !bit);
        }
        for (Lit l : code) fi.formula.add_clause({Lit::neg(x), l});
        std::vector<Lit> back{Lit::pos(x)};
        for (Lit l : code) back.push_back(~l);
        fi.formula.add_clause(Clause(std::move(back)));
    }
    fi.projection = ProjectionSet(fi.x_vars);
    fi.expected_ubs_size = k;
    fi.expected_is_size = n - 1;
    fi.expected_projected_count = n;
    return fi;
}

FamilyInstance gen_theorem2(std::uint32_t n) {
    const std::uint32_t k = exact_log2(n, 4, "gen_theorem2");
    FamilyInstance fi = family_skeleton(n, k);
    fi.name = "theorem2_n" + std::to_string(n);
    for (Var y : fi.y_vars) fi.formula.add_clause({Lit::neg(y)});
    for (std::size_t a = 0; a < fi.x_vars.size(); ++a)
        for (std::size_t b = a + 1; b < fi.x_vars.size(); ++b)
            fi.formula.add_clause({Lit::neg(fi.x_vars[a]), Lit::neg(fi.x_vars[b])});
    std::vector<Var> q;
    for (std::uint32_t i = 1; i < n; ++i)
        if ((i & (i - 1)) != 0) q.push_back(fi.x_vars[i - 1]);
    fi.projection = ProjectionSet(std::move(q));
    fi.expected_ubs_size = fi.projection.size();
    fi.expected_is_size = fi.projection.size();
    fi.expected_projected_count = fi.projection.size() + 1;
    return fi;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

RandomInstance gen_random(std::uint32_t num_vars, std::uint32_t num_clauses, std::uint32_t clause_width,
                          double proj_fraction, std::uint64_t seed) {
    if (clause_width == 0 || clause_width > num_vars)
        throw std::invalid_argument("gen_random: clause width must be in 1..num_vars");
    if (proj_fraction < 0 || proj_fraction > 1)
        throw std::invalid_argument("gen_random: proj_fraction must be in [0, 1]");
    Rng rng(seed);
    RandomInstance out;
    out.formula = Formula(num_vars);
    std::vector<Var> pool(num_vars);
    for (Var v = 1; v <= num_vars; ++v) pool[v - 1] = v;

    auto partial_shuffle = [&](std::uint32_t m) {
        for (std::uint32_t i = 0; i < m; ++i) {
            const auto j = i + static_cast<std::uint32_t>(uniform_below(rng, num_vars - i));
            std::swap(pool[i], pool[j]);
        }
    };
    for (std::uint32_t c = 0; c < num_clauses; ++c) {
        partial_shuffle(clause_width);
        std::vector<Lit> lits;
        for (std::uint32_t i = 0; i < clause_width; ++i) lits.emplace_back(pool[i], (rng() & 1U) != 0);
        out.formula.add_clause(Clause(std::move(lits)));
    }
    const auto proj_size = static_cast<std::uint32_t>(std::ceil(proj_fraction * num_vars - 1e-9));
    partial_shuffle(proj_size);
    out.projection = ProjectionSet(std::vector<Var>(pool.begin(), pool.begin() + proj_size));
    return out;
}

double error_metric(const ApproxCount& c_ubs, const ApproxCount& c_is) {
    if (c_ubs.mantissa == 0 && c_is.mantissa == 0) return std::numeric_limits<double>::quiet_NaN();
    return c_ubs.log2_value() - c_is.log2_value();
}

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::IS: return "is";
        case RunMode::UBS: return "ubs";
        case RunMode::None: return "none";
    }
    return "?";
}

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Solved: return "solved";
        case RunStatus::Timeout: return "timeout";
        case RunStatus::Memout: return "memout";
    }
    return "?";
}

RunMode parse_run_mode(const std::string& s) {
    for (auto m : {RunMode::IS, RunMode::UBS, RunMode::None})
        if (s == to_string(m)) return m;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

RunStatus parse_run_status(const std::string& s) {
    for (auto st : {RunStatus::Solved, RunStatus::Timeout, RunStatus::Memout})
        if (s == to_string(st)) return st;
    throw std::invalid_argument("unknown status '" + s + "'");
}

double par2(const std::vector<RunRecord>& records, double timeout_s) {
    if (records.empty()) throw std::invalid_argument("par2: no records");
    double total = 0;
    for (const auto& r : records) total += r.status == RunStatus::Solved ? r.elapsed() : 2.0 * timeout_s;
    return total / static_cast<double>(records.size());
}

GeomeanResult geomean_abs(const std::vector<double>& errors) {
    if (errors.empty()) throw std::invalid_argument("geomean_abs: no entries");
    GeomeanResult out;
    double log_sum = 0;
    for (double e : errors) {
        if (!std::isfinite(e)) continue;
        double a = std::fabs(e);
        if (a == 0) {
            a = kGeomeanZeroFloor;
            ++out.substitutions;
        }
        log_sum += std::log(a);
        ++out.used;
    }
    out.value = out.used ? std::exp(log_sum / static_cast<double>(out.used))
                         : std::numeric_limits<double>::quiet_NaN();
    return out;
}

namespace {

RunRecord make_record(const std::string& name, RunMode mode, std::size_t support_size, double pre,
                      double count_time, const ApproxCount& c) {
    RunRecord r;
    r.instance = name;
    r.mode = mode;
    r.support_size = support_size;
    r.pre_time = pre;
    r.count_time = count_time;
    r.status = c.ok() ? RunStatus::Solved : RunStatus::Timeout;
    if (c.ok()) {
        r.count = c;
        r.count->support_used.reset();
    }
    return r;
}

std::pair<RunRecord, RunRecord> run_instance(const BenchInstance& inst, const BenchConfig& cfg) {
    SolverConfig pre_solver;
    pre_solver.conflict_limit = cfg.conflict_limit;

    const Stopwatch pre_clock;
    SupportSet is = find_is(inst.formula, inst.projection, pre_solver, Deadline::after(cfg.tau_pre));
    const double is_pre = pre_clock.seconds();
    ApproxOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.delta = cfg.delta;
    opts.seed = cfg.seed;
    opts.deadline = Deadline::after(cfg.tau_count);
    const ApproxCount is_count = approx_count(inst.formula, is.vars, opts);
    RunRecord is_rec = make_record(inst.name, RunMode::IS, is.vars.size(), is_pre, is_count.count_time_s, is_count);

    CountJobConfig job;
    job.tau_pre = cfg.tau_pre;
    job.tau_count = cfg.tau_count;
    job.seed = cfg.seed;
    job.epsilon = cfg.epsilon;
    job.delta = cfg.delta;
    job.strategy = cfg.strategy;
    job.pre_solver = pre_solver;
    const ApproxCount ub = ubcount(inst.formula, inst.projection, job);
    RunRecord ub_rec = make_record(inst.name, RunMode::UBS, ub.support_used ? ub.support_used->vars.size() : 0,
                                   ub.pre_time_s, ub.count_time_s, ub);
    return {std::move(is_rec), std::move(ub_rec)};
}

}  // namespace

std::vector<RunRecord> compare_run(const std::vector<BenchInstance>& instances, const BenchConfig& cfg) {
    std::vector<std::pair<RunRecord, RunRecord>> results(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) results[i] = run_instance(instances[i], cfg);
    };
    const unsigned jobs = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(instances.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<std::size_t> order(instances.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return instances[a].name < instances[b].name; });
    std::vector<RunRecord> out;
    out.reserve(2 * instances.size());
    for (std::size_t i : order) {
        out.push_back(std::move(results[i].first));
        out.push_back(std::move(results[i].second));
    }
    return out;
}

std::vector<BenchInstance> builtin_suite() {
    std::vector<BenchInstance> out;
    for (std::uint32_t n : {4U, 8U, 16U, 32U}) {
        auto t1 = gen_theorem1(n);
        out.push_back({t1.name, std::move(t1.formula), std::move(t1.projection)});
        auto t2 = gen_theorem2(n);
        out.push_back({t2.name, std::move(t2.formula), std::move(t2.projection)});
    }
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto r = gen_random(20, 40, 3, 0.6, seed);
        out.push_back({"random20_s" + std::to_string(seed), std::move(r.formula), std::move(r.projection)});
    }
    return out;
}

BenchSummary summarize(const std::vector<RunRecord>& records, double timeout_s) {
    BenchSummary s;
    std::vector<RunRecord> is_recs, ub_recs;
    std::map<std::string, std::pair<const RunRecord*, const RunRecord*>> by_instance;
    for (const auto& r : records) {
        if (r.mode == RunMode::IS) {
            is_recs.push_back(r);
            by_instance[r.instance].first = &r;
        } else if (r.mode == RunMode::UBS) {
            ub_recs.push_back(r);
            by_instance[r.instance].second = &r;
        }
    }
    s.instances = by_instance.size();
    for (const auto& r : is_recs) s.solved_is += r.status == RunStatus::Solved;
    for (const auto& r : ub_recs) s.solved_ubs += r.status == RunStatus::Solved;
    if (!is_recs.empty()) s.par2_is = par2(is_recs, timeout_s);
    if (!ub_recs.empty()) s.par2_ubs = par2(ub_recs, timeout_s);

    std::vector<double> errors;
    for (const auto& [name, pair] : by_instance) {
        const auto [is, ub] = pair;
        if (!is || !ub || is->status != RunStatus::Solved || ub->status != RunStatus::Solved) continue;
        ++s.solved_both;
        const double e = error_metric(*ub->count, *is->count);
        if (std::isfinite(e)) errors.push_back(e);
    }
    if (!errors.empty()) {
        s.geomean_abs_error = geomean_abs(errors);
        double sum = 0;
        for (double e : errors) sum += e;
        s.mean_signed_error = sum / static_cast<double>(errors.size());
    }
    return s;
}

std::string record_to_json(const RunRecord& r) {
    json j;
    j["instance"] = r.instance;
    j["mode"] = to_string(r.mode);
    j["support_size"] = r.support_size;
    j["pre_time"] = r.pre_time;
    j["count_time"] = r.count_time;
    j["status"] = to_string(r.status);
    if (r.count) {
        j["count"] = {{"mantissa", r.count->mantissa},
                      {"exponent", r.count->exponent},
                      {"epsilon", r.count->epsilon},
                      {"delta", r.count->delta}};
    } else {
        j["count"] = nullptr;
    }
    return j.dump();
}

RunRecord record_from_json(const std::string& line) {
    const json j = json::parse(line);
    RunRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.mode = parse_run_mode(j.at("mode").get<std::string>());
    r.support_size = j.at("support_size").get<std::size_t>();
    r.pre_time = j.at("pre_time").get<double>();
    r.count_time = j.at("count_time").get<double>();
    r.status = parse_run_status(j.at("status").get<std::string>());
    if (const auto& c = j.at("count"); !c.is_null()) {
        ApproxCount a;
        a.mantissa = c.at("mantissa").get<std::uint64_t>();
        a.exponent = c.at("exponent").get<std::uint64_t>();
        a.epsilon = c.at("epsilon").get<double>();
        a.delta = c.at("delta").get<double>();
        r.count = a;
    }
    if (r.status == RunStatus::Solved && !r.count) throw std::invalid_argument("solved record without count");
    return r;
}

std::string records_to_jsonl(const std::vector<RunRecord>& records) {
    std::string out;
    for (const auto& r : records) out += record_to_json(r) + "\n";
    return out;
}

std::vector<RunRecord> read_records_jsonl(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(record_from_json(line));
    return out;
}

std::string summary_csv(const std::vector<RunRecord>& records) {
    std::map<std::string, const RunRecord*> is_by_instance;
    for (const auto& r : records)
        if (r.mode == RunMode::IS) is_by_instance[r.instance] = &r;

    std::ostringstream out;
    out << "instance,mode,support_size,pre_time_s,count_time_s,status,mantissa,exponent,error\n";
    out << std::setprecision(6) << std::fixed;
    for (const auto& r : records) {
        out << r.instance << ',' << to_string(r.mode) << ',' << r.support_size << ',' << r.pre_time << ','
            << r.count_time << ',' << to_string(r.status) << ',';
        if (r.count) out << r.count->mantissa << ',' << r.count->exponent;
        else out << ',';
        out << ',';
        if (r.mode == RunMode::UBS && r.count) {
            auto it = is_by_instance.find(r.instance);
            if (it != is_by_instance.end() && it->second->count) {
                const double e = error_metric(*r.count, *it->second->count);
                if (std::isfinite(e)) out << e;
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ubc
