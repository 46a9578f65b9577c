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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ubcount/bench.hpp"
#include "ubcount/counting.hpp"
#include "ubcount/dimacs.hpp"
#include "ubcount/support.hpp"

namespace ubc::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> inputs;
    std::string proj_file;
    std::string mode = "ubs";
    double epsilon = 0.8;
    double delta = 0.2;
    std::optional<std::uint64_t> seed;
    double timeout_pre = 5000;
    double timeout_count = 5000;
    std::uint64_t conflict_limit = 100000;
    std::string strategy = "nonproj-first";
    bool exact = false;
    std::string out_dir = "bench_out";
    std::string format = "human";
    bool timings = false;
    unsigned jobs = 1;
    std::vector<std::uint32_t> gen_theorem1;
    std::vector<std::uint32_t> gen_theorem2;
};

bool json_mode(const Options& o) { return o.format == "json"; }

std::uint64_t seed_of(const Options& o) {
    if (json_mode(o) && !o.seed) throw UsageError("--seed is required with --format json");
    return o.seed.value_or(1);
}

std::optional<std::uint64_t> conflict_limit_of(const Options& o) {
    if (o.conflict_limit == 0) return std::nullopt;
    return o.conflict_limit;
}

SolverConfig pre_solver(const Options& o) {
    SolverConfig c;
    c.conflict_limit = conflict_limit_of(o);
    return c;
}

struct Input {
    Formula formula;
    ProjectionSet projection;
};

Input load_input(const Options& o) {
    if (o.inputs.size() != 1) throw UsageError("expected exactly one input file");
    DimacsDocument doc = parse_dimacs_file(o.inputs.front());
    Input in{std::move(doc.formula), {}};
    if (!o.proj_file.empty()) {
        std::ifstream pf(o.proj_file);
        if (!pf) throw UsageError("cannot open " + o.proj_file);
        in.projection = parse_projection_list(pf, in.formula.num_vars);
    } else if (doc.projection) {
        in.projection = std::move(*doc.projection);
    } else {
        throw UsageError("no projection set: add a 'c ind' line or pass --proj");
    }
    return in;
}

std::string join(const VarSet& vs) {
    std::string s;
    for (Var v : vs) {
        if (!s.empty()) s += ' ';
        s += std::to_string(v);
    }
    return s;
}

std::string fixed6(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << x;
    return os.str();
}

// Emits key=value lines or one json object, in insertion order.
class Report {
public:
    explicit Report(bool json) : json_(json) {}

    template <class T>
    void put(const std::string& key, const T& value) {
        obj_[key] = value;
        std::ostringstream os;
        os << value;
        lines_.push_back(key + "=" + os.str());
    }
    void put(const std::string& key, bool value) {
        obj_[key] = value;
        lines_.push_back(key + "=" + (value ? "true" : "false"));
    }
    void put_vars(const std::string& key, const VarSet& vs) {
        obj_[key] = vs;
        lines_.push_back(key + "=" + join(vs));
    }
    void put_time(const std::string& key, double s) {
        obj_[key] = s;
        lines_.push_back(key + "=" + fixed6(s));
    }

    void write(std::ostream& out) const {
        if (json_) {
            out << obj_.dump() << '\n';
            return;
        }
        for (const auto& l : lines_) out << l << '\n';
    }

private:
    bool json_;
    ordered_json obj_ = ordered_json::object();
    std::vector<std::string> lines_;
};

int cmd_find_support(const Options& o, std::ostream& out) {
    if (o.mode == "none") throw UsageError("find-support needs --mode is or --mode ubs");
    const Input in = load_input(o);
    const VarOrderStrategy strat = parse_strategy(o.strategy);
    const Deadline deadline = Deadline::after(Seconds(o.timeout_pre));
    const Stopwatch clock;
    const SupportSet s = o.mode == "is" ? find_is(in.formula, in.projection, pre_solver(o), deadline)
                                        : find_ubs(in.formula, in.projection, strat, pre_solver(o), deadline);
    const double pre_time = clock.seconds();

    Report r(json_mode(o));
    r.put("command", std::string("find-support"));
    r.put("kind", std::string(to_string(s.kind)));
    if (o.mode == "ubs") r.put("strategy", o.strategy);
    r.put("size", s.vars.size());
    r.put_vars("vars", s.vars);
    r.put("minimal", s.minimal);
    r.put("timed_out", s.timed_out);
    r.put("sat_calls", s.sat_calls);
    r.put("projection_size", in.projection.size());
    if (!json_mode(o) || o.timings) r.put_time("pre_time_s", pre_time);
    r.write(out);
    return s.timed_out ? kPreTimeout : kOk;
}

int cmd_count(const Options& o, std::ostream& out) {
    const std::uint64_t seed = seed_of(o);
    const Input in = load_input(o);
    const VarOrderStrategy strat = parse_strategy(o.strategy);
    if (!(o.epsilon > 0)) throw UsageError("--epsilon must be > 0");
    if (!(o.delta > 0 && o.delta <= 1)) throw UsageError("--delta must be in (0, 1]");

    // Support selection.
    const Stopwatch pre_clock;
    SupportSet support;
    support.vars = in.projection.vars;
    support.kind = SupportKind::IS;
    bool pre_timeout = false;
    if (o.mode == "is") {
        support = find_is(in.formula, in.projection, pre_solver(o), Deadline::after(Seconds(o.timeout_pre)));
        pre_timeout = support.timed_out;
    } else if (o.mode == "ubs") {
        support = find_ubs(in.formula, in.projection, strat, pre_solver(o), Deadline::after(Seconds(o.timeout_pre)));
        pre_timeout = support.timed_out;
        if (support.timed_out && support.vars.size() >= in.projection.size()) support.vars = in.projection.vars;
    }
    const double pre_time = pre_clock.seconds();

    Report r(json_mode(o));
    r.put("command", std::string("count"));
    r.put("mode", o.mode);
    if (o.mode == "ubs") r.put("strategy", o.strategy);
    r.put("support_size", support.vars.size());
    r.put("support_timed_out", pre_timeout);

    const Stopwatch count_clock;
    CountStatus status = CountStatus::Ok;
    if (o.exact) {
        const ExactCount c = count_exact_projected(in.formula, support.vars, std::nullopt,
                                                   SolverConfig::unlimited(),
                                                   Deadline::after(Seconds(o.timeout_count)));
        status = c.status;
        r.put("exact", true);
        r.put("status", std::string(to_string(status)));
        if (status == CountStatus::Ok) r.put("count", c.value.str() + "*2^0");
    } else {
        ApproxOptions opts;
        opts.epsilon = o.epsilon;
        opts.delta = o.delta;
        opts.seed = seed;
        opts.deadline = Deadline::after(Seconds(o.timeout_count));
        opts.threads = o.jobs;
        const ApproxCount c = approx_count(in.formula, support.vars, opts);
        status = c.status;
        r.put("exact", false);
        r.put("status", std::string(to_string(status)));
        if (status == CountStatus::Ok) {
            r.put("count", c.str());
            r.put("mantissa", c.mantissa);
            r.put("exponent", c.exponent);
        }
        r.put("epsilon", o.epsilon);
        r.put("delta", o.delta);
        r.put("seed", seed);
        r.put("pivot", c.pivot);
    }
    const double count_time = count_clock.seconds();
    if (!json_mode(o) || o.timings) {
        r.put_time("pre_time_s", pre_time);
        r.put_time("count_time_s", count_time);
    }
    r.write(out);
    if (status != CountStatus::Ok) return kCountTimeout;
    return pre_timeout ? kPreTimeout : kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
    namespace fs = std::filesystem;
    if (!o.gen_theorem1.empty() || !o.gen_theorem2.empty()) {
        fs::create_directories(o.out_dir);
        auto write = [&](const FamilyInstance& fi) {
            const fs::path path = fs::path(o.out_dir) / (fi.name + ".cnf");
            std::ofstream f(path, std::ios::binary);
            f << emit_dimacs(fi.formula, fi.projection);
            if (!f) throw std::runtime_error("cannot write " + path.string());
            out << "wrote=" << path.string() << '\n';
        };
        try {
            for (auto n : o.gen_theorem1) write(gen_theorem1(n));
            for (auto n : o.gen_theorem2) write(gen_theorem2(n));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return kOk;
    }

    BenchConfig cfg;
    cfg.tau_pre = Seconds(o.timeout_pre);
    cfg.tau_count = Seconds(o.timeout_count);
    cfg.seed = seed_of(o);
    cfg.epsilon = o.epsilon;
    cfg.delta = o.delta;
    cfg.strategy = parse_strategy(o.strategy);
    cfg.conflict_limit = conflict_limit_of(o);
    cfg.jobs = o.jobs;

    std::vector<BenchInstance> instances;
    if (o.inputs.empty()) {
        instances = builtin_suite();
    } else {
        for (const auto& path : o.inputs) {
            DimacsDocument doc = parse_dimacs_file(path);
            if (!doc.projection) throw UsageError(path + ": no 'c ind' projection line");
            instances.push_back({fs::path(path).stem().string(), std::move(doc.formula), std::move(*doc.projection)});
        }
    }

    const auto records = compare_run(instances, cfg);
    fs::create_directories(o.out_dir);
    const fs::path jsonl = fs::path(o.out_dir) / "records.jsonl";
    const fs::path csv = fs::path(o.out_dir) / "summary.csv";
    std::ofstream(jsonl, std::ios::binary) << records_to_jsonl(records);
    std::ofstream(csv, std::ios::binary) << summary_csv(records);

    const double timeout_s = o.timeout_pre + o.timeout_count;
    const BenchSummary s = summarize(records, timeout_s);
    Report r(json_mode(o));
    r.put("command", std::string("bench"));
    r.put("instances", s.instances);
    r.put("records", records.size());
    r.put("solved_is", s.solved_is);
    r.put("solved_ubs", s.solved_ubs);
    r.put("solved_both", s.solved_both);
    r.put("geomean_abs_error", s.geomean_abs_error.value);
    r.put("geomean_zero_substitutions", s.geomean_abs_error.substitutions);
    r.put("mean_signed_error", s.mean_signed_error);
    if (!json_mode(o) || o.timings) {
        r.put("par2_timeout_s", timeout_s);
        r.put_time("par2_is", s.par2_is);
        r.put_time("par2_ubs", s.par2_ubs);
    }
    r.put("records_file", jsonl.string());
    r.put("summary_file", csv.string());
    r.write(out);
    return kOk;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--epsilon", o.epsilon, "Tolerance of the approximate counter")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--delta", o.delta, "Confidence parameter, in (0, 1]")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--seed", o.seed, "Random seed (required with --format json; default 1)");
    sub->add_option("--timeout-pre", o.timeout_pre, "Support computation budget in seconds")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--timeout-count", o.timeout_count, "Counting budget in seconds")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--conflict-limit", o.conflict_limit, "Conflicts per definability check, 0 = unlimited")
        ->capture_default_str();
    sub->add_option("--strategy", o.strategy, "Elimination order for the UBS search")
        ->capture_default_str()
        ->check(CLI::IsMember({"nonproj-first", "proj-only", "index", "occ-asc"}));
    sub->add_option("--format", o.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"human", "json"}));
    sub->add_flag("--timings", o.timings, "Include wall-clock timings in json output");
    sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Projected model counting with upper bound supports", "ubcount"};
    app.require_subcommand(1);

    auto* find = app.add_subcommand("find-support", "Compute an independent support or an upper bound support");
    find->add_option("input", o.inputs, "DIMACS file")->required();
    find->add_option("--proj", o.proj_file, "File listing projection variables");
    find->add_option("--mode", o.mode, "Support kind")->capture_default_str()->check(CLI::IsMember({"is", "ubs"}));
    add_common(find, o);

    auto* count = app.add_subcommand("count", "Count models projected on the projection set");
    count->add_option("input", o.inputs, "DIMACS file")->required();
    count->add_option("--proj", o.proj_file, "File listing projection variables");
    count->add_option("--mode", o.mode, "Support used for counting: is, ubs, or none (count over P)")
        ->capture_default_str()
        ->check(CLI::IsMember({"is", "ubs", "none"}));
    count->add_flag("--exact", o.exact, "Exact enumeration instead of hashing");
    add_common(count, o);

    auto* bench = app.add_subcommand("bench", "Compare IS and UBS pipelines");
    bench->add_option("inputs", o.inputs, "DIMACS files (default: built-in suite)");
    bench->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    bench->add_option("--gen-theorem1", o.gen_theorem1, "Write the first family instance of size N and exit");
    bench->add_option("--gen-theorem2", o.gen_theorem2, "Write the second family instance of size N and exit");
    add_common(bench, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*find) return cmd_find_support(o, out);
        if (*count) return cmd_count(o, out);
        return cmd_bench(o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace ubc::cli
