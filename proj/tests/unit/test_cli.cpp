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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "ubcount/bench.hpp"
#include "ubcount/dimacs.hpp"

using namespace ubc;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "ubcount");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("ubcount_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

std::string family_file(std::uint32_t n) {
    const auto fi = gen_theorem1(n);
    return write_file("phi" + std::to_string(n) + ".cnf", emit_dimacs(fi.formula, fi.projection));
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l))
        if (l == line) return true;
    return false;
}

}  // namespace

TEST_CASE("find-support") {
    const std::string phi4 = family_file(4);
    const auto ubs = run({"find-support", phi4, "--mode", "ubs"});
    CHECK(ubs.code == cli::kOk);
    CHECK(has_line(ubs.out, "size=2"));
    CHECK(has_line(ubs.out, "kind=ubs"));
    CHECK(ubs.err.empty());

    const auto is = run({"find-support", phi4, "--mode", "is"});
    CHECK(is.code == cli::kOk);
    CHECK(has_line(is.out, "size=3"));

    const std::string bare = write_file("bare.cnf", "p cnf 2 1\n1 2 0\n");
    CHECK(run({"find-support", bare}).code == cli::kUsage);
    const std::string proj = write_file("bare.proj", "1 0\n");
    CHECK(run({"find-support", bare, "--proj", proj}).code == cli::kOk);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"count"}).code == cli::kUsage);
    CHECK(run({"count", family_file(4), "--epsilon", "-1"}).code == cli::kUsage);
    CHECK(run({"count", (scratch() / "missing.cnf").string()}).code == cli::kUsage);
    const auto bad = run({"count", write_file("bad.cnf", "p cnf 2 1\n1 3 0\n")});
    CHECK(bad.code == cli::kParse);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("line 2") != std::string::npos);

    const auto slow = run({"find-support", family_file(8), "--timeout-pre", "0"});
    CHECK(slow.code == cli::kPreTimeout);
    CHECK(has_line(slow.out, "timed_out=true"));
    CHECK(run({"count", family_file(8), "--timeout-count", "0"}).code == cli::kCountTimeout);
}

TEST_CASE("count") {
    const auto exact = run({"count", family_file(8), "--exact", "--mode", "none"});
    CHECK(exact.code == cli::kOk);
    CHECK(has_line(exact.out, "count=8*2^0"));

    const std::string unsat = write_file("unsat.cnf", "p cnf 2 2\nc ind 1 2 0\n1 0\n-1 0\n");
    const auto z = run({"count", unsat});
    CHECK(z.code == cli::kOk);
    CHECK(has_line(z.out, "count=0*2^0"));
    CHECK(has_line(z.out, "epsilon=0.8"));
    CHECK(has_line(z.out, "delta=0.2"));
}

TEST_CASE("structured output is deterministic and seeded") {
    const std::string phi16 = family_file(16);
    CHECK(run({"count", phi16, "--format", "json"}).code == cli::kUsage);
    const auto a = run({"count", phi16, "--format", "json", "--seed", "5", "--mode", "none"});
    const auto b = run({"count", phi16, "--format", "json", "--seed", "5", "--mode", "none"});
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("count").get<std::string>() == "16*2^0");
    CHECK(j.at("seed").get<int>() == 5);
    CHECK_FALSE(j.contains("pre_time_s"));
    const auto t = nlohmann::json::parse(run({"count", phi16, "--format", "json", "--seed", "5", "--timings"}).out);
    CHECK(t.contains("count_time_s"));
}

TEST_CASE("bench") {
    const fs::path out = scratch() / "bench";
    const auto gen = run({"bench", "--gen-theorem1", "8", "--out", out.string()});
    CHECK(gen.code == cli::kOk);
    const auto doc = parse_dimacs_file((out / "theorem1_n8.cnf").string());
    CHECK(doc.projection->size() == 7);
    CHECK(run({"bench", "--gen-theorem1", "6", "--out", out.string()}).code == cli::kUsage);

    const std::string phi4 = family_file(4);
    const auto r = run({"bench", phi4, (out / "theorem1_n8.cnf").string(), "--out", out.string(), "--seed", "2",
                        "--timeout-pre", "60", "--timeout-count", "60", "--format", "json", "--timings"});
    REQUIRE(r.code == cli::kOk);
    const auto summary = nlohmann::json::parse(r.out);
    CHECK(summary.at("records").get<int>() == 4);
    std::ifstream in(out / "records.jsonl");
    const auto records = read_records_jsonl(in);
    REQUIRE(records.size() == 4);
    std::vector<RunRecord> is, ub;
    for (const auto& rec : records) (rec.mode == RunMode::IS ? is : ub).push_back(rec);
    CHECK(summary.at("par2_is").get<double>() == doctest::Approx(par2(is, 120)).epsilon(1e-9));
    CHECK(summary.at("par2_ubs").get<double>() == doctest::Approx(par2(ub, 120)).epsilon(1e-9));
    CHECK(fs::exists(out / "summary.csv"));
}

TEST_CASE("help lists defaults") {
    const auto h = run({"count", "--help"});
    CHECK(h.code == cli::kOk);
    for (const char* s : {"[0.8]", "[0.2]", "[5000]", "[100000]", "[nonproj-first]"})
        CHECK(h.out.find(s) != std::string::npos);
}
