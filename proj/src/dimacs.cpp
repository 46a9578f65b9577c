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

#include "ubcount/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "ubcount/solver.hpp"

namespace ubc {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view tok, std::size_t line) {
    long long x = 0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || first == tok.data() + tok.size())
        throw ParseError(line, "non-integer token '" + std::string(tok) + "'");
    return x;
}

}  // namespace

DimacsDocument parse_dimacs(std::istream& in) {
    DimacsDocument doc;
    bool have_header = false;
    std::vector<Var> proj;
    bool have_proj = false;
    std::vector<std::pair<Var, std::size_t>> proj_lines;  // var, line for late range check
    std::vector<Lit> cur;
    std::size_t cur_line = 0;
    std::size_t lineno = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "%") break;
        if (toks[0] == "c" || toks[0].front() == 'c') {
            if (toks[0] == "c" && toks.size() >= 2 && toks[1] == "ind") {
                have_proj = true;
                bool terminated = false;
                for (std::size_t i = 2; i < toks.size(); ++i) {
                    long long v = to_int(toks[i], lineno);
                    if (v == 0) {
                        terminated = true;
                        break;
                    }
                    if (v < 0) throw ParseError(lineno, "negative projection variable");
                    proj_lines.emplace_back(static_cast<Var>(v), lineno);
                }
                if (!terminated) throw ParseError(lineno, "projection line missing terminating 0");
            }
            continue;
        }
        if (toks[0] == "p") {
            if (have_header) throw ParseError(lineno, "duplicate header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
            long long nv = to_int(toks[2], lineno);
            long long nc = to_int(toks[3], lineno);
            if (nv < 0 || nc < 0 || nv > 0x7fffffffLL)
                throw ParseError(lineno, "malformed header, negative or oversized count");
            doc.formula.num_vars = static_cast<std::uint32_t>(nv);
            doc.formula.clauses.reserve(static_cast<std::size_t>(nc));
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "clause before 'p cnf' header");
        for (auto tok : toks) {
            long long x = to_int(tok, lineno);
            if (cur.empty()) cur_line = lineno;
            if (x == 0) {
                doc.formula.clauses.emplace_back(std::move(cur));
                cur.clear();
                continue;
            }
            long long v = x < 0 ? -x : x;
            if (v > static_cast<long long>(doc.formula.num_vars))
                throw ParseError(lineno, "literal " + std::to_string(x) + " exceeds declared " +
                                             std::to_string(doc.formula.num_vars) + " variables");
            cur.push_back(Lit::from_dimacs(x));
        }
    }
    if (!cur.empty()) throw ParseError(cur_line, "clause missing terminating 0");
    if (!have_header) throw ParseError(lineno, "missing 'p cnf' header");
    for (auto [v, ln] : proj_lines) {
        if (v > doc.formula.num_vars)
            throw ParseError(ln, "projection variable " + std::to_string(v) + " exceeds declared " +
                                     std::to_string(doc.formula.num_vars) + " variables");
        proj.push_back(v);
    }
    if (have_proj) doc.projection = ProjectionSet(std::move(proj));
    return doc;
}

DimacsDocument parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

DimacsDocument parse_dimacs_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in);
}

std::string emit_dimacs(const Formula& input, const std::optional<ProjectionSet>& p, XorEmit xors) {
    input.check();
    Formula blasted;
    const Formula* f = &input;
    if (!input.xors.empty()) {
        if (xors == XorEmit::Reject)
            throw std::invalid_argument("emit_dimacs: formula has xor clauses and blasting is disabled");
        blasted = blast_xor(input);
        f = &blasted;
    }
    std::ostringstream out;
    out << "p cnf " << f->num_vars << ' ' << f->clauses.size() << '\n';
    if (p) {
        out << "c ind";
        for (Var v : p->vars) out << ' ' << v;
        out << " 0\n";
    }
    for (const auto& c : f->clauses) {
        for (Lit l : c.lits) out << l.to_dimacs() << ' ';
        out << "0\n";
    }
    return out.str();
}

ProjectionSet parse_projection_list(std::istream& in, std::uint32_t num_vars) {
    std::vector<Var> vars;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        std::size_t start = 0;
        if (!toks.empty() && toks[0] == "c") {
            if (toks.size() < 2 || toks[1] != "ind") continue;
            start = 2;
        }
        for (std::size_t i = start; i < toks.size(); ++i) {
            long long v = to_int(toks[i], lineno);
            if (v == 0) continue;
            if (v < 0 || v > static_cast<long long>(num_vars))
                throw ParseError(lineno, "projection variable " + std::to_string(v) + " out of range");
            vars.push_back(static_cast<Var>(v));
        }
    }
    return ProjectionSet(std::move(vars));
}

}  // namespace ubc
