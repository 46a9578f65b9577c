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

namespace ubc {

namespace {

constexpr std::size_t kChunkWidth = 4;

void expand_parity(const std::vector<Var>& vars, bool rhs,
                   const std::function<void(std::vector<Lit>)>& emit) {
    const std::size_t k = vars.size();
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        const bool parity = (__builtin_popcount(mask) & 1) != 0;
        if (parity == rhs) continue;
        std::vector<Lit> c;
        c.reserve(k);
        for (std::size_t i = 0; i < k; ++i) c.emplace_back(vars[i], ((mask >> i) & 1U) != 0);
        emit(std::move(c));
    }
}

}  // namespace

void expand_xor(const XorClause& x, const std::function<Var()>& fresh,
                const std::function<void(std::vector<Lit>)>& emit) {
    if (x.vars.empty()) {
        if (x.rhs) emit({});
        return;
    }
    std::vector<Var> rest(x.vars.begin(), x.vars.end());
    while (rest.size() > kChunkWidth) {
        const Var aux = fresh();
        std::vector<Var> chunk(rest.begin(), rest.begin() + kChunkWidth - 1);
        chunk.push_back(aux);
        expand_parity(chunk, false, emit);
        std::vector<Var> next{aux};
        next.insert(next.end(), rest.begin() + kChunkWidth - 1, rest.end());
        rest = std::move(next);
    }
    expand_parity(rest, x.rhs, emit);
}

Formula blast_xor(const Formula& f) {
    Formula out(f.num_vars);
    out.clauses = f.clauses;
    for (const auto& x : f.xors)
        expand_xor(
            x, [&] { return out.new_var(); },
            [&](std::vector<Lit> c) { out.clauses.emplace_back(std::move(c)); });
    return out;
}

}  // namespace ubc
