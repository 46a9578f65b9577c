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
#include <vector>

#include "ubcount/cnf.hpp"

namespace ubc {

/// Largest formula the enumeration oracles accept.
inline constexpr std::uint32_t kMaxOracleVars = 24;

/// Every model of a small formula, as bitmasks (bit v-1 holds var v).
/// Enumeration is a depth-first walk over vars 1..n that prunes as soon as a
/// clause or xor whose highest variable was just assigned is falsified.
class ModelTable {
public:
    /// Throws std::invalid_argument when f.num_vars > max_vars.
    explicit ModelTable(const Formula& f, std::uint32_t max_vars = kMaxOracleVars);

    const std::vector<std::uint64_t>& models() const { return models_; }
    std::uint32_t num_vars() const { return num_vars_; }

    /// Agreement on u forces agreement on p.
    bool upper_bounds(const VarSet& u, const VarSet& p) const;
    /// |sol(f) projected on s|
    std::uint64_t projected_count(const VarSet& s) const;

    static std::uint64_t mask(const VarSet& s);

private:
    std::uint32_t num_vars_;
    std::vector<std::uint64_t> models_;
};

/// True iff no two models agree on u but differ on p.
bool verify_ubs_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& u);
/// UBS check plus s ⊆ p.
bool verify_is_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& s);
/// Agreement on s and agreement on p are equivalent.
bool verify_gis_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& s);
/// Agreement on p forces agreement on s.
bool verify_lbs_bruteforce(const Formula& f, const ProjectionSet& p, const VarSet& s);

}  // namespace ubc
