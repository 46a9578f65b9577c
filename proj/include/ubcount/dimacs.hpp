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

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ubcount/cnf.hpp"

namespace ubc {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct DimacsDocument {
    Formula formula;
    /// Union of all "c ind ... 0" lines; absent when the file has none.
    std::optional<ProjectionSet> projection;
};

DimacsDocument parse_dimacs(std::istream& in);
DimacsDocument parse_dimacs(std::string_view text);
DimacsDocument parse_dimacs_file(const std::string& path);

enum class XorEmit { Blast, Reject };

/// LF line endings, single spaces, clauses in stored order. Projection goes
/// on one "c ind" line right after the header.
std::string emit_dimacs(const Formula& f, const std::optional<ProjectionSet>& p = std::nullopt,
                        XorEmit xors = XorEmit::Reject);

/// Reads a bare projection list: whitespace separated var ids, "c ind"
/// prefixes and 0 terminators are allowed.
ProjectionSet parse_projection_list(std::istream& in, std::uint32_t num_vars);

}  // namespace ubc
