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

#include <chrono>
#include <optional>

namespace ubc {

using Clock = std::chrono::steady_clock;
using Seconds = std::chrono::duration<double>;

/// Wall-clock cutoff checked between solver calls.
class Deadline {
public:
    Deadline() = default;
    static Deadline never() { return Deadline(); }
    static Deadline after(Seconds budget) {
        Deadline d;
        d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
        d.zero_ = budget.count() <= 0;
        return d;
    }

    bool expired() const { return zero_ || (at_ && Clock::now() >= *at_); }
    bool bounded() const { return at_.has_value(); }

private:
    std::optional<Clock::time_point> at_;
    bool zero_ = false;
};

class Stopwatch {
public:
    Stopwatch() : start_(Clock::now()) {}
    double seconds() const { return Seconds(Clock::now() - start_).count(); }

private:
    Clock::time_point start_;
};

}  // namespace ubc
