/*
 unigen -- almost-uniform SAT witness sampler

 Copyright (c) 2026, the unigen authors. All rights reserved.

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

#include <stdexcept>
#include <string>

namespace unigen {

/// Malformed DIMACS input. what() names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& msg)
      : std::runtime_error("parse error at line " + std::to_string(line) +
                           ": " + msg),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// A caller broke an operation's precondition (partial assignment, epsilon
/// out of range, enumeration guard exceeded, ...).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& msg)
      : std::invalid_argument(msg) {}
};

/// A solver or counter call exhausted its wall-clock budget in a context
/// that cannot report a partial result.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The approximate counter failed to produce any usable trial.
class CountingError : public std::runtime_error {
 public:
  explicit CountingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace unigen
