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

#include <cstdint>
#include <string>
#include <vector>

#include "unigen/formula.hpp"
#include "unigen/rng.hpp"

namespace unigen {

/// Target vector alpha selecting one hash cell; length equals the paired
/// hash function's output width m.
struct CellId {
  std::vector<uint8_t> bits;

  static CellId sample(Rng& rng, uint32_t m);
  size_t width() const { return bits.size(); }
  bool operator==(const CellId&) const = default;
};

/// A member of the 3-wise independent affine XOR family mapping {0,1}^n to
/// {0,1}^m. Row i holds a constant bit and n coefficient bits; output bit i
/// is the constant xor the parity of the selected inputs.
class HashFunction {
 public:
  /// Every bit drawn independently uniform from rng. n, m >= 1.
  static HashFunction sample(Rng& rng, uint32_t n, uint32_t m);

  /// Deterministic construction: bits holds a_{i,j} row-major with j = 0..n
  /// inside each row, so bits.size() == m*(n+1). Enumerating all settings
  /// walks the whole family.
  static HashFunction from_bits(uint32_t n, uint32_t m,
                                const std::vector<uint8_t>& bits);

  uint32_t input_width() const { return n_; }
  uint32_t output_width() const { return m_; }

  bool constant_bit(uint32_t row) const;     // a_{row,0}
  bool coeff(uint32_t row, uint32_t k) const;  // a_{row,k}, k in 1..n
  uint32_t row_weight(uint32_t row) const;   // # nonzero coefficients

  /// h(y) for y given as the ordered bit values of the n hashed variables.
  CellId apply(const std::vector<uint8_t>& y) const;

 private:
  HashFunction(uint32_t n, uint32_t m) : n_(n), m_(m) {}

  uint32_t n_ = 0, m_ = 0;
  size_t words_per_row_ = 0;
  std::vector<uint64_t> rows_;  // bit j of row i = a_{i,j}, j in 0..n
};

/// Parity constraint: xor of vars equals parity. vars may be empty, in which
/// case the constraint reads "0 = parity".
struct XorConstraint {
  std::vector<Var> vars;  // ascending
  bool parity = false;

  bool operator==(const XorConstraint&) const = default;
};

/// Conjunction equivalent to h(x_S) = alpha, with the constant bit folded
/// into each parity target. Emits exactly m constraints, empty ones
/// included. h's input width must equal |S| and alpha's length must equal
/// h's output width.
std::vector<XorConstraint> to_constraints(const HashFunction& h,
                                          const CellId& alpha,
                                          const SamplingSet& s);

/// Extended-DIMACS debug line `x <lits> 0`: parity 1 emits all literals
/// positive, parity 0 negates the first literal. An empty constraint with
/// parity 1 has no line representation and throws.
std::string to_xor_dimacs_line(const XorConstraint& c);

}  // namespace unigen
