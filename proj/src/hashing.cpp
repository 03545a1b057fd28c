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

#include "unigen/hashing.hpp"

#include <algorithm>
#include <bit>

namespace unigen {

CellId CellId::sample(Rng& rng, uint32_t m) {
  if (m == 0) throw ContractViolation("cell id width must be >= 1");
  CellId c;
  c.bits.resize(m);
  for (uint32_t i = 0; i < m; i++) c.bits[i] = rng.bit() ? 1 : 0;
  return c;
}

HashFunction HashFunction::sample(Rng& rng, uint32_t n, uint32_t m) {
  if (n == 0 || m == 0)
    throw ContractViolation("hash dimensions must be >= 1");
  HashFunction h(n, m);
  h.words_per_row_ = (static_cast<size_t>(n) + 1 + 63) / 64;
  h.rows_.assign(h.words_per_row_ * m, 0);
  // Row-major, bit j of row i = a_{i,j}; bits beyond n stay zero.
  for (uint32_t i = 0; i < m; i++) {
    for (uint32_t j = 0; j <= n; j++) {
      if (rng.bit())
        h.rows_[i * h.words_per_row_ + j / 64] |= uint64_t{1} << (j % 64);
    }
  }
  return h;
}

HashFunction HashFunction::from_bits(uint32_t n, uint32_t m,
                                     const std::vector<uint8_t>& bits) {
  if (n == 0 || m == 0)
    throw ContractViolation("hash dimensions must be >= 1");
  if (bits.size() != static_cast<size_t>(m) * (n + 1))
    throw ContractViolation("hash bit matrix has wrong size");
  HashFunction h(n, m);
  h.words_per_row_ = (static_cast<size_t>(n) + 1 + 63) / 64;
  h.rows_.assign(h.words_per_row_ * m, 0);
  for (uint32_t i = 0; i < m; i++)
    for (uint32_t j = 0; j <= n; j++)
      if (bits[static_cast<size_t>(i) * (n + 1) + j])
        h.rows_[i * h.words_per_row_ + j / 64] |= uint64_t{1} << (j % 64);
  return h;
}

bool HashFunction::constant_bit(uint32_t row) const {
  return (rows_[row * words_per_row_] & 1) != 0;
}

bool HashFunction::coeff(uint32_t row, uint32_t k) const {
  return (rows_[row * words_per_row_ + k / 64] >> (k % 64)) & 1;
}

uint32_t HashFunction::row_weight(uint32_t row) const {
  uint32_t w = 0;
  for (size_t j = 0; j < words_per_row_; j++)
    w += static_cast<uint32_t>(
        std::popcount(rows_[row * words_per_row_ + j]));
  if (constant_bit(row)) w--;  // a_{i,0} is not a coefficient
  return w;
}

CellId HashFunction::apply(const std::vector<uint8_t>& y) const {
  if (y.size() != n_)
    throw ContractViolation("hash arity mismatch: expected " +
                            std::to_string(n_) + " inputs, got " +
                            std::to_string(y.size()));
  // Pack (1, y) so each output bit is the parity of a masked popcount.
  std::vector<uint64_t> input(words_per_row_, 0);
  input[0] = 1;  // multiplies the constant a_{i,0}
  for (uint32_t k = 1; k <= n_; k++)
    if (y[k - 1]) input[k / 64] |= uint64_t{1} << (k % 64);

  CellId out;
  out.bits.resize(m_);
  for (uint32_t i = 0; i < m_; i++) {
    uint64_t acc = 0;
    for (size_t j = 0; j < words_per_row_; j++)
      acc ^= rows_[i * words_per_row_ + j] & input[j];
    out.bits[i] = static_cast<uint8_t>(std::popcount(acc) & 1);
  }
  return out;
}

std::vector<XorConstraint> to_constraints(const HashFunction& h,
                                          const CellId& alpha,
                                          const SamplingSet& s) {
  if (h.input_width() != s.size())
    throw ContractViolation("hash input width " +
                            std::to_string(h.input_width()) +
                            " != sampling set size " +
                            std::to_string(s.size()));
  if (alpha.width() != h.output_width())
    throw ContractViolation("cell id width " + std::to_string(alpha.width()) +
                            " != hash output width " +
                            std::to_string(h.output_width()));
  std::vector<XorConstraint> out;
  out.reserve(h.output_width());
  for (uint32_t i = 0; i < h.output_width(); i++) {
    XorConstraint c;
    for (uint32_t k = 1; k <= h.input_width(); k++)
      if (h.coeff(i, k)) c.vars.push_back(s.vars()[k - 1]);
    std::sort(c.vars.begin(), c.vars.end());
    c.parity = (alpha.bits[i] != 0) ^ h.constant_bit(i);
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_xor_dimacs_line(const XorConstraint& c) {
  if (c.vars.empty() && c.parity)
    throw ContractViolation(
        "always-false xor constraint has no line representation");
  std::string out = "x";
  for (size_t i = 0; i < c.vars.size(); i++) {
    out += ' ';
    if (i == 0 && !c.parity) out += '-';
    out += std::to_string(c.vars[i]);
  }
  out += " 0";
  return out;
}

}  // namespace unigen
