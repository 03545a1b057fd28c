#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "unigen/hashing.hpp"

using namespace unigen;

namespace {

std::vector<uint8_t> mask_to_bits(uint64_t mask, size_t nbits) {
  std::vector<uint8_t> bits(nbits);
  for (size_t k = 0; k < nbits; k++) bits[k] = (mask >> k) & 1;
  return bits;
}

std::vector<uint8_t> y_bits(uint64_t y_mask, uint32_t n) {
  std::vector<uint8_t> y(n);
  for (uint32_t k = 0; k < n; k++) y[k] = (y_mask >> k) & 1;
  return y;
}

uint64_t cell_to_mask(const CellId& c) {
  uint64_t m = 0;
  for (size_t i = 0; i < c.bits.size(); i++)
    if (c.bits[i]) m |= uint64_t{1} << i;
  return m;
}

}  // namespace

TEST_CASE("sample_hash is deterministic for a fixed seed") {
  Rng a(42), b(42);
  HashFunction ha = HashFunction::sample(a, 9, 4);
  HashFunction hb = HashFunction::sample(b, 9, 4);
  for (uint32_t i = 0; i < 4; i++) {
    CHECK(ha.constant_bit(i) == hb.constant_bit(i));
    for (uint32_t k = 1; k <= 9; k++) CHECK(ha.coeff(i, k) == hb.coeff(i, k));
  }
  CHECK_THROWS_AS(HashFunction::sample(a, 0, 1), ContractViolation);
  CHECK_THROWS_AS(HashFunction::sample(a, 1, 0), ContractViolation);
}

TEST_CASE("apply: zero function maps everything to the zero cell") {
  HashFunction h = HashFunction::from_bits(3, 2, std::vector<uint8_t>(8, 0));
  for (uint64_t y = 0; y < 8; y++) {
    CellId c = h.apply(y_bits(y, 3));
    CHECK(cell_to_mask(c) == 0);
  }
}

TEST_CASE("apply: single identity row follows its input") {
  // Row: a_0 = 0, a_1 = 1, a_2 = a_3 = 0.
  HashFunction h = HashFunction::from_bits(3, 1, {0, 1, 0, 0});
  CHECK(cell_to_mask(h.apply({1, 0, 0})) == 1);
  CHECK(cell_to_mask(h.apply({0, 1, 1})) == 0);
  CHECK_THROWS_AS(h.apply({1, 0}), ContractViolation);
}

TEST_CASE("apply matches the reference parity over the whole family") {
  for (auto [n, m] : std::vector<std::pair<uint32_t, uint32_t>>{
           {3, 1}, {3, 2}, {4, 2}}) {
    size_t fam_bits = static_cast<size_t>(m) * (n + 1);
    for (uint64_t mask = 0; mask < (uint64_t{1} << fam_bits); mask++) {
      auto bits = mask_to_bits(mask, fam_bits);
      HashFunction h = HashFunction::from_bits(n, m, bits);
      for (uint64_t y = 0; y < (uint64_t{1} << n); y++)
        CHECK(cell_to_mask(h.apply(y_bits(y, n))) ==
              oracles::ref_hash_apply(bits, n, m, y));
    }
  }
}

TEST_CASE("every (y, alpha) pair is hit by exactly 2^-m of the family") {
  for (auto [n, m] : std::vector<std::pair<uint32_t, uint32_t>>{
           {2, 1}, {3, 2}, {4, 2}}) {
    size_t fam_bits = static_cast<size_t>(m) * (n + 1);
    uint64_t family = uint64_t{1} << fam_bits;
    for (uint64_t y = 0; y < (uint64_t{1} << n); y++) {
      std::vector<uint64_t> hits(uint64_t{1} << m, 0);
      for (uint64_t mask = 0; mask < family; mask++) {
        auto bits = mask_to_bits(mask, fam_bits);
        hits[oracles::ref_hash_apply(bits, n, m, y)]++;
      }
      for (uint64_t alpha = 0; alpha < (uint64_t{1} << m); alpha++)
        CHECK(hits[alpha] == family >> m);
    }
  }
}

TEST_CASE("3-wise independence, exhaustive at (3,1)") {
  const uint32_t n = 3, m = 1;
  size_t fam_bits = m * (n + 1);
  uint64_t family = uint64_t{1} << fam_bits;
  uint64_t points = uint64_t{1} << n;
  for (uint64_t y1 = 0; y1 < points; y1++)
    for (uint64_t y2 = 0; y2 < points; y2++)
      for (uint64_t y3 = 0; y3 < points; y3++) {
        if (y1 == y2 || y1 == y3 || y2 == y3) continue;
        std::map<std::tuple<uint64_t, uint64_t, uint64_t>, uint64_t> joint;
        for (uint64_t mask = 0; mask < family; mask++) {
          auto bits = mask_to_bits(mask, fam_bits);
          joint[{oracles::ref_hash_apply(bits, n, m, y1),
                 oracles::ref_hash_apply(bits, n, m, y2),
                 oracles::ref_hash_apply(bits, n, m, y3)}]++;
        }
        for (const auto& [key, count] : joint) {
          (void)key;
          CHECK(count == family >> (3 * m));
        }
        CHECK(joint.size() == uint64_t{1} << (3 * m));
      }
}

TEST_CASE("sampling reproduces the uniform family distribution at (3,2)") {
  // 256 functions; 200 samples each on average. Chi-square against uniform
  // with 255 dof stays below mean + 3 sigma for this pinned seed.
  const uint32_t n = 3, m = 2;
  const uint64_t draws = 51200;
  Rng rng(99);
  std::map<uint64_t, uint64_t> freq;
  for (uint64_t d = 0; d < draws; d++) {
    HashFunction h = HashFunction::sample(rng, n, m);
    uint64_t key = 0;
    size_t bit = 0;
    for (uint32_t i = 0; i < m; i++)
      for (uint32_t j = 0; j <= n; j++) {
        bool b = j == 0 ? h.constant_bit(i) : h.coeff(i, j);
        if (b) key |= uint64_t{1} << bit;
        bit++;
      }
    freq[key]++;
  }
  CHECK(freq.size() == 256);
  double expected = draws / 256.0;
  double chi = 0.0;
  for (const auto& [key, count] : freq) {
    (void)key;
    double d = static_cast<double>(count) - expected;
    chi += d * d / expected;
  }
  CHECK(chi < 255.0 + 3.0 * std::sqrt(2.0 * 255.0));
}

TEST_CASE("row weight concentrates at n/2") {
  const uint32_t n = 72;
  const uint32_t rows = 2000;
  Rng rng(5);
  double total = 0.0;
  for (uint32_t i = 0; i < rows; i++) {
    HashFunction h = HashFunction::sample(rng, n, 1);
    total += h.row_weight(0);
  }
  double mean = total / rows;
  double sigma_mean = std::sqrt(n * 0.25 / rows);
  CHECK(std::abs(mean - 36.0) < 3.0 * sigma_mean);
}

TEST_CASE("to_constraints: zero hash emits empty constraints") {
  SamplingSet s({1, 2, 3});
  HashFunction h = HashFunction::from_bits(3, 2, std::vector<uint8_t>(8, 0));
  CellId zero{std::vector<uint8_t>{0, 0}};
  auto cs = to_constraints(h, zero, s);
  REQUIRE(cs.size() == 2);
  for (const auto& c : cs) {
    CHECK(c.vars.empty());
    CHECK(!c.parity);  // vacuously true
  }
  CellId one{std::vector<uint8_t>{1, 0}};
  auto cs2 = to_constraints(h, one, s);
  CHECK(cs2[0].vars.empty());
  CHECK(cs2[0].parity);  // "0 = 1", unsatisfiable
  CHECK(!cs2[1].parity);
}

TEST_CASE("to_constraints folds the constant bit into the parity") {
  // One row over 2 vars: a_0 = 1, a_1 = 1, a_2 = 0.
  HashFunction h = HashFunction::from_bits(2, 1, {1, 1, 0});
  SamplingSet s({7, 9});
  CellId alpha{std::vector<uint8_t>{0}};
  auto cs = to_constraints(h, alpha, s);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].vars == std::vector<Var>{7});
  CHECK(cs[0].parity == true);  // alpha 0 ^ a_0 1
}

TEST_CASE("emitted constraints carve exactly the hash cell") {
  Rng rng(1234);
  SamplingSet s({1, 2, 3, 4});
  for (int rep = 0; rep < 20; rep++) {
    uint32_t m = 1 + static_cast<uint32_t>(rng.below(3));
    HashFunction h = HashFunction::sample(rng, 4, m);
    CellId alpha = CellId::sample(rng, m);
    auto cs = to_constraints(h, alpha, s);
    REQUIRE(cs.size() == m);
    for (uint64_t y = 0; y < 16; y++) {
      bool in_cell = h.apply(y_bits(y, 4)) == alpha;
      bool sat_all = true;
      for (const auto& c : cs)
        if (!oracles::ref_xor_holds(c, y)) {
          sat_all = false;
          break;
        }
      CHECK(in_cell == sat_all);
    }
  }
}

TEST_CASE("cells of a fixed hash partition the assignment space") {
  Rng rng(77);
  HashFunction h = HashFunction::sample(rng, 4, 2);
  std::map<uint64_t, uint64_t> sizes;
  for (uint64_t y = 0; y < 16; y++)
    sizes[cell_to_mask(h.apply(y_bits(y, 4)))]++;
  uint64_t total = 0;
  for (const auto& [alpha, n] : sizes) {
    (void)alpha;
    total += n;
  }
  CHECK(total == 16);
}

TEST_CASE("to_constraints rejects mismatched shapes") {
  Rng rng(3);
  HashFunction h = HashFunction::sample(rng, 3, 2);
  CellId alpha = CellId::sample(rng, 2);
  CHECK_THROWS_AS(to_constraints(h, alpha, SamplingSet({1, 2})),
                  ContractViolation);
  CellId bad = CellId::sample(rng, 3);
  CHECK_THROWS_AS(to_constraints(h, bad, SamplingSet({1, 2, 3})),
                  ContractViolation);
}

TEST_CASE("xor dimacs lines follow the polarity rule") {
  CHECK(to_xor_dimacs_line({{3, 5, 8}, true}) == "x 3 5 8 0");
  CHECK(to_xor_dimacs_line({{3, 5, 8}, false}) == "x -3 5 8 0");
  CHECK(to_xor_dimacs_line({{}, false}) == "x 0");
  CHECK_THROWS_AS(to_xor_dimacs_line({{}, true}), ContractViolation);
}
