#include "hwsec/des.hpp"

#include <cassert>
#include <numeric>

namespace hwsec::des {
namespace {

PermTable make(std::vector<int> entries, int in_w) {
  PermTable t;
  t.output_width = int(entries.size());
  t.entries = std::move(entries);
  t.input_width = in_w;
  for (int e : t.entries) assert(e >= 1 && e <= t.input_width);
  return t;
}

const PermTable kIp = make(
    {58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
     62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
     57, 49, 41, 33, 25, 17, 9,  1, 59, 51, 43, 35, 27, 19, 11, 3,
     61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7},
    64);

const PermTable kFp = make(
    {40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31,
     38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29,
     36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27,
     34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9,  49, 17, 57, 25},
    64);

const PermTable kE = make(
    {32, 1,  2,  3,  4,  5,  4,  5,  6,  7,  8,  9,  8,  9,  10, 11,
     12, 13, 12, 13, 14, 15, 16, 17, 16, 17, 18, 19, 20, 21, 20, 21,
     22, 23, 24, 25, 24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1},
    32);

const PermTable kP = make(
    {16, 7, 20, 21, 29, 12, 28, 17, 1,  15, 23, 26, 5,  18, 31, 10,
     2,  8, 24, 14, 32, 27, 3,  9,  19, 13, 30, 6,  22, 11, 4,  25},
    32);

PermTable invert(const PermTable& t) {
  // Only valid for straight-through permutations.
  assert(t.input_width == t.output_width);
  std::vector<int> inv(size_t(t.input_width));
  for (int j = 0; j < t.output_width; ++j) inv[size_t(t.entries[size_t(j)] - 1)] = j + 1;
  return make(std::move(inv), t.input_width);
}

const PermTable kPInv = invert(kP);

const PermTable kPc1 = make(
    {57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
     10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
     63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
     14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4},
    64);

const PermTable kPc2 = make(
    {14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10, 23, 19, 12, 4,
     26, 8,  16, 7,  27, 20, 13, 2,  41, 52, 31, 37, 47, 55, 30, 40,
     51, 45, 33, 48, 44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32},
    56);

const ShiftSchedule kShifts = {1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1};

const SBoxSet kSBoxes = {{
    {{{{14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7}},
      {{0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8}},
      {{4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0}},
      {{15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13}}}},
    {{{{15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10}},
      {{3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5}},
      {{0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15}},
      {{13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9}}}},
    {{{{10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8}},
      {{13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1}},
      {{13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7}},
      {{1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12}}}},
    {{{{7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15}},
      {{13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9}},
      {{10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4}},
      {{3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14}}}},
    {{{{2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9}},
      {{14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6}},
      {{4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14}},
      {{11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3}}}},
    {{{{12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11}},
      {{10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8}},
      {{9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6}},
      {{4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13}}}},
    {{{{4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1}},
      {{13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6}},
      {{1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2}},
      {{6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12}}}},
    {{{{13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7}},
      {{1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2}},
      {{7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8}},
      {{2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11}}}},
}};

// Structural checks on the embedded tables, run once.
bool validate_tables() {
  auto distinct = [](const PermTable& t) {
    std::vector<bool> seen(size_t(t.input_width), false);
    for (int e : t.entries) {
      if (seen[size_t(e - 1)]) return false;
      seen[size_t(e - 1)] = true;
    }
    return true;
  };
  assert(distinct(kIp) && distinct(kFp) && distinct(kP) && distinct(kPc1));
  for (const SBox& box : kSBoxes)
    for (const auto& row : box) {
      std::array<bool, 16> seen{};
      for (std::uint8_t v : row) {
        assert(v < 16 && !seen[v]);
        seen[v] = true;
      }
    }
  assert(std::accumulate(kShifts.begin(), kShifts.end(), 0) == 28);
  return true;
}

const bool kTablesOk = validate_tables();

std::pair<HalfBlock32, HalfBlock32> split(const Block64& b) {
  HalfBlock32 l, r;
  for (std::size_t i = 0; i < 32; ++i) {
    l.set(i, b.get(i));
    r.set(i, b.get(32 + i));
  }
  return {l, r};
}

Block64 join(const HalfBlock32& hi, const HalfBlock32& lo) {
  Block64 b;
  for (std::size_t i = 0; i < 32; ++i) {
    b.set(i, hi.get(i));
    b.set(32 + i, lo.get(i));
  }
  return b;
}

Block64 feistel(const std::array<Expanded48, 16>& keys, const Block64& block,
                bool reverse_keys) {
  auto [l, r] = split(permute<64, 64>(block, kIp));
  for (int round = 0; round < 16; ++round) {
    const Expanded48& k = keys[size_t(reverse_keys ? 15 - round : round)];
    HalfBlock32 e = l ^ feistel_f(r, k);
    l = r;
    r = e;
  }
  // No swap after the last round: preoutput is R16 || L16.
  return permute<64, 64>(join(r, l), kFp);
}

}  // namespace

const PermTable& ip() { return kIp; }
const PermTable& fp() { return kFp; }
const PermTable& expansion() { return kE; }
const PermTable& p() { return kP; }
const PermTable& p_inverse() { return kPInv; }
const PermTable& pc1() { return kPc1; }
const PermTable& pc2() { return kPc2; }
const SBoxSet& sboxes() { return kSBoxes; }
const ShiftSchedule& shift_schedule() { return kShifts; }

HalfBlock32 sbox_substitute(const Expanded48& b) {
  HalfBlock32 out;
  for (std::size_t box = 0; box < 8; ++box) {
    const std::size_t base = box * 6;
    const int row = int(b.get(base)) * 2 + int(b.get(base + 5));
    const int col = int(b.get(base + 1)) * 8 + int(b.get(base + 2)) * 4 +
                    int(b.get(base + 3)) * 2 + int(b.get(base + 4));
    const std::uint8_t v = kSBoxes[box][size_t(row)][size_t(col)];
    for (std::size_t j = 0; j < 4; ++j) out.set(box * 4 + j, (v >> (3 - j)) & 1);
  }
  return out;
}

HalfBlock32 feistel_f(const HalfBlock32& r, const Expanded48& round_key) {
  const Expanded48 a = permute<32, 48>(r, kE);
  return permute<32, 32>(sbox_substitute(a ^ round_key), kP);
}

std::array<Expanded48, 16> derive_round_keys(const Key64& key) {
  const BitVec<56> cd = permute<64, 56>(key, kPc1);
  std::array<bool, 28> c, d;
  for (std::size_t i = 0; i < 28; ++i) {
    c[i] = cd.get(i);
    d[i] = cd.get(28 + i);
  }
  auto rotate_left = [](std::array<bool, 28>& half, int n) {
    std::array<bool, 28> out;
    for (std::size_t i = 0; i < 28; ++i) out[i] = half[(i + size_t(n)) % 28];
    half = out;
  };
  std::array<Expanded48, 16> keys;
  for (std::size_t round = 0; round < 16; ++round) {
    rotate_left(c, kShifts[round]);
    rotate_left(d, kShifts[round]);
    BitVec<56> merged;
    for (std::size_t i = 0; i < 28; ++i) {
      merged.set(i, c[i]);
      merged.set(28 + i, d[i]);
    }
    keys[round] = permute<56, 48>(merged, kPc2);
  }
  return keys;
}

Block64 encrypt_block(const Key64& key, const Block64& block) {
  return feistel(derive_round_keys(key), block, /*reverse_keys=*/false);
}

Block64 decrypt_block(const Key64& key, const Block64& block) {
  return feistel(derive_round_keys(key), block, /*reverse_keys=*/true);
}

}  // namespace hwsec::des
