#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hwsec/bits.hpp"

namespace hwsec::des {

// 1-indexed source positions, applied output-bit-by-output-bit:
// output[j] = input[entries[j]].
struct PermTable {
  std::vector<int> entries;
  int input_width = 0;
  int output_width = 0;
};

using SBox = std::array<std::array<std::uint8_t, 16>, 4>;
using SBoxSet = std::array<SBox, 8>;
using ShiftSchedule = std::array<int, 16>;

const PermTable& ip();
const PermTable& fp();
const PermTable& expansion();
const PermTable& p();
const PermTable& p_inverse();
const PermTable& pc1();
const PermTable& pc2();
const SBoxSet& sboxes();
const ShiftSchedule& shift_schedule();

template <std::size_t IN, std::size_t OUT>
BitVec<OUT> permute(const BitVec<IN>& input, const PermTable& table) {
  if (table.input_width != int(IN) || table.output_width != int(OUT))
    throw std::invalid_argument("permutation table width mismatch");
  BitVec<OUT> out;
  for (std::size_t j = 0; j < OUT; ++j)
    out.set(j, input.get(std::size_t(table.entries[j] - 1)));
  return out;
}

// Row = (b1,b6), column = (b2..b5), per s-box; 8x6 bits in, 8x4 bits out.
HalfBlock32 sbox_substitute(const Expanded48& b);

// d = P(SBoxes(E(r) xor k))
HalfBlock32 feistel_f(const HalfBlock32& r, const Expanded48& round_key);

std::array<Expanded48, 16> derive_round_keys(const Key64& key);

Block64 encrypt_block(const Key64& key, const Block64& block);
Block64 decrypt_block(const Key64& key, const Block64& block);

}  // namespace hwsec::des
