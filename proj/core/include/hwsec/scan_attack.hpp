#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwsec/bits.hpp"
#include "hwsec/scan_emulator.hpp"

namespace hwsec::scan {

// Emulator behaved outside the hardware contract (e.g. unexpected scan
// frame Hamming weight during chain mapping).
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The attack could not complete (empty candidate intersection, no key
// matched in the brute-force phase, ...).
struct AttackError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Recovered correspondence between scan-chain positions and the Input/L/R
// register bits.
struct ScanMap {
  std::array<int, 64> input_indices;
  std::array<int, 32> l_indices;
  std::array<int, 32> r_indices;
};

// Per s-box, the surviving 6-bit round-key fragments (MSB-first values).
using CandidateChunks = std::array<std::vector<std::uint8_t>, 8>;

struct AttackReport {
  Key64 recovered_key;
  Expanded48 round_key_1;
  int candidates_tested = 0;
  int oracle_runs = 0;

  std::string to_text() const;
};

// Default plaintext for the known-pair brute-force phase.
inline constexpr std::string_view kDefaultPlaintext = "0BADC0DEDEADC0DE";

// The trio of inputs that zero L0 and drive the three chosen patterns into
// point a. Exposed so experiments with fewer or other inputs are easy.
const std::array<std::string, 3>& special_inputs();

// Phase 1: walk one-hot inputs through two cycles to locate every Input and
// L/R register bit in the chain.
ScanMap map_scan_chain(Emulator& em);

std::pair<HalfBlock32, HalfBlock32> read_l_r(const ScanMap& map,
                                             const ScanFrame& frame);

// a = E(R0) for the given input block.
Expanded48 compute_point_a(std::string_view input_hex);

// Runs 3 cycles, reads R1 through the scan map, undoes P. Requires L0 = 0.
HalfBlock32 recover_point_c(Emulator& em, const ScanMap& map,
                            std::string_view input_hex);

// Per s-box, the four preimages of its output, XORed with the matching
// 6 bits of a.
CandidateChunks reverse_sboxes(const HalfBlock32& c, const Expanded48& a);

// Keeps fragments present in every set; order follows the first set.
CandidateChunks intersect_candidates(std::span<const CandidateChunks> sets);

// Cartesian product of the per-s-box fragments.
std::vector<Expanded48> assemble_round_keys(const CandidateChunks& chunks);

// Undo PC2, the round-1 rotation, and PC1; enumerate the 8 unknown bits;
// fill parity. Exactly 256 candidates.
std::vector<Key64> invert_key_schedule(const Expanded48& round_key_1);

// Lowest-index candidate that maps plaintext to ciphertext.
Key64 brute_force_key(const std::vector<Key64>& candidates,
                      const Block64& plaintext, const Block64& ciphertext);

AttackReport full_scan_attack(
    Emulator& em,
    std::span<const std::string> inputs = special_inputs(),
    std::string_view plaintext_hex = kDefaultPlaintext);

}  // namespace hwsec::scan
