#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwsec/bits.hpp"
#include "hwsec/des.hpp"

namespace hwsec::scan {

// One scan-chain snapshot: 192 '0'/'1' characters ordered by chain position.
using ScanFrame = std::string;

inline constexpr int kChainLength = 192;
inline constexpr int kFullRunCycles = 19;

// Cycle-accurate emulator of an iterative DES hardware block with a
// seed-randomized scan chain covering input (64) + L (32) + R (32) +
// output (64) register bits.
//
// Cycle timing: 1 loads the input register, 2 loads L0/R0 from the initial
// permutation, 2+n applies round n, 19 loads the output register. Extra
// cycles idle.
class Emulator {
 public:
  explicit Emulator(std::uint64_t seed = 1,
                    std::optional<Key64> force_key = std::nullopt);

  // Zeroes all registers. Key and scan permutation are kept.
  void reinit();

  struct RunResult {
    std::string output_hex;
    std::vector<ScanFrame> frames;  // one frame per cycle
  };

  // Reinitializes, then clocks `num_cycles` cycles, capturing the scan
  // chain after each one.
  RunResult run(std::string_view input_hex, bool do_encrypt,
                int num_cycles = kFullRunCycles);

  // White-box accessors, used by self-tests; the attack must not touch them.
  const Key64& key() const { return key_; }
  const std::array<int, kChainLength>& scan_order() const { return order_; }
  const Block64& input_reg() const { return input_reg_; }
  const HalfBlock32& l_reg() const { return l_reg_; }
  const HalfBlock32& r_reg() const { return r_reg_; }
  const Block64& output_reg() const { return output_reg_; }

 private:
  void tick();
  ScanFrame scan_out() const;

  Key64 key_;
  std::array<Expanded48, 16> round_keys_;
  std::array<int, kChainLength> order_;  // register bit index -> chain position

  Block64 input_reg_;
  HalfBlock32 l_reg_, r_reg_;
  Block64 output_reg_;
  int cycle_count_ = 0;
  bool encrypt_mode_ = true;
};

}  // namespace hwsec::scan
