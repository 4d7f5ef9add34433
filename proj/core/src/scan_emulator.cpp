#include "hwsec/scan_emulator.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "hwsec/prng.hpp"

namespace hwsec::scan {
namespace {

Key64 generate_key(SplitMix64& prng) {
  Key64 key = Key64::from_uint(prng.next());
  // Each byte's 8th bit is the XOR of its first 7 bits (even parity).
  for (std::size_t byte = 0; byte < 8; ++byte) {
    bool parity = false;
    for (std::size_t j = 0; j < 7; ++j) parity ^= key.get(byte * 8 + j);
    key.set(byte * 8 + 7, parity);
  }
  return key;
}

std::array<int, kChainLength> shuffled_order(SplitMix64& prng) {
  std::array<int, kChainLength> order;
  std::iota(order.begin(), order.end(), 0);
  for (int i = kChainLength - 1; i > 0; --i)
    std::swap(order[size_t(i)], order[size_t(prng.next_below(std::uint64_t(i) + 1))]);
  return order;
}

}  // namespace

Emulator::Emulator(std::uint64_t seed, std::optional<Key64> force_key) {
  SplitMix64 prng(seed);
  order_ = shuffled_order(prng);
  key_ = force_key ? *force_key : generate_key(prng);
  round_keys_ = des::derive_round_keys(key_);
  reinit();
}

void Emulator::reinit() {
  input_reg_ = Block64{};
  l_reg_ = HalfBlock32{};
  r_reg_ = HalfBlock32{};
  output_reg_ = Block64{};
  cycle_count_ = 0;
}

void Emulator::tick() {
  ++cycle_count_;
  if (cycle_count_ == 1) {
    // Input register already latched by run(); nothing else happens.
  } else if (cycle_count_ == 2) {
    const Block64 permuted = des::permute<64, 64>(input_reg_, des::ip());
    for (std::size_t i = 0; i < 32; ++i) {
      l_reg_.set(i, permuted.get(i));
      r_reg_.set(i, permuted.get(32 + i));
    }
  } else if (cycle_count_ <= 18) {
    const int round = cycle_count_ - 3;  // rounds 1..16
    const Expanded48& k =
        round_keys_[size_t(encrypt_mode_ ? round : 15 - round)];
    const HalfBlock32 e = l_reg_ ^ des::feistel_f(r_reg_, k);
    l_reg_ = r_reg_;
    r_reg_ = e;
  } else if (cycle_count_ == 19) {
    Block64 preoutput;
    for (std::size_t i = 0; i < 32; ++i) {
      preoutput.set(i, r_reg_.get(i));
      preoutput.set(32 + i, l_reg_.get(i));
    }
    output_reg_ = des::permute<64, 64>(preoutput, des::fp());
  }
  // Past cycle 19 the hardware idles.
}

ScanFrame Emulator::scan_out() const {
  ScanFrame frame(kChainLength, '0');
  auto emit = [&](std::size_t reg_index, bool v) {
    frame[size_t(order_[reg_index])] = v ? '1' : '0';
  };
  for (std::size_t i = 0; i < 64; ++i) emit(i, input_reg_.get(i));
  for (std::size_t i = 0; i < 32; ++i) emit(64 + i, l_reg_.get(i));
  for (std::size_t i = 0; i < 32; ++i) emit(96 + i, r_reg_.get(i));
  for (std::size_t i = 0; i < 64; ++i) emit(128 + i, output_reg_.get(i));
  return frame;
}

Emulator::RunResult Emulator::run(std::string_view input_hex, bool do_encrypt,
                                  int num_cycles) {
  if (num_cycles < 0) throw std::invalid_argument("num_cycles must be >= 0");
  reinit();
  encrypt_mode_ = do_encrypt;
  const Block64 input = Block64::from_hex(input_hex);

  RunResult result;
  result.frames.reserve(size_t(num_cycles));
  for (int c = 0; c < num_cycles; ++c) {
    if (cycle_count_ == 0) input_reg_ = input;
    tick();
    result.frames.push_back(scan_out());
  }
  result.output_hex = output_reg_.to_hex();
  return result;
}

}  // namespace hwsec::scan
