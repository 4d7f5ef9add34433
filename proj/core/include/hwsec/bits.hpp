#pragma once

#include <bitset>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hwsec {

// Fixed-width bit vector. Index 0 is the left-most / most significant bit
// ("bit 1" in the usual permutation-table numbering).
template <std::size_t N>
class BitVec {
 public:
  BitVec() = default;

  bool get(std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v; }
  static constexpr std::size_t size() { return N; }

  std::size_t popcount() const { return bits_.count(); }

  BitVec operator^(const BitVec& o) const {
    BitVec r;
    r.bits_ = bits_ ^ o.bits_;
    return r;
  }
  bool operator==(const BitVec&) const = default;

  // Parses exactly N/4 hex characters, case-insensitive.
  static BitVec from_hex(std::string_view hex) {
    static_assert(N % 4 == 0);
    if (hex.size() != N / 4)
      throw std::invalid_argument("expected " + std::to_string(N / 4) +
                                  " hex characters, got " +
                                  std::to_string(hex.size()));
    BitVec r;
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char ch = hex[i];
      int v;
      if (ch >= '0' && ch <= '9') v = ch - '0';
      else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
      else throw std::invalid_argument(std::string("bad hex character '") + ch + "'");
      for (int j = 0; j < 4; ++j) r.bits_[i * 4 + j] = (v >> (3 - j)) & 1;
    }
    return r;
  }

  // Uppercase, fixed width.
  std::string to_hex() const {
    static_assert(N % 4 == 0);
    std::string s(N / 4, '0');
    for (std::size_t i = 0; i < N / 4; ++i) {
      int v = 0;
      for (int j = 0; j < 4; ++j) v = (v << 1) | int(bits_[i * 4 + j]);
      s[i] = "0123456789ABCDEF"[v];
    }
    return s;
  }

  std::string to_binary() const {
    std::string s(N, '0');
    for (std::size_t i = 0; i < N; ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
  }

  static BitVec from_binary(std::string_view s) {
    if (s.size() != N) throw std::invalid_argument("expected " + std::to_string(N) + " bits");
    BitVec r;
    for (std::size_t i = 0; i < N; ++i) {
      if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bad binary digit");
      r.bits_[i] = s[i] == '1';
    }
    return r;
  }

  static BitVec from_uint(unsigned long long v) {
    static_assert(N <= 64);
    BitVec r;
    for (std::size_t i = 0; i < N; ++i) r.bits_[i] = (v >> (N - 1 - i)) & 1;
    return r;
  }

 private:
  std::bitset<N> bits_;
};

using Block64 = BitVec<64>;
using HalfBlock32 = BitVec<32>;
using Expanded48 = BitVec<48>;
using Key64 = BitVec<64>;

}  // namespace hwsec
