#include <doctest.h>

#include <openssl/des.h>

#include "hwsec/des.hpp"
#include "hwsec/prng.hpp"

using hwsec::Block64;
using hwsec::Key64;
namespace des = hwsec::des;

namespace {

void to_bytes(const Block64& block, unsigned char out[8]) {
  for (int i = 0; i < 8; ++i) {
    unsigned char byte = 0;
    for (int j = 0; j < 8; ++j)
      byte = (unsigned char)((byte << 1) | block.get(std::size_t(i * 8 + j)));
    out[i] = byte;
  }
}

Block64 from_bytes(const unsigned char in[8]) {
  Block64 b;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      b.set(std::size_t(i * 8 + j), (in[i] >> (7 - j)) & 1);
  return b;
}

Block64 openssl_des(const Key64& key, const Block64& block, bool encrypt) {
  DES_cblock key_block, in, out;
  to_bytes(key, key_block);
  to_bytes(block, in);
  DES_key_schedule schedule;
  DES_set_key_unchecked(&key_block, &schedule);
  DES_ecb_encrypt(&in, &out, &schedule, encrypt ? DES_ENCRYPT : DES_DECRYPT);
  return from_bytes(out);
}

}  // namespace

TEST_CASE("known answer from the worked example") {
  const auto key = Key64::from_hex("096F2B878D906CA0");
  const auto pt = Block64::from_hex("0BADC0DEDEADC0DE");
  const auto ct = des::encrypt_block(key, pt);
  CHECK(ct.to_hex() == "5FB5CD14D3136003");
  CHECK(des::decrypt_block(key, ct) == pt);
}

TEST_CASE("first round key of the worked-example key") {
  const auto key = Key64::from_hex("096F2B878D906CA0");
  const auto round_keys = des::derive_round_keys(key);
  CHECK(round_keys[0].to_hex() == "C321A119E699");
}

TEST_CASE("hex parsing is case-insensitive, output uppercase") {
  const auto a = Block64::from_hex("0badc0dedeadc0de");
  CHECK(a.to_hex() == "0BADC0DEDEADC0DE");
  CHECK_THROWS_AS(Block64::from_hex("0badc0de"), std::invalid_argument);
  CHECK_THROWS_AS(Block64::from_hex("0badc0dedeadc0dg"), std::invalid_argument);
}

TEST_CASE("permutation tables invert as expected") {
  hwsec::SplitMix64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto b = Block64::from_uint(rng.next());
    const auto ip = des::permute<64, 64>(b, des::ip());
    CHECK(des::permute<64, 64>(ip, des::fp()) == b);
  }
  for (int i = 0; i < 20; ++i) {
    const auto h = hwsec::HalfBlock32::from_uint(rng.next() & 0xFFFFFFFFu);
    const auto p = des::permute<32, 32>(h, des::p());
    CHECK(des::permute<32, 32>(p, des::p_inverse()) == h);
  }
}

TEST_CASE("permute rejects width mismatch") {
  CHECK_THROWS_AS((des::permute<32, 32>(hwsec::HalfBlock32(), des::ip())),
                  std::invalid_argument);
}

TEST_CASE("matches an independent implementation on random vectors") {
  hwsec::SplitMix64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const auto key = Key64::from_uint(rng.next());
    const auto pt = Block64::from_uint(rng.next());
    const auto ct = des::encrypt_block(key, pt);
    CHECK(ct == openssl_des(key, pt, true));
    CHECK(des::decrypt_block(key, ct) == pt);
    CHECK(des::decrypt_block(key, ct) == openssl_des(key, ct, false));
  }
}

TEST_CASE("parity bits do not affect the ciphertext") {
  const auto pt = Block64::from_hex("0123456789ABCDEF");
  auto key = Key64::from_hex("096F2B878D906CA0");
  const auto ct = des::encrypt_block(key, pt);
  for (int byte = 0; byte < 8; ++byte) {
    auto flipped = key;
    flipped.set(std::size_t(byte * 8 + 7), !key.get(std::size_t(byte * 8 + 7)));
    CHECK(des::encrypt_block(flipped, pt) == ct);
  }
}
