#include "hwsec/scan_attack.hpp"

#include <algorithm>
#include <sstream>

#include "hwsec/des.hpp"

namespace hwsec::scan {
namespace {

int single_set_bit(const ScanFrame& frame, int ignore = -1) {
  int found = -1;
  for (int j = 0; j < kChainLength; ++j) {
    if (frame[size_t(j)] != '1' || j == ignore) continue;
    if (found != -1) throw ProtocolError("scan frame has too many active bits");
    found = j;
  }
  if (found == -1) throw ProtocolError("scan frame has no new active bit");
  return found;
}

}  // namespace

const std::array<std::string, 3>& special_inputs() {
  static const std::array<std::string, 3> kInputs = {
      "0000000000000000", "0000AA000000AA00", "8220000A8002200A"};
  return kInputs;
}

ScanMap map_scan_chain(Emulator& em) {
  ScanMap map{};
  map.input_indices.fill(-1);
  map.l_indices.fill(-1);
  map.r_indices.fill(-1);

  for (int i = 0; i < 64; ++i) {
    Block64 one_hot;
    one_hot.set(size_t(i), true);
    const auto result = em.run(one_hot.to_hex(), /*do_encrypt=*/true, 2);

    const int input_index = single_set_bit(result.frames[0]);
    map.input_indices[size_t(i)] = input_index;

    const int lr_index = single_set_bit(result.frames[1], input_index);
    // FP is the precomputed inverse of IP: input bit i lands at L/R
    // position fp[i] after the initial permutation.
    const int lr_pos = des::fp().entries[size_t(i)] - 1;
    if (lr_pos < 32)
      map.l_indices[size_t(lr_pos)] = lr_index;
    else
      map.r_indices[size_t(lr_pos - 32)] = lr_index;
  }
  return map;
}

std::pair<HalfBlock32, HalfBlock32> read_l_r(const ScanMap& map,
                                             const ScanFrame& frame) {
  HalfBlock32 l, r;
  for (std::size_t i = 0; i < 32; ++i) {
    l.set(i, frame[size_t(map.l_indices[i])] == '1');
    r.set(i, frame[size_t(map.r_indices[i])] == '1');
  }
  return {l, r};
}

Expanded48 compute_point_a(std::string_view input_hex) {
  const Block64 after_ip =
      des::permute<64, 64>(Block64::from_hex(input_hex), des::ip());
  HalfBlock32 r0;
  for (std::size_t i = 0; i < 32; ++i) r0.set(i, after_ip.get(32 + i));
  return des::permute<32, 48>(r0, des::expansion());
}

HalfBlock32 recover_point_c(Emulator& em, const ScanMap& map,
                            std::string_view input_hex) {
  const Block64 after_ip =
      des::permute<64, 64>(Block64::from_hex(input_hex), des::ip());
  for (std::size_t i = 0; i < 32; ++i)
    if (after_ip.get(i))
      throw std::invalid_argument("special input must zero L0");

  const auto result = em.run(input_hex, /*do_encrypt=*/true, 3);
  const auto [l1, r1] = read_l_r(map, result.frames[2]);
  (void)l1;
  // With L0 = 0 the round output e equals d, so undoing P yields c.
  return des::permute<32, 32>(r1, des::p_inverse());
}

CandidateChunks reverse_sboxes(const HalfBlock32& c, const Expanded48& a) {
  CandidateChunks chunks;
  for (std::size_t box = 0; box < 8; ++box) {
    int output = 0;
    for (std::size_t j = 0; j < 4; ++j)
      output = (output << 1) | int(c.get(box * 4 + j));
    int a_bits = 0;
    for (std::size_t j = 0; j < 6; ++j)
      a_bits = (a_bits << 1) | int(a.get(box * 6 + j));

    for (int row = 0; row < 4; ++row) {
      // Every s-box value appears exactly once per row.
      const auto& table_row = des::sboxes()[box][size_t(row)];
      const int col =
          int(std::find(table_row.begin(), table_row.end(), output) -
              table_row.begin());
      const int input = ((row & 0b10) << 4) | (col << 1) | (row & 1);
      chunks[box].push_back(std::uint8_t(input ^ a_bits));
    }
  }
  return chunks;
}

CandidateChunks intersect_candidates(std::span<const CandidateChunks> sets) {
  if (sets.empty()) throw std::invalid_argument("no candidate sets");
  CandidateChunks out = sets[0];
  for (std::size_t box = 0; box < 8; ++box) {
    for (std::size_t s = 1; s < sets.size(); ++s) {
      const auto& other = sets[s][box];
      std::erase_if(out[box], [&](std::uint8_t v) {
        return std::find(other.begin(), other.end(), v) == other.end();
      });
    }
    if (out[box].empty())
      throw AttackError("empty candidate intersection for s-box " +
                        std::to_string(box + 1));
  }
  return out;
}

std::vector<Expanded48> assemble_round_keys(const CandidateChunks& chunks) {
  for (const auto& c : chunks)
    if (c.empty()) throw std::invalid_argument("empty candidate chunk");

  std::vector<Expanded48> keys;
  std::array<std::size_t, 8> index{};
  for (;;) {
    Expanded48 key;
    for (std::size_t box = 0; box < 8; ++box) {
      const std::uint8_t frag = chunks[box][index[box]];
      for (std::size_t j = 0; j < 6; ++j)
        key.set(box * 6 + j, (frag >> (5 - j)) & 1);
    }
    keys.push_back(key);
    // Advance the rightmost position first (cartesian-product order).
    std::size_t box = 8;
    while (box > 0) {
      --box;
      if (++index[box] < chunks[box].size()) break;
      index[box] = 0;
      if (box == 0) return keys;
    }
  }
}

std::vector<Key64> invert_key_schedule(const Expanded48& round_key_1) {
  constexpr int kUnknown = -1;

  // Undo PC2: 8 of the 56 positions stay unknown.
  std::array<int, 56> cd;
  cd.fill(kUnknown);
  for (std::size_t i = 0; i < 48; ++i)
    cd[size_t(des::pc2().entries[i] - 1)] = int(round_key_1.get(i));

  // Undo the round-1 left rotation by rotating each half right by 1.
  std::array<int, 56> unrotated;
  for (std::size_t i = 0; i < 28; ++i) {
    unrotated[(i + 1) % 28] = cd[i];
    unrotated[28 + (i + 1) % 28] = cd[28 + i];
  }

  // Undo PC1: parity positions remain free, the 8 dropped bits unknown.
  std::array<int, 64> key_bits;
  key_bits.fill(kUnknown);
  for (std::size_t i = 0; i < 56; ++i)
    key_bits[size_t(des::pc1().entries[i] - 1)] = unrotated[i];

  std::vector<std::size_t> unknown_positions;
  for (std::size_t i = 0; i < 64; ++i)
    if (key_bits[i] == kUnknown && (i + 1) % 8 != 0)
      unknown_positions.push_back(i);

  std::vector<Key64> candidates;
  candidates.reserve(std::size_t(1) << unknown_positions.size());
  for (std::uint32_t fill = 0; fill < (1u << unknown_positions.size()); ++fill) {
    Key64 key;
    for (std::size_t i = 0; i < 64; ++i)
      if (key_bits[i] != kUnknown) key.set(i, key_bits[i] == 1);
    for (std::size_t j = 0; j < unknown_positions.size(); ++j)
      key.set(unknown_positions[j],
              (fill >> (unknown_positions.size() - 1 - j)) & 1);
    for (std::size_t byte = 0; byte < 8; ++byte) {
      bool parity = false;
      for (std::size_t j = 0; j < 7; ++j) parity ^= key.get(byte * 8 + j);
      key.set(byte * 8 + 7, parity);
    }
    candidates.push_back(key);
  }
  return candidates;
}

Key64 brute_force_key(const std::vector<Key64>& candidates,
                      const Block64& plaintext, const Block64& ciphertext) {
  if (candidates.empty()) throw std::invalid_argument("no key candidates");
  for (const Key64& key : candidates)
    if (des::encrypt_block(key, plaintext) == ciphertext) return key;
  throw AttackError("no candidate key reproduces the ciphertext");
}

AttackReport full_scan_attack(Emulator& em,
                              std::span<const std::string> inputs,
                              std::string_view plaintext_hex) {
  AttackReport report;

  const ScanMap map = map_scan_chain(em);
  report.oracle_runs += 64;

  std::vector<CandidateChunks> per_input;
  for (const std::string& input : inputs) {
    const Expanded48 a = compute_point_a(input);
    const HalfBlock32 c = recover_point_c(em, map, input);
    ++report.oracle_runs;
    per_input.push_back(reverse_sboxes(c, a));
  }
  const CandidateChunks chunks = intersect_candidates(per_input);
  const std::vector<Expanded48> round_keys = assemble_round_keys(chunks);

  // One full run yields the known (plaintext, ciphertext) pair.
  const auto full = em.run(plaintext_hex, /*do_encrypt=*/true);
  ++report.oracle_runs;
  const Block64 plaintext = Block64::from_hex(plaintext_hex);
  const Block64 ciphertext = Block64::from_hex(full.output_hex);

  for (const Expanded48& rk1 : round_keys) {
    const std::vector<Key64> candidates = invert_key_schedule(rk1);
    for (const Key64& key : candidates) {
      ++report.candidates_tested;
      if (des::encrypt_block(key, plaintext) == ciphertext) {
        report.recovered_key = key;
        report.round_key_1 = rk1;
        return report;
      }
    }
  }
  throw AttackError("no assembled round key produced a matching key");
}

std::string AttackReport::to_text() const {
  std::ostringstream os;
  os << "recovered_key " << recovered_key.to_hex() << '\n'
     << "round_key_1 " << round_key_1.to_hex() << '\n'
     << "candidates_tested " << candidates_tested << '\n'
     << "oracle_runs " << oracle_runs << '\n';
  return os.str();
}

}  // namespace hwsec::scan
