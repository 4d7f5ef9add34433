#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hwsec/netlist.hpp"

namespace hwsec::lock {

// One entry per inserted key gate. XOR passes the signal when its key bit
// is 0, XNOR when it is 1.
struct LockRecord {
  struct Entry {
    std::string target_net;
    nl::GateKind kind;  // Xor or Xnor
    bool correct_bit;
  };
  std::vector<Entry> entries;
};

struct LockResult {
  nl::Netlist locked;
  nl::KeyVector key;
  LockRecord record;
};

// Random logic locking: num_keys distinct nets (gate outputs and primary
// inputs) get an XOR/XNOR key gate, chosen by a splitmix64(seed) draw.
// With the returned key the locked netlist is equivalent to the original.
LockResult random_lock(const nl::Netlist& n, int num_keys, std::uint64_t seed,
                       std::string_view key_prefix = "key");

// Constant-propagates the key bits away; the result has no key inputs.
nl::Netlist apply_key(const nl::Netlist& locked, const nl::KeyVector& key);

}  // namespace hwsec::lock
