#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hwsec/netlist.hpp"

namespace hwsec::atk {

// Black-box access to an activated chip: query inputs, never see the key.
class Oracle {
 public:
  Oracle(nl::Netlist circuit, nl::KeyVector key)
      : circuit_(std::move(circuit)), key_(std::move(key)) {}
  explicit Oracle(nl::Netlist circuit) : circuit_(std::move(circuit)) {}

  nl::BitString query(const std::vector<bool>& inputs) const;
  std::size_t query_count() const { return queries_; }
  const nl::Netlist& circuit() const { return circuit_; }

 private:
  nl::Netlist circuit_;
  nl::KeyVector key_;
  mutable std::size_t queries_ = 0;
};

struct SatAttackStats {
  std::vector<nl::BitString> dips;
  std::size_t iterations = 0;
  nl::KeyVector recovered_key;

  std::string to_text() const;
};

struct AttackFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative SAT attack: find distinguishing input patterns from a miter over
// two keyed copies, constrain both with the oracle response, repeat until
// UNSAT, then extract any remaining consistent key.
SatAttackStats sat_attack(const nl::Netlist& locked, const Oracle& oracle);

// Per key bit: search for an input pattern that propagates the bit to an
// output independent of the other key bits, then resolve it with one oracle
// query. nullopt marks bits that cannot be individually sensitized.
std::vector<std::optional<bool>> sensitization_attack(const nl::Netlist& locked,
                                                      const Oracle& oracle,
                                                      int input_limit = 16);

}  // namespace hwsec::atk
