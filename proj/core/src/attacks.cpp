#include "hwsec/attacks.hpp"

#include <sstream>
#include <stdexcept>

#include "hwsec/cnf.hpp"

namespace hwsec::atk {

using nl::BitString;
using nl::KeyVector;
using nl::Netlist;

nl::BitString Oracle::query(const std::vector<bool>& inputs) const {
  ++queries_;
  return circuit_.evaluate(inputs, key_);
}

std::string SatAttackStats::to_text() const {
  std::ostringstream os;
  os << "iterations: " << iterations << '\n';
  for (std::size_t i = 0; i < dips.size(); ++i) {
    os << "dip " << i + 1 << ": ";
    for (bool b : dips[i]) os << (b ? '1' : '0');
    os << '\n';
  }
  os << "key: ";
  for (bool b : recovered_key) os << (b ? '1' : '0');
  os << '\n';
  return os.str();
}

namespace {

KeyVector extract_key(const cnf::CircuitBinding& copy,
                      const cnf::Assignment& model) {
  KeyVector key;
  for (int var : copy.key_vars) key.push_back(model.value(var));
  return key;
}

}  // namespace

SatAttackStats sat_attack(const Netlist& locked, const Oracle& oracle) {
  SatAttackStats stats;
  if (locked.key_inputs().empty()) return stats;
  if (oracle.circuit().primary_inputs().size() !=
          locked.primary_inputs().size() ||
      oracle.circuit().outputs().size() != locked.outputs().size())
    throw std::invalid_argument("oracle and locked circuit shape mismatch");

  // Each iteration rebuilds the formula: the miter plus the accumulated
  // IO constraints, which keeps the encoding straightforward to audit.
  std::vector<std::pair<BitString, BitString>> observed;
  for (;;) {
    cnf::MiterBundle bundle = cnf::build_miter(locked);
    for (const auto& [dip, out] : observed) cnf::constrain_io(bundle, dip, out);

    auto model = cnf::dpll_solve(bundle.formula);
    if (!model) break;

    ++stats.iterations;
    BitString dip;
    for (int var : bundle.copy1.input_vars) dip.push_back(model->value(var));
    BitString response = oracle.query(dip);
    stats.dips.push_back(dip);
    observed.emplace_back(std::move(dip), std::move(response));
  }

  // No distinguishing input remains; any key consistent with the observations
  // and with pairwise-equal miter outputs is correct.
  cnf::MiterBundle final_bundle = cnf::build_miter(locked);
  for (const auto& [dip, out] : observed)
    cnf::constrain_io(final_bundle, dip, out);
  // Retract the difference assertion by forcing the outputs equal instead.
  final_bundle.formula.add_clause({-final_bundle.diff_var});
  std::vector<cnf::Clause>& clauses = final_bundle.formula.clauses;
  for (auto it = clauses.begin(); it != clauses.end(); ++it) {
    if (it->size() == 1 && (*it)[0] == final_bundle.diff_var) {
      clauses.erase(it);
      break;
    }
  }
  auto model = cnf::dpll_solve(final_bundle.formula);
  if (!model) throw AttackFailure("no key consistent with oracle responses");
  stats.recovered_key = extract_key(final_bundle.copy1, *model);
  return stats;
}

std::vector<std::optional<bool>> sensitization_attack(const Netlist& locked,
                                                      const Oracle& oracle,
                                                      int input_limit) {
  const std::size_t num_inputs = locked.primary_inputs().size();
  const std::size_t num_keys = locked.key_inputs().size();
  if (int(num_inputs) > input_limit)
    throw std::invalid_argument("too many inputs for exhaustive search");
  if (num_keys > 20)
    throw std::invalid_argument("too many key bits for exhaustive search");

  std::vector<std::optional<bool>> resolved(num_keys);

  for (std::size_t ki = 0; ki < num_keys; ++ki) {
    for (std::uint64_t in = 0; in < (1ull << num_inputs); ++in) {
      BitString inputs(num_inputs);
      for (std::size_t b = 0; b < num_inputs; ++b)
        inputs[b] = (in >> (num_inputs - 1 - b)) & 1;

      // The pattern sensitizes key bit ki if flipping that bit changes some
      // output the same way regardless of how the other key bits are set.
      bool sensitizes = true;
      std::optional<BitString> out0, out1;
      for (std::uint64_t rest = 0; rest < (1ull << (num_keys - 1)); ++rest) {
        KeyVector key(num_keys);
        std::size_t r = 0;
        for (std::size_t kb = 0; kb < num_keys; ++kb)
          if (kb != ki) key[kb] = (rest >> r++) & 1;

        key[ki] = false;
        BitString o0 = locked.evaluate(inputs, key);
        key[ki] = true;
        BitString o1 = locked.evaluate(inputs, key);
        if (o0 == o1) {
          sensitizes = false;
          break;
        }
        if (!out0) {
          out0 = o0;
          out1 = o1;
        } else if (o0 != *out0 || o1 != *out1) {
          sensitizes = false;
          break;
        }
      }
      if (!sensitizes) continue;

      BitString response = oracle.query(inputs);
      if (response == *out0)
        resolved[ki] = false;
      else if (response == *out1)
        resolved[ki] = true;
      else
        continue;  // oracle disagrees with both, pattern unusable
      break;
    }
  }
  return resolved;
}

}  // namespace hwsec::atk
