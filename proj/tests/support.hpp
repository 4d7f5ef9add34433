// Shared generators and property suites, used by the unit tests and the
// acceptance runner.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hwsec/attacks.hpp"
#include "hwsec/cnf.hpp"
#include "hwsec/locking.hpp"
#include "hwsec/netlist.hpp"
#include "hwsec/prng.hpp"

namespace support {

// Feed-forward netlist in BENCH text form: 2..5 inputs, 3..10 gates,
// 1..2 outputs.
inline hwsec::nl::Netlist random_netlist(hwsec::SplitMix64& rng) {
  static const char* kKinds[] = {"AND", "NAND", "OR",  "NOR",
                                 "XOR", "XNOR", "NOT", "BUF"};
  const int num_inputs = 2 + int(rng.next_below(4));
  const int num_gates = 3 + int(rng.next_below(8));

  std::vector<std::string> nets;
  std::ostringstream os;
  for (int i = 0; i < num_inputs; ++i) {
    nets.push_back("i" + std::to_string(i));
    os << "INPUT(" << nets.back() << ")\n";
  }
  std::ostringstream gates;
  for (int g = 0; g < num_gates; ++g) {
    const int kind = int(rng.next_below(8));
    const int arity = kind >= 6 ? 1 : 2 + int(rng.next_below(2));
    std::string out = "g" + std::to_string(g);
    gates << out << " = " << kKinds[kind] << "(";
    for (int a = 0; a < arity; ++a) {
      if (a) gates << ", ";
      gates << nets[rng.next_below(nets.size())];
    }
    gates << ")\n";
    nets.push_back(std::move(out));
  }
  const int num_outputs = 1 + int(rng.next_below(2));
  for (int o = 0; o < num_outputs; ++o)
    os << "OUTPUT(g" << num_gates - 1 - o << ")\n";
  os << gates.str();
  return hwsec::nl::Netlist::parse_bench(os.str());
}

inline std::vector<bool> random_bits(hwsec::SplitMix64& rng, std::size_t n) {
  std::vector<bool> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = rng.next() & 1;
  return bits;
}

// Checks the Tseytin encoding against direct simulation over every
// input/key assignment.
inline bool tseytin_matches_simulation(const hwsec::nl::Netlist& n) {
  namespace cnf = hwsec::cnf;
  const std::size_t ni = n.primary_inputs().size();
  const std::size_t nk = n.key_inputs().size();
  if (ni + nk > 16) return false;

  for (std::uint64_t word = 0; word < (1ull << (ni + nk)); ++word) {
    std::vector<bool> inputs(ni), key(nk);
    for (std::size_t i = 0; i < ni; ++i)
      inputs[i] = (word >> (ni + nk - 1 - i)) & 1;
    for (std::size_t i = 0; i < nk; ++i) key[i] = (word >> (nk - 1 - i)) & 1;

    cnf::CnfFormula f;
    cnf::CircuitBinding binding = cnf::encode_circuit(f, n);
    for (std::size_t i = 0; i < ni; ++i)
      f.add_clause({inputs[i] ? binding.input_vars[i] : -binding.input_vars[i]});
    for (std::size_t i = 0; i < nk; ++i)
      f.add_clause({key[i] ? binding.key_vars[i] : -binding.key_vars[i]});

    auto model = cnf::dpll_solve(f);
    if (!model) return false;
    const auto expected = n.evaluate(inputs, key);
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (model->value(binding.output_vars[i]) != expected[i]) return false;
  }
  return true;
}

inline bool satisfies(const hwsec::cnf::CnfFormula& f,
                      const std::vector<bool>& values) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause)
      if (values[std::size_t(std::abs(lit))] == (lit > 0)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

inline bool exhaustively_satisfiable(const hwsec::cnf::CnfFormula& f) {
  std::vector<bool> values(std::size_t(f.num_vars) + 1);
  for (std::uint64_t word = 0; word < (1ull << f.num_vars); ++word) {
    for (int v = 1; v <= f.num_vars; ++v)
      values[std::size_t(v)] = (word >> (v - 1)) & 1;
    if (satisfies(f, values)) return true;
  }
  return false;
}

// ---- property suites ----

inline bool prop_tseytin_vs_simulation(int rounds = 100) {
  hwsec::SplitMix64 rng(0xACE1);
  for (int r = 0; r < rounds; ++r)
    if (!tseytin_matches_simulation(random_netlist(rng))) return false;
  return true;
}

inline bool prop_dpll_vs_exhaustive(int rounds = 200) {
  hwsec::SplitMix64 rng(0xBEE2);
  for (int r = 0; r < rounds; ++r) {
    hwsec::cnf::CnfFormula f;
    f.num_vars = 3 + int(rng.next_below(14));
    const int num_clauses = f.num_vars + int(rng.next_below(3 * f.num_vars));
    for (int c = 0; c < num_clauses; ++c) {
      hwsec::cnf::Clause clause;
      const int len = 1 + int(rng.next_below(4));
      for (int l = 0; l < len; ++l) {
        int var = 1 + int(rng.next_below(std::uint64_t(f.num_vars)));
        clause.push_back(rng.next() & 1 ? var : -var);
      }
      f.add_clause(std::move(clause));
    }
    auto model = hwsec::cnf::dpll_solve(f);
    if (model.has_value() != exhaustively_satisfiable(f)) return false;
    if (model && !satisfies(f, model->values)) return false;
  }
  return true;
}

inline bool prop_lock_correct_key_equivalence(int rounds = 50) {
  hwsec::SplitMix64 rng(0xCAB3);
  for (int r = 0; r < rounds; ++r) {
    auto original = random_netlist(rng);
    const int max_keys =
        int(original.primary_inputs().size() + original.gates().size());
    const int num_keys = 1 + int(rng.next_below(std::uint64_t(
                                 std::min(max_keys, 4))));
    auto result = hwsec::lock::random_lock(original, num_keys, rng.next());
    if (!hwsec::nl::equivalent_exhaustive(result.locked, original, result.key,
                                          std::nullopt))
      return false;
  }
  return true;
}

inline bool prop_miter_unsat_iff_equivalent(int rounds = 50) {
  namespace cnf = hwsec::cnf;
  hwsec::SplitMix64 rng(0xD1CE);
  for (int r = 0; r < rounds; ++r) {
    auto original = random_netlist(rng);
    auto result = hwsec::lock::random_lock(original, 1 + int(rng.next_below(3)),
                                           rng.next());
    const std::size_t nk = result.locked.key_inputs().size();
    const auto key1 = random_bits(rng, nk);
    const auto key2 = random_bits(rng, nk);

    cnf::MiterBundle bundle = cnf::build_miter(result.locked);
    for (std::size_t i = 0; i < nk; ++i) {
      bundle.formula.add_clause(
          {key1[i] ? bundle.copy1.key_vars[i] : -bundle.copy1.key_vars[i]});
      bundle.formula.add_clause(
          {key2[i] ? bundle.copy2.key_vars[i] : -bundle.copy2.key_vars[i]});
    }
    const bool miter_sat = hwsec::cnf::dpll_solve(bundle.formula).has_value();
    const bool equal = hwsec::nl::equivalent_exhaustive(
        result.locked, result.locked, key1, key2);
    if (miter_sat == equal) return false;
  }
  return true;
}

inline bool prop_sat_attack_recovers(int rounds = 50) {
  hwsec::SplitMix64 rng(0xFEED);
  for (int r = 0; r < rounds; ++r) {
    auto original = random_netlist(rng);
    auto result = hwsec::lock::random_lock(original, 1 + int(rng.next_below(3)),
                                           rng.next());
    hwsec::atk::Oracle oracle(original);
    auto stats = hwsec::atk::sat_attack(result.locked, oracle);
    if (!hwsec::nl::equivalent_exhaustive(result.locked, original,
                                          stats.recovered_key, std::nullopt))
      return false;
  }
  return true;
}

// ---- transcription of the six-key two-copy majority formula ----
// Two locked copies share inputs a,b,c and differ in keys; three
// input/output observations pin the keys down. The second copy's NAND
// reads the first copy's gate 5, as published.

struct TwoCopyFormula {
  hwsec::cnf::CnfFormula f;
  int k1a = 0, k2a = 0, k3a = 0;
  int k1b = 0, k2b = 0, k3b = 0;
};

inline TwoCopyFormula two_copy_majority_formula(bool with_difference) {
  TwoCopyFormula t;
  auto& f = t.f;
  auto and2 = [&](int o, int x, int y) {
    f.add_clause({-o, x});
    f.add_clause({-o, y});
    f.add_clause({o, -x, -y});
  };
  auto nand2 = [&](int o, int x, int y) {
    f.add_clause({o, x});
    f.add_clause({o, y});
    f.add_clause({-o, -x, -y});
  };
  auto xor2 = [&](int o, int x, int y) {
    f.add_clause({-o, x, y});
    f.add_clause({-o, -x, -y});
    f.add_clause({o, -x, y});
    f.add_clause({o, x, -y});
  };
  auto xnor2 = [&](int o, int x, int y) { xor2(-o, x, y); };
  auto or2 = [&](int o, int x, int y) {
    f.add_clause({o, -x});
    f.add_clause({o, -y});
    f.add_clause({-o, x, y});
  };

  t.k1a = f.new_var();
  t.k2a = f.new_var();
  t.k3a = f.new_var();
  t.k1b = f.new_var();
  t.k2b = f.new_var();
  t.k3b = f.new_var();

  // One keyed copy; cross5 != 0 substitutes the other copy's gate 5 into
  // the NAND, out != 0 reuses an existing output variable.
  auto add_copy = [&](int a, int b, int c, int k1, int k2, int k3, int cross5,
                      int* own5, int out) {
    const int g0 = f.new_var();
    nand2(g0, a, b);
    const int g1 = f.new_var();
    nand2(g1, b, c);
    const int g2 = f.new_var();
    and2(g2, c, a);
    const int g5 = f.new_var();
    xnor2(g5, k1, g0);
    const int g4 = f.new_var();
    xor2(g4, k2, g1);
    const int g3 = f.new_var();
    xnor2(g3, k3, g2);
    const int g6 = f.new_var();
    nand2(g6, cross5 ? cross5 : g5, g4);
    const int y = out ? out : f.new_var();
    or2(y, g6, g3);
    if (own5) *own5 = g5;
    return y;
  };

  // Free-input miter section.
  const int a = f.new_var(), b = f.new_var(), c = f.new_var();
  int u5 = 0;
  const int y = add_copy(a, b, c, t.k1a, t.k2a, t.k3a, 0, &u5, 0);
  const int yx = add_copy(a, b, c, t.k1b, t.k2b, t.k3b, u5, nullptr, 0);
  if (with_difference) {
    f.add_clause({y, yx});
    f.add_clause({-y, -yx});
  }

  // (input pattern, shared output value) observations.
  struct Obs {
    bool a, b, c, y;
  };
  for (const Obs& obs : {Obs{1, 0, 1, 1}, Obs{0, 1, 1, 1}, Obs{0, 1, 0, 0}}) {
    const int ia = f.new_var(), ib = f.new_var(), ic = f.new_var();
    int c5 = 0;
    const int oy = add_copy(ia, ib, ic, t.k1a, t.k2a, t.k3a, 0, &c5, 0);
    add_copy(ia, ib, ic, t.k1b, t.k2b, t.k3b, c5, nullptr, oy);
    f.add_clause({obs.a ? ia : -ia});
    f.add_clause({obs.b ? ib : -ib});
    f.add_clause({obs.c ? ic : -ic});
    f.add_clause({obs.y ? oy : -oy});
  }
  return t;
}

}  // namespace support
