#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwsec/netlist.hpp"

namespace hwsec::cnf {

// Literal: signed variable id, sign = polarity. Variable ids start at 1.
using Literal = int;
using Clause = std::vector<Literal>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int new_var() { return ++num_vars; }
  void add_clause(Clause c) { clauses.push_back(std::move(c)); }

  // "p cnf V C" header, zero-terminated clause lines.
  std::string to_dimacs() const;
};

// Net-to-variable map for one circuit copy.
struct CircuitBinding {
  std::unordered_map<int, int> net_to_var;
  std::vector<int> input_vars;
  std::vector<int> key_vars;
  std::vector<int> output_vars;
};

// Tseytin encoding of a netlist. When shared_inputs is given its variables
// are reused for the primary inputs; key inputs always get fresh variables.
CircuitBinding encode_circuit(CnfFormula& f, const nl::Netlist& n,
                              const std::vector<int>* shared_inputs = nullptr);

// Two copies of a locked circuit with shared primary inputs, disjoint key
// variables, and a difference assertion over the output pairs.
struct MiterBundle {
  nl::Netlist locked;
  CnfFormula formula;
  CircuitBinding copy1;
  CircuitBinding copy2;
  int diff_var = 0;
};

MiterBundle build_miter(const nl::Netlist& locked);

// Appends two fresh circuit copies (one per key-variable set) whose inputs
// are fixed to the DIP and whose outputs are fixed to the oracle response.
void constrain_io(MiterBundle& bundle, const std::vector<bool>& dip,
                  const std::vector<bool>& correct_output);

struct Assignment {
  std::vector<bool> values;  // 1-indexed by variable id
  bool value(int var) const { return values[size_t(var)]; }
};

// Complete DPLL: unit propagation + chronological backtracking, branching
// on the lowest unassigned variable, true first.
std::optional<Assignment> dpll_solve(const CnfFormula& f);

}  // namespace hwsec::cnf
