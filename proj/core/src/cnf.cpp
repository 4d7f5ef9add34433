#include "hwsec/cnf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hwsec::cnf {

using nl::Gate;
using nl::GateKind;
using nl::Netlist;

std::string CnfFormula::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const Clause& c : clauses) {
    for (Literal l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

namespace {

void encode_equiv(CnfFormula& f, int a, int b) {
  f.add_clause({-a, b});
  f.add_clause({a, -b});
}

// o <-> op(a, b) for the two-input core operators.
void encode_binary(CnfFormula& f, GateKind kind, int o, int a, int b) {
  switch (kind) {
    case GateKind::And:
      f.add_clause({-o, a});
      f.add_clause({-o, b});
      f.add_clause({o, -a, -b});
      break;
    case GateKind::Or:
      f.add_clause({o, -a});
      f.add_clause({o, -b});
      f.add_clause({-o, a, b});
      break;
    case GateKind::Xor:
      f.add_clause({-o, a, b});
      f.add_clause({-o, -a, -b});
      f.add_clause({o, -a, b});
      f.add_clause({o, a, -b});
      break;
    default:
      throw std::logic_error("not a binary core operator");
  }
}

// Balanced chaining of the associative core op over n inputs; returns the
// variable carrying the combined value.
int encode_chain(CnfFormula& f, GateKind op, std::vector<int> vars) {
  while (vars.size() > 1) {
    std::vector<int> next;
    for (std::size_t i = 0; i + 1 < vars.size(); i += 2) {
      const int o = f.new_var();
      encode_binary(f, op, o, vars[i], vars[i + 1]);
      next.push_back(o);
    }
    if (vars.size() % 2) next.push_back(vars.back());
    vars = std::move(next);
  }
  return vars[0];
}

void encode_gate(CnfFormula& f, GateKind kind, int out,
                 const std::vector<int>& ins) {
  switch (kind) {
    case GateKind::Buf:
      encode_equiv(f, out, ins[0]);
      return;
    case GateKind::Not:
      encode_equiv(f, out, -ins[0]);
      return;
    case GateKind::And:
    case GateKind::Nand: {
      const int v = encode_chain(f, GateKind::And, ins);
      encode_equiv(f, out, kind == GateKind::Nand ? -v : v);
      return;
    }
    case GateKind::Or:
    case GateKind::Nor: {
      const int v = encode_chain(f, GateKind::Or, ins);
      encode_equiv(f, out, kind == GateKind::Nor ? -v : v);
      return;
    }
    case GateKind::Xor:
    case GateKind::Xnor: {
      const int v = encode_chain(f, GateKind::Xor, ins);
      encode_equiv(f, out, kind == GateKind::Xnor ? -v : v);
      return;
    }
  }
}

}  // namespace

CircuitBinding encode_circuit(CnfFormula& f, const Netlist& n,
                              const std::vector<int>* shared_inputs) {
  if (shared_inputs && shared_inputs->size() != n.primary_inputs().size())
    throw std::invalid_argument("shared input variable count mismatch");

  CircuitBinding binding;
  for (std::size_t i = 0; i < n.primary_inputs().size(); ++i) {
    const int var = shared_inputs ? (*shared_inputs)[i] : f.new_var();
    binding.net_to_var[n.primary_inputs()[i]] = var;
    binding.input_vars.push_back(var);
  }
  for (int net : n.key_inputs()) {
    const int var = f.new_var();
    binding.net_to_var[net] = var;
    binding.key_vars.push_back(var);
  }
  for (int gi : n.topological_order()) {
    const Gate& g = n.gates()[size_t(gi)];
    const int out = f.new_var();
    binding.net_to_var[g.output] = out;
    std::vector<int> ins;
    for (int in : g.inputs) ins.push_back(binding.net_to_var.at(in));
    encode_gate(f, g.kind, out, ins);
  }
  for (int net : n.outputs())
    binding.output_vars.push_back(binding.net_to_var.at(net));
  return binding;
}

MiterBundle build_miter(const Netlist& locked) {
  if (locked.key_inputs().empty())
    throw std::invalid_argument("miter requires at least one key input");

  MiterBundle bundle;
  bundle.locked = locked;
  CnfFormula& f = bundle.formula;
  bundle.copy1 = encode_circuit(f, locked);
  bundle.copy2 = encode_circuit(f, locked, &bundle.copy1.input_vars);

  // At least one output pair differs.
  Clause any_diff;
  for (std::size_t i = 0; i < bundle.copy1.output_vars.size(); ++i) {
    const int d = f.new_var();
    encode_binary(f, GateKind::Xor, d, bundle.copy1.output_vars[i],
                  bundle.copy2.output_vars[i]);
    any_diff.push_back(d);
  }
  bundle.diff_var = f.new_var();
  // diff_var <-> OR(any_diff), asserted true.
  for (int d : any_diff) f.add_clause({bundle.diff_var, -d});
  Clause impl = any_diff;
  impl.push_back(-bundle.diff_var);
  f.add_clause(std::move(impl));
  f.add_clause({bundle.diff_var});
  return bundle;
}

void constrain_io(MiterBundle& bundle, const std::vector<bool>& dip,
                  const std::vector<bool>& correct_output) {
  const Netlist& n = bundle.locked;
  if (dip.size() != n.primary_inputs().size() ||
      correct_output.size() != n.outputs().size())
    throw std::invalid_argument("DIP or output width mismatch");

  for (const CircuitBinding* keys : {&bundle.copy1, &bundle.copy2}) {
    CircuitBinding copy = encode_circuit(bundle.formula, n);
    // Tie the fresh copy's key variables to the miter copy's keys.
    for (std::size_t i = 0; i < copy.key_vars.size(); ++i)
      encode_equiv(bundle.formula, copy.key_vars[i], keys->key_vars[i]);
    for (std::size_t i = 0; i < dip.size(); ++i)
      bundle.formula.add_clause(
          {dip[i] ? copy.input_vars[i] : -copy.input_vars[i]});
    for (std::size_t i = 0; i < correct_output.size(); ++i)
      bundle.formula.add_clause(
          {correct_output[i] ? copy.output_vars[i] : -copy.output_vars[i]});
  }
}

namespace {

enum : std::int8_t { kUnset = -1 };

struct Solver {
  const CnfFormula& f;
  std::vector<std::int8_t> assign;  // 1-indexed

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& c : f.clauses) {
        int unassigned = 0;
        Literal unit = 0;
        bool satisfied = false;
        for (Literal l : c) {
          const std::int8_t v = assign[size_t(std::abs(l))];
          if (v == kUnset) {
            ++unassigned;
            unit = l;
          } else if ((v == 1) == (l > 0)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;  // conflict
        if (unassigned == 1) {
          assign[size_t(std::abs(unit))] = unit > 0 ? 1 : 0;
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    if (!propagate()) return false;
    int var = 0;
    for (int v = 1; v <= f.num_vars; ++v)
      if (assign[size_t(v)] == kUnset) {
        var = v;
        break;
      }
    if (var == 0) return true;

    const std::vector<std::int8_t> saved = assign;
    for (std::int8_t value : {std::int8_t(1), std::int8_t(0)}) {
      assign = saved;
      assign[size_t(var)] = value;
      if (search()) return true;
    }
    assign = saved;
    return false;
  }
};

}  // namespace

std::optional<Assignment> dpll_solve(const CnfFormula& f) {
  for (const Clause& c : f.clauses)
    if (c.empty()) return std::nullopt;

  Solver solver{f, std::vector<std::int8_t>(size_t(f.num_vars) + 1, kUnset)};
  if (!solver.search()) return std::nullopt;

  Assignment result;
  result.values.resize(size_t(f.num_vars) + 1, false);
  for (int v = 1; v <= f.num_vars; ++v)
    result.values[size_t(v)] = solver.assign[size_t(v)] == 1;
  return result;
}

}  // namespace hwsec::cnf
