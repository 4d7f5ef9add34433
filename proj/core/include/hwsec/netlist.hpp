#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hwsec::nl {

enum class GateKind { And, Nand, Or, Nor, Xor, Xnor, Not, Buf };

std::string_view gate_kind_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

struct Gate {
  int output;               // net id, defined exactly once
  GateKind kind;
  std::vector<int> inputs;  // net ids
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line(line) {}
  int line;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using BitString = std::vector<bool>;
using KeyVector = std::vector<bool>;

// Gate-level combinational netlist. Immutable after construction; evaluation
// walks a precomputed topological order.
class Netlist {
 public:
  // Raw pieces, validated by the constructor: unique names, single driver
  // per net, known arities, no cycles, all outputs defined.
  struct Data {
    std::vector<std::string> net_names;
    std::vector<int> primary_inputs;
    std::vector<int> key_inputs;
    std::vector<int> outputs;
    std::vector<Gate> gates;
  };

  Netlist() = default;
  explicit Netlist(Data data);

  // ISCAS-style BENCH dialect: INPUT(x), OUTPUT(y), n = KIND(a, b), comments
  // with '#'. Inputs whose names start with key_prefix become key inputs.
  static Netlist parse_bench(std::string_view text,
                             std::string_view key_prefix = "key");
  std::string serialize_bench() const;

  BitString evaluate(const std::vector<bool>& inputs,
                     const std::vector<bool>& key = {}) const;

  // 2^|inputs| rows of output bits, inputs enumerated in binary order.
  std::vector<BitString> truth_table(const std::optional<KeyVector>& key = {},
                                     int input_limit = 16) const;

  const std::vector<std::string>& net_names() const { return names_; }
  const std::string& net_name(int id) const { return names_[size_t(id)]; }
  const std::vector<int>& primary_inputs() const { return primary_inputs_; }
  const std::vector<int>& key_inputs() const { return key_inputs_; }
  const std::vector<int>& outputs() const { return outputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<int>& topological_order() const { return topo_gates_; }

  bool structurally_equal(const Netlist& other) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> primary_inputs_;
  std::vector<int> key_inputs_;
  std::vector<int> outputs_;
  std::vector<Gate> gates_;
  std::vector<int> topo_gates_;  // gate indices in evaluation order
};

bool equivalent_exhaustive(const Netlist& a, const Netlist& b,
                           const std::optional<KeyVector>& key_a = {},
                           const std::optional<KeyVector>& key_b = {},
                           int input_limit = 16);

}  // namespace hwsec::nl
