#include "hwsec/netlist.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace hwsec::nl {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '$' || c == '[' || c == ']';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

void check_arity(GateKind kind, std::size_t n_inputs, int line) {
  const bool unary = kind == GateKind::Not || kind == GateKind::Buf;
  if (unary && n_inputs != 1)
    throw ParseError(line, std::string(gate_kind_name(kind)) +
                               " takes exactly 1 input");
  if (!unary && n_inputs < 2)
    throw ParseError(line, std::string(gate_kind_name(kind)) +
                               " takes at least 2 inputs");
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Nand: return "NAND";
    case GateKind::Or: return "OR";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Not: return "NOT";
    case GateKind::Buf: return "BUF";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  if (upper == "AND") return GateKind::And;
  if (upper == "NAND") return GateKind::Nand;
  if (upper == "OR") return GateKind::Or;
  if (upper == "NOR") return GateKind::Nor;
  if (upper == "XOR") return GateKind::Xor;
  if (upper == "XNOR") return GateKind::Xnor;
  if (upper == "NOT") return GateKind::Not;
  if (upper == "BUF" || upper == "BUFF") return GateKind::Buf;
  return std::nullopt;
}

Netlist::Netlist(Data data)
    : names_(std::move(data.net_names)),
      primary_inputs_(std::move(data.primary_inputs)),
      key_inputs_(std::move(data.key_inputs)),
      outputs_(std::move(data.outputs)),
      gates_(std::move(data.gates)) {
  const int n = int(names_.size());
  auto check_id = [&](int id) {
    if (id < 0 || id >= n) throw ValidationError("net id out of range");
  };

  std::vector<int> driver(size_t(n), -1);  // -1 none, -2 input, else gate idx
  for (int id : primary_inputs_) {
    check_id(id);
    if (driver[size_t(id)] != -1)
      throw ValidationError("net defined twice: " + names_[size_t(id)]);
    driver[size_t(id)] = -2;
  }
  for (int id : key_inputs_) {
    check_id(id);
    if (driver[size_t(id)] != -1)
      throw ValidationError("net defined twice: " + names_[size_t(id)]);
    driver[size_t(id)] = -2;
  }
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    check_id(gates_[g].output);
    check_arity(gates_[g].kind, gates_[g].inputs.size(), 0);
    if (driver[size_t(gates_[g].output)] != -1)
      throw ValidationError("net defined twice: " +
                            names_[size_t(gates_[g].output)]);
    driver[size_t(gates_[g].output)] = int(g);
    for (int in : gates_[g].inputs) check_id(in);
  }
  for (std::size_t g = 0; g < gates_.size(); ++g)
    for (int in : gates_[g].inputs)
      if (driver[size_t(in)] == -1)
        throw ValidationError("undefined net: " + names_[size_t(in)]);
  for (int id : outputs_) {
    check_id(id);
    if (driver[size_t(id)] == -1)
      throw ValidationError("undefined output net: " + names_[size_t(id)]);
  }

  // Kahn's algorithm; leftovers mean a combinational cycle.
  std::vector<int> pending(gates_.size());
  std::vector<std::vector<int>> consumers(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    int unresolved = 0;
    for (int in : gates_[g].inputs)
      if (driver[size_t(in)] >= 0) {
        consumers[size_t(in)].push_back(int(g));
        ++unresolved;
      }
    pending[g] = unresolved;
  }
  std::queue<int> ready;
  for (std::size_t g = 0; g < gates_.size(); ++g)
    if (pending[g] == 0) ready.push(int(g));
  while (!ready.empty()) {
    const int g = ready.front();
    ready.pop();
    topo_gates_.push_back(g);
    for (int next : consumers[size_t(gates_[size_t(g)].output)])
      if (--pending[size_t(next)] == 0) ready.push(next);
  }
  if (topo_gates_.size() != gates_.size())
    throw ValidationError("combinational cycle detected");
}

Netlist Netlist::parse_bench(std::string_view text,
                             std::string_view key_prefix) {
  Data data;
  std::unordered_map<std::string, int> ids;
  auto net_id = [&](std::string_view name) {
    auto it = ids.find(std::string(name));
    if (it != ids.end()) return it->second;
    const int id = int(data.net_names.size());
    data.net_names.emplace_back(name);
    ids.emplace(name, id);
    return id;
  };

  std::vector<std::string> output_names;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto parse_paren = [&](std::string_view s) -> std::string_view {
      const auto open = s.find('(');
      const auto close = s.rfind(')');
      if (open == std::string_view::npos || close == std::string_view::npos ||
          close < open)
        throw ParseError(line_no, "malformed declaration");
      return trim(s.substr(open + 1, close - open - 1));
    };

    if (line.starts_with("INPUT")) {
      const std::string_view name = parse_paren(line);
      if (name.empty()) throw ParseError(line_no, "empty input name");
      const int id = net_id(name);
      auto& bucket =
          name.starts_with(key_prefix) ? data.key_inputs : data.primary_inputs;
      if (std::find(bucket.begin(), bucket.end(), id) != bucket.end())
        throw ParseError(line_no, "duplicate input " + std::string(name));
      bucket.push_back(id);
      continue;
    }
    if (line.starts_with("OUTPUT")) {
      output_names.emplace_back(parse_paren(line));
      data.outputs.push_back(net_id(output_names.back()));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, "expected assignment");
    const std::string_view lhs = trim(line.substr(0, eq));
    const std::string_view rhs = trim(line.substr(eq + 1));
    for (char c : lhs)
      if (!is_ident_char(c)) throw ParseError(line_no, "bad net name");

    const auto open = rhs.find('(');
    if (open == std::string_view::npos || !rhs.ends_with(")"))
      throw ParseError(line_no, "expected KIND(a, b, ...)");
    const std::string_view kind_name = trim(rhs.substr(0, open));
    const auto kind = gate_kind_from_name(kind_name);
    if (!kind)
      throw ParseError(line_no, "unknown gate kind " + std::string(kind_name));

    Gate gate;
    gate.kind = *kind;
    gate.output = net_id(lhs);
    std::string_view args = rhs.substr(open + 1, rhs.size() - open - 2);
    while (!args.empty()) {
      const auto comma = args.find(',');
      const std::string_view arg = trim(args.substr(0, comma));
      if (arg.empty()) throw ParseError(line_no, "empty gate input");
      gate.inputs.push_back(net_id(arg));
      if (comma == std::string_view::npos) break;
      args = args.substr(comma + 1);
    }
    check_arity(gate.kind, gate.inputs.size(), line_no);
    data.gates.push_back(std::move(gate));
  }

  try {
    return Netlist(std::move(data));
  } catch (const ValidationError& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string Netlist::serialize_bench() const {
  std::ostringstream os;
  for (int id : primary_inputs_) os << "INPUT(" << names_[size_t(id)] << ")\n";
  for (int id : key_inputs_) os << "INPUT(" << names_[size_t(id)] << ")\n";
  for (int id : outputs_) os << "OUTPUT(" << names_[size_t(id)] << ")\n";
  for (const Gate& g : gates_) {
    os << names_[size_t(g.output)] << " = " << gate_kind_name(g.kind) << "(";
    for (std::size_t i = 0; i < g.inputs.size(); ++i)
      os << (i ? ", " : "") << names_[size_t(g.inputs[i])];
    os << ")\n";
  }
  return os.str();
}

BitString Netlist::evaluate(const std::vector<bool>& inputs,
                            const std::vector<bool>& key) const {
  if (inputs.size() != primary_inputs_.size())
    throw std::invalid_argument("primary input width mismatch");
  if (key.size() != key_inputs_.size())
    throw std::invalid_argument("key width mismatch");

  std::vector<bool> value(names_.size(), false);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    value[size_t(primary_inputs_[i])] = inputs[i];
  for (std::size_t i = 0; i < key.size(); ++i)
    value[size_t(key_inputs_[i])] = key[i];

  for (int g : topo_gates_) {
    const Gate& gate = gates_[size_t(g)];
    bool v = false;
    switch (gate.kind) {
      case GateKind::And:
      case GateKind::Nand:
        v = true;
        for (int in : gate.inputs) v = v && value[size_t(in)];
        if (gate.kind == GateKind::Nand) v = !v;
        break;
      case GateKind::Or:
      case GateKind::Nor:
        v = false;
        for (int in : gate.inputs) v = v || value[size_t(in)];
        if (gate.kind == GateKind::Nor) v = !v;
        break;
      case GateKind::Xor:
      case GateKind::Xnor:
        v = false;
        for (int in : gate.inputs) v = v != value[size_t(in)];
        if (gate.kind == GateKind::Xnor) v = !v;
        break;
      case GateKind::Not:
        v = !value[size_t(gate.inputs[0])];
        break;
      case GateKind::Buf:
        v = value[size_t(gate.inputs[0])];
        break;
    }
    value[size_t(gate.output)] = v;
  }

  BitString out;
  out.reserve(outputs_.size());
  for (int id : outputs_) out.push_back(value[size_t(id)]);
  return out;
}

std::vector<BitString> Netlist::truth_table(const std::optional<KeyVector>& key,
                                            int input_limit) const {
  const std::size_t n = primary_inputs_.size();
  if (int(n) > input_limit)
    throw std::invalid_argument("too many primary inputs for a truth table");
  const KeyVector k = key.value_or(KeyVector(key_inputs_.size(), false));

  std::vector<BitString> rows;
  rows.reserve(std::size_t(1) << n);
  for (std::size_t row = 0; row < (std::size_t(1) << n); ++row) {
    std::vector<bool> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = (row >> (n - 1 - i)) & 1;
    rows.push_back(evaluate(in, k));
  }
  return rows;
}

bool Netlist::structurally_equal(const Netlist& other) const {
  auto name_of = [](const Netlist& n, const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int id : ids) out.push_back(n.net_name(id));
    return out;
  };
  if (name_of(*this, primary_inputs_) != name_of(other, other.primary_inputs_) ||
      name_of(*this, key_inputs_) != name_of(other, other.key_inputs_) ||
      name_of(*this, outputs_) != name_of(other, other.outputs_) ||
      gates_.size() != other.gates_.size())
    return false;
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    if (gates_[g].kind != other.gates_[g].kind ||
        net_name(gates_[g].output) != other.net_name(other.gates_[g].output) ||
        name_of(*this, gates_[g].inputs) !=
            name_of(other, other.gates_[g].inputs))
      return false;
  }
  return true;
}

bool equivalent_exhaustive(const Netlist& a, const Netlist& b,
                           const std::optional<KeyVector>& key_a,
                           const std::optional<KeyVector>& key_b,
                           int input_limit) {
  if (a.primary_inputs().size() != b.primary_inputs().size())
    throw std::invalid_argument("primary input count mismatch");
  const auto ta = a.truth_table(key_a, input_limit);
  const auto tb = b.truth_table(key_b, input_limit);
  return ta == tb;
}

}  // namespace hwsec::nl
