#include "hwsec/locking.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "hwsec/prng.hpp"

namespace hwsec::lock {

using nl::Gate;
using nl::GateKind;
using nl::Netlist;

LockResult random_lock(const Netlist& n, int num_keys, std::uint64_t seed,
                       std::string_view key_prefix) {
  Netlist::Data data;
  data.net_names = n.net_names();
  data.primary_inputs = n.primary_inputs();
  data.key_inputs = n.key_inputs();
  data.outputs = n.outputs();
  data.gates = n.gates();

  // Lockable nets: gate outputs and primary inputs. Existing key nets are
  // never locked again.
  std::vector<int> pool = data.primary_inputs;
  for (const Gate& g : data.gates) pool.push_back(g.output);
  if (num_keys < 0 || num_keys > int(pool.size()))
    throw std::invalid_argument("num_keys exceeds lockable net count");

  SplitMix64 prng(seed);
  for (int i = int(pool.size()) - 1; i > 0; --i)
    std::swap(pool[size_t(i)],
              pool[size_t(prng.next_below(std::uint64_t(i) + 1))]);
  pool.resize(size_t(num_keys));

  std::unordered_set<std::string> used(data.net_names.begin(),
                                       data.net_names.end());
  auto fresh_net = [&](std::string base) {
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    data.net_names.push_back(name);
    return int(data.net_names.size()) - 1;
  };

  LockResult result;
  const std::unordered_set<int> primary(n.primary_inputs().begin(),
                                        n.primary_inputs().end());
  for (int i = 0; i < num_keys; ++i) {
    const int target = pool[size_t(i)];
    const bool use_xnor = prng.next() & 1;
    const GateKind kind = use_xnor ? GateKind::Xnor : GateKind::Xor;
    const int key_net = fresh_net(std::string(key_prefix) + std::to_string(i));
    data.key_inputs.push_back(key_net);

    if (primary.count(target)) {
      // Primary input: insert the key gate after it and rewire consumers.
      const int gated = fresh_net(data.net_names[size_t(target)] + "$lk");
      for (Gate& g : data.gates)
        for (int& in : g.inputs)
          if (in == target) in = gated;
      for (int& out : data.outputs)
        if (out == target) out = gated;
      data.gates.push_back(Gate{gated, kind, {target, key_net}});
    } else {
      // Gate output: rename the driver so consumers stay untouched.
      const int inner = fresh_net(data.net_names[size_t(target)] + "$lk");
      for (Gate& g : data.gates)
        if (g.output == target) g.output = inner;
      data.gates.push_back(Gate{target, kind, {inner, key_net}});
    }

    const bool correct_bit = use_xnor;  // identity-passing value
    result.key.push_back(correct_bit);
    result.record.entries.push_back(
        {n.net_name(target), kind, correct_bit});
  }

  result.locked = Netlist(std::move(data));
  return result;
}

namespace {

struct Folder {
  const Netlist& locked;
  const nl::KeyVector& key;
  Netlist::Data out;
  std::unordered_map<int, std::optional<bool>> constant;  // old id -> const
  std::unordered_map<int, int> mapped;                    // old id -> new id
  std::unordered_set<std::string> used;

  int fresh(const std::string& base) {
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    out.net_names.push_back(name);
    return int(out.net_names.size()) - 1;
  }

  int const_net(bool value) {
    if (out.primary_inputs.empty())
      throw std::invalid_argument(
          "cannot materialize a constant without primary inputs");
    const int src = out.primary_inputs[0];
    const int id = fresh(value ? "const1" : "const0");
    out.gates.push_back(Gate{id, value ? GateKind::Xnor : GateKind::Xor,
                             {src, src}});
    return id;
  }
};

}  // namespace

Netlist apply_key(const Netlist& locked, const nl::KeyVector& key) {
  if (key.size() != locked.key_inputs().size())
    throw std::invalid_argument("key width mismatch");
  if (key.empty()) return locked;

  Folder f{locked, key, {}, {}, {}, {}};
  for (std::size_t i = 0; i < locked.key_inputs().size(); ++i)
    f.constant[locked.key_inputs()[i]] = key[i];
  for (int id : locked.primary_inputs()) {
    const int nid = f.fresh(locked.net_name(id));
    f.mapped[id] = nid;
    f.out.primary_inputs.push_back(nid);
  }

  std::unordered_map<int, int> const_cache;  // value (0/1) -> new net id
  auto materialize_const = [&](bool v) {
    auto it = const_cache.find(int(v));
    if (it != const_cache.end()) return it->second;
    const int id = f.const_net(v);
    const_cache[int(v)] = id;
    return id;
  };

  for (int gi : locked.topological_order()) {
    const Gate& g = locked.gates()[size_t(gi)];
    const bool is_and = g.kind == GateKind::And || g.kind == GateKind::Nand;
    const bool is_or = g.kind == GateKind::Or || g.kind == GateKind::Nor;
    const bool is_xor = g.kind == GateKind::Xor || g.kind == GateKind::Xnor;
    bool invert_out = g.kind == GateKind::Nand || g.kind == GateKind::Nor ||
                      g.kind == GateKind::Xnor || g.kind == GateKind::Not;

    std::vector<int> operands;  // new net ids
    std::optional<bool> folded;
    bool parity = false;
    for (int in : g.inputs) {
      const auto c = f.constant.find(in);
      if (c != f.constant.end() && c->second.has_value()) {
        const bool v = *c->second;
        if (is_and && !v) folded = false;
        if (is_or && v) folded = true;
        if (is_xor) parity ^= v;
        if (g.kind == GateKind::Buf) folded = v;
        if (g.kind == GateKind::Not) folded = !v;
        // AND with 1 / OR with 0 / XOR with 0 just drop the operand.
      } else {
        operands.push_back(f.mapped.at(in));
      }
    }

    if (!folded && operands.empty()) {
      // All inputs were constants.
      folded = is_and ? true : is_or ? false : parity;
    }
    if (folded) {
      f.constant[g.output] = *folded != invert_out;
      continue;
    }

    GateKind kind = g.kind;
    if (is_xor) invert_out = (g.kind == GateKind::Xnor) != parity;
    if (operands.size() == 1) {
      kind = invert_out ? GateKind::Not : GateKind::Buf;
    } else if (is_xor) {
      kind = invert_out ? GateKind::Xnor : GateKind::Xor;
    }

    const int out_id = f.fresh(locked.net_name(g.output));
    f.mapped[g.output] = out_id;
    f.out.gates.push_back(Gate{out_id, kind, std::move(operands)});
  }

  for (int id : locked.outputs()) {
    const auto c = f.constant.find(id);
    int new_id;
    if (c != f.constant.end() && c->second.has_value())
      new_id = materialize_const(*c->second);
    else
      new_id = f.mapped.at(id);
    f.out.outputs.push_back(new_id);
  }

  return Netlist(std::move(f.out));
}

}  // namespace hwsec::lock
