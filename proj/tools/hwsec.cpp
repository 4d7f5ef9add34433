// Command line front end for the DES scan attack and logic locking tools.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hwsec/attacks.hpp"
#include "hwsec/cnf.hpp"
#include "hwsec/des.hpp"
#include "hwsec/locking.hpp"
#include "hwsec/scan_attack.hpp"
#include "hwsec/scan_emulator.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

hwsec::nl::Netlist load_bench(const std::string& path,
                              const std::string& key_prefix = "key") {
  return hwsec::nl::Netlist::parse_bench(read_file(path), key_prefix);
}

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> bits;
  for (char c : s) {
    if (c == '\n' || c == '\r' || c == ' ') continue;
    if (c != '0' && c != '1')
      throw std::runtime_error("bit string must contain only 0 and 1");
    bits.push_back(c == '1');
  }
  return bits;
}

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

hwsec::atk::Oracle make_oracle(const std::string& path,
                               const std::string& key_bits) {
  hwsec::nl::Netlist circuit = load_bench(path);
  if (key_bits.empty()) {
    if (!circuit.key_inputs().empty())
      throw std::runtime_error("oracle netlist has key inputs; pass the key");
    return hwsec::atk::Oracle(std::move(circuit));
  }
  std::vector<bool> key = parse_bits(key_bits);
  if (key.size() != circuit.key_inputs().size())
    throw std::runtime_error("oracle key width mismatch");
  return hwsec::atk::Oracle(std::move(circuit), std::move(key));
}

int run(int argc, char** argv) {
  CLI::App app{"DES scan-chain attack and logic locking toolkit"};
  app.require_subcommand(1);

  auto* des = app.add_subcommand("des", "DES block encryption");
  des->require_subcommand(1);
  std::string des_key, des_in;
  for (const char* name : {"encrypt", "decrypt"}) {
    auto* sub = des->add_subcommand(name);
    sub->add_option("--key", des_key, "64-bit key, 16 hex chars")->required();
    sub->add_option("--in", des_in, "64-bit block, 16 hex chars")->required();
  }

  auto* scan = app.add_subcommand("scan-attack",
                                  "run the scan-chain key extraction");
  std::uint64_t scan_seed = 1;
  std::string scan_key, scan_report;
  scan->add_option("--seed", scan_seed, "emulator seed")->required();
  scan->add_option("--key", scan_key, "force the emulator key (hex)");
  scan->add_option("--report", scan_report, "write the report to a file");

  auto* lock = app.add_subcommand("lock", "insert random XOR/XNOR key gates");
  std::string lock_in, lock_out, lock_key_out, lock_prefix = "key";
  int lock_keys = 0;
  std::uint64_t lock_seed = 1;
  lock->add_option("--in", lock_in, "input BENCH file")->required();
  lock->add_option("--keys", lock_keys, "number of key gates")->required();
  lock->add_option("--seed", lock_seed, "PRNG seed")->required();
  lock->add_option("--out", lock_out, "locked BENCH output")->required();
  lock->add_option("--key-out", lock_key_out, "correct key output file")
      ->required();
  lock->add_option("--key-prefix", lock_prefix, "key input name prefix");

  auto* sat = app.add_subcommand("sat-attack", "SAT attack on a locked design");
  std::string sat_locked, sat_oracle, sat_oracle_key;
  sat->add_option("--locked", sat_locked, "locked BENCH file")->required();
  sat->add_option("--oracle", sat_oracle, "oracle BENCH file")->required();
  sat->add_option("--oracle-key", sat_oracle_key,
                  "key bits if the oracle file is itself locked");

  auto* sens = app.add_subcommand("sensitize",
                                  "key sensitization attack on a locked design");
  std::string sens_locked, sens_oracle, sens_oracle_key;
  sens->add_option("--locked", sens_locked, "locked BENCH file")->required();
  sens->add_option("--oracle", sens_oracle, "oracle BENCH file")->required();
  sens->add_option("--oracle-key", sens_oracle_key,
                   "key bits if the oracle file is itself locked");

  auto* sim = app.add_subcommand("sim", "evaluate a netlist on one pattern");
  std::string sim_in, sim_inputs, sim_key;
  sim->add_option("--in", sim_in, "BENCH file")->required();
  sim->add_option("--inputs", sim_inputs, "input bits, MSB first")->required();
  sim->add_option("--key", sim_key, "key bits, MSB first");

  auto* equiv = app.add_subcommand("equiv", "exhaustive equivalence check");
  std::string eq_a, eq_b, eq_key_a, eq_key_b;
  equiv->add_option("--a", eq_a, "first BENCH file")->required();
  equiv->add_option("--b", eq_b, "second BENCH file")->required();
  equiv->add_option("--key-a", eq_key_a, "key bits for the first design");
  equiv->add_option("--key-b", eq_key_b, "key bits for the second design");

  auto* cnf = app.add_subcommand("export-cnf", "Tseytin encoding to DIMACS");
  std::string cnf_in, cnf_out;
  cnf->add_option("--in", cnf_in, "BENCH file")->required();
  cnf->add_option("--out", cnf_out, "DIMACS output file")->required();

  CLI11_PARSE(app, argc, argv);

  if (des->parsed()) {
    const auto key = hwsec::Key64::from_hex(des_key);
    const auto block = hwsec::Block64::from_hex(des_in);
    const bool enc = des->get_subcommand("encrypt")->parsed();
    const auto out = enc ? hwsec::des::encrypt_block(key, block)
                         : hwsec::des::decrypt_block(key, block);
    std::cout << out.to_hex() << '\n';
  } else if (scan->parsed()) {
    std::optional<hwsec::Key64> forced;
    if (!scan_key.empty()) forced = hwsec::Key64::from_hex(scan_key);
    hwsec::scan::Emulator em(scan_seed, forced);
    const auto report = hwsec::scan::full_scan_attack(em);
    const std::string text = report.to_text();
    std::cout << text;
    if (!scan_report.empty()) write_file(scan_report, text);
  } else if (lock->parsed()) {
    const auto original = load_bench(lock_in, lock_prefix);
    const auto result =
        hwsec::lock::random_lock(original, lock_keys, lock_seed, lock_prefix);
    write_file(lock_out, result.locked.serialize_bench());
    write_file(lock_key_out, bits_to_string(result.key) + "\n");
    std::cout << "locked " << lock_keys << " nets, key "
              << bits_to_string(result.key) << '\n';
  } else if (sat->parsed()) {
    const auto locked = load_bench(sat_locked);
    const auto oracle = make_oracle(sat_oracle, sat_oracle_key);
    const auto stats = hwsec::atk::sat_attack(locked, oracle);
    std::cout << stats.to_text();
    std::cout << "oracle queries: " << oracle.query_count() << '\n';
  } else if (sens->parsed()) {
    const auto locked = load_bench(sens_locked);
    const auto oracle = make_oracle(sens_oracle, sens_oracle_key);
    const auto bits = hwsec::atk::sensitization_attack(locked, oracle);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      std::cout << locked.net_name(locked.key_inputs()[i]) << " = ";
      if (bits[i])
        std::cout << (*bits[i] ? '1' : '0') << '\n';
      else
        std::cout << "unresolved\n";
    }
  } else if (sim->parsed()) {
    const auto n = load_bench(sim_in);
    const auto inputs = parse_bits(sim_inputs);
    const auto key = parse_bits(sim_key);
    if (inputs.size() != n.primary_inputs().size())
      throw std::runtime_error("input width mismatch");
    if (key.size() != n.key_inputs().size())
      throw std::runtime_error("key width mismatch");
    std::cout << bits_to_string(n.evaluate(inputs, key)) << '\n';
  } else if (equiv->parsed()) {
    const auto a = load_bench(eq_a);
    const auto b = load_bench(eq_b);
    std::optional<hwsec::nl::KeyVector> ka, kb;
    if (!eq_key_a.empty()) ka = parse_bits(eq_key_a);
    if (!eq_key_b.empty()) kb = parse_bits(eq_key_b);
    const bool same = hwsec::nl::equivalent_exhaustive(a, b, ka, kb);
    std::cout << (same ? "equivalent" : "not equivalent") << '\n';
    return same ? 0 : 1;
  } else if (cnf->parsed()) {
    const auto n = load_bench(cnf_in);
    hwsec::cnf::CnfFormula f;
    hwsec::cnf::encode_circuit(f, n);
    write_file(cnf_out, f.to_dimacs());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
