#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hwsec/netlist.hpp"
#include "hwsec/prng.hpp"
#include "support.hpp"

using hwsec::nl::GateKind;
using hwsec::nl::Netlist;
using hwsec::nl::ParseError;
using hwsec::nl::ValidationError;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string kDataDir = HWSEC_DATA_DIR;

}  // namespace

TEST_CASE("gate kind names round-trip") {
  for (GateKind k : {GateKind::And, GateKind::Nand, GateKind::Or, GateKind::Nor,
                     GateKind::Xor, GateKind::Xnor, GateKind::Not,
                     GateKind::Buf})
    CHECK(hwsec::nl::gate_kind_from_name(hwsec::nl::gate_kind_name(k)) == k);
  CHECK(!hwsec::nl::gate_kind_from_name("MUX").has_value());
}

TEST_CASE("bundled locked majority circuit evaluates correctly") {
  const auto n = Netlist::parse_bench(slurp(kDataDir + "/fig6.bench"));
  REQUIRE(n.primary_inputs().size() == 3);
  REQUIRE(n.key_inputs().size() == 3);
  REQUIRE(n.outputs().size() == 1);

  const std::vector<bool> key{true, false, true};
  for (int word = 0; word < 8; ++word) {
    const std::vector<bool> in{bool(word & 4), bool(word & 2), bool(word & 1)};
    const bool majority = int(in[0]) + int(in[1]) + int(in[2]) >= 2;
    CHECK(n.evaluate(in, key)[0] == majority);
  }
}

TEST_CASE("serialize then parse preserves structure") {
  hwsec::SplitMix64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto n = support::random_netlist(rng);
    const auto round_trip = Netlist::parse_bench(n.serialize_bench());
    CHECK(n.structurally_equal(round_trip));
  }
}

TEST_CASE("parse errors carry line numbers") {
  try {
    Netlist::parse_bench("INPUT(a)\nb = FROB(a)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }

  CHECK_THROWS_AS(Netlist::parse_bench("INPUT(a)\nOUTPUT(b)\n"), ParseError);
  CHECK_THROWS_AS(Netlist::parse_bench("INPUT(a)\nb = AND(a, q)\nOUTPUT(b)\n"),
                  ParseError);
  CHECK_THROWS_AS(
      Netlist::parse_bench("INPUT(a)\nb = NOT(a)\nb = BUF(a)\nOUTPUT(b)\n"),
      ParseError);
  CHECK_THROWS_AS(Netlist::parse_bench("INPUT(a)\nb = NOT(a, a)\nOUTPUT(b)\n"),
                  ParseError);
  CHECK_THROWS_AS(Netlist::parse_bench("INPUT(a)\nb = AND(a)\nOUTPUT(b)\n"),
                  ParseError);
}

TEST_CASE("combinational loops are rejected") {
  CHECK_THROWS_AS(Netlist::parse_bench("INPUT(a)\n"
                                       "x = AND(a, y)\n"
                                       "y = AND(a, x)\n"
                                       "OUTPUT(y)\n"),
                  ParseError);
}

TEST_CASE("comments and blank lines are skipped") {
  const auto n = Netlist::parse_bench("# header\n\nINPUT(a)\n# mid\n"
                                      "OUTPUT(b)\nb = NOT(a)  # trailing\n");
  CHECK(n.gates().size() == 1);
  CHECK(n.evaluate(std::vector<bool>{false})[0]);
}

TEST_CASE("truth table enumerates inputs in binary order") {
  const auto n = Netlist::parse_bench(
      "INPUT(a)\nINPUT(b)\nOUTPUT(x)\nx = XOR(a, b)\n");
  const auto table = n.truth_table();
  REQUIRE(table.size() == 4);
  CHECK(!table[0][0]);
  CHECK(table[1][0]);
  CHECK(table[2][0]);
  CHECK(!table[3][0]);
}

TEST_CASE("exhaustive equivalence distinguishes near-identical designs") {
  const auto a =
      Netlist::parse_bench("INPUT(p)\nINPUT(q)\nOUTPUT(x)\nx = NAND(p, q)\n");
  const auto b = Netlist::parse_bench(
      "INPUT(p)\nINPUT(q)\nOUTPUT(x)\nn = AND(p, q)\nx = NOT(n)\n");
  const auto c =
      Netlist::parse_bench("INPUT(p)\nINPUT(q)\nOUTPUT(x)\nx = NOR(p, q)\n");
  CHECK(hwsec::nl::equivalent_exhaustive(a, b));
  CHECK(!hwsec::nl::equivalent_exhaustive(a, c));
}

TEST_CASE("evaluate validates widths") {
  const auto n = Netlist::parse_bench("INPUT(a)\nOUTPUT(b)\nb = BUF(a)\n");
  CHECK_THROWS(n.evaluate(std::vector<bool>{}));
  CHECK_THROWS(n.evaluate(std::vector<bool>{true, false}));
}

TEST_CASE("key inputs follow the chosen prefix") {
  const auto n = Netlist::parse_bench(
      "INPUT(a)\nINPUT(sk0)\nOUTPUT(y)\ny = XOR(a, sk0)\n", "sk");
  REQUIRE(n.key_inputs().size() == 1);
  CHECK(n.net_name(n.key_inputs()[0]) == "sk0");
  CHECK(n.primary_inputs().size() == 1);
}
