#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "hwsec/attacks.hpp"
#include "hwsec/des.hpp"
#include "hwsec/netlist.hpp"
#include "hwsec/scan_attack.hpp"
#include "hwsec/scan_emulator.hpp"

namespace {

hwsec::nl::Netlist load(const std::string& name) {
  std::ifstream in(std::string(HWSEC_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return hwsec::nl::Netlist::parse_bench(os.str());
}

void BM_DesEncrypt(benchmark::State& state) {
  const auto key = hwsec::Key64::from_hex("096F2B878D906CA0");
  auto block = hwsec::Block64::from_hex("0BADC0DEDEADC0DE");
  for (auto _ : state) {
    block = hwsec::des::encrypt_block(key, block);
    benchmark::DoNotOptimize(block);
  }
}
BENCHMARK(BM_DesEncrypt);

void BM_EmulatorRun(benchmark::State& state) {
  hwsec::scan::Emulator em(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(em.run("0BADC0DEDEADC0DE", true));
}
BENCHMARK(BM_EmulatorRun);

void BM_FullScanAttack(benchmark::State& state) {
  for (auto _ : state) {
    hwsec::scan::Emulator em(std::uint64_t(state.iterations() + 1));
    benchmark::DoNotOptimize(hwsec::scan::full_scan_attack(em));
  }
}
BENCHMARK(BM_FullScanAttack);

void BM_SatAttackMajority(benchmark::State& state) {
  const auto locked = load("fig6.bench");
  for (auto _ : state) {
    hwsec::atk::Oracle oracle(locked,
                              hwsec::nl::KeyVector{true, false, true});
    benchmark::DoNotOptimize(hwsec::atk::sat_attack(locked, oracle));
  }
}
BENCHMARK(BM_SatAttackMajority);

}  // namespace

BENCHMARK_MAIN();
