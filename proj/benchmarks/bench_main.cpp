#include <benchmark/benchmark.h>

#include <random>

#include "secnpu/crypto/aes.hpp"
#include "secnpu/crypto/otp.hpp"
#include "secnpu/schemes/config.hpp"
#include "secnpu/schemes/metadata_engine.hpp"
#include "secnpu/sim/accelerator.hpp"
#include "secnpu/sim/simulate.hpp"
#include "secnpu/sim/trace.hpp"
#include "secnpu/tiling/topology.hpp"

using namespace secnpu;

namespace {

std::vector<std::uint8_t> key_bytes(std::size_t n) {
  std::vector<std::uint8_t> k(n);
  std::mt19937_64 rng(1);
  for (auto& b : k) b = static_cast<std::uint8_t>(rng());
  return k;
}

void BM_AesEncrypt(benchmark::State& state) {
  const auto rk = crypto::key_expansion(key_bytes(16), crypto::AesVariant::Aes128);
  crypto::Word128 w{};
  for (auto _ : state) {
    w = crypto::aes_encrypt(w, rk);
    benchmark::DoNotOptimize(w);
  }
  state.SetBytesProcessed(state.iterations() * 16);
}
BENCHMARK(BM_AesEncrypt);

void BM_KeyExpansion(benchmark::State& state) {
  const auto key = key_bytes(32);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::key_expansion(key, crypto::AesVariant::Aes256));
}
BENCHMARK(BM_KeyExpansion);

void BM_SelectCombKeys(benchmark::State& state) {
  const auto rk = crypto::key_expansion(key_bytes(16), crypto::AesVariant::Aes128);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::select_comb_keys(rk, static_cast<std::size_t>(state.range(0)), ++seed));
  }
}
BENCHMARK(BM_SelectCombKeys)->Arg(4)->Arg(32);

void BM_EncryptBlock(benchmark::State& state) {
  const auto rk = crypto::key_expansion(key_bytes(16), crypto::AesVariant::Aes128);
  const auto plain = crypto::DataBlock::zeros(static_cast<std::size_t>(state.range(0)));
  std::uint64_t vn = 0;
  for (auto _ : state) {
    const auto ctr = crypto::CounterTuple::make(0, ++vn, plain.size());
    benchmark::DoNotOptimize(crypto::encrypt_block(plain, ctr, rk, 7));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncryptBlock)->Arg(64)->Arg(512);

void BM_MetadataEngine(benchmark::State& state) {
  const auto layers = tiling::load_topology(std::string(SECNPU_WORKLOAD_DIR) + "/alexnet.csv");
  const auto trace = sim::synthesize_workload("alexnet", layers, sim::server_preset()).flatten();
  const auto cfg = schemes::scheme_preset(state.range(0) == 0 ? "sgx64" : "mgx64");
  for (auto _ : state) benchmark::DoNotOptimize(schemes::scheme_traffic(trace, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.size()));
}
BENCHMARK(BM_MetadataEngine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SynthesizeWorkload(benchmark::State& state) {
  const auto layers = tiling::load_topology(std::string(SECNPU_WORKLOAD_DIR) + "/resnet18.csv");
  const auto acc = sim::edge_preset();
  for (auto _ : state) benchmark::DoNotOptimize(sim::synthesize_workload("resnet18", layers, acc));
}
BENCHMARK(BM_SynthesizeWorkload)->Unit(benchmark::kMillisecond);

}  // namespace

// the packaged benchmark_main archive is LTO bytecode from another gcc, so the
// shared library plus our own main is used instead
BENCHMARK_MAIN();
