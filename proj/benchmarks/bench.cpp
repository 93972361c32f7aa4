// Microbenchmarks for the hot paths: move generation, feature extraction,
// fixed-depth search, and the GA's per-organism error sum.

#include <benchmark/benchmark.h>

#include "evotune/board.hpp"
#include "evotune/eval.hpp"
#include "evotune/expert.hpp"
#include "evotune/ga.hpp"
#include "evotune/rng.hpp"
#include "evotune/search.hpp"

namespace {

using namespace evotune;

// A tactically busy middlegame position (the classic movegen stress test).
const char* kBusyFen = "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1";

void BM_perft_startpos_d3(benchmark::State& state) {
  const Position p = Position::startpos();
  for (auto _ : state) benchmark::DoNotOptimize(perft(p, 3));
}
BENCHMARK(BM_perft_startpos_d3);

void BM_legal_moves_busy(benchmark::State& state) {
  const Position p = Position::from_fen(kBusyFen);
  for (auto _ : state) benchmark::DoNotOptimize(p.legal_moves());
}
BENCHMARK(BM_legal_moves_busy);

void BM_extract_features(benchmark::State& state) {
  const Position p = Position::from_fen(kBusyFen);
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(p));
}
BENCHMARK(BM_extract_features);

void BM_evaluate(benchmark::State& state) {
  const Position p = Position::from_fen(kBusyFen);
  const EvalParams ref = EvalParams::reference();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, ref));
}
BENCHMARK(BM_evaluate);

void BM_alphabeta_startpos(benchmark::State& state) {
  const Position p = Position::startpos();
  const EvalParams ref = EvalParams::reference();
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(alphabeta(p, depth, ref));
}
BENCHMARK(BM_alphabeta_startpos)->Arg(2)->Arg(3)->Arg(4);

void BM_organism_error_sum(benchmark::State& state) {
  const EvalParams ref = EvalParams::reference();
  StaticHiddenExpert expert(ref);
  const TrainingSet ts = build_training_set(playout_source(0xBE7C4, 8, 60), expert,
                                            2 * static_cast<int>(state.range(0)), 0xBE7C5);
  const PreparedSample sample = PreparedSample::from(ts.train);
  for (auto _ : state) benchmark::DoNotOptimize(organism_error_sum(ref, sample));
  state.SetItemsProcessed(state.iterations() * sample.size());
}
BENCHMARK(BM_organism_error_sum)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
