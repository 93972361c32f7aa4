#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "evotune/expert.hpp"
#include "evotune/genome.hpp"

namespace evotune {

// One population member. The error sum is kept in integer centipawns so
// results are independent of summation order and thread count.
struct Organism {
  Chromosome chromosome;
  int64_t error_sum = -1;  // sum of |expert - organism| over the sample; -1 = unevaluated
  int sample_count = 0;

  bool evaluated() const { return error_sum >= 0; }
  // Mean absolute error in centipawns (E_i).
  double error() const { return static_cast<double>(error_sum) / sample_count; }
  double fitness() const;  // 1 / (1 + error())
};

struct GAConfig {
  int population_size = 1000;
  double crossover_rate = 0.75;
  double mutation_rate = 0.002;
  int generations = 300;
  int sample_size = 1000;  // positions drawn from train each generation
  bool elitism = true;     // replicate the best twice, displacing the worst
  uint64_t seed = 0;
  bool resample_each_generation = true;
  int threads = 1;  // evaluation parallelism; never affects results

  // Throws DataError on violated bounds (given the training-set size).
  void validate(std::size_t train_size) const;
};

struct GenerationStats {
  int generation = 0;
  double best_error = 0;
  double mean_error = 0;
  Chromosome best;
};

// Positions predigested for organism evaluation: scoring an organism is 35
// integer multiplies per position.
struct PreparedSample {
  std::vector<FeatureVector> features;
  std::vector<int8_t> stm_white;  // 1 if white to move
  std::vector<int> expert;        // S_e, side-to-move perspective

  static PreparedSample from(const std::vector<ScoredPosition>& positions);
  std::size_t size() const { return expert.size(); }
};

// Sum over the sample of |S_e - S_i| in integer centipawns.
int64_t organism_error_sum(const EvalParams& params, const PreparedSample& sample);

// Mean absolute error of the chromosome's decoded parameters over the
// sample. Throws DataError on an empty sample.
double organism_error(const Chromosome& c, const std::vector<ScoredPosition>& sample);

// Selection weight: 1 / (1 + error), in (0, 1], strictly decreasing.
double fitness_from_error(double error);

// Roulette draw: index i with probability weights[i] / sum. One rng draw.
// Throws std::invalid_argument on empty or non-positive weights.
std::size_t select_parent(const std::vector<double>& weights, Rng& rng);

// One generation step: sample the training positions, evaluate the
// current population, then breed the next one. Returns the new population
// and the stats of the evaluated (current) one.
//
// Random draws, in order: the sample draw (sample_size draws of a partial
// Fisher-Yates over the training indices; none when resampling is off),
// then per offspring pair: parent A, parent B, the crossover coin, the cut
// point (only when the coin accepts), and per-bit mutation draws for each
// child actually inserted.
std::pair<std::vector<Organism>, GenerationStats> evolve_generation(
    const std::vector<Organism>& pop, const std::vector<ScoredPosition>& train,
    const GAConfig& cfg, Rng& rng);

// Optional per-generation observer: (stats, population after breeding,
// rng). Used for checkpointing and progress reporting.
using GenerationHook =
    std::function<void(const GenerationStats&, const std::vector<Organism>&, const Rng&)>;

// The full loop: random initial population, cfg.generations evolution
// steps (generations = 0 evaluates the initial population once), stats row
// per generation. Returns the best-ever organism, chosen by re-scoring
// each generation's best on the full training set (earliest wins ties).
std::pair<Organism, std::vector<GenerationStats>> run_evolution(
    const GAConfig& cfg, const TrainingSet& ts, const GenerationHook& hook = nullptr);

// Mean absolute error of the organism over the full holdout list.
double evaluate_holdout(const Organism& o, const std::vector<ScoredPosition>& test);

// CSV: header "generation,best_error,mean_error", one 3-decimal row per
// generation.
void write_learning_curve(std::ostream& out, const std::vector<GenerationStats>& stats);
void save_learning_curve(const std::string& path, const std::vector<GenerationStats>& stats);

// Checkpoint: generation index, every chromosome as a 230-char bit string,
// and the generator state, in a plain text format that read_checkpoint
// reverses exactly.
struct Checkpoint {
  int generation = 0;
  std::vector<Chromosome> population;
  uint64_t rng_state0 = 0;
  uint64_t rng_state1 = 0;
};

void save_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace evotune
