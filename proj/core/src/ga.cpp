#include "evotune/ga.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "evotune/parallel.hpp"

namespace evotune {

double Organism::fitness() const { return fitness_from_error(error()); }

void GAConfig::validate(std::size_t train_size) const {
  if (population_size < 2)
    throw DataError("population size must be at least 2, got " + std::to_string(population_size));
  if (crossover_rate < 0 || crossover_rate > 1)
    throw DataError("crossover rate must lie in [0, 1], got " + std::to_string(crossover_rate));
  if (mutation_rate < 0 || mutation_rate > 1)
    throw DataError("mutation rate must lie in [0, 1], got " + std::to_string(mutation_rate));
  if (generations < 0)
    throw DataError("generations must be non-negative, got " + std::to_string(generations));
  if (sample_size < 1)
    throw DataError("sample size must be positive, got " + std::to_string(sample_size));
  if (static_cast<std::size_t>(sample_size) > train_size)
    throw DataError("sample size " + std::to_string(sample_size) +
                    " exceeds the training-set size " + std::to_string(train_size));
  if (threads < 1)
    throw DataError("thread count must be positive, got " + std::to_string(threads));
}

PreparedSample PreparedSample::from(const std::vector<ScoredPosition>& positions) {
  PreparedSample s;
  s.features.reserve(positions.size());
  s.stm_white.reserve(positions.size());
  s.expert.reserve(positions.size());
  for (const ScoredPosition& sp : positions) {
    s.features.push_back(extract_features(sp.position));
    s.stm_white.push_back(sp.position.side_to_move() == Color::White);
    s.expert.push_back(sp.score);
  }
  return s;
}

int64_t organism_error_sum(const EvalParams& params, const PreparedSample& sample) {
  int64_t total = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const int64_t white_score = dot(sample.features[i], params);
    const int64_t own_score = sample.stm_white[i] ? white_score : -white_score;
    const int64_t diff = sample.expert[i] - own_score;
    total += diff < 0 ? -diff : diff;
  }
  return total;
}

double organism_error(const Chromosome& c, const std::vector<ScoredPosition>& sample) {
  if (sample.empty()) throw DataError("organism error undefined over an empty sample");
  const PreparedSample prepared = PreparedSample::from(sample);
  return static_cast<double>(organism_error_sum(decode(c), prepared)) /
         static_cast<double>(sample.size());
}

double fitness_from_error(double error) { return 1.0 / (1.0 + error); }

std::size_t select_parent(const std::vector<double>& weights, Rng& rng) {
  if (weights.empty()) throw std::invalid_argument("select_parent: no weights");
  double total = 0;
  for (const double w : weights) {
    if (!(w > 0)) throw std::invalid_argument("select_parent: weights must be positive");
    total += w;
  }
  const double target = rng.uniform_double() * total;
  double cumulative = 0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cumulative += weights[i];
    if (target < cumulative) return i;
  }
  return weights.size() - 1;  // absorbs rounding at the top end
}

namespace {

struct EvaluatedPopulation {
  std::vector<Organism> pop;  // with error sums filled in
  std::size_t best_index = 0;
  GenerationStats stats;
};

// Draws the generation's sample (consuming rng draws only when resampling
// is on), evaluates every organism on it, and finds the best.
EvaluatedPopulation evaluate_population(std::vector<Organism> pop,
                                        const PreparedSample& train_prepared,
                                        const GAConfig& cfg, int generation, Rng& rng) {
  // Sample draw: partial Fisher-Yates over the training indices.
  std::vector<uint32_t> indices(train_prepared.size());
  std::iota(indices.begin(), indices.end(), 0);
  const std::size_t n = static_cast<std::size_t>(cfg.sample_size);
  if (cfg.resample_each_generation) {
    for (std::size_t i = 0; i < n; ++i)
      std::swap(indices[i], indices[i + rng.uniform(indices.size() - i)]);
  }

  PreparedSample sample;
  sample.features.reserve(n);
  sample.stm_white.reserve(n);
  sample.expert.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample.features.push_back(train_prepared.features[indices[i]]);
    sample.stm_white.push_back(train_prepared.stm_white[indices[i]]);
    sample.expert.push_back(train_prepared.expert[indices[i]]);
  }

  // Integer per-organism sums: identical results at any thread count.
  parallel_for(pop.size(), cfg.threads, [&](std::size_t i) {
    pop[i].error_sum = organism_error_sum(decode(pop[i].chromosome), sample);
    pop[i].sample_count = static_cast<int>(n);
  });

  EvaluatedPopulation out;
  out.best_index = 0;
  int64_t total = 0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    total += pop[i].error_sum;
    if (pop[i].error_sum < pop[out.best_index].error_sum) out.best_index = i;
  }
  out.stats.generation = generation;
  out.stats.best_error = pop[out.best_index].error();
  out.stats.mean_error =
      static_cast<double>(total) / (static_cast<double>(pop.size()) * static_cast<double>(n));
  out.stats.best = pop[out.best_index].chromosome;
  out.pop = std::move(pop);
  return out;
}

// Breeding step; consumes rng draws in the documented per-pair order.
std::vector<Organism> breed(const EvaluatedPopulation& eval, const GAConfig& cfg, Rng& rng) {
  const std::vector<Organism>& pop = eval.pop;
  std::vector<double> weights(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) weights[i] = pop[i].fitness();

  std::vector<Organism> next;
  next.reserve(pop.size());
  if (cfg.elitism) {
    // The best organism enters twice, untouched by mutation; the two
    // slots it takes displace what would have been the worst offspring.
    next.push_back({pop[eval.best_index].chromosome, -1, 0});
    next.push_back({pop[eval.best_index].chromosome, -1, 0});
  }
  while (next.size() < pop.size()) {
    const Chromosome& a = pop[select_parent(weights, rng)].chromosome;
    const Chromosome& b = pop[select_parent(weights, rng)].chromosome;
    Chromosome c1 = a, c2 = b;
    if (rng.bernoulli(cfg.crossover_rate)) std::tie(c1, c2) = single_point_crossover(a, b, rng);
    next.push_back({point_mutate(c1, cfg.mutation_rate, rng), -1, 0});
    if (next.size() < pop.size())
      next.push_back({point_mutate(c2, cfg.mutation_rate, rng), -1, 0});
  }
  return next;
}

}  // namespace

std::pair<std::vector<Organism>, GenerationStats> evolve_generation(
    const std::vector<Organism>& pop, const std::vector<ScoredPosition>& train,
    const GAConfig& cfg, Rng& rng) {
  cfg.validate(train.size());
  if (pop.size() != static_cast<std::size_t>(cfg.population_size))
    throw DataError("population size " + std::to_string(pop.size()) +
                    " does not match the configured " + std::to_string(cfg.population_size));
  const PreparedSample prepared = PreparedSample::from(train);
  EvaluatedPopulation eval = evaluate_population(pop, prepared, cfg, 0, rng);
  auto next = breed(eval, cfg, rng);
  return {std::move(next), eval.stats};
}

std::pair<Organism, std::vector<GenerationStats>> run_evolution(const GAConfig& cfg,
                                                                const TrainingSet& ts,
                                                                const GenerationHook& hook) {
  cfg.validate(ts.train.size());
  const PreparedSample train_prepared = PreparedSample::from(ts.train);
  Rng rng(cfg.seed);

  std::vector<Organism> pop;
  pop.reserve(cfg.population_size);
  for (int i = 0; i < cfg.population_size; ++i) pop.push_back({random_chromosome(rng), -1, 0});

  std::vector<GenerationStats> history;
  if (cfg.generations == 0) {
    // Evaluate the initial population once so the caller still gets a
    // stats row and a best organism.
    EvaluatedPopulation eval = evaluate_population(std::move(pop), train_prepared, cfg, 0, rng);
    history.push_back(eval.stats);
    if (hook) hook(eval.stats, eval.pop, rng);
    pop = std::move(eval.pop);
  } else {
    for (int g = 0; g < cfg.generations; ++g) {
      EvaluatedPopulation eval = evaluate_population(std::move(pop), train_prepared, cfg, g, rng);
      history.push_back(eval.stats);
      pop = breed(eval, cfg, rng);
      if (hook) hook(eval.stats, pop, rng);
    }
  }

  // Best-ever: every generation best re-scored on the full training set;
  // the earliest generation wins ties.
  Organism best;
  int64_t best_sum = -1;
  for (const GenerationStats& gs : history) {
    const int64_t sum = organism_error_sum(decode(gs.best), train_prepared);
    if (best_sum < 0 || sum < best_sum) {
      best_sum = sum;
      best = {gs.best, sum, static_cast<int>(ts.train.size())};
    }
  }
  return {best, std::move(history)};
}

double evaluate_holdout(const Organism& o, const std::vector<ScoredPosition>& test) {
  return organism_error(o.chromosome, test);
}

void write_learning_curve(std::ostream& out, const std::vector<GenerationStats>& stats) {
  out << "generation,best_error,mean_error\n";
  for (const GenerationStats& gs : stats) {
    char row[96];
    std::snprintf(row, sizeof row, "%d,%.3f,%.3f\n", gs.generation, gs.best_error, gs.mean_error);
    out << row;
  }
}

void save_learning_curve(const std::string& path, const std::vector<GenerationStats>& stats) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open learning-curve file '" + path + "' for writing");
  write_learning_curve(out, stats);
  if (!out.flush()) throw DataError("failed writing learning-curve file '" + path + "'");
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open checkpoint file '" + path + "' for writing");
  out << "generation " << cp.generation << '\n';
  out << "rng_state " << cp.rng_state0 << ' ' << cp.rng_state1 << '\n';
  out << "population " << cp.population.size() << '\n';
  for (const Chromosome& c : cp.population) out << c.to_string() << '\n';
  if (!out.flush()) throw DataError("failed writing checkpoint file '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint file '" + path + "'");
  Checkpoint cp;
  std::string keyword;
  std::size_t count = 0;
  if (!(in >> keyword >> cp.generation) || keyword != "generation")
    throw DataError(path + ": expected 'generation <index>'");
  if (!(in >> keyword >> cp.rng_state0 >> cp.rng_state1) || keyword != "rng_state")
    throw DataError(path + ": expected 'rng_state <s0> <s1>'");
  if (!(in >> keyword >> count) || keyword != "population")
    throw DataError(path + ": expected 'population <count>'");
  cp.population.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string bits;
    if (!(in >> bits))
      throw DataError(path + ": population truncated at organism " + std::to_string(i));
    cp.population.push_back(Chromosome::from_string(bits));
  }
  return cp;
}

}  // namespace evotune
