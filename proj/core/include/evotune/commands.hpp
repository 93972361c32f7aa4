#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "evotune/arena.hpp"
#include "evotune/ga.hpp"

namespace evotune {

// Subcommand workflows behind the CLI binary. Each takes a plain options
// struct and writes its own artifacts, so every workflow is testable
// in-process without spawning the executable. All randomness flows from
// the seed in the options; per-item seeds are derived by counter offset.

struct GenOptions {
  uint64_t seed = 1;
  int count = 100;
  int min_plies = 8;
  int max_plies = 60;
  std::string out;
};

// Writes `count` unscored EPD positions, ids "gen-1".."gen-<count>";
// position i comes from a random playout seeded with derive_seed(seed, i).
void cmd_gen(const GenOptions& opt);

struct ScoreOptions {
  std::string in;
  std::string out;
  std::string backend = "static-hidden";  // static-hidden | depth2-hidden | uci:<command>
  std::string hidden_params;  // hidden experts' parameter file; empty = built-in reference
  int depth = 2;              // uci backend search depth
  int timeout_ms = 10000;     // uci reply deadline
  int threads = 1;            // hidden backends only; a uci backend scores serially
};

// Rewrites the EPD with a `ce` opcode per line (existing `ce` replaced,
// other opcodes preserved). Unknown backend -> UsageError; per-position
// failures are rethrown naming the entry.
void cmd_score(const ScoreOptions& opt);

struct EvolveOptions {
  std::string train;         // scored EPD (required)
  std::string test;          // optional scored holdout EPD
  std::string out_dir = ".";
  int checkpoint_every = 0;  // generations between checkpoints; 0 = none
  GAConfig config;
};

// Runs the GA over the training set; writes best.params and
// learning_curve.csv (plus checkpoint-<g>.txt files when requested) under
// out_dir and prints a summary to `log`. Returns the best train error.
double cmd_evolve(const EvolveOptions& opt, std::ostream& log);

struct MatchOptions {
  std::string params_a;
  std::string params_b;
  std::string openings;  // EPD, played twice each with colors swapped
  int depth = 3;
  int max_plies = 300;
  int threads = 1;
  std::string report;  // optional CSV report path
};

// Plays the match, optionally saves the per-game report, prints the
// summary block to `log`, and returns the tally from a's perspective.
MatchResult cmd_match(const MatchOptions& opt, std::ostream& log);

struct RateOptions {
  int wins = 0;
  int draws = 0;
  int losses = 0;
  double k = 2.0;  // interval half-width in standard errors
};

// Prints the tally, mean, stddev, rating difference, and the k-interval.
// Degenerate input (mean 0 or 1, or fewer than two games) -> DataError.
void cmd_rate(const RateOptions& opt, std::ostream& out);

struct SuiteOptions {
  std::string suite;
  std::string params;  // empty = built-in reference values
  int depth = 3;
  int threads = 1;
};

// Prints "solved S/T" and returns S. An empty suite prints "solved 0/0".
int cmd_suite(const SuiteOptions& opt, std::ostream& out);

}  // namespace evotune
