// evotune command-line front end. Parsing and exit-code policy live here;
// the workflows themselves are the cmd_* functions in the core library.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 backend/subprocess error.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "evotune/commands.hpp"
#include "evotune/errors.hpp"

namespace {

using namespace evotune;

void add_gen(CLI::App& app, GenOptions& opt) {
  CLI::App* cmd = app.add_subcommand("gen", "Generate random playout positions as EPD");
  cmd->add_option("--seed", opt.seed, "Base seed; position i uses derived seed i");
  cmd->add_option("--count", opt.count, "Number of positions")->check(CLI::NonNegativeNumber);
  cmd->add_option("--min-plies", opt.min_plies, "Minimum playout length");
  cmd->add_option("--max-plies", opt.max_plies, "Maximum playout length");
  cmd->add_option("--out", opt.out, "Output EPD path")->required();
  cmd->callback([&opt] { cmd_gen(opt); });
}

void add_score(CLI::App& app, ScoreOptions& opt) {
  CLI::App* cmd = app.add_subcommand("score", "Annotate an EPD file with expert ce scores");
  cmd->add_option("--in", opt.in, "Input EPD path")->required();
  cmd->add_option("--out", opt.out, "Output EPD path")->required();
  cmd->add_option("--backend", opt.backend,
                  "Expert backend: static-hidden, depth2-hidden, or uci:<command>");
  cmd->add_option("--hidden-params", opt.hidden_params,
                  "Hidden experts' parameter file (default: built-in reference values)");
  cmd->add_option("--depth", opt.depth, "Search depth for the uci backend");
  cmd->add_option("--timeout-ms", opt.timeout_ms, "Reply deadline for the uci backend");
  cmd->add_option("--threads", opt.threads, "Worker threads (hidden backends only)")
      ->check(CLI::PositiveNumber);
  cmd->callback([&opt] { cmd_score(opt); });
}

void add_evolve(CLI::App& app, EvolveOptions& opt) {
  CLI::App* cmd = app.add_subcommand("evolve", "Evolve evaluation parameters against scored EPD");
  cmd->add_option("--train", opt.train, "Scored training EPD")->required();
  cmd->add_option("--test", opt.test, "Scored holdout EPD (optional)");
  cmd->add_option("--out-dir", opt.out_dir, "Artifact directory");
  cmd->add_option("--checkpoint-every", opt.checkpoint_every,
                  "Checkpoint interval in generations (0 = none)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--population", opt.config.population_size, "Population size");
  cmd->add_option("--crossover-rate", opt.config.crossover_rate, "Crossover probability");
  cmd->add_option("--mutation-rate", opt.config.mutation_rate, "Per-bit mutation probability");
  cmd->add_option("--generations", opt.config.generations, "Generations to run");
  cmd->add_option("--sample-size", opt.config.sample_size, "Positions sampled per generation");
  cmd->add_flag("--elitism,!--no-elitism", opt.config.elitism,
                "Copy the best organism twice into the next generation");
  cmd->add_option("--seed", opt.config.seed, "Run seed");
  cmd->add_flag("--resample,!--no-resample", opt.config.resample_each_generation,
                "Draw a fresh training sample each generation");
  cmd->add_option("--threads", opt.config.threads, "Evaluation worker threads")
      ->check(CLI::PositiveNumber);
  cmd->callback([&opt] { cmd_evolve(opt, std::cout); });
}

void add_match(CLI::App& app, MatchOptions& opt) {
  CLI::App* cmd = app.add_subcommand("match", "Play a fixed-depth match between two parameter files");
  cmd->add_option("--params-a", opt.params_a, "First player's parameter file")->required();
  cmd->add_option("--params-b", opt.params_b, "Second player's parameter file")->required();
  cmd->add_option("--openings", opt.openings, "Openings EPD (each played with both colors)")
      ->required();
  cmd->add_option("--depth", opt.depth, "Search depth")->check(CLI::PositiveNumber);
  cmd->add_option("--max-plies", opt.max_plies, "Ply limit per game before adjudicating a draw");
  cmd->add_option("--report", opt.report, "Per-game CSV report path (optional)");
  cmd->add_option("--threads", opt.threads, "Game worker threads")->check(CLI::PositiveNumber);
  cmd->callback([&opt] { cmd_match(opt, std::cout); });
}

void add_rate(CLI::App& app, RateOptions& opt) {
  CLI::App* cmd = app.add_subcommand("rate", "Rating difference and interval from a match tally");
  cmd->add_option("--wins", opt.wins, "Wins")->required();
  cmd->add_option("--draws", opt.draws, "Draws")->required();
  cmd->add_option("--losses", opt.losses, "Losses")->required();
  cmd->add_option("--k", opt.k, "Interval half-width in standard errors");
  cmd->callback([&opt] { cmd_rate(opt, std::cout); });
}

void add_suite(CLI::App& app, SuiteOptions& opt) {
  CLI::App* cmd = app.add_subcommand("suite", "Run a best-move test suite");
  cmd->add_option("--suite", opt.suite, "Suite EPD with bm opcodes")->required();
  cmd->add_option("--params", opt.params,
                  "Parameter file (default: built-in reference values)");
  cmd->add_option("--depth", opt.depth, "Search depth")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->callback([&opt] { cmd_suite(opt, std::cout); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evotune: evolutionary tuning of a chess evaluation function"};
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.require_subcommand(1);

  GenOptions gen_opt;
  ScoreOptions score_opt;
  EvolveOptions evolve_opt;
  MatchOptions match_opt;
  RateOptions rate_opt;
  SuiteOptions suite_opt;
  add_gen(app, gen_opt);
  add_score(app, score_opt);
  add_evolve(app, evolve_opt);
  add_match(app, match_opt);
  add_rate(app, rate_opt);
  add_suite(app, suite_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  } catch (const evotune::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const evotune::DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const evotune::BackendError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
