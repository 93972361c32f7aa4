#include "evotune/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include "evotune/epd.hpp"
#include "evotune/errors.hpp"
#include "evotune/expert.hpp"
#include "evotune/parallel.hpp"
#include "evotune/rng.hpp"
#include "evotune/uci.hpp"

namespace evotune {

void cmd_gen(const GenOptions& opt) {
  if (opt.count < 0) throw UsageError("count must be non-negative");
  std::vector<EpdRecord> records;
  records.reserve(opt.count);
  for (int i = 0; i < opt.count; ++i) {
    EpdRecord rec;
    rec.position = random_position(derive_seed(opt.seed, i), opt.min_plies, opt.max_plies);
    rec.ops.push_back({"id", "\"gen-" + std::to_string(i + 1) + "\""});
    records.push_back(std::move(rec));
  }
  save_epd(opt.out, records);
}

namespace {

std::unique_ptr<ExpertScorer> make_backend(const ScoreOptions& opt) {
  const EvalParams hidden =
      opt.hidden_params.empty() ? EvalParams::reference() : load_params(opt.hidden_params);
  if (opt.backend == "static-hidden") return std::make_unique<StaticHiddenExpert>(hidden);
  if (opt.backend == "depth2-hidden") return std::make_unique<Depth2HiddenExpert>(hidden);
  if (opt.backend.rfind("uci:", 0) == 0) {
    const std::string command = opt.backend.substr(4);
    if (command.empty()) throw UsageError("backend 'uci:' is missing the engine command");
    return std::make_unique<UciExpert>(command, opt.depth, opt.timeout_ms);
  }
  throw UsageError("unknown backend '" + opt.backend +
                   "' (expected static-hidden, depth2-hidden, or uci:<command>)");
}

std::string entry_label(const EpdRecord& rec, std::size_t index) {
  const std::string id = rec.id();
  return id.empty() ? "entry " + std::to_string(index + 1) : "entry '" + id + "'";
}

}  // namespace

void cmd_score(const ScoreOptions& opt) {
  auto records = load_epd(opt.in);
  const auto expert = make_backend(opt);
  // A uci backend is one subprocess conversation; keep it serial.
  const int threads = opt.backend.rfind("uci:", 0) == 0 ? 1 : opt.threads;
  std::vector<int> scores(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    try {
      scores[i] = expert->score(records[i].position);
    } catch (const BackendError& e) {
      throw BackendError(opt.in + " " + entry_label(records[i], i) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(opt.in + " " + entry_label(records[i], i) + ": " + e.what());
    }
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& ops = records[i].ops;
    const std::string text = std::to_string(scores[i]);
    bool replaced = false;
    for (auto& op : ops)
      if (op.opcode == "ce") {
        op.operand = text;
        replaced = true;
        break;
      }
    if (!replaced) ops.push_back({"ce", text});
  }
  save_epd(opt.out, records);
}

double cmd_evolve(const EvolveOptions& opt, std::ostream& log) {
  if (opt.checkpoint_every < 0) throw UsageError("checkpoint interval must be non-negative");
  TrainingSet ts;
  ts.train = load_scored_epd(opt.train);
  if (!opt.test.empty()) ts.test = load_scored_epd(opt.test);
  std::filesystem::create_directories(opt.out_dir);

  GenerationHook hook;
  if (opt.checkpoint_every > 0)
    hook = [&](const GenerationStats& stats, const std::vector<Organism>& pop, const Rng& rng) {
      const int next = stats.generation + 1;  // the population the hook sees
      if (next % opt.checkpoint_every != 0) return;
      Checkpoint cp;
      cp.generation = next;
      cp.population.reserve(pop.size());
      for (const Organism& o : pop) cp.population.push_back(o.chromosome);
      cp.rng_state0 = rng.state0();
      cp.rng_state1 = rng.state1();
      save_checkpoint(opt.out_dir + "/checkpoint-" + std::to_string(next) + ".txt", cp);
    };

  const auto [best, history] = run_evolution(opt.config, ts, hook);
  const std::string curve_path = opt.out_dir + "/learning_curve.csv";
  const std::string params_path = opt.out_dir + "/best.params";
  save_learning_curve(curve_path, history);
  save_params(params_path, decode(best.chromosome));

  char line[256];
  std::snprintf(line, sizeof line, "train positions %zu, population %d, generations %d\n",
                ts.train.size(), opt.config.population_size, opt.config.generations);
  log << line;
  std::snprintf(line, sizeof line, "generation 0 best error %.3f\n", history.front().best_error);
  log << line;
  std::snprintf(line, sizeof line, "best train error %.3f\n", best.error());
  log << line;
  if (!ts.test.empty()) {
    std::snprintf(line, sizeof line, "holdout error %.3f over %zu positions\n",
                  evaluate_holdout(best, ts.test), ts.test.size());
    log << line;
  }
  log << "wrote " << params_path << " and " << curve_path << "\n";
  return best.error();
}

MatchResult cmd_match(const MatchOptions& opt, std::ostream& log) {
  const EvalParams a = load_params(opt.params_a);
  const EvalParams b = load_params(opt.params_b);
  const auto openings = load_openings_epd(opt.openings);
  if (openings.empty()) throw DataError(opt.openings + ": no openings");
  std::vector<Position> positions;
  std::vector<std::string> ids;
  positions.reserve(openings.size());
  ids.reserve(openings.size());
  for (const Opening& o : openings) {
    positions.push_back(o.position);
    ids.push_back(o.id);
  }
  const MatchResult m = run_match(a, b, positions, opt.depth, opt.max_plies, opt.threads);
  if (!opt.report.empty()) save_match_report(opt.report, m, ids);
  write_match_summary(log, m);
  return m;
}

void cmd_rate(const RateOptions& opt, std::ostream& out) {
  if (opt.wins < 0 || opt.draws < 0 || opt.losses < 0)
    throw UsageError("game counts must be non-negative");
  const EloEstimate e = elo_estimate(opt.wins, opt.draws, opt.losses, opt.k);
  char line[200];
  std::snprintf(line, sizeof line, "games %d: wins %d, draws %d, losses %d\n",
                opt.wins + opt.draws + opt.losses, opt.wins, opt.draws, opt.losses);
  out << line;
  std::snprintf(line, sizeof line, "mean score %.4f, stddev %.4f\n", e.mean, e.stddev);
  out << line;
  std::snprintf(line, sizeof line, "elo %+.1f\n", e.rd);
  out << line;
  std::snprintf(line, sizeof line, "k=%.1f: winning rate [%.4f, %.4f], elo in [%+.1f, %+.1f]\n",
                e.k, e.w_lo, e.w_hi, e.rd_lo, e.rd_hi);
  out << line;
}

int cmd_suite(const SuiteOptions& opt, std::ostream& out) {
  const auto suite = load_suite_epd(opt.suite);
  const EvalParams params =
      opt.params.empty() ? EvalParams::reference() : load_params(opt.params);
  const int solved = run_testsuite(suite, params, opt.depth, opt.threads);
  out << "solved " << solved << "/" << suite.size() << "\n";
  return solved;
}

}  // namespace evotune
