#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evotune/epd.hpp"
#include "evotune/eval.hpp"

namespace evotune {

enum class GameResult { WhiteWin, BlackWin, Draw };

struct GameRecord {
  Position opening;
  std::vector<Move> moves;
  GameResult result = GameResult::Draw;
  GameStatus termination = GameStatus::Ongoing;
  int ply_count = 0;  // == moves.size()
};

// Tally from the first player's ("A"'s) perspective.
struct MatchResult {
  int wins = 0;
  int draws = 0;
  int losses = 0;
  std::vector<GameRecord> games;

  int n() const { return wins + draws + losses; }
  double points() const { return wins + 0.5 * draws; }
};

struct EloEstimate {
  double mean = 0;    // x-bar
  double stddev = 0;  // per-game s
  double w_lo = 0, w_hi = 0;
  double rd = 0, rd_lo = 0, rd_hi = 0;
  double k = 0;  // confidence multiplier in standard errors
};

// w = 1 / (10^(-RD/400) + 1).
double expected_winning_rate(double rating_diff);

// RD = -400 log10(1/w - 1); inverse of expected_winning_rate. Throws
// std::domain_error outside (0, 1).
double rating_difference(double winning_rate);

double mean_score(int wins, int draws, int losses);    // (W + D/2) / N
double score_stddev(int wins, int draws, int losses);  // sample stddev of per-game scores

// Interval: x-bar +/- k standard errors (s / sqrt(N)), bounds clamped into
// [1e-6, 1 - 1e-6] before the Elo mapping. Throws DataError when N < 2 or
// the mean score is exactly 0 or 1 (the rating difference is unbounded).
EloEstimate elo_estimate(int wins, int draws, int losses, double k);
EloEstimate elo_estimate(const MatchResult& m, double k);

// One deterministic fixed-depth game. Ends by the position's own status
// (mate, stalemate, fifty-move, insufficient material), threefold
// repetition of the 4-field position key, or the ply limit (draw).
// Throws DataError if the opening is not an ongoing position.
GameRecord play_game(const EvalParams& white, const EvalParams& black, int depth,
                     const Position& opening, int max_plies = 300);

// Every opening twice with colors swapped; tally from a's perspective.
// `threads` parallelizes over games without affecting any outcome.
MatchResult run_match(const EvalParams& a, const EvalParams& b,
                      const std::vector<Position>& openings, int depth, int max_plies = 300,
                      int threads = 1);

// One best-move test: position, the accepted moves, and a label.
struct SuiteEntry {
  Position position;
  std::vector<Move> best_moves;
  std::string id;
};

// Count of entries whose alphabeta best move is in the accepted set.
int run_testsuite(const std::vector<SuiteEntry>& suite, const EvalParams& params, int depth,
                  int threads = 1);

// Openings: EPD lines, position must be ongoing. Labels fall back to
// "op-<entry index>" when no id opcode is present.
struct Opening {
  std::string id;
  Position position;
};
std::vector<Opening> load_openings_epd(const std::string& path);

// Suites: EPD lines with a `bm` opcode naming one or more moves, each in
// coordinate form ("e2e4") or lite algebraic form (piece letter + target,
// e.g. "Nf3", "exd5", "e8=Q"; '+'/'#' suffixes ignored). Every token must
// match at least one legal move (all matches are accepted); violations
// raise DataError naming the entry.
std::vector<SuiteEntry> load_suite_epd(const std::string& path);

// '#'-prefixed summary block: tally, mean, stddev, and the k=2 and k=3
// Elo intervals (the intervals degrade to a note when the mean is 0 or 1).
void write_match_summary(std::ostream& out, const MatchResult& m);

// CSV rows "opening_id,color,result,termination,plies" (color = a's side,
// result from the board's perspective), then the summary block.
void write_match_report(std::ostream& out, const MatchResult& m,
                        const std::vector<std::string>& opening_ids);
void save_match_report(const std::string& path, const MatchResult& m,
                       const std::vector<std::string>& opening_ids);

}  // namespace evotune
