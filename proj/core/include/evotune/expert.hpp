#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "evotune/board.hpp"
#include "evotune/eval.hpp"

namespace evotune {

// Expert scores are clamped to this magnitude (keeps mate scores finite
// and EPD round-trips loss-free).
inline constexpr int kScoreClamp = 32000;

// A position with its expert verdict, in centipawns from the side to move.
struct ScoredPosition {
  Position position;
  int score = 0;
  std::string source;  // backend tag, e.g. "static", "depth2", "epd", "uci"
};

// Oracle variant A: the expert simply reveals its static evaluation.
int score_static(const Position& p, const EvalParams& hidden);

// Oracle variant B: the expert reveals a 2-ply search value over its
// hidden parameters. Throws DataError if the position is already over.
int score_depth2(const Position& p, const EvalParams& hidden);

// Scorer interface over the interchangeable backends.
class ExpertScorer {
 public:
  virtual ~ExpertScorer() = default;
  virtual int score(const Position& p) = 0;
  virtual std::string name() const = 0;
};

class StaticHiddenExpert final : public ExpertScorer {
 public:
  explicit StaticHiddenExpert(EvalParams hidden) : hidden_(hidden) {}
  int score(const Position& p) override { return score_static(p, hidden_); }
  std::string name() const override { return "static"; }

 private:
  EvalParams hidden_;
};

class Depth2HiddenExpert final : public ExpertScorer {
 public:
  explicit Depth2HiddenExpert(EvalParams hidden) : hidden_(hidden) {}
  int score(const Position& p) override { return score_depth2(p, hidden_); }
  std::string name() const override { return "depth2"; }

 private:
  EvalParams hidden_;
};

// Scores served from a pre-scored EPD file, keyed by the position's
// 4-field FEN. Throws DataError for positions absent from the file.
class EpdFileExpert final : public ExpertScorer {
 public:
  explicit EpdFileExpert(const std::string& path);
  int score(const Position& p) override;
  std::string name() const override { return "epd"; }

 private:
  std::vector<std::pair<std::string, int>> scores_;  // sorted by key
};

// Training corpus: two disjoint halves of distinct scored positions.
struct TrainingSet {
  std::vector<ScoredPosition> train;
  std::vector<ScoredPosition> test;
  uint64_t split_seed = 0;
};

// Deterministic indexed position generator.
using PositionSource = std::function<Position(uint64_t index)>;

// Source drawing random playout positions: index i yields
// random_position(derive_seed(seed, i), min_plies, max_plies).
PositionSource playout_source(uint64_t seed, int min_plies, int max_plies);

// Pulls positions from `source` until n_total distinct FENs are collected
// (bounded retries), scores each with `expert` (clamped to kScoreClamp),
// shuffles deterministically with split_seed, and splits into halves.
// Throws DataError if n_total is odd or distinct positions run out.
TrainingSet build_training_set(const PositionSource& source, ExpertScorer& expert, int n_total,
                               uint64_t split_seed);

// EPD persistence: the `ce` opcode holds the score. Loading requires `ce`
// on every line and rejects scores outside the clamp.
std::vector<ScoredPosition> load_scored_epd(const std::string& path);
void save_scored_epd(const std::string& path, const std::vector<ScoredPosition>& list);

}  // namespace evotune
