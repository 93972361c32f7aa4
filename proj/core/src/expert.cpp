#include "evotune/expert.hpp"

#include <algorithm>

#include "evotune/epd.hpp"
#include "evotune/rng.hpp"
#include "evotune/search.hpp"

namespace evotune {

namespace {

int clamp_score(int64_t score) {
  return static_cast<int>(std::clamp<int64_t>(score, -kScoreClamp, kScoreClamp));
}

}  // namespace

int score_static(const Position& p, const EvalParams& hidden) {
  return clamp_score(evaluate(p, hidden));
}

int score_depth2(const Position& p, const EvalParams& hidden) {
  if (p.status() != GameStatus::Ongoing)
    throw DataError("cannot depth-2 score a finished position: " + p.fen());
  return clamp_score(alphabeta(p, 2, hidden).score);
}

EpdFileExpert::EpdFileExpert(const std::string& path) {
  for (const ScoredPosition& sp : load_scored_epd(path))
    scores_.emplace_back(sp.position.key(), sp.score);
  std::sort(scores_.begin(), scores_.end());
}

int EpdFileExpert::score(const Position& p) {
  const std::string key = p.key();
  const auto it = std::lower_bound(scores_.begin(), scores_.end(), key,
                                   [](const auto& entry, const std::string& k) {
                                     return entry.first < k;
                                   });
  if (it == scores_.end() || it->first != key)
    throw DataError("position not present in the scored EPD backend: " + key);
  return it->second;
}

PositionSource playout_source(uint64_t seed, int min_plies, int max_plies) {
  return [seed, min_plies, max_plies](uint64_t index) {
    return random_position(derive_seed(seed, index), min_plies, max_plies);
  };
}

TrainingSet build_training_set(const PositionSource& source, ExpertScorer& expert, int n_total,
                               uint64_t split_seed) {
  if (n_total <= 0 || n_total % 2 != 0)
    throw DataError("training-set size must be a positive even number, got " +
                    std::to_string(n_total));

  // Collect n_total FEN-distinct positions; the retry budget bounds the
  // loop when the source keeps repeating itself.
  std::vector<ScoredPosition> all;
  all.reserve(n_total);
  std::vector<std::string> seen;
  const uint64_t budget = 20ULL * static_cast<uint64_t>(n_total);
  for (uint64_t index = 0; static_cast<int>(all.size()) < n_total; ++index) {
    if (index >= budget)
      throw DataError("position source produced only " + std::to_string(all.size()) +
                      " distinct positions of " + std::to_string(n_total) + " after " +
                      std::to_string(budget) + " draws");
    const Position p = source(index);
    const std::string fen = p.fen();
    const auto it = std::lower_bound(seen.begin(), seen.end(), fen);
    if (it != seen.end() && *it == fen) continue;
    seen.insert(it, fen);
    all.push_back({p, expert.score(p), expert.name()});
  }

  // Deterministic shuffle, then halves.
  Rng rng(split_seed);
  for (std::size_t i = all.size() - 1; i > 0; --i)
    std::swap(all[i], all[rng.uniform(i + 1)]);

  TrainingSet ts;
  ts.split_seed = split_seed;
  const std::size_t half = all.size() / 2;
  ts.train.assign(all.begin(), all.begin() + half);
  ts.test.assign(all.begin() + half, all.end());
  return ts;
}

std::vector<ScoredPosition> load_scored_epd(const std::string& path) {
  std::vector<ScoredPosition> out;
  const auto records = load_epd(path);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto score = records[i].ce();
    if (!score)
      throw DataError(path + ": entry " + std::to_string(i + 1) + " (" + records[i].position.key() +
                      ") has no 'ce' opcode");
    if (*score < -kScoreClamp || *score > kScoreClamp)
      throw DataError(path + ": entry " + std::to_string(i + 1) + " score " +
                      std::to_string(*score) + " outside +/-" + std::to_string(kScoreClamp));
    out.push_back({records[i].position, *score, "epd"});
  }
  return out;
}

void save_scored_epd(const std::string& path, const std::vector<ScoredPosition>& list) {
  std::vector<EpdRecord> records;
  records.reserve(list.size());
  for (const ScoredPosition& sp : list) {
    EpdRecord rec;
    rec.position = sp.position;
    rec.ops.push_back({"ce", std::to_string(sp.score)});
    records.push_back(std::move(rec));
  }
  save_epd(path, records);
}

}  // namespace evotune
