#pragma once

#include <cstdint>
#include <optional>

#include "evotune/board.hpp"
#include "evotune/eval.hpp"

namespace evotune {

// Mate found at search ply k scores +/-(kMateScore - k), so nearer mates
// dominate and every mate outranks any static evaluation.
inline constexpr int kMateScore = 30000;

struct SearchResult {
  int score = 0;                  // centipawns, side-to-move perspective
  std::optional<Move> best_move;  // set iff the position is non-terminal and depth >= 1
  uint64_t nodes = 0;
};

// Fixed-depth negamax with alpha-beta pruning. Exact: the score always
// equals the unpruned minimax value. Shared terminal rules, applied at
// every node: fifty-move rule and insufficient material score 0, a side
// with no legal moves scores -(kMateScore - ply) in check and 0 otherwise,
// depth-0 leaves score evaluate(). Root ties are broken by the
// deterministic legal_moves() order (the first maximal move wins).
SearchResult alphabeta(const Position& p, int depth, const EvalParams& params);

// Exhaustive negamax without pruning; the equivalence oracle for
// alphabeta. Guarded to depth <= 4 (cost). `nodes`, when given, receives
// the visited node count.
int minimax_oracle(const Position& p, int depth, const EvalParams& params,
                   uint64_t* nodes = nullptr);

}  // namespace evotune
