#include "evotune/search.hpp"

#include <stdexcept>

#include "movegen_internal.hpp"

namespace evotune {

namespace {

constexpr int kInfinity = kMateScore + 1;

// Capture ordering key: victim kind + 1 (pawn 1 ... queen 5), quiets 0.
// Ordering affects only node counts, never the returned value.
int order_key(const Position& p, const Move& m) {
  if (!is_capture_kind(m.kind)) return 0;
  if (m.kind == MoveKind::EnPassant) return 1 + static_cast<int>(PieceKind::Pawn);
  return 1 + static_cast<int>(p.piece_at(m.to)->kind);
}

// Draw-by-rule terminals shared by alphabeta and the minimax oracle.
bool draw_by_rule(const Position& p) {
  return p.halfmove_clock() >= 100 || insufficient_material(p);
}

int negamax(const Position& p, int depth, int ply, int alpha, int beta,
            const EvalParams& params, uint64_t& nodes) {
  ++nodes;
  if (draw_by_rule(p)) return 0;
  if (depth == 0) {
    // Terminal rules outrank the static leaf: a mate-in-1 must score
    // kMateScore - 1 already at depth 1.
    if (!p.has_legal_move())
      return p.in_check(p.side_to_move()) ? -(kMateScore - ply) : 0;
    return evaluate(p, params);
  }

  MoveGen::List list;
  MoveGen::pseudo_legal(p, list);
  // Bucket pass: captures by victim value descending, then quiets, each
  // bucket keeping generation order.
  std::array<Move, MoveGen::kMaxMoves> ordered;
  int n = 0;
  for (int key = 5; key >= 0; --key)
    for (int i = 0; i < list.size; ++i)
      if (order_key(p, list.moves[i]) == key) ordered[n++] = list.moves[i];

  int best = -kInfinity;
  bool any_legal = false;
  for (int i = 0; i < n; ++i) {
    const Position next = p.apply_unchecked(ordered[i]);
    if (next.in_check(p.side_to_move())) continue;
    any_legal = true;
    const int value = -negamax(next, depth - 1, ply + 1, -beta, -alpha, params, nodes);
    if (value > best) best = value;
    if (best > alpha) alpha = best;
    if (alpha >= beta) break;
  }
  if (!any_legal) return p.in_check(p.side_to_move()) ? -(kMateScore - ply) : 0;
  return best;
}

}  // namespace

SearchResult alphabeta(const Position& p, int depth, const EvalParams& params) {
  SearchResult r;
  r.nodes = 1;
  if (draw_by_rule(p)) return r;
  const auto moves = p.legal_moves();
  if (moves.empty()) {
    r.score = p.in_check(p.side_to_move()) ? -kMateScore : 0;
    return r;
  }
  if (depth == 0) {
    r.score = evaluate(p, params);
    return r;
  }
  int alpha = -kInfinity;
  for (const Move& m : moves) {
    const int value =
        -negamax(p.apply_unchecked(m), depth - 1, 1, -kInfinity, -alpha, params, r.nodes);
    if (value > alpha) {
      alpha = value;
      r.best_move = m;
    }
  }
  r.score = alpha;
  return r;
}

namespace {

int minimax(const Position& p, int depth, int ply, const EvalParams& params, uint64_t& nodes) {
  ++nodes;
  if (draw_by_rule(p)) return 0;
  const auto moves = p.legal_moves();
  if (moves.empty()) return p.in_check(p.side_to_move()) ? -(kMateScore - ply) : 0;
  if (depth == 0) return evaluate(p, params);
  int best = -kInfinity;
  for (const Move& m : moves) {
    const int value = -minimax(p.apply_unchecked(m), depth - 1, ply + 1, params, nodes);
    if (value > best) best = value;
  }
  return best;
}

}  // namespace

int minimax_oracle(const Position& p, int depth, const EvalParams& params, uint64_t* nodes) {
  if (depth < 0 || depth > 4)
    throw std::invalid_argument("minimax_oracle: depth must be in [0, 4], got " +
                                std::to_string(depth));
  uint64_t count = 0;
  const int value = minimax(p, depth, 0, params, count);
  if (nodes) *nodes = count;
  return value;
}

}  // namespace evotune
