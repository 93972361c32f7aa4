#pragma once

// Deliberately naive reference rules engine: one character per square, no
// bitboards, direction walks everywhere. Exists only to cross-check the
// production move generator; shares no implementation with it.

#include <cstdint>
#include <vector>

#include "evotune/board.hpp"

namespace oracle {

struct Board {
  char sq[64];  // 'PNBRQK' white, 'pnbrqk' black, '.' empty; index a1 = 0
  bool white_to_move = true;
  bool castle_wk = false, castle_wq = false, castle_bk = false, castle_bq = false;
  int ep = -1;  // en passant target square, -1 when unset
};

Board from_position(const evotune::Position& p);

bool attacked(const Board& b, int sq, bool by_white);
int count_attackers(const Board& b, int sq, bool by_white);

// Legal moves in the library's encoding, sorted the library's way.
std::vector<evotune::Move> legal_moves(const Board& b);

Board apply(const Board& b, const evotune::Move& m);

uint64_t perft(const Board& b, int depth);

}  // namespace oracle
