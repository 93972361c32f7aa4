#pragma once

// Shared between board.cpp and search.cpp: pseudo-legal move generation
// into a fixed buffer. MoveGen is a friend of Position; this header is
// internal to the library build and not installed.

#include <array>
#include <bit>

#include "evotune/board.hpp"

namespace evotune {

namespace movegen_detail {
constexpr uint64_t bb(Square sq) { return 1ULL << sq; }
inline Square pop_lsb(uint64_t& b) {
  const Square sq = std::countr_zero(b);
  b &= b - 1;
  return sq;
}
}  // namespace movegen_detail

struct MoveGen {
  static constexpr int kMaxMoves = 256;

  struct List {
    std::array<Move, kMaxMoves> moves;
    int size = 0;
    void add(Move m) { moves[size++] = m; }
  };

  static void pseudo_legal(const Position& p, List& out) {
    using movegen_detail::bb;
    using movegen_detail::pop_lsb;

    const Color us = p.stm_;
    const Color them = opposite(us);
    const uint64_t own = p.occupied(us);
    const uint64_t enemy = p.occupied(them);
    const uint64_t all = own | enemy;

    // Pawns.
    const int up = us == Color::White ? 8 : -8;
    const int start_rank = us == Color::White ? 1 : 6;
    const int promo_rank = us == Color::White ? 7 : 0;
    uint64_t pawns = p.pieces(us, PieceKind::Pawn);
    while (pawns) {
      const Square from = pop_lsb(pawns);
      const Square one = from + up;
      if (!(all & bb(one))) {
        if (rank_of(one) == promo_rank) {
          for (PieceKind k :
               {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen})
            out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(one), MoveKind::Promotion, k});
        } else {
          out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(one), MoveKind::Normal, {}});
          if (rank_of(from) == start_rank) {
            const Square two = one + up;
            if (!(all & bb(two)))
              out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(two),
                       MoveKind::DoublePawnPush, {}});
          }
        }
      }
      uint64_t caps = pawn_attacks(us, from) & enemy;
      while (caps) {
        const Square to = pop_lsb(caps);
        if (rank_of(to) == promo_rank) {
          for (PieceKind k :
               {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen})
            out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(to),
                     MoveKind::PromotionCapture, k});
        } else {
          out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(to), MoveKind::Capture, {}});
        }
      }
      if (p.ep_ >= 0 && (pawn_attacks(us, from) & bb(p.ep_)))
        out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(p.ep_), MoveKind::EnPassant, {}});
    }

    // Knights, bishops, rooks, queens, king.
    auto emit = [&](Square from, uint64_t targets) {
      targets &= ~own;
      while (targets) {
        const Square to = pop_lsb(targets);
        out.add({static_cast<uint8_t>(from), static_cast<uint8_t>(to),
                 (enemy & bb(to)) ? MoveKind::Capture : MoveKind::Normal, {}});
      }
    };
    uint64_t b = p.pieces(us, PieceKind::Knight);
    while (b) { const Square s = pop_lsb(b); emit(s, knight_attacks(s)); }
    b = p.pieces(us, PieceKind::Bishop);
    while (b) { const Square s = pop_lsb(b); emit(s, bishop_attacks(s, all)); }
    b = p.pieces(us, PieceKind::Rook);
    while (b) { const Square s = pop_lsb(b); emit(s, rook_attacks(s, all)); }
    b = p.pieces(us, PieceKind::Queen);
    while (b) { const Square s = pop_lsb(b); emit(s, queen_attacks(s, all)); }
    emit(p.king_square(us), king_attacks(p.king_square(us)));

    // Castling. The attack conditions make the king's own path safe, so
    // these moves never fail the legality filter.
    const Square e = us == Color::White ? 4 : 60;
    if (p.can_castle(us, true)) {
      if (!(all & (bb(e + 1) | bb(e + 2))) && !p.attacked_by(e, them) &&
          !p.attacked_by(e + 1, them) && !p.attacked_by(e + 2, them))
        out.add({static_cast<uint8_t>(e), static_cast<uint8_t>(e + 2),
                 MoveKind::CastleKingside, {}});
    }
    if (p.can_castle(us, false)) {
      if (!(all & (bb(e - 1) | bb(e - 2) | bb(e - 3))) && !p.attacked_by(e, them) &&
          !p.attacked_by(e - 1, them) && !p.attacked_by(e - 2, them))
        out.add({static_cast<uint8_t>(e), static_cast<uint8_t>(e - 2),
                 MoveKind::CastleQueenside, {}});
    }
  }
};

}  // namespace evotune
