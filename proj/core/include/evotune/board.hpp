#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evotune/errors.hpp"

namespace evotune {

enum class Color : uint8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) {
  return c == Color::White ? Color::Black : Color::White;
}

enum class PieceKind : uint8_t {
  Pawn = 0,
  Knight,
  Bishop,
  Rook,
  Queen,
  King
};

struct Piece {
  Color color;
  PieceKind kind;
  bool operator==(const Piece&) const = default;
};

// Squares are 0..63, a1 = 0, b1 = 1, ..., h8 = 63.
using Square = int;

constexpr int file_of(Square sq) { return sq & 7; }
constexpr int rank_of(Square sq) { return sq >> 3; }
constexpr Square make_square(int file, int rank) { return rank * 8 + file; }
// Vertical flip (a1 <-> a8).
constexpr Square flip_square(Square sq) { return sq ^ 56; }

std::string square_name(Square sq);
// "e4" -> 28; throws DataError on malformed input.
Square parse_square(const std::string& name);

enum class MoveKind : uint8_t {
  Normal = 0,
  Capture,
  DoublePawnPush,
  EnPassant,
  CastleKingside,
  CastleQueenside,
  Promotion,
  PromotionCapture
};

constexpr bool is_capture_kind(MoveKind k) {
  return k == MoveKind::Capture || k == MoveKind::EnPassant ||
         k == MoveKind::PromotionCapture;
}

constexpr bool is_promotion_kind(MoveKind k) {
  return k == MoveKind::Promotion || k == MoveKind::PromotionCapture;
}

struct Move {
  uint8_t from = 0;
  uint8_t to = 0;
  MoveKind kind = MoveKind::Normal;
  // Set iff kind is a promotion kind.
  std::optional<PieceKind> promotion;

  bool operator==(const Move&) const = default;

  // Coordinate notation: "e2e4", "e7e8q".
  std::string uci() const;
};

// Ordering used everywhere a deterministic move sequence is required:
// by from-square, then to-square, then promotion piece (knight < bishop
// < rook < queen).
bool move_order_less(const Move& a, const Move& b);

enum class GameStatus : uint8_t {
  Ongoing = 0,
  Checkmate,
  Stalemate,
  DrawInsufficientMaterial,
  DrawFiftyMove,
  DrawRepetition,  // detected by the arena, not by Position::status()
  DrawMoveLimit    // ditto
};

const char* game_status_name(GameStatus s);

// Attack sets, shared by move generation and the evaluation features.
uint64_t knight_attacks(Square sq);
uint64_t king_attacks(Square sq);
uint64_t pawn_attacks(Color c, Square sq);
uint64_t bishop_attacks(Square sq, uint64_t occupied);
uint64_t rook_attacks(Square sq, uint64_t occupied);
uint64_t queen_attacks(Square sq, uint64_t occupied);

inline constexpr const char* kStartposFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

// Immutable chess position. All mutating operations return a new value.
class Position {
 public:
  Position() = default;

  static Position startpos();
  // Accepts 4- or 6-field FEN (missing clocks default to 0 and 1) and
  // validates all position invariants. Throws DataError naming the FEN
  // field and the reason.
  static Position from_fen(const std::string& fen);

  // Canonical 6-field FEN; en passant "-" when unset.
  std::string fen() const;
  // FEN fields 1-4 only (placement, side, castling, en passant). Two
  // positions repeat each other iff their keys are equal.
  std::string key() const;

  std::optional<Piece> piece_at(Square sq) const;
  Color side_to_move() const { return stm_; }
  bool can_castle(Color c, bool kingside) const;
  std::optional<Square> en_passant() const;
  int halfmove_clock() const { return halfmove_; }
  int fullmove_number() const { return fullmove_; }

  uint64_t pieces(Color c, PieceKind k) const {
    return pieces_[static_cast<int>(c)][static_cast<int>(k)];
  }
  uint64_t occupied(Color c) const;
  uint64_t occupied() const { return occupied(Color::White) | occupied(Color::Black); }
  Square king_square(Color c) const;

  // True if `sq` is attacked by any piece of color `by`.
  bool attacked_by(Square sq, Color by) const;
  // All pieces (both colors) attacking `sq` under the given occupancy.
  uint64_t attackers_to(Square sq, uint64_t occupied) const;
  bool in_check(Color c) const;

  // Exactly the legal moves, sorted by move_order_less.
  std::vector<Move> legal_moves() const;
  bool has_legal_move() const;

  // Applies a move after checking it is legal; throws DataError otherwise.
  Position apply(const Move& m) const;
  // Applies without the legality check. Callers must pass moves obtained
  // from this position's own move generation.
  Position apply_unchecked(const Move& m) const;

  // Vertical flip with colors swapped: side to move toggled, castling
  // rights exchanged between colors, en passant square flipped. An
  // involution: p.mirrored().mirrored() == p.
  Position mirrored() const;

  // Checkmate/stalemate/fifty-move/insufficient-material detection.
  // Repetition and move limits are game-history properties and are
  // tracked by the arena.
  GameStatus status() const;

  bool operator==(const Position&) const = default;

 private:
  friend struct MoveGen;

  void put_piece(Color c, PieceKind k, Square sq);
  void remove_piece(Square sq);
  void validate() const;

  std::array<std::array<uint64_t, 6>, 2> pieces_{};
  std::array<int8_t, 64> mailbox_ = init_mailbox();
  Color stm_ = Color::White;
  uint8_t castling_ = 0;  // bits: 1 = WK, 2 = WQ, 4 = BK, 8 = BQ
  int8_t ep_ = -1;
  int halfmove_ = 0;
  int fullmove_ = 1;

  static std::array<int8_t, 64> init_mailbox() {
    std::array<int8_t, 64> m;
    m.fill(-1);
    return m;
  }
};

// Neither side can force mate: no pawns/rooks/queens and at most one
// minor piece in total, or bishops only and all on one square color.
bool insufficient_material(const Position& p);

// Leaf count of the legal-move tree at the given depth. perft(p, 0) = 1.
uint64_t perft(const Position& p, int depth);

// A legal, ongoing position reached from the start position by uniformly
// random legal moves, the ply count drawn uniformly from
// [min_plies, max_plies]. Deterministic given the seed; retries with fresh
// draws if a playout hits a terminal position early.
Position random_position(uint64_t seed, int min_plies, int max_plies);

// Parses coordinate notation ("e2e4", "e7e8q") against the legal moves of
// `p`. Throws DataError if the text is malformed or the move is not legal.
Move parse_uci_move(const Position& p, const std::string& text);

}  // namespace evotune
