#include "oracle_board.hpp"

#include <algorithm>
#include <cctype>

namespace oracle {

using evotune::Move;
using evotune::MoveKind;
using evotune::PieceKind;

namespace {

bool on_board(int f, int r) { return f >= 0 && f < 8 && r >= 0 && r < 8; }
int sq_of(int f, int r) { return r * 8 + f; }
int file_of(int s) { return s % 8; }
int rank_of(int s) { return s / 8; }

bool is_white(char c) { return c != '.' && std::isupper(static_cast<unsigned char>(c)); }
bool is_black(char c) { return c != '.' && std::islower(static_cast<unsigned char>(c)); }

const int kKnightSteps[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
const int kKingSteps[8][2] = {{1, 0},  {1, 1},  {0, 1},  {-1, 1},
                              {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
const int kBishopDirs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
const int kRookDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

char piece_letter(PieceKind k, bool white) {
  const char* letters = "pnbrqk";
  const char c = letters[static_cast<int>(k)];
  return white ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
}

// True if the piece on `from` attacks `to` on this board.
bool piece_attacks(const Board& b, int from, int to) {
  const char c = b.sq[from];
  const int ff = file_of(from), fr = rank_of(from);
  const int tf = file_of(to), tr = rank_of(to);
  const int df = tf - ff, dr = tr - fr;
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'p': {
      const int forward = is_white(c) ? 1 : -1;
      return dr == forward && (df == 1 || df == -1);
    }
    case 'n':
      return (df * df + dr * dr) == 5;
    case 'k':
      return df >= -1 && df <= 1 && dr >= -1 && dr <= 1 && (df != 0 || dr != 0);
    case 'b':
    case 'r':
    case 'q': {
      const bool diag = df != 0 && (df == dr || df == -dr);
      const bool line = (df == 0) != (dr == 0);
      const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (kind == 'b' && !diag) return false;
      if (kind == 'r' && !line) return false;
      if (kind == 'q' && !diag && !line) return false;
      const int sf = df == 0 ? 0 : (df > 0 ? 1 : -1);
      const int sr = dr == 0 ? 0 : (dr > 0 ? 1 : -1);
      int f = ff + sf, r = fr + sr;
      while (sq_of(f, r) != to) {
        if (b.sq[sq_of(f, r)] != '.') return false;
        f += sf;
        r += sr;
      }
      return true;
    }
  }
  return false;
}

void push_promotions(std::vector<Move>& out, int from, int to, bool capture) {
  for (const PieceKind k :
       {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen}) {
    Move m;
    m.from = static_cast<uint8_t>(from);
    m.to = static_cast<uint8_t>(to);
    m.kind = capture ? MoveKind::PromotionCapture : MoveKind::Promotion;
    m.promotion = k;
    out.push_back(m);
  }
}

void push_move(std::vector<Move>& out, int from, int to, MoveKind kind) {
  Move m;
  m.from = static_cast<uint8_t>(from);
  m.to = static_cast<uint8_t>(to);
  m.kind = kind;
  out.push_back(m);
}

std::vector<Move> pseudo_moves(const Board& b) {
  std::vector<Move> out;
  const bool white = b.white_to_move;
  for (int s = 0; s < 64; ++s) {
    const char c = b.sq[s];
    if (c == '.' || is_white(c) != white) continue;
    const int f = file_of(s), r = rank_of(s);
    const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (kind == 'p') {
      const int forward = white ? 1 : -1;
      const int start_rank = white ? 1 : 6;
      const int promo_rank = white ? 7 : 0;
      const int r1 = r + forward;
      if (on_board(f, r1) && b.sq[sq_of(f, r1)] == '.') {
        if (r1 == promo_rank)
          push_promotions(out, s, sq_of(f, r1), false);
        else
          push_move(out, s, sq_of(f, r1), MoveKind::Normal);
        const int r2 = r + 2 * forward;
        if (r == start_rank && b.sq[sq_of(f, r2)] == '.')
          push_move(out, s, sq_of(f, r2), MoveKind::DoublePawnPush);
      }
      for (const int df : {-1, 1}) {
        if (!on_board(f + df, r1)) continue;
        const int t = sq_of(f + df, r1);
        const char victim = b.sq[t];
        if (victim != '.' && is_white(victim) != white) {
          if (r1 == promo_rank)
            push_promotions(out, s, t, true);
          else
            push_move(out, s, t, MoveKind::Capture);
        } else if (t == b.ep) {
          push_move(out, s, t, MoveKind::EnPassant);
        }
      }
    } else if (kind == 'n' || kind == 'k') {
      const auto& steps = kind == 'n' ? kKnightSteps : kKingSteps;
      for (int i = 0; i < 8; ++i) {
        const int tf = f + steps[i][0], tr = r + steps[i][1];
        if (!on_board(tf, tr)) continue;
        const char victim = b.sq[sq_of(tf, tr)];
        if (victim == '.')
          push_move(out, s, sq_of(tf, tr), MoveKind::Normal);
        else if (is_white(victim) != white)
          push_move(out, s, sq_of(tf, tr), MoveKind::Capture);
      }
    } else {
      const bool diag = kind == 'b' || kind == 'q';
      const bool line = kind == 'r' || kind == 'q';
      for (int d = 0; d < 4; ++d) {
        if (diag) {
          int tf = f + kBishopDirs[d][0], tr = r + kBishopDirs[d][1];
          while (on_board(tf, tr)) {
            const char victim = b.sq[sq_of(tf, tr)];
            if (victim == '.') {
              push_move(out, s, sq_of(tf, tr), MoveKind::Normal);
            } else {
              if (is_white(victim) != white) push_move(out, s, sq_of(tf, tr), MoveKind::Capture);
              break;
            }
            tf += kBishopDirs[d][0];
            tr += kBishopDirs[d][1];
          }
        }
        if (line) {
          int tf = f + kRookDirs[d][0], tr = r + kRookDirs[d][1];
          while (on_board(tf, tr)) {
            const char victim = b.sq[sq_of(tf, tr)];
            if (victim == '.') {
              push_move(out, s, sq_of(tf, tr), MoveKind::Normal);
            } else {
              if (is_white(victim) != white) push_move(out, s, sq_of(tf, tr), MoveKind::Capture);
              break;
            }
            tf += kRookDirs[d][0];
            tr += kRookDirs[d][1];
          }
        }
      }
    }
  }
  // Castling: rights present, path empty, king's walk never through check.
  if (white && b.sq[4] == 'K') {
    if (b.castle_wk && b.sq[7] == 'R' && b.sq[5] == '.' && b.sq[6] == '.' &&
        !attacked(b, 4, false) && !attacked(b, 5, false) && !attacked(b, 6, false))
      push_move(out, 4, 6, MoveKind::CastleKingside);
    if (b.castle_wq && b.sq[0] == 'R' && b.sq[1] == '.' && b.sq[2] == '.' && b.sq[3] == '.' &&
        !attacked(b, 4, false) && !attacked(b, 3, false) && !attacked(b, 2, false))
      push_move(out, 4, 2, MoveKind::CastleQueenside);
  } else if (!white && b.sq[60] == 'k') {
    if (b.castle_bk && b.sq[63] == 'r' && b.sq[61] == '.' && b.sq[62] == '.' &&
        !attacked(b, 60, true) && !attacked(b, 61, true) && !attacked(b, 62, true))
      push_move(out, 60, 62, MoveKind::CastleKingside);
    if (b.castle_bq && b.sq[56] == 'r' && b.sq[57] == '.' && b.sq[58] == '.' &&
        b.sq[59] == '.' && !attacked(b, 60, true) && !attacked(b, 59, true) &&
        !attacked(b, 58, true))
      push_move(out, 60, 58, MoveKind::CastleQueenside);
  }
  return out;
}

int king_square(const Board& b, bool white) {
  const char target = white ? 'K' : 'k';
  for (int s = 0; s < 64; ++s)
    if (b.sq[s] == target) return s;
  return -1;
}

}  // namespace

Board from_position(const evotune::Position& p) {
  Board b;
  for (int s = 0; s < 64; ++s) {
    const auto piece = p.piece_at(s);
    b.sq[s] = piece ? piece_letter(piece->kind, piece->color == evotune::Color::White) : '.';
  }
  b.white_to_move = p.side_to_move() == evotune::Color::White;
  b.castle_wk = p.can_castle(evotune::Color::White, true);
  b.castle_wq = p.can_castle(evotune::Color::White, false);
  b.castle_bk = p.can_castle(evotune::Color::Black, true);
  b.castle_bq = p.can_castle(evotune::Color::Black, false);
  b.ep = p.en_passant() ? *p.en_passant() : -1;
  return b;
}

bool attacked(const Board& b, int sq, bool by_white) {
  for (int s = 0; s < 64; ++s)
    if (b.sq[s] != '.' && is_white(b.sq[s]) == by_white && piece_attacks(b, s, sq)) return true;
  return false;
}

int count_attackers(const Board& b, int sq, bool by_white) {
  int n = 0;
  for (int s = 0; s < 64; ++s)
    if (b.sq[s] != '.' && is_white(b.sq[s]) == by_white && piece_attacks(b, s, sq)) ++n;
  return n;
}

Board apply(const Board& b, const Move& m) {
  Board nb = b;
  nb.ep = -1;
  const char mover = nb.sq[m.from];
  const bool white = is_white(mover);
  nb.sq[m.from] = '.';
  nb.sq[m.to] = mover;
  switch (m.kind) {
    case MoveKind::DoublePawnPush:
      nb.ep = (m.from + m.to) / 2;
      break;
    case MoveKind::EnPassant:
      nb.sq[sq_of(file_of(m.to), rank_of(m.from))] = '.';
      break;
    case MoveKind::CastleKingside:
      nb.sq[m.to + 1] = '.';
      nb.sq[m.to - 1] = white ? 'R' : 'r';
      break;
    case MoveKind::CastleQueenside:
      nb.sq[m.to - 2] = '.';
      nb.sq[m.to + 1] = white ? 'R' : 'r';
      break;
    case MoveKind::Promotion:
    case MoveKind::PromotionCapture:
      nb.sq[m.to] = piece_letter(*m.promotion, white);
      break;
    default:
      break;
  }
  const auto clear_rights = [&nb](int s) {
    if (s == 0) nb.castle_wq = false;
    if (s == 4) nb.castle_wk = nb.castle_wq = false;
    if (s == 7) nb.castle_wk = false;
    if (s == 56) nb.castle_bq = false;
    if (s == 60) nb.castle_bk = nb.castle_bq = false;
    if (s == 63) nb.castle_bk = false;
  };
  clear_rights(m.from);
  clear_rights(m.to);
  nb.white_to_move = !nb.white_to_move;
  return nb;
}

std::vector<Move> legal_moves(const Board& b) {
  std::vector<Move> out;
  for (const Move& m : pseudo_moves(b)) {
    const Board nb = apply(b, m);
    if (!attacked(nb, king_square(nb, b.white_to_move), !b.white_to_move)) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), evotune::move_order_less);
  return out;
}

uint64_t perft(const Board& b, int depth) {
  if (depth == 0) return 1;
  uint64_t total = 0;
  for (const Move& m : legal_moves(b)) total += perft(apply(b, m), depth - 1);
  return total;
}

}  // namespace oracle
