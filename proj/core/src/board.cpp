#include "evotune/board.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

#include "evotune/rng.hpp"
#include "movegen_internal.hpp"

namespace evotune {

namespace {

constexpr uint64_t bb(Square sq) { return 1ULL << sq; }

inline Square lsb(uint64_t b) { return std::countr_zero(b); }
inline Square msb(uint64_t b) { return 63 - std::countl_zero(b); }
inline Square pop_lsb(uint64_t& b) {
  const Square sq = lsb(b);
  b &= b - 1;
  return sq;
}

enum Dir { kNorth, kSouth, kEast, kWest, kNorthEast, kNorthWest, kSouthEast, kSouthWest };

struct AttackTables {
  std::array<uint64_t, 64> knight{};
  std::array<uint64_t, 64> king{};
  std::array<std::array<uint64_t, 64>, 2> pawn{};
  std::array<std::array<uint64_t, 64>, 8> ray{};
};

AttackTables build_tables() {
  AttackTables t;
  constexpr int knight_d[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                  {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
  constexpr int king_d[8][2] = {{0, 1},  {1, 1},  {1, 0},  {1, -1},
                                {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
  constexpr int ray_d[8][2] = {{0, 1}, {0, -1}, {1, 0},  {-1, 0},
                               {1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
  for (Square sq = 0; sq < 64; ++sq) {
    const int f = file_of(sq), r = rank_of(sq);
    for (const auto& d : knight_d) {
      const int nf = f + d[0], nr = r + d[1];
      if (nf >= 0 && nf < 8 && nr >= 0 && nr < 8) t.knight[sq] |= bb(make_square(nf, nr));
    }
    for (const auto& d : king_d) {
      const int nf = f + d[0], nr = r + d[1];
      if (nf >= 0 && nf < 8 && nr >= 0 && nr < 8) t.king[sq] |= bb(make_square(nf, nr));
    }
    if (f > 0 && r < 7) t.pawn[0][sq] |= bb(make_square(f - 1, r + 1));
    if (f < 7 && r < 7) t.pawn[0][sq] |= bb(make_square(f + 1, r + 1));
    if (f > 0 && r > 0) t.pawn[1][sq] |= bb(make_square(f - 1, r - 1));
    if (f < 7 && r > 0) t.pawn[1][sq] |= bb(make_square(f + 1, r - 1));
    for (int dir = 0; dir < 8; ++dir) {
      int nf = f + ray_d[dir][0], nr = r + ray_d[dir][1];
      while (nf >= 0 && nf < 8 && nr >= 0 && nr < 8) {
        t.ray[dir][sq] |= bb(make_square(nf, nr));
        nf += ray_d[dir][0];
        nr += ray_d[dir][1];
      }
    }
  }
  return t;
}

const AttackTables& tables() {
  static const AttackTables t = build_tables();
  return t;
}

inline uint64_t ray_attack(int dir, Square sq, uint64_t occupied, bool toward_msb) {
  uint64_t attacks = tables().ray[dir][sq];
  const uint64_t blockers = attacks & occupied;
  if (blockers) {
    const Square first = toward_msb ? lsb(blockers) : msb(blockers);
    attacks ^= tables().ray[dir][first];
  }
  return attacks;
}

constexpr int promotion_sort_rank(const std::optional<PieceKind>& p) {
  return p ? static_cast<int>(*p) : 0;
}

// Castling-right bits cleared when a piece moves from or to a square.
constexpr std::array<uint8_t, 64> build_castle_masks() {
  std::array<uint8_t, 64> m{};
  for (auto& x : m) x = 0xF;
  m[0] &= ~uint8_t{2};   // a1: white queenside
  m[4] &= ~uint8_t{3};   // e1: both white rights
  m[7] &= ~uint8_t{1};   // h1: white kingside
  m[56] &= ~uint8_t{8};  // a8: black queenside
  m[60] &= ~uint8_t{12}; // e8: both black rights
  m[63] &= ~uint8_t{4};  // h8: black kingside
  return m;
}

constexpr std::array<uint8_t, 64> kCastleMask = build_castle_masks();

char piece_char(Color c, PieceKind k) {
  static constexpr char white[6] = {'P', 'N', 'B', 'R', 'Q', 'K'};
  const char ch = white[static_cast<int>(k)];
  return c == Color::White ? ch : static_cast<char>(std::tolower(ch));
}

std::optional<Piece> piece_from_char(char ch) {
  const Color c = std::isupper(static_cast<unsigned char>(ch)) ? Color::White : Color::Black;
  switch (std::tolower(static_cast<unsigned char>(ch))) {
    case 'p': return Piece{c, PieceKind::Pawn};
    case 'n': return Piece{c, PieceKind::Knight};
    case 'b': return Piece{c, PieceKind::Bishop};
    case 'r': return Piece{c, PieceKind::Rook};
    case 'q': return Piece{c, PieceKind::Queen};
    case 'k': return Piece{c, PieceKind::King};
    default: return std::nullopt;
  }
}

}  // namespace

uint64_t knight_attacks(Square sq) { return tables().knight[sq]; }
uint64_t king_attacks(Square sq) { return tables().king[sq]; }
uint64_t pawn_attacks(Color c, Square sq) { return tables().pawn[static_cast<int>(c)][sq]; }

uint64_t bishop_attacks(Square sq, uint64_t occupied) {
  return ray_attack(kNorthEast, sq, occupied, true) |
         ray_attack(kNorthWest, sq, occupied, true) |
         ray_attack(kSouthEast, sq, occupied, false) |
         ray_attack(kSouthWest, sq, occupied, false);
}

uint64_t rook_attacks(Square sq, uint64_t occupied) {
  return ray_attack(kNorth, sq, occupied, true) |
         ray_attack(kEast, sq, occupied, true) |
         ray_attack(kSouth, sq, occupied, false) |
         ray_attack(kWest, sq, occupied, false);
}

uint64_t queen_attacks(Square sq, uint64_t occupied) {
  return bishop_attacks(sq, occupied) | rook_attacks(sq, occupied);
}

std::string square_name(Square sq) {
  std::string s(2, ' ');
  s[0] = static_cast<char>('a' + file_of(sq));
  s[1] = static_cast<char>('1' + rank_of(sq));
  return s;
}

Square parse_square(const std::string& name) {
  if (name.size() != 2 || name[0] < 'a' || name[0] > 'h' || name[1] < '1' || name[1] > '8')
    throw DataError("malformed square name: '" + name + "'");
  return make_square(name[0] - 'a', name[1] - '1');
}

std::string Move::uci() const {
  std::string s = square_name(from) + square_name(to);
  if (promotion) {
    static constexpr char promo[6] = {'?', 'n', 'b', 'r', 'q', '?'};
    s += promo[static_cast<int>(*promotion)];
  }
  return s;
}

bool move_order_less(const Move& a, const Move& b) {
  if (a.from != b.from) return a.from < b.from;
  if (a.to != b.to) return a.to < b.to;
  return promotion_sort_rank(a.promotion) < promotion_sort_rank(b.promotion);
}

const char* game_status_name(GameStatus s) {
  switch (s) {
    case GameStatus::Ongoing: return "ongoing";
    case GameStatus::Checkmate: return "checkmate";
    case GameStatus::Stalemate: return "stalemate";
    case GameStatus::DrawInsufficientMaterial: return "insufficient-material";
    case GameStatus::DrawFiftyMove: return "fifty-move";
    case GameStatus::DrawRepetition: return "repetition";
    case GameStatus::DrawMoveLimit: return "move-limit";
  }
  return "?";
}

void Position::put_piece(Color c, PieceKind k, Square sq) {
  pieces_[static_cast<int>(c)][static_cast<int>(k)] |= bb(sq);
  mailbox_[sq] = static_cast<int8_t>(static_cast<int>(c) * 6 + static_cast<int>(k));
}

void Position::remove_piece(Square sq) {
  const int code = mailbox_[sq];
  pieces_[code / 6][code % 6] &= ~bb(sq);
  mailbox_[sq] = -1;
}

std::optional<Piece> Position::piece_at(Square sq) const {
  const int code = mailbox_[sq];
  if (code < 0) return std::nullopt;
  return Piece{static_cast<Color>(code / 6), static_cast<PieceKind>(code % 6)};
}

uint64_t Position::occupied(Color c) const {
  const auto& p = pieces_[static_cast<int>(c)];
  return p[0] | p[1] | p[2] | p[3] | p[4] | p[5];
}

Square Position::king_square(Color c) const {
  return lsb(pieces(c, PieceKind::King));
}

bool Position::can_castle(Color c, bool kingside) const {
  const int bit = (c == Color::White ? 0 : 2) + (kingside ? 0 : 1);
  return castling_ & (1 << bit);
}

std::optional<Square> Position::en_passant() const {
  if (ep_ < 0) return std::nullopt;
  return static_cast<Square>(ep_);
}

uint64_t Position::attackers_to(Square sq, uint64_t occupied) const {
  uint64_t a = 0;
  a |= pawn_attacks(Color::Black, sq) & pieces(Color::White, PieceKind::Pawn);
  a |= pawn_attacks(Color::White, sq) & pieces(Color::Black, PieceKind::Pawn);
  a |= knight_attacks(sq) &
       (pieces(Color::White, PieceKind::Knight) | pieces(Color::Black, PieceKind::Knight));
  a |= king_attacks(sq) &
       (pieces(Color::White, PieceKind::King) | pieces(Color::Black, PieceKind::King));
  const uint64_t bishops_queens =
      pieces(Color::White, PieceKind::Bishop) | pieces(Color::Black, PieceKind::Bishop) |
      pieces(Color::White, PieceKind::Queen) | pieces(Color::Black, PieceKind::Queen);
  const uint64_t rooks_queens =
      pieces(Color::White, PieceKind::Rook) | pieces(Color::Black, PieceKind::Rook) |
      pieces(Color::White, PieceKind::Queen) | pieces(Color::Black, PieceKind::Queen);
  a |= bishop_attacks(sq, occupied) & bishops_queens;
  a |= rook_attacks(sq, occupied) & rooks_queens;
  return a;
}

bool Position::attacked_by(Square sq, Color by) const {
  return attackers_to(sq, occupied()) & occupied(by);
}

bool Position::in_check(Color c) const {
  return attacked_by(king_square(c), opposite(c));
}

// ---------------------------------------------------------------------------
// Move generation (pseudo-legal generator shared with search via
// movegen_internal.hpp; legality = own king not attacked after the move)

std::vector<Move> Position::legal_moves() const {
  MoveGen::List list;
  MoveGen::pseudo_legal(*this, list);
  std::vector<Move> out;
  out.reserve(list.size);
  for (int i = 0; i < list.size; ++i)
    if (!apply_unchecked(list.moves[i]).in_check(stm_)) out.push_back(list.moves[i]);
  std::sort(out.begin(), out.end(), move_order_less);
  return out;
}

bool Position::has_legal_move() const {
  MoveGen::List list;
  MoveGen::pseudo_legal(*this, list);
  for (int i = 0; i < list.size; ++i)
    if (!apply_unchecked(list.moves[i]).in_check(stm_)) return true;
  return false;
}

Position Position::apply_unchecked(const Move& m) const {
  Position np = *this;
  np.ep_ = -1;

  const int moved_code = mailbox_[m.from];
  const PieceKind moved = static_cast<PieceKind>(moved_code % 6);
  const Color us = stm_;

  const bool is_pawn_move = moved == PieceKind::Pawn;
  np.halfmove_ = (is_pawn_move || is_capture_kind(m.kind)) ? 0 : halfmove_ + 1;

  switch (m.kind) {
    case MoveKind::Normal:
      np.remove_piece(m.from);
      np.put_piece(us, moved, m.to);
      break;
    case MoveKind::Capture:
      np.remove_piece(m.to);
      np.remove_piece(m.from);
      np.put_piece(us, moved, m.to);
      break;
    case MoveKind::DoublePawnPush:
      np.remove_piece(m.from);
      np.put_piece(us, PieceKind::Pawn, m.to);
      np.ep_ = static_cast<int8_t>((m.from + m.to) / 2);
      break;
    case MoveKind::EnPassant: {
      const Square victim = make_square(file_of(m.to), rank_of(m.from));
      np.remove_piece(victim);
      np.remove_piece(m.from);
      np.put_piece(us, PieceKind::Pawn, m.to);
      break;
    }
    case MoveKind::CastleKingside: {
      const Square rook_from = m.from + 3, rook_to = m.from + 1;
      np.remove_piece(m.from);
      np.remove_piece(rook_from);
      np.put_piece(us, PieceKind::King, m.to);
      np.put_piece(us, PieceKind::Rook, rook_to);
      break;
    }
    case MoveKind::CastleQueenside: {
      const Square rook_from = m.from - 4, rook_to = m.from - 1;
      np.remove_piece(m.from);
      np.remove_piece(rook_from);
      np.put_piece(us, PieceKind::King, m.to);
      np.put_piece(us, PieceKind::Rook, rook_to);
      break;
    }
    case MoveKind::Promotion:
      np.remove_piece(m.from);
      np.put_piece(us, *m.promotion, m.to);
      break;
    case MoveKind::PromotionCapture:
      np.remove_piece(m.to);
      np.remove_piece(m.from);
      np.put_piece(us, *m.promotion, m.to);
      break;
  }

  np.castling_ &= kCastleMask[m.from] & kCastleMask[m.to];
  np.stm_ = opposite(us);
  if (us == Color::Black) ++np.fullmove_;
  return np;
}

Position Position::apply(const Move& m) const {
  const auto legal = legal_moves();
  if (std::find(legal.begin(), legal.end(), m) == legal.end())
    throw DataError("illegal move " + m.uci() + " in position " + fen());
  return apply_unchecked(m);
}

Position Position::mirrored() const {
  Position np;
  for (Square sq = 0; sq < 64; ++sq) {
    const auto piece = piece_at(sq);
    if (piece) np.put_piece(opposite(piece->color), piece->kind, flip_square(sq));
  }
  np.stm_ = opposite(stm_);
  np.castling_ = static_cast<uint8_t>(((castling_ & 0x3) << 2) | ((castling_ >> 2) & 0x3));
  np.ep_ = ep_ < 0 ? -1 : static_cast<int8_t>(flip_square(ep_));
  np.halfmove_ = halfmove_;
  np.fullmove_ = fullmove_;
  return np;
}

bool insufficient_material(const Position& p) {
  for (Color c : {Color::White, Color::Black})
    if (p.pieces(c, PieceKind::Pawn) | p.pieces(c, PieceKind::Rook) |
        p.pieces(c, PieceKind::Queen))
      return false;
  const uint64_t knights =
      p.pieces(Color::White, PieceKind::Knight) | p.pieces(Color::Black, PieceKind::Knight);
  const uint64_t bishops =
      p.pieces(Color::White, PieceKind::Bishop) | p.pieces(Color::Black, PieceKind::Bishop);
  const int minors = std::popcount(knights | bishops);
  if (minors <= 1) return true;
  if (knights) return false;
  // Bishops only: drawn when they all stand on one square color.
  constexpr uint64_t kDarkSquares = 0xAA55AA55AA55AA55ULL;
  return !(bishops & kDarkSquares) || !(bishops & ~kDarkSquares);
}

GameStatus Position::status() const {
  if (!has_legal_move())
    return in_check(stm_) ? GameStatus::Checkmate : GameStatus::Stalemate;
  if (halfmove_ >= 100) return GameStatus::DrawFiftyMove;
  if (insufficient_material(*this)) return GameStatus::DrawInsufficientMaterial;
  return GameStatus::Ongoing;
}

// ---------------------------------------------------------------------------
// FEN

Position Position::startpos() { return from_fen(kStartposFen); }

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fen_error(int field, const std::string& reason) {
  throw DataError("FEN field " + std::to_string(field) + ": " + reason);
}

}  // namespace

Position Position::from_fen(const std::string& fen) {
  const auto fields = split_ws(fen);
  if (fields.size() < 4 || fields.size() > 6)
    throw DataError("FEN must have 4-6 fields, got " + std::to_string(fields.size()));

  Position p;

  // Field 1: placement.
  {
    int rank = 7, file = 0;
    for (const char ch : fields[0]) {
      if (ch == '/') {
        if (file != 8) fen_error(1, "rank with " + std::to_string(file) + " files");
        if (--rank < 0) fen_error(1, "more than 8 ranks");
        file = 0;
      } else if (ch >= '1' && ch <= '8') {
        file += ch - '0';
        if (file > 8) fen_error(1, "rank overflows 8 files");
      } else {
        const auto piece = piece_from_char(ch);
        if (!piece) fen_error(1, std::string("unknown piece character '") + ch + "'");
        if (file > 7) fen_error(1, "rank overflows 8 files");
        p.put_piece(piece->color, piece->kind, make_square(file, rank));
        ++file;
      }
    }
    if (rank != 0 || file != 8) fen_error(1, "placement does not describe 8 ranks");
  }

  // Field 2: side to move.
  if (fields[1] == "w") p.stm_ = Color::White;
  else if (fields[1] == "b") p.stm_ = Color::Black;
  else fen_error(2, "side to move must be 'w' or 'b'");

  // Field 3: castling rights.
  if (fields[2] != "-") {
    for (const char ch : fields[2]) {
      switch (ch) {
        case 'K': p.castling_ |= 1; break;
        case 'Q': p.castling_ |= 2; break;
        case 'k': p.castling_ |= 4; break;
        case 'q': p.castling_ |= 8; break;
        default: fen_error(3, std::string("unknown castling character '") + ch + "'");
      }
    }
  }

  // Field 4: en passant square.
  if (fields[3] != "-") {
    try {
      p.ep_ = static_cast<int8_t>(parse_square(fields[3]));
    } catch (const DataError&) {
      fen_error(4, "malformed en passant square '" + fields[3] + "'");
    }
  }

  // Fields 5-6: clocks.
  if (fields.size() >= 5) {
    try {
      const int v = std::stoi(fields[4]);
      if (v < 0) throw std::invalid_argument("");
      p.halfmove_ = v;
    } catch (const std::exception&) {
      fen_error(5, "halfmove clock must be a non-negative integer");
    }
  }
  if (fields.size() >= 6) {
    try {
      const int v = std::stoi(fields[5]);
      if (v < 1) throw std::invalid_argument("");
      p.fullmove_ = v;
    } catch (const std::exception&) {
      fen_error(6, "fullmove number must be a positive integer");
    }
  }

  p.validate();
  return p;
}

void Position::validate() const {
  for (Color c : {Color::White, Color::Black}) {
    const int kings = std::popcount(pieces(c, PieceKind::King));
    if (kings != 1)
      fen_error(1, std::string(c == Color::White ? "white" : "black") + " must have exactly one king, has " +
                       std::to_string(kings));
  }
  constexpr uint64_t kBackRanks = 0xFF000000000000FFULL;
  if ((pieces(Color::White, PieceKind::Pawn) | pieces(Color::Black, PieceKind::Pawn)) & kBackRanks)
    fen_error(1, "pawn on rank 1 or rank 8");

  struct CastleReq { int bit; Color c; Square king, rook; const char* name; };
  constexpr CastleReq reqs[4] = {{1, Color::White, 4, 7, "K"},
                                 {2, Color::White, 4, 0, "Q"},
                                 {4, Color::Black, 60, 63, "k"},
                                 {8, Color::Black, 60, 56, "q"}};
  for (const auto& r : reqs) {
    if (!(castling_ & r.bit)) continue;
    const bool ok = (pieces(r.c, PieceKind::King) & bb(r.king)) &&
                    (pieces(r.c, PieceKind::Rook) & bb(r.rook));
    if (!ok)
      fen_error(3, std::string("castling right '") + r.name +
                       "' requires king and rook on their origin squares");
  }

  if (ep_ >= 0) {
    const int r = rank_of(ep_);
    if (stm_ == Color::White && r != 5) fen_error(4, "en passant square must be on rank 6 with white to move");
    if (stm_ == Color::Black && r != 2) fen_error(4, "en passant square must be on rank 3 with black to move");
    // The pawn that just double-stepped sits in front of the en passant
    // square (from the mover's view); the square itself and the origin
    // square behind it are empty.
    const Color mover = opposite(stm_);
    const int dir = mover == Color::White ? 8 : -8;
    const Square pawn_sq = ep_ + dir;
    const Square origin_sq = ep_ - dir;
    if (!(pieces(mover, PieceKind::Pawn) & bb(pawn_sq)))
      fen_error(4, "no pawn in front of the en passant square");
    if (mailbox_[ep_] >= 0 || mailbox_[origin_sq] >= 0)
      fen_error(4, "en passant square or its origin square is occupied");
  }

  Position probe = *this;
  probe.stm_ = opposite(stm_);
  if (probe.in_check(opposite(stm_)))
    fen_error(2, "the side not to move is in check");
}

std::string Position::key() const {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      const auto piece = piece_at(make_square(file, rank));
      if (!piece) {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      out += piece_char(piece->color, piece->kind);
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (rank) out += '/';
  }
  out += stm_ == Color::White ? " w " : " b ";
  if (!castling_) {
    out += '-';
  } else {
    if (castling_ & 1) out += 'K';
    if (castling_ & 2) out += 'Q';
    if (castling_ & 4) out += 'k';
    if (castling_ & 8) out += 'q';
  }
  out += ' ';
  out += ep_ < 0 ? "-" : square_name(ep_);
  return out;
}

std::string Position::fen() const {
  return key() + ' ' + std::to_string(halfmove_) + ' ' + std::to_string(fullmove_);
}

// ---------------------------------------------------------------------------

uint64_t perft(const Position& p, int depth) {
  if (depth <= 0) return 1;
  MoveGen::List list;
  MoveGen::pseudo_legal(p, list);
  uint64_t nodes = 0;
  for (int i = 0; i < list.size; ++i) {
    const Position next = p.apply_unchecked(list.moves[i]);
    if (next.in_check(p.side_to_move())) continue;
    nodes += depth == 1 ? 1 : perft(next, depth - 1);
  }
  return nodes;
}

Position random_position(uint64_t seed, int min_plies, int max_plies) {
  if (min_plies < 0 || min_plies > max_plies)
    throw std::invalid_argument("random_position: need 0 <= min_plies <= max_plies");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int target =
        min_plies + static_cast<int>(rng.uniform(static_cast<uint64_t>(max_plies - min_plies) + 1));
    Position p = Position::startpos();
    bool dead_end = false;
    for (int ply = 0; ply < target; ++ply) {
      const auto moves = p.legal_moves();
      if (moves.empty()) {
        dead_end = true;
        break;
      }
      p = p.apply_unchecked(moves[rng.uniform(moves.size())]);
    }
    if (!dead_end && p.status() == GameStatus::Ongoing) return p;
  }
  throw std::runtime_error("random_position: no ongoing position found after 10000 playouts");
}

Move parse_uci_move(const Position& p, const std::string& text) {
  if (text.size() < 4 || text.size() > 5)
    throw DataError("malformed move '" + text + "'");
  const Square from = parse_square(text.substr(0, 2));
  const Square to = parse_square(text.substr(2, 2));
  std::optional<PieceKind> promo;
  if (text.size() == 5) {
    switch (text[4]) {
      case 'n': promo = PieceKind::Knight; break;
      case 'b': promo = PieceKind::Bishop; break;
      case 'r': promo = PieceKind::Rook; break;
      case 'q': promo = PieceKind::Queen; break;
      default: throw DataError("malformed promotion piece in '" + text + "'");
    }
  }
  for (const Move& m : p.legal_moves())
    if (m.from == from && m.to == to && m.promotion == promo) return m;
  throw DataError("move '" + text + "' is not legal in position " + p.fen());
}

}  // namespace evotune
