#include "evotune/eval.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace evotune {

const std::array<const char*, kParamCount> kParamNames = {
    "PAWN_VALUE",
    "KNIGHT_VALUE",
    "BISHOP_VALUE",
    "ROOK_VALUE",
    "QUEEN_VALUE",
    "PAWN_ADVANCE_A",
    "PAWN_ADVANCE_B",
    "PASSED_PAWN_MULT",
    "DOUBLED_PAWN_PENALTY",
    "ISOLATED_PAWN_PENALTY",
    "BACKWARD_PAWN_PENALTY",
    "WEAK_SQUARE_PENALTY",
    "PASSED_PAWN_ENEMY_KING_DIST",
    "KNIGHT_SQ_MULT",
    "KNIGHT_OUTPOST_MULT",
    "BISHOP_MOBILITY",
    "BISHOP_PAIR",
    "ROOK_ATTACK_KING_FILE",
    "ROOK_ATTACK_KING_ADJ_FILE",
    "ROOK_ATTACK_KING_ADJ_FILE_ABGH",
    "ROOK_7TH_RANK",
    "ROOK_CONNECTED",
    "ROOK_MOBILITY",
    "ROOK_BEHIND_PASSED_PAWN",
    "ROOK_OPEN_FILE",
    "ROOK_SEMI_OPEN_FILE",
    "ROOK_ATCK_WEAK_PAWN_OPEN_COLUMN",
    "ROOK_COLUMN_MULT",
    "QUEEN_MOBILITY",
    "KING_NO_FRIENDLY_PAWN",
    "KING_NO_FRIENDLY_PAWN_ADJ",
    "KING_FRIENDLY_PAWN_ADVANCED1",
    "KING_NO_ENEMY_PAWN",
    "KING_NO_ENEMY_PAWN_ADJ",
    "KING_PRESSURE_MULT",
};

int param_index(const std::string& name) {
  for (int i = 0; i < kParamCount; ++i)
    if (name == kParamNames[i]) return i;
  return -1;
}

void EvalParams::check_bounds() const {
  for (int i = 0; i < kParamCount; ++i) {
    if (values[i] < 0 || values[i] > param_max(i))
      throw DataError(std::string(kParamNames[i]) + " = " + std::to_string(values[i]) +
                      " outside [0, " + std::to_string(param_max(i)) + "]");
  }
}

EvalParams EvalParams::reference() {
  EvalParams p;
  p.values = {83, 322, 323, 478, 954,              // material
              2,  4,   5,   21,  10, 3, 7, 5,      // pawn structure
              7,  8,                               // knights
              5,  44,                              // bishops
              30, 1,   21,  32,  2,  2, 48, 12, 6, 7, 3,  // rooks
              0,                                   // queen
              27, 17,  12,  11,  3,  8};           // king
  return p;
}

namespace {

constexpr uint64_t bb(Square sq) { return 1ULL << sq; }

inline Square pop_lsb(uint64_t& b) {
  const Square sq = std::countr_zero(b);
  b &= b - 1;
  return sq;
}

constexpr uint64_t kFileA = 0x0101010101010101ULL;

constexpr uint64_t file_mask(int f) { return kFileA << f; }

constexpr uint64_t adjacent_files_mask(int f) {
  uint64_t m = 0;
  if (f > 0) m |= file_mask(f - 1);
  if (f < 7) m |= file_mask(f + 1);
  return m;
}

// All squares on ranks strictly ahead of `sq` from `c`'s direction of play.
constexpr uint64_t ahead_mask(Color c, Square sq) {
  const int r = rank_of(sq);
  if (c == Color::White) return r == 7 ? 0 : ~0ULL << (8 * (r + 1));
  return r == 0 ? 0 : ~0ULL >> (8 * (8 - r));
}

// Rank index 1..8 counted from `c`'s back rank.
constexpr int relative_rank(Color c, Square sq) {
  const int r = rank_of(sq);
  return (c == Color::White ? r : 7 - r) + 1;
}

constexpr int chebyshev(Square a, Square b) {
  const int df = file_of(a) - file_of(b);
  const int dr = rank_of(a) - rank_of(b);
  return std::max(df < 0 ? -df : df, dr < 0 ? -dr : dr);
}

// Centrality ring: 0 on the edge, 3 on the four center squares.
constexpr int ring_index(Square sq) {
  const int f = file_of(sq), r = rank_of(sq);
  return std::min(std::min(f, 7 - f), std::min(r, 7 - r));
}

struct SideContext {
  Color us;
  Color them;
  uint64_t own_pawns;
  uint64_t enemy_pawns;
  uint64_t own_all;
  uint64_t all;
  Square own_king;
  Square enemy_king;
};

bool is_passed(const SideContext& s, Square sq) {
  const uint64_t span =
      ahead_mask(s.us, sq) & (file_mask(file_of(sq)) | adjacent_files_mask(file_of(sq)));
  return !(s.enemy_pawns & span);
}

// A pawn of color c on `sq` is pawn-defended iff an own pawn stands on a
// square that attacks `sq`, i.e. on a square `sq` "attacks" toward c's
// opponent's direction.
bool pawn_defended(uint64_t own_pawns, Color c, Square sq) {
  return pawn_attacks(opposite(c), sq) & own_pawns;
}

// Per-side raw counts; all non-negative. Penalty signs are applied when
// folding the two sides into the white-minus-black vector.
void count_side(const SideContext& s, std::array<int, kParamCount>& c,
                const Position& p) {
  // Material.
  c[kPawnValue] = std::popcount(s.own_pawns);
  c[kKnightValue] = std::popcount(p.pieces(s.us, PieceKind::Knight));
  c[kBishopValue] = std::popcount(p.pieces(s.us, PieceKind::Bishop));
  c[kRookValue] = std::popcount(p.pieces(s.us, PieceKind::Rook));
  c[kQueenValue] = std::popcount(p.pieces(s.us, PieceKind::Queen));

  // Pawn structure.
  uint64_t pawns = s.own_pawns;
  while (pawns) {
    const Square sq = pop_lsb(pawns);
    const int f = file_of(sq);
    const bool passed = is_passed(s, sq);
    const int rel = relative_rank(s.us, sq);
    if (passed) {
      c[kPawnAdvanceB] += rel - 1;
      c[kPassedPawnMult] += rel;
      c[kPassedPawnEnemyKingDist] += chebyshev(s.enemy_king, sq);
    } else {
      c[kPawnAdvanceA] += rel - 1;
    }
    if (!(s.own_pawns & adjacent_files_mask(f))) ++c[kIsolatedPawnPenalty];
    // Backward: the stop square can some day be attacked by an enemy pawn
    // and no own pawn on an adjacent file is level or behind to defend it.
    const Square stop = s.us == Color::White ? sq + 8 : sq - 8;
    const bool stop_attackable = s.enemy_pawns & adjacent_files_mask(f) & ahead_mask(s.us, stop);
    const bool defendable = s.own_pawns & adjacent_files_mask(f) & ~ahead_mask(s.us, sq);
    if (stop_attackable && !defendable) ++c[kBackwardPawnPenalty];
  }
  for (int f = 0; f < 8; ++f) {
    const int n = std::popcount(s.own_pawns & file_mask(f));
    if (n > 1) c[kDoubledPawnPenalty] += n - 1;
  }

  // Weak squares: own half, files c-f, never attackable by an own pawn.
  {
    const uint64_t own_half = s.us == Color::White ? 0x00000000FFFFFFFFULL : 0xFFFFFFFF00000000ULL;
    constexpr uint64_t files_cf = file_mask(2) | file_mask(3) | file_mask(4) | file_mask(5);
    uint64_t region = own_half & files_cf;
    while (region) {
      const Square sq = pop_lsb(region);
      // behind = not ahead and not the square's own rank.
      const uint64_t behind =
          ~ahead_mask(s.us, sq) & ~(0xFFULL << (8 * rank_of(sq)));
      if (!(s.own_pawns & adjacent_files_mask(file_of(sq)) & behind)) ++c[kWeakSquarePenalty];
    }
  }

  // Knights.
  uint64_t knights = p.pieces(s.us, PieceKind::Knight);
  const uint64_t enemy_half = s.us == Color::White ? 0xFFFFFFFF00000000ULL : 0x00000000FFFFFFFFULL;
  while (knights) {
    const Square sq = pop_lsb(knights);
    c[kKnightSqMult] += ring_index(sq);
    const bool in_enemy_half = enemy_half & bb(sq);
    const bool defended = pawn_defended(s.own_pawns, s.us, sq);
    const bool safe = !(s.enemy_pawns & adjacent_files_mask(file_of(sq)) & ahead_mask(s.us, sq));
    if (in_enemy_half && defended && safe) c[kKnightOutpostMult] += ring_index(sq);
  }

  // Bishops.
  uint64_t bishops = p.pieces(s.us, PieceKind::Bishop);
  if (std::popcount(bishops) >= 2) c[kBishopPair] = 1;
  while (bishops) {
    const Square sq = pop_lsb(bishops);
    c[kBishopMobility] += std::popcount(bishop_attacks(sq, s.all) & ~s.own_all);
  }

  // Rooks.
  const int ekf = file_of(s.enemy_king);
  const bool ek_edge = ekf <= 1 || ekf >= 6;
  uint64_t rooks = p.pieces(s.us, PieceKind::Rook);
  uint64_t rooks_left = rooks;
  while (rooks_left) {
    const Square sq = pop_lsb(rooks_left);
    const int f = file_of(sq);
    c[kRookMobility] += std::popcount(rook_attacks(sq, s.all) & ~s.own_all);
    if (f == ekf) ++c[kRookAttackKingFile];
    if (f == ekf - 1 || f == ekf + 1) {
      ++c[kRookAttackKingAdjFile];
      if (ek_edge) ++c[kRookAttackKingAdjFileAbgh];
    }
    if (relative_rank(s.us, sq) == 7) ++c[kRook7thRank];
    if (rook_attacks(sq, s.all) & rooks & ~bb(sq)) c[kRookConnected] = 1;
    const bool own_pawn_on_file = s.own_pawns & file_mask(f);
    const bool enemy_pawn_on_file = s.enemy_pawns & file_mask(f);
    if (!own_pawn_on_file && !enemy_pawn_on_file) ++c[kRookOpenFile];
    if (!own_pawn_on_file && enemy_pawn_on_file) {
      ++c[kRookSemiOpenFile];
      uint64_t targets = s.enemy_pawns & file_mask(f);
      while (targets) {
        const Square t = pop_lsb(targets);
        if (!pawn_defended(s.enemy_pawns, s.them, t)) {
          ++c[kRookAtckWeakPawnOpenColumn];
          break;
        }
      }
    }
    uint64_t own_passed_ahead = s.own_pawns & file_mask(f) & ahead_mask(s.us, sq);
    while (own_passed_ahead) {
      const Square t = pop_lsb(own_passed_ahead);
      if (is_passed(s, t)) {
        ++c[kRookBehindPassedPawn];
        break;
      }
    }
    c[kRookColumnMult] += std::min(f, 7 - f);
  }

  // Queens.
  uint64_t queens = p.pieces(s.us, PieceKind::Queen);
  while (queens) {
    const Square sq = pop_lsb(queens);
    c[kQueenMobility] += std::popcount(queen_attacks(sq, s.all) & ~s.own_all);
  }

  // King shelter: own king's file and its on-board adjacent files.
  {
    const int kf = file_of(s.own_king);
    if (!(s.own_pawns & file_mask(kf))) c[kKingNoFriendlyPawn] = 1;
    if (!(s.enemy_pawns & file_mask(kf))) c[kKingNoEnemyPawn] = 1;
    for (const int f : {kf - 1, kf + 1}) {
      if (f < 0 || f > 7) continue;
      if (!(s.own_pawns & file_mask(f))) ++c[kKingNoFriendlyPawnAdj];
      if (!(s.enemy_pawns & file_mask(f))) ++c[kKingNoEnemyPawnAdj];
    }
    const uint64_t shield_files = file_mask(kf) | adjacent_files_mask(kf);
    const uint64_t advanced1_rank = 0xFFULL << (s.us == Color::White ? 16 : 40);
    c[kKingFriendlyPawnAdvanced1] = std::popcount(s.own_pawns & shield_files & advanced1_rank);
  }

  // Attacks on the squares around the enemy king, every attacker counted.
  {
    uint64_t zone = king_attacks(s.enemy_king);
    while (zone) {
      const Square sq = pop_lsb(zone);
      c[kKingPressureMult] += std::popcount(p.attackers_to(sq, s.all) & s.own_all);
    }
  }
}

// +1 for bonus features, -1 for *_PENALTY-style features (doubled,
// isolated, backward, weak squares, and the king's missing-shelter terms).
constexpr std::array<int, kParamCount> kFeatureSign = [] {
  std::array<int, kParamCount> s{};
  for (auto& x : s) x = 1;
  s[kDoubledPawnPenalty] = -1;
  s[kIsolatedPawnPenalty] = -1;
  s[kBackwardPawnPenalty] = -1;
  s[kWeakSquarePenalty] = -1;
  s[kKingNoFriendlyPawn] = -1;
  s[kKingNoFriendlyPawnAdj] = -1;
  s[kKingFriendlyPawnAdvanced1] = -1;
  return s;
}();

}  // namespace

const std::array<int, kParamCount> kFeatureCountBound = [] {
  std::array<int, kParamCount> b{};
  b[kPawnValue] = 8;
  b[kKnightValue] = 10;
  b[kBishopValue] = 10;
  b[kRookValue] = 10;
  b[kQueenValue] = 9;
  b[kPawnAdvanceA] = 8 * 7;
  b[kPawnAdvanceB] = 8 * 7;
  b[kPassedPawnMult] = 8 * 8;
  b[kDoubledPawnPenalty] = 7;
  b[kIsolatedPawnPenalty] = 8;
  b[kBackwardPawnPenalty] = 8;
  b[kWeakSquarePenalty] = 16;
  b[kPassedPawnEnemyKingDist] = 8 * 7;
  b[kKnightSqMult] = 10 * 3;
  b[kKnightOutpostMult] = 10 * 3;
  b[kBishopMobility] = 10 * 13;
  b[kBishopPair] = 1;
  b[kRookAttackKingFile] = 10;
  b[kRookAttackKingAdjFile] = 10;
  b[kRookAttackKingAdjFileAbgh] = 10;
  b[kRook7thRank] = 10;
  b[kRookConnected] = 1;
  b[kRookMobility] = 10 * 14;
  b[kRookBehindPassedPawn] = 10;
  b[kRookOpenFile] = 10;
  b[kRookSemiOpenFile] = 10;
  b[kRookAtckWeakPawnOpenColumn] = 10;
  b[kRookColumnMult] = 10 * 3;
  b[kQueenMobility] = 9 * 27;
  b[kKingNoFriendlyPawn] = 1;
  b[kKingNoFriendlyPawnAdj] = 2;
  b[kKingFriendlyPawnAdvanced1] = 3;
  b[kKingNoEnemyPawn] = 1;
  b[kKingNoEnemyPawnAdj] = 2;
  b[kKingPressureMult] = 8 * 16;
  return b;
}();

FeatureVector extract_features(const Position& p) {
  std::array<int, kParamCount> white{}, black{};
  const uint64_t wall = p.occupied(Color::White);
  const uint64_t ball = p.occupied(Color::Black);
  const SideContext ws{Color::White,
                       Color::Black,
                       p.pieces(Color::White, PieceKind::Pawn),
                       p.pieces(Color::Black, PieceKind::Pawn),
                       wall,
                       wall | ball,
                       p.king_square(Color::White),
                       p.king_square(Color::Black)};
  const SideContext bs{Color::Black,
                       Color::White,
                       p.pieces(Color::Black, PieceKind::Pawn),
                       p.pieces(Color::White, PieceKind::Pawn),
                       ball,
                       wall | ball,
                       p.king_square(Color::Black),
                       p.king_square(Color::White)};
  count_side(ws, white, p);
  count_side(bs, black, p);
  FeatureVector out{};
  for (int i = 0; i < kParamCount; ++i) out[i] = kFeatureSign[i] * (white[i] - black[i]);
  return out;
}

int64_t dot(const FeatureVector& f, const EvalParams& params) {
  int64_t sum = 0;
  for (int i = 0; i < kParamCount; ++i) sum += int64_t{f[i]} * params[i];
  return sum;
}

int evaluate_features(const FeatureVector& f, Color side_to_move, const EvalParams& params) {
  const int64_t white_score = dot(f, params);
  return static_cast<int>(side_to_move == Color::White ? white_score : -white_score);
}

int evaluate(const Position& p, const EvalParams& params) {
  return evaluate_features(extract_features(p), p.side_to_move(), params);
}

// ---------------------------------------------------------------------------
// Parameter files

EvalParams read_params(std::istream& in) {
  EvalParams p;
  std::array<bool, kParamCount> seen{};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    const int idx = param_index(name);
    if (idx < 0)
      throw DataError("line " + std::to_string(lineno) + ": unknown parameter '" + name + "'");
    if (seen[idx])
      throw DataError("line " + std::to_string(lineno) + ": duplicate parameter '" + name + "'");
    long long value;
    std::string extra;
    if (!(ls >> value) || (ls >> extra))
      throw DataError("line " + std::to_string(lineno) + ": expected '" + name + " <integer>'");
    if (value < 0 || value > param_max(idx))
      throw DataError("line " + std::to_string(lineno) + ": " + name + " = " +
                      std::to_string(value) + " outside [0, " + std::to_string(param_max(idx)) +
                      "]");
    p[idx] = static_cast<int>(value);
    seen[idx] = true;
  }
  for (int i = 0; i < kParamCount; ++i)
    if (!seen[i]) throw DataError(std::string("missing parameter '") + kParamNames[i] + "'");
  return p;
}

EvalParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open parameter file '" + path + "'");
  try {
    return read_params(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_params(std::ostream& out, const EvalParams& params) {
  for (int i = 0; i < kParamCount; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-32s %d\n", kParamNames[i], params[i]);
    out << buf;
  }
}

void save_params(const std::string& path, const EvalParams& params) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open parameter file '" + path + "' for writing");
  write_params(out, params);
  if (!out.flush()) throw DataError("failed writing parameter file '" + path + "'");
}

}  // namespace evotune
