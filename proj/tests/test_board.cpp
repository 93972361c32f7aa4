#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "evotune/board.hpp"
#include "evotune/rng.hpp"
#include "oracle_board.hpp"

using namespace evotune;

namespace {

const char* kKiwipeteFen =
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1";
const char* kPos3Fen = "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1";
const char* kPos4Fen = "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1";

std::vector<Position> random_suite(int n, uint64_t seed0, int min_plies = 4, int max_plies = 70) {
  std::vector<Position> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(random_position(derive_seed(seed0, i), min_plies, max_plies));
  return out;
}

}  // namespace

TEST_CASE("square coordinates and names") {
  CHECK(make_square(0, 0) == 0);
  CHECK(make_square(7, 7) == 63);
  CHECK(file_of(28) == 4);
  CHECK(rank_of(28) == 3);
  CHECK(flip_square(0) == 56);
  CHECK(flip_square(28) == 36);
  CHECK(square_name(0) == "a1");
  CHECK(square_name(63) == "h8");
  for (Square s = 0; s < 64; ++s) CHECK(parse_square(square_name(s)) == s);
  CHECK_THROWS_AS(parse_square(""), DataError);
  CHECK_THROWS_AS(parse_square("i1"), DataError);
  CHECK_THROWS_AS(parse_square("a9"), DataError);
  CHECK_THROWS_AS(parse_square("a"), DataError);
  CHECK_THROWS_AS(parse_square("e44"), DataError);
}

TEST_CASE("startpos FEN round-trip") {
  const Position p = Position::startpos();
  CHECK(p.fen() == kStartposFen);
  CHECK(Position::from_fen(kStartposFen) == p);
  CHECK(p.key() == "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -");
  CHECK(p.side_to_move() == Color::White);
  CHECK(p.halfmove_clock() == 0);
  CHECK(p.fullmove_number() == 1);
  CHECK(p.piece_at(4) == Piece{Color::White, PieceKind::King});
  CHECK(p.piece_at(35) == std::nullopt);
}

TEST_CASE("four-field FEN defaults the clocks") {
  const Position p = Position::from_fen("4k3/8/8/8/8/8/4P3/4K3 w - -");
  CHECK(p.halfmove_clock() == 0);
  CHECK(p.fullmove_number() == 1);
  CHECK(p.fen() == "4k3/8/8/8/8/8/4P3/4K3 w - - 0 1");
}

TEST_CASE("FEN rejection") {
  // placement
  CHECK_THROWS_AS(Position::from_fen(""), DataError);
  CHECK_THROWS_AS(Position::from_fen("x7/8/8/8/8/8/8/8 w - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("9/8/8/8/8/8/8/8 w - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("8/8/8/8/8/8/8 w - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("8/8/8/8/8/8/8/8/8 w - -"), DataError);
  // kings
  CHECK_THROWS_AS(Position::from_fen("8/8/8/8/8/8/8/8 w - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("kk6/8/8/8/8/8/8/KK6 w - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("k7/8/8/8/8/8/8/8 w - -"), DataError);
  // pawns on back ranks
  CHECK_THROWS_AS(Position::from_fen("P3k3/8/8/8/8/8/8/4K3 w - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/p3K3 w - -"), DataError);
  // side, castling, en passant fields
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 x - -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w KQxq -"), DataError);
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w K -"), DataError);  // no rook/king
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - e9"), DataError);
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - e3"), DataError);  // no pawn
  // clocks
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - -1 1"), DataError);
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - x 1"), DataError);
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - 0 0"), DataError);
  // side not to move in check
  CHECK_THROWS_AS(Position::from_fen("4k3/8/8/8/8/8/4r3/4K3 b - -"), DataError);
}

TEST_CASE("perft from the start position") {
  const Position p = Position::startpos();
  CHECK(perft(p, 0) == 1);
  CHECK(perft(p, 1) == 20);
  CHECK(perft(p, 2) == 400);
  CHECK(perft(p, 3) == 8902);
  CHECK(perft(p, 4) == 197281);
  CHECK(perft(p, 5) == 4865609);
}

TEST_CASE("perft on castling/en-passant/promotion heavy positions") {
  const Position kiwipete = Position::from_fen(kKiwipeteFen);
  CHECK(perft(kiwipete, 1) == 48);
  CHECK(perft(kiwipete, 2) == 2039);
  CHECK(perft(kiwipete, 3) == 97862);
  CHECK(perft(kiwipete, 4) == 4085603);

  const Position pos3 = Position::from_fen(kPos3Fen);
  CHECK(perft(pos3, 1) == 14);
  CHECK(perft(pos3, 2) == 191);
  CHECK(perft(pos3, 3) == 2812);
  CHECK(perft(pos3, 4) == 43238);
  CHECK(perft(pos3, 5) == 674624);

  const Position pos4 = Position::from_fen(kPos4Fen);
  CHECK(perft(pos4, 1) == 6);
  CHECK(perft(pos4, 2) == 264);
  CHECK(perft(pos4, 3) == 9467);
  CHECK(perft(pos4, 4) == 422333);
}

TEST_CASE("coordinate move parsing") {
  const Position p = Position::startpos();
  const Move m = parse_uci_move(p, "e2e4");
  CHECK(m.from == parse_square("e2"));
  CHECK(m.to == parse_square("e4"));
  CHECK(m.kind == MoveKind::DoublePawnPush);
  CHECK(m.uci() == "e2e4");
  CHECK_THROWS_AS(parse_uci_move(p, "e2e5"), DataError);
  CHECK_THROWS_AS(parse_uci_move(p, "e7e8q"), DataError);
  CHECK_THROWS_AS(parse_uci_move(p, "zz"), DataError);

  const Position promo = Position::from_fen("4k3/1P6/8/8/8/8/8/4K3 w - -");
  const Move pm = parse_uci_move(promo, "b7b8q");
  CHECK(pm.kind == MoveKind::Promotion);
  CHECK(pm.promotion == PieceKind::Queen);
  CHECK(pm.uci() == "b7b8q");
}

TEST_CASE("en passant capture that would expose the king is illegal") {
  // Rank pin: capturing exd3 removes both pawns from the 4th rank.
  const Position p = Position::from_fen("8/8/8/8/k2Pp2Q/8/8/4K3 b - d3 0 1");
  for (const Move& m : p.legal_moves()) CHECK(m.kind != MoveKind::EnPassant);
}

TEST_CASE("castling through an attacked square is illegal") {
  const Position p = Position::from_fen("4k3/8/8/8/8/5q2/8/4K2R w K - 0 1");
  for (const Move& m : p.legal_moves()) CHECK(m.kind != MoveKind::CastleKingside);
}

TEST_CASE("castling moves the rook") {
  const Position p =
      Position::from_fen("r3k2r/pppppppp/8/8/8/8/PPPPPPPP/R3K2R w KQkq - 0 1");
  const Position after = p.apply(parse_uci_move(p, "e1g1"));
  CHECK(after.piece_at(parse_square("g1")) == Piece{Color::White, PieceKind::King});
  CHECK(after.piece_at(parse_square("f1")) == Piece{Color::White, PieceKind::Rook});
  CHECK(after.piece_at(parse_square("h1")) == std::nullopt);
  CHECK_FALSE(after.can_castle(Color::White, true));
  CHECK_FALSE(after.can_castle(Color::White, false));
  CHECK(after.can_castle(Color::Black, true));

  const Position after_q = p.apply(parse_uci_move(p, "e1c1"));
  CHECK(after_q.piece_at(parse_square("c1")) == Piece{Color::White, PieceKind::King});
  CHECK(after_q.piece_at(parse_square("d1")) == Piece{Color::White, PieceKind::Rook});
  CHECK(after_q.piece_at(parse_square("a1")) == std::nullopt);
}

TEST_CASE("apply rejects illegal moves") {
  const Position p = Position::startpos();
  Move bogus;
  bogus.from = parse_square("e2");
  bogus.to = parse_square("e5");
  bogus.kind = MoveKind::Normal;
  CHECK_THROWS_AS(p.apply(bogus), DataError);
  const Move legal = parse_uci_move(p, "g1f3");
  CHECK(p.apply(legal) == p.apply_unchecked(legal));
}

TEST_CASE("halfmove clock and fullmove number bookkeeping") {
  Position p = Position::startpos();
  p = p.apply(parse_uci_move(p, "g1f3"));
  CHECK(p.halfmove_clock() == 1);
  CHECK(p.fullmove_number() == 1);
  p = p.apply(parse_uci_move(p, "g8f6"));
  CHECK(p.halfmove_clock() == 2);
  CHECK(p.fullmove_number() == 2);
  p = p.apply(parse_uci_move(p, "e2e4"));  // pawn move resets
  CHECK(p.halfmove_clock() == 0);
  p = p.apply(parse_uci_move(p, "f6e4"));  // capture resets
  CHECK(p.halfmove_clock() == 0);
  CHECK(p.fullmove_number() == 3);
}

TEST_CASE("game status detection") {
  CHECK(Position::startpos().status() == GameStatus::Ongoing);
  // Fool's mate.
  const Position mate = Position::from_fen(
      "rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3");
  CHECK(mate.status() == GameStatus::Checkmate);
  const Position stalemate = Position::from_fen("k7/8/1Q6/8/8/8/8/7K b - - 0 1");
  CHECK(stalemate.status() == GameStatus::Stalemate);
  const Position fifty = Position::from_fen("4k3/8/8/8/8/8/3R4/4K3 w - - 100 80");
  CHECK(fifty.status() == GameStatus::DrawFiftyMove);
  const Position bare = Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - 0 1");
  CHECK(bare.status() == GameStatus::DrawInsufficientMaterial);
  // Checkmate wins over the fifty-move counter.
  const Position mate_at_100 = Position::from_fen(
      "rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 100 80");
  CHECK(mate_at_100.status() == GameStatus::Checkmate);
}

TEST_CASE("insufficient material rule") {
  auto insufficient = [](const char* fen) {
    return insufficient_material(Position::from_fen(fen));
  };
  CHECK(insufficient("4k3/8/8/8/8/8/8/4K3 w - -"));
  CHECK(insufficient("4k3/8/8/8/8/8/8/4KN2 w - -"));
  CHECK(insufficient("4k3/8/8/8/8/8/8/4KB2 w - -"));
  // Bishops on both sides, all on dark squares (c1 and f4).
  CHECK(insufficient("4k3/8/8/8/5b2/8/8/2B1K3 w - -"));
  CHECK_FALSE(insufficient("4k3/8/8/8/8/8/4P3/4K3 w - -"));
  CHECK_FALSE(insufficient("4k3/8/8/8/8/8/8/4KR2 w - -"));
  CHECK_FALSE(insufficient("4k3/8/8/8/8/8/8/4KQ2 w - -"));
  CHECK_FALSE(insufficient("4k3/8/8/8/8/8/8/3NKN2 w - -"));  // two minors
  CHECK_FALSE(insufficient("4k3/8/8/8/8/3B4/8/2B1K3 w - -"));  // bishop pair, both colors
}

TEST_CASE("mirror is an involution that preserves status") {
  for (const Position& p : random_suite(300, 0xA11CE)) {
    const Position m = p.mirrored();
    CHECK(m.side_to_move() == opposite(p.side_to_move()));
    CHECK(m.mirrored() == p);
    CHECK(m.status() == p.status());
    CHECK(m.legal_moves().size() == p.legal_moves().size());
  }
}

TEST_CASE("random positions are valid, ongoing, and reproducible") {
  for (int i = 0; i < 100; ++i) {
    const uint64_t seed = derive_seed(42, i);
    const Position p = random_position(seed, 4, 60);
    CHECK(p.status() == GameStatus::Ongoing);
    CHECK(Position::from_fen(p.fen()) == p);
    CHECK(random_position(seed, 4, 60) == p);
  }
  CHECK(random_position(7, 4, 60) != random_position(8, 4, 60));
}

TEST_CASE("move generation agrees with the reference implementation") {
  const auto suite = random_suite(2000, 0xB0A4D);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Position& p = suite[i];
    const auto lib = p.legal_moves();
    const auto ref = oracle::legal_moves(oracle::from_position(p));
    CAPTURE(i);
    CAPTURE(p.fen());
    REQUIRE(lib == ref);
    CHECK(p.has_legal_move() == !lib.empty());
    CHECK(std::is_sorted(lib.begin(), lib.end(), move_order_less));
  }
}

TEST_CASE("attack detection agrees with the reference implementation") {
  const auto suite = random_suite(150, 0xA77AC4);
  for (const Position& p : suite) {
    const oracle::Board b = oracle::from_position(p);
    for (Square s = 0; s < 64; ++s) {
      CAPTURE(p.fen());
      CAPTURE(s);
      CHECK(p.attacked_by(s, Color::White) == oracle::attacked(b, s, true));
      CHECK(p.attacked_by(s, Color::Black) == oracle::attacked(b, s, false));
    }
  }
}

TEST_CASE("perft agrees with the reference implementation") {
  const oracle::Board start = oracle::from_position(Position::startpos());
  CHECK(oracle::perft(start, 3) == perft(Position::startpos(), 3));
  const Position kiwipete = Position::from_fen(kKiwipeteFen);
  CHECK(oracle::perft(oracle::from_position(kiwipete), 2) == perft(kiwipete, 2));
  const Position pos3 = Position::from_fen(kPos3Fen);
  CHECK(oracle::perft(oracle::from_position(pos3), 3) == perft(pos3, 3));
  for (const Position& p : random_suite(200, 0xFEED)) {
    CAPTURE(p.fen());
    CHECK(oracle::perft(oracle::from_position(p), 2) == perft(p, 2));
  }
}

TEST_CASE("FEN round-trips on random positions") {
  for (const Position& p : random_suite(500, 0xF00D)) {
    CHECK(Position::from_fen(p.fen()) == p);
    CHECK(p.fen().rfind(p.key(), 0) == 0);  // key is a prefix of fen
  }
}
