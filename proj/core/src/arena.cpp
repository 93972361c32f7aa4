#include "evotune/arena.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "evotune/parallel.hpp"
#include "evotune/search.hpp"

namespace evotune {

double expected_winning_rate(double rating_diff) {
  return 1.0 / (std::pow(10.0, -rating_diff / 400.0) + 1.0);
}

double rating_difference(double winning_rate) {
  if (!(winning_rate > 0.0) || !(winning_rate < 1.0))
    throw std::domain_error("rating difference undefined for winning rate " +
                            std::to_string(winning_rate));
  // + 0.0 turns the -0.0 at winning_rate 0.5 into +0.0.
  return -400.0 * std::log10(1.0 / winning_rate - 1.0) + 0.0;
}

double mean_score(int wins, int draws, int losses) {
  const int n = wins + draws + losses;
  if (n < 1) throw DataError("mean score undefined without games");
  return (wins + 0.5 * draws) / n;
}

double score_stddev(int wins, int draws, int losses) {
  const int n = wins + draws + losses;
  if (n < 2) throw DataError("score deviation needs at least 2 games");
  const double mean = mean_score(wins, draws, losses);
  const double ss = wins * (1.0 - mean) * (1.0 - mean) + draws * (0.5 - mean) * (0.5 - mean) +
                    losses * mean * mean;
  return std::sqrt(ss / (n - 1));
}

EloEstimate elo_estimate(int wins, int draws, int losses, double k) {
  const int n = wins + draws + losses;
  if (n < 2) throw DataError("Elo estimate needs at least 2 games");
  EloEstimate e;
  e.k = k;
  e.mean = mean_score(wins, draws, losses);
  if (e.mean <= 0.0 || e.mean >= 1.0)
    throw DataError("rating difference is unbounded at a mean score of " + std::to_string(e.mean));
  e.stddev = score_stddev(wins, draws, losses);
  const double stderr_mean = e.stddev / std::sqrt(static_cast<double>(n));
  // The interval ends stay safely inside (0, 1) so the Elo mapping is total.
  const auto clamp01 = [](double w) {
    constexpr double kEps = 1e-6;
    return std::min(std::max(w, kEps), 1.0 - kEps);
  };
  e.w_lo = clamp01(e.mean - k * stderr_mean);
  e.w_hi = clamp01(e.mean + k * stderr_mean);
  e.rd = rating_difference(e.mean);
  e.rd_lo = rating_difference(e.w_lo);
  e.rd_hi = rating_difference(e.w_hi);
  return e;
}

EloEstimate elo_estimate(const MatchResult& m, double k) {
  return elo_estimate(m.wins, m.draws, m.losses, k);
}

GameRecord play_game(const EvalParams& white, const EvalParams& black, int depth,
                     const Position& opening, int max_plies) {
  if (opening.status() != GameStatus::Ongoing)
    throw DataError("match opening is already finished (" +
                    std::string(game_status_name(opening.status())) + "): " + opening.fen());
  if (depth < 1) throw DataError("match depth must be at least 1");

  GameRecord rec;
  rec.opening = opening;
  std::unordered_map<std::string, int> seen;
  Position p = opening;
  seen[p.key()] = 1;
  for (;;) {
    const GameStatus st = p.status();
    if (st != GameStatus::Ongoing) {
      rec.termination = st;
      break;
    }
    if (rec.ply_count >= max_plies) {
      rec.termination = GameStatus::DrawMoveLimit;
      break;
    }
    const EvalParams& side = p.side_to_move() == Color::White ? white : black;
    const Move move = *alphabeta(p, depth, side).best_move;
    p = p.apply_unchecked(move);
    rec.moves.push_back(move);
    ++rec.ply_count;
    if (++seen[p.key()] >= 3) {
      rec.termination = GameStatus::DrawRepetition;
      break;
    }
  }
  if (rec.termination == GameStatus::Checkmate)
    rec.result = p.side_to_move() == Color::Black ? GameResult::WhiteWin : GameResult::BlackWin;
  else
    rec.result = GameResult::Draw;
  return rec;
}

MatchResult run_match(const EvalParams& a, const EvalParams& b,
                      const std::vector<Position>& openings, int depth, int max_plies,
                      int threads) {
  MatchResult m;
  m.games.resize(openings.size() * 2);
  parallel_for(m.games.size(), threads, [&](std::size_t i) {
    const Position& opening = openings[i / 2];
    const bool a_is_white = i % 2 == 0;
    m.games[i] = play_game(a_is_white ? a : b, a_is_white ? b : a, depth, opening, max_plies);
  });
  for (std::size_t i = 0; i < m.games.size(); ++i) {
    const bool a_is_white = i % 2 == 0;
    switch (m.games[i].result) {
      case GameResult::Draw: ++m.draws; break;
      case GameResult::WhiteWin: ++(a_is_white ? m.wins : m.losses); break;
      case GameResult::BlackWin: ++(a_is_white ? m.losses : m.wins); break;
    }
  }
  return m;
}

int run_testsuite(const std::vector<SuiteEntry>& suite, const EvalParams& params, int depth,
                  int threads) {
  std::vector<uint8_t> solved(suite.size(), 0);
  parallel_for(suite.size(), threads, [&](std::size_t i) {
    const auto result = alphabeta(suite[i].position, depth, params);
    if (!result.best_move) return;
    for (const Move& m : suite[i].best_moves)
      if (m == *result.best_move) {
        solved[i] = 1;
        return;
      }
  });
  int count = 0;
  for (const uint8_t s : solved) count += s;
  return count;
}

std::vector<Opening> load_openings_epd(const std::string& path) {
  const auto records = load_epd(path);
  std::vector<Opening> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    std::string id = rec.id();
    if (id.empty()) id = "op-" + std::to_string(i + 1);
    if (rec.position.status() != GameStatus::Ongoing)
      throw DataError(path + ": opening '" + id + "' is already finished");
    out.push_back({std::move(id), rec.position});
  }
  return out;
}

// ---------------------------------------------------------------------------
// bm parsing: coordinate moves plus a lite algebraic form.

namespace {

void resolve_bm_token(const Position& p, std::string token, const std::vector<Move>& legal,
                      std::vector<Move>& out) {
  // Strip annotation suffixes.
  while (!token.empty() && (token.back() == '+' || token.back() == '#' || token.back() == '!' ||
                            token.back() == '?'))
    token.pop_back();
  if (token.empty()) throw DataError("empty bm token");

  const auto add_matches = [&](auto&& pred) {
    bool any = false;
    for (const Move& m : legal)
      if (pred(m)) {
        out.push_back(m);
        any = true;
      }
    return any;
  };

  // Castling words.
  if (token == "O-O" || token == "0-0") {
    if (!add_matches([](const Move& m) { return m.kind == MoveKind::CastleKingside; }))
      throw DataError("bm 'O-O' is not legal here");
    return;
  }
  if (token == "O-O-O" || token == "0-0-0") {
    if (!add_matches([](const Move& m) { return m.kind == MoveKind::CastleQueenside; }))
      throw DataError("bm 'O-O-O' is not legal here");
    return;
  }

  // Coordinate form: e2e4 / e7e8q.
  if (token.size() >= 4 && token[0] >= 'a' && token[0] <= 'h' && token[1] >= '1' &&
      token[1] <= '8' && token[2] >= 'a' && token[2] <= 'h' && token[3] >= '1' && token[3] <= '8') {
    out.push_back(parse_uci_move(p, token));
    return;
  }

  // Lite algebraic: [KQRBN]? [a-h]? [1-8]? 'x'? target [=]?[QRBN]?
  std::size_t i = 0;
  PieceKind kind = PieceKind::Pawn;
  switch (token[i]) {
    case 'K': kind = PieceKind::King; ++i; break;
    case 'Q': kind = PieceKind::Queen; ++i; break;
    case 'R': kind = PieceKind::Rook; ++i; break;
    case 'B': kind = PieceKind::Bishop; ++i; break;
    case 'N': kind = PieceKind::Knight; ++i; break;
    default: break;
  }
  int from_file = -1, from_rank = -1;
  bool capture = false;
  std::string rest = token.substr(i);
  // Target square is always the last two square characters (before any
  // promotion suffix).
  std::string promo_text;
  if (!rest.empty() && (rest.back() == 'Q' || rest.back() == 'R' || rest.back() == 'B' ||
                        rest.back() == 'N' || rest.back() == 'q' || rest.back() == 'r' ||
                        rest.back() == 'b' || rest.back() == 'n')) {
    promo_text = rest.substr(rest.size() - 1);
    rest.pop_back();
    if (!rest.empty() && rest.back() == '=') rest.pop_back();
  }
  if (rest.size() < 2) throw DataError("malformed bm token '" + token + "'");
  const std::string target_text = rest.substr(rest.size() - 2);
  if (target_text[0] < 'a' || target_text[0] > 'h' || target_text[1] < '1' ||
      target_text[1] > '8')
    throw DataError("malformed bm token '" + token + "'");
  const Square target = make_square(target_text[0] - 'a', target_text[1] - '1');
  rest.resize(rest.size() - 2);
  for (const char ch : rest) {
    if (ch == 'x') capture = true;
    else if (ch >= 'a' && ch <= 'h') from_file = ch - 'a';
    else if (ch >= '1' && ch <= '8') from_rank = ch - '1';
    else throw DataError("malformed bm token '" + token + "'");
  }
  std::optional<PieceKind> promo;
  if (!promo_text.empty()) {
    switch (std::tolower(promo_text[0])) {
      case 'q': promo = PieceKind::Queen; break;
      case 'r': promo = PieceKind::Rook; break;
      case 'b': promo = PieceKind::Bishop; break;
      case 'n': promo = PieceKind::Knight; break;
    }
  }

  const bool any = add_matches([&](const Move& m) {
    if (m.to != target) return false;
    const auto piece = p.piece_at(m.from);
    if (piece->kind != kind) return false;
    if (from_file >= 0 && file_of(m.from) != from_file) return false;
    if (from_rank >= 0 && rank_of(m.from) != from_rank) return false;
    if (capture && !is_capture_kind(m.kind)) return false;
    if (promo) return m.promotion == promo;
    return !is_promotion_kind(m.kind);
  });
  if (!any) throw DataError("bm token '" + token + "' matches no legal move");
}

}  // namespace

std::vector<SuiteEntry> load_suite_epd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open suite file '" + path + "'");
  std::vector<SuiteEntry> out;
  std::string line;
  // Reads lines itself (instead of via load_epd) so every error — parse or
  // bm resolution — carries the offending file line number.
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::size_t first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || line[first] == '#') continue;
    SuiteEntry entry;
    try {
      const EpdRecord rec = parse_epd_line(line);
      entry.position = rec.position;
      entry.id = rec.id();
      if (entry.id.empty()) entry.id = "entry-" + std::to_string(out.size() + 1);
      const std::string* bm = rec.find("bm");
      if (!bm || bm->empty()) throw DataError("entry '" + entry.id + "' has no bm opcode");
      const auto legal = rec.position.legal_moves();
      std::istringstream tokens(*bm);
      std::string token;
      try {
        while (tokens >> token) resolve_bm_token(rec.position, token, legal, entry.best_moves);
      } catch (const DataError& e) {
        throw DataError("entry '" + entry.id + "': " + e.what());
      }
    } catch (const DataError& e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    out.push_back(std::move(entry));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const char* result_text(GameResult r) {
  switch (r) {
    case GameResult::WhiteWin: return "1-0";
    case GameResult::BlackWin: return "0-1";
    case GameResult::Draw: return "1/2-1/2";
  }
  return "?";
}

void append_interval(std::ostream& out, const MatchResult& m, double k) {
  char line[160];
  try {
    const EloEstimate e = elo_estimate(m, k);
    std::snprintf(line, sizeof line,
                  "# k=%.0f: winning rate [%.4f, %.4f], elo %+.1f in [%+.1f, %+.1f]\n", k, e.w_lo,
                  e.w_hi, e.rd, e.rd_lo, e.rd_hi);
    out << line;
  } catch (const DataError&) {
    std::snprintf(line, sizeof line, "# k=%.0f: elo undefined (mean score 0 or 1)\n", k);
    out << line;
  }
}

}  // namespace

void write_match_summary(std::ostream& out, const MatchResult& m) {
  char line[160];
  std::snprintf(line, sizeof line, "# games %d  wins %d  draws %d  losses %d  points %.1f\n",
                m.n(), m.wins, m.draws, m.losses, m.points());
  out << line;
  if (m.n() >= 2) {
    std::snprintf(line, sizeof line, "# mean %.4f  stddev %.4f\n",
                  mean_score(m.wins, m.draws, m.losses), score_stddev(m.wins, m.draws, m.losses));
    out << line;
    append_interval(out, m, 2.0);
    append_interval(out, m, 3.0);
  }
}

void write_match_report(std::ostream& out, const MatchResult& m,
                        const std::vector<std::string>& opening_ids) {
  out << "opening_id,color,result,termination,plies\n";
  for (std::size_t i = 0; i < m.games.size(); ++i) {
    const GameRecord& g = m.games[i];
    const std::string& id =
        i / 2 < opening_ids.size() ? opening_ids[i / 2] : "op-" + std::to_string(i / 2 + 1);
    out << id << ',' << (i % 2 == 0 ? "white" : "black") << ',' << result_text(g.result) << ','
        << game_status_name(g.termination) << ',' << g.ply_count << '\n';
  }
  write_match_summary(out, m);
}

void save_match_report(const std::string& path, const MatchResult& m,
                       const std::vector<std::string>& opening_ids) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open match report '" + path + "' for writing");
  write_match_report(out, m, opening_ids);
  if (!out.flush()) throw DataError("failed writing match report '" + path + "'");
}

}  // namespace evotune
