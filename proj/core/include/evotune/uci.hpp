#pragma once

#include <string>

#include "evotune/board.hpp"
#include "evotune/expert.hpp"

namespace evotune {

// Minimal UCI client over a subprocess: handshake on construction
// (uci/uciok, isready/readyok), then per position "position fen ..." and
// "go depth d", reading the last "score cp"/"score mate" info line before
// "bestmove". Mate-in-m maps to +/-(30000 - |m|). Every protocol failure,
// engine exit, or missed deadline raises BackendError.
class UciClient {
 public:
  // `command` is run via /bin/sh -c. The timeout applies per expected
  // reply (handshake steps and each scored position).
  explicit UciClient(const std::string& command, int timeout_ms = 10000);
  ~UciClient();

  UciClient(const UciClient&) = delete;
  UciClient& operator=(const UciClient&) = delete;

  int score(const Position& p, int depth);

 private:
  void send_line(const std::string& line);
  // Next full line from the engine, or BackendError at the deadline.
  std::string read_line(int deadline_ms);

  std::string command_;
  int timeout_ms_;
  int child_pid_ = -1;
  int to_child_ = -1;    // write end
  int from_child_ = -1;  // read end
  std::string buffer_;
};

// ExpertScorer adapter over a single UciClient.
class UciExpert final : public ExpertScorer {
 public:
  UciExpert(const std::string& command, int depth, int timeout_ms = 10000)
      : client_(command, timeout_ms), depth_(depth) {}
  int score(const Position& p) override;
  std::string name() const override { return "uci"; }

 private:
  UciClient client_;
  int depth_;
};

}  // namespace evotune
