#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evotune/board.hpp"

namespace evotune {

// One EPD operation: opcode plus its raw operand text (operands keep their
// quotes so records round-trip byte-stable).
struct EpdOp {
  std::string opcode;
  std::string operand;
  bool operator==(const EpdOp&) const = default;
};

struct EpdRecord {
  Position position;  // clocks default to 0 / 1 (EPD carries only 4 fields)
  std::vector<EpdOp> ops;

  const std::string* find(const std::string& opcode) const;
  // `id` operand with surrounding quotes stripped; empty if absent.
  std::string id() const;
  // Integer `ce` operand (centipawns, side to move); nullopt if absent.
  std::optional<int> ce() const;

  bool operator==(const EpdRecord&) const = default;
};

// Parses "placement stm castling ep [opcode operands... ;]*". Semicolons
// and spaces inside double-quoted operands are literal text. Throws
// DataError on malformed input.
EpdRecord parse_epd_line(const std::string& line);

// FEN fields 1-4 followed by the ops, each "opcode operand;".
std::string format_epd(const EpdRecord& record);

// Loads every non-blank, non-'#' line; errors are rethrown with the line
// number prepended.
std::vector<EpdRecord> load_epd(const std::string& path);

void save_epd(const std::string& path, const std::vector<EpdRecord>& records);

}  // namespace evotune
