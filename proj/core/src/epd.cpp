#include "evotune/epd.hpp"

#include <fstream>
#include <sstream>

namespace evotune {

const std::string* EpdRecord::find(const std::string& opcode) const {
  for (const auto& op : ops)
    if (op.opcode == opcode) return &op.operand;
  return nullptr;
}

std::string EpdRecord::id() const {
  const std::string* raw = find("id");
  if (!raw) return {};
  std::string s = *raw;
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<int> EpdRecord::ce() const {
  const std::string* raw = find("ce");
  if (!raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const int value = std::stoi(*raw, &used);
    if (used != raw->size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw DataError("ce operand '" + *raw + "' is not an integer");
  }
}

EpdRecord parse_epd_line(const std::string& line) {
  std::istringstream in(line);
  std::string f1, f2, f3, f4;
  if (!(in >> f1 >> f2 >> f3 >> f4))
    throw DataError("EPD line needs the 4 FEN fields: '" + line + "'");

  EpdRecord rec;
  rec.position = Position::from_fen(f1 + ' ' + f2 + ' ' + f3 + ' ' + f4);

  // Remainder: "opcode operand...;" groups; quotes protect ';' and spaces.
  std::string rest;
  std::getline(in, rest);
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < rest.size()) {
    std::size_t start = i;
    while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t' && rest[i] != ';') ++i;
    EpdOp op;
    op.opcode = rest.substr(start, i - start);
    if (op.opcode.empty()) throw DataError("empty opcode in EPD line '" + line + "'");
    skip_ws();
    // Operand: up to the terminating ';' outside quotes.
    start = i;
    bool quoted = false;
    while (i < rest.size() && (quoted || rest[i] != ';')) {
      if (rest[i] == '"') quoted = !quoted;
      ++i;
    }
    if (quoted) throw DataError("unterminated quote in EPD line '" + line + "'");
    if (i >= rest.size()) throw DataError("missing ';' after opcode '" + op.opcode + "'");
    std::size_t end = i;
    while (end > start && (rest[end - 1] == ' ' || rest[end - 1] == '\t')) --end;
    op.operand = rest.substr(start, end - start);
    rec.ops.push_back(std::move(op));
    ++i;  // consume ';'
    skip_ws();
  }
  return rec;
}

std::string format_epd(const EpdRecord& record) {
  std::string out = record.position.key();
  for (const auto& op : record.ops) {
    out += ' ';
    out += op.opcode;
    if (!op.operand.empty()) {
      out += ' ';
      out += op.operand;
    }
    out += ';';
  }
  return out;
}

std::vector<EpdRecord> load_epd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open EPD file '" + path + "'");
  std::vector<EpdRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      out.push_back(parse_epd_line(line));
    } catch (const DataError& e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void save_epd(const std::string& path, const std::vector<EpdRecord>& records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open EPD file '" + path + "' for writing");
  for (const auto& rec : records) out << format_epd(rec) << '\n';
  if (!out.flush()) throw DataError("failed writing EPD file '" + path + "'");
}

}  // namespace evotune
