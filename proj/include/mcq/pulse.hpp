#pragma once

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcq {

enum class PulseKind { RX, RY, RZ, ZZ_WAIT };

inline const char* to_string(PulseKind k) {
  switch (k) {
    case PulseKind::RX: return "RX";
    case PulseKind::RY: return "RY";
    case PulseKind::RZ: return "RZ";
    case PulseKind::ZZ_WAIT: return "ZZ_WAIT";
  }
  return "?";
}

/// One primitive instruction. For rotations `value` is the angle in radians;
/// for ZZ_WAIT it is the duration in ps and `target` is the lower index of
/// the adjacent pair.
struct PulseInstruction {
  PulseKind kind = PulseKind::RX;
  int target = 0;
  double value = 0;
  double phase = 0;  // drive phase phi in radians
};

struct PulseProgram {
  std::vector<PulseInstruction> instructions;

  std::size_t size() const { return instructions.size(); }
};

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Line-oriented text format: `KIND target angle_or_duration phase`.
inline std::string to_text(const PulseProgram& prog) {
  std::string out;
  for (const auto& ins : prog.instructions) {
    out += to_string(ins.kind);
    out += ' ';
    out += std::to_string(ins.target);
    out += ' ';
    out += format_number(ins.value);
    out += ' ';
    out += format_number(ins.phase);
    out += '\n';
  }
  return out;
}

inline PulseProgram program_from_text(const std::string& text) {
  PulseProgram prog;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    PulseInstruction ins;
    if (!(ls >> kind >> ins.target >> ins.value >> ins.phase))
      throw std::invalid_argument("pulse program line " + std::to_string(line_no) +
                                  ": expected `KIND target value phase`");
    if (kind == "RX") ins.kind = PulseKind::RX;
    else if (kind == "RY") ins.kind = PulseKind::RY;
    else if (kind == "RZ") ins.kind = PulseKind::RZ;
    else if (kind == "ZZ_WAIT") ins.kind = PulseKind::ZZ_WAIT;
    else
      throw std::invalid_argument("pulse program line " + std::to_string(line_no) +
                                  ": unknown kind `" + kind + "`");
    if (ins.kind == PulseKind::ZZ_WAIT && ins.value <= 0)
      throw std::invalid_argument("pulse program line " + std::to_string(line_no) +
                                  ": ZZ_WAIT duration must be > 0");
    prog.instructions.push_back(ins);
  }
  return prog;
}

}  // namespace mcq
