#pragma once

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qew/circuit.hpp"

namespace qew {

// One instruction per line, explicit TICK separators, detectors and
// observables declared inline through measurement lookbacks (rec[-k]).
// Suffix '*' marks noiseless instructions, '&' marks fused composite parts.

namespace text_detail {

inline std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline const char* kind_name(IKind k) {
  switch (k) {
    case IKind::PrepZ: return "PREP_Z";
    case IKind::PrepX: return "PREP_X";
    case IKind::MeasZ: return "MEAS_Z";
    case IKind::MeasX: return "MEAS_X";
    case IKind::H: return "H";
    case IKind::SGate: return "S";
    case IKind::CX: return "CX";
    case IKind::CZ: return "CZ";
    case IKind::Tick: return "TICK";
    case IKind::ErasureLoc: return "EL";
    case IKind::Depol1: return "DEPOL1";
    case IKind::Depol2: return "DEPOL2";
    case IKind::EC: return "EC";
    case IKind::Reset: return "RESET";
    case IKind::Detector: return "DETECTOR";
    case IKind::Observable: return "OBSERVABLE";
  }
  return "?";
}

inline const char* reset_kind_name(ResetKind k) {
  switch (k) {
    case ResetKind::Mixed: return "mixed";
    case ResetKind::OneWay: return "one-way";
    case ResetKind::Unitary: return "unitary";
  }
  return "?";
}

}  // namespace text_detail

inline std::string circuit_to_text(const ErasureCircuit& c) {
  using namespace text_detail;
  std::string out = "qew-circuit v1\n";
  out += "QUBITS " + std::to_string(c.num_qubits) + "\n";
  out += "META distance " + std::to_string(c.meta.distance) + "\n";
  out += "META l " + std::to_string(c.meta.ec_per_round) + "\n";
  out += "META rounds " + std::to_string(c.meta.rounds) + "\n";
  out += "META variant " + c.meta.variant + "\n";
  out += "META spread " + c.meta.spread + "\n";
  out += "META basis " + c.meta.basis + "\n";
  out += "META annotated " + std::to_string(c.annotated ? 1 : 0) + "\n";
  for (const Instruction& in : c.instructions) {
    out += kind_name(in.kind);
    switch (in.kind) {
      case IKind::MeasZ:
      case IKind::MeasX:
      case IKind::ErasureLoc:
      case IKind::Depol1:
      case IKind::Depol2:
        out += "(" + fmt_double(in.p) + ")";
        break;
      case IKind::EC:
        out += "(" + fmt_double(in.p) + "," + fmt_double(in.p2) + ")";
        break;
      case IKind::Reset:
        out += std::string("[") + reset_kind_name(in.reset_kind) + "," +
               (in.reset_policy == ResetPolicy::Unconditional ? "uncond"
                                                              : "cond") +
               "]";
        break;
      case IKind::Observable:
        out += "(" + std::to_string(in.obs_index) + ")";
        break;
      default:
        break;
    }
    if (in.noiseless) out += "*";
    if (in.fused) out += "&";
    if (in.kind == IKind::Detector || in.kind == IKind::Observable) {
      for (std::int32_t r : in.recs)
        out += " rec[" + std::to_string(r) + "]";
    } else {
      for (std::uint32_t q : in.targets) out += " " + std::to_string(q);
    }
    out += "\n";
  }
  return out;
}

inline ErasureCircuit circuit_from_text(std::string_view text) {
  using namespace text_detail;
  ErasureCircuit c;
  std::istringstream ss{std::string(text)};
  std::string line;
  bool header_seen = false;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("circuit parse error: " + why + " in '" + line +
                             "'");
  };
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "qew-circuit v1") fail("missing or unsupported header");
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "QUBITS") {
      ls >> c.num_qubits;
      continue;
    }
    if (head == "META") {
      std::string key, value;
      ls >> key >> value;
      if (key == "distance") c.meta.distance = std::stoi(value);
      else if (key == "l") c.meta.ec_per_round = std::stoi(value);
      else if (key == "rounds") c.meta.rounds = std::stoi(value);
      else if (key == "variant") c.meta.variant = value;
      else if (key == "spread") c.meta.spread = value;
      else if (key == "basis") c.meta.basis = value;
      else if (key == "annotated") c.annotated = value == "1";
      else fail("unknown META key");
      continue;
    }

    Instruction in;
    // Strip suffix flags.
    while (!head.empty() && (head.back() == '*' || head.back() == '&')) {
      if (head.back() == '*') in.noiseless = true;
      else in.fused = true;
      head.pop_back();
    }
    // Split off (args) or [args].
    std::string args;
    auto lp = head.find_first_of("([");
    if (lp != std::string::npos) {
      char close = head[lp] == '(' ? ')' : ']';
      auto rp = head.find(close, lp);
      if (rp == std::string::npos) fail("unbalanced parameter bracket");
      args = head.substr(lp + 1, rp - lp - 1);
      head = head.substr(0, lp);
    }

    static const std::pair<const char*, IKind> kinds[] = {
        {"PREP_Z", IKind::PrepZ},   {"PREP_X", IKind::PrepX},
        {"MEAS_Z", IKind::MeasZ},   {"MEAS_X", IKind::MeasX},
        {"H", IKind::H},            {"S", IKind::SGate},
        {"CX", IKind::CX},          {"CZ", IKind::CZ},
        {"TICK", IKind::Tick},      {"EL", IKind::ErasureLoc},
        {"DEPOL1", IKind::Depol1},  {"DEPOL2", IKind::Depol2},
        {"EC", IKind::EC},          {"RESET", IKind::Reset},
        {"DETECTOR", IKind::Detector}, {"OBSERVABLE", IKind::Observable}};
    bool found = false;
    for (auto& [name, kind] : kinds)
      if (head == name) {
        in.kind = kind;
        found = true;
        break;
      }
    if (!found) fail("unknown instruction");

    if (!args.empty()) {
      if (in.kind == IKind::Reset) {
        auto comma = args.find(',');
        if (comma == std::string::npos) fail("RESET needs kind,policy");
        std::string k = args.substr(0, comma), pol = args.substr(comma + 1);
        if (k == "mixed") in.reset_kind = ResetKind::Mixed;
        else if (k == "one-way") in.reset_kind = ResetKind::OneWay;
        else if (k == "unitary") in.reset_kind = ResetKind::Unitary;
        else fail("unknown reset kind");
        if (pol == "uncond") in.reset_policy = ResetPolicy::Unconditional;
        else if (pol == "cond") in.reset_policy = ResetPolicy::ConditionalOnEC;
        else fail("unknown reset policy");
      } else if (in.kind == IKind::Observable) {
        in.obs_index = static_cast<std::uint32_t>(std::stoul(args));
      } else {
        auto comma = args.find(',');
        std::string first = comma == std::string::npos ? args
                                                       : args.substr(0, comma);
        auto parse_d = [&](const std::string& s) {
          double v = 0;
          auto res = std::from_chars(s.data(), s.data() + s.size(), v);
          if (res.ec != std::errc()) fail("bad number");
          return v;
        };
        in.p = parse_d(first);
        if (comma != std::string::npos) in.p2 = parse_d(args.substr(comma + 1));
      }
    }

    std::string tok;
    while (ls >> tok) {
      if (in.kind == IKind::Detector || in.kind == IKind::Observable) {
        if (tok.rfind("rec[", 0) != 0 || tok.back() != ']')
          fail("expected rec[-k]");
        in.recs.push_back(std::stoi(tok.substr(4, tok.size() - 5)));
      } else {
        in.targets.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      }
    }
    c.append(std::move(in));
  }
  if (!header_seen) throw std::runtime_error("circuit parse error: empty file");
  return c;
}

}  // namespace qew
