#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qew {

// Per-run error rates.  q_fn/q_fp default to q when left negative.
struct NoiseParams {
  double e = 0;  // erasure probability per erasure location
  double p = 0;  // depolarizing rate per operation
  double q = 0;  // classical flip rate on measurement outcomes
  double q_fn = -1;  // false-negative EC rate
  double q_fp = -1;  // false-positive EC rate

  // Noise only at entangling gates; used when reproducing reset studies.
  bool gate_only = false;
  // Erasure checks and resets contribute no e/p noise (free-EC scenario).
  bool noiseless_ec = false;

  double fn() const { return q_fn < 0 ? q : q_fn; }
  double fp() const { return q_fp < 0 ? q : q_fp; }

  void check() const {
    auto in01 = [](double v) { return v >= 0 && v <= 1; };
    if (!in01(e) || !in01(p) || !in01(q) || !in01(fn()) || !in01(fp()))
      throw std::invalid_argument("noise rates must lie in [0,1]");
  }
};

enum class IKind : std::uint8_t {
  PrepZ,
  PrepX,
  MeasZ,
  MeasX,
  H,
  SGate,
  CX,
  CZ,
  Tick,
  ErasureLoc,
  Depol1,
  Depol2,
  EC,
  Reset,
  Detector,
  Observable,
};

enum class ResetKind : std::uint8_t { Mixed, OneWay, Unitary };
enum class ResetPolicy : std::uint8_t { Unconditional, ConditionalOnEC };

struct Instruction {
  IKind kind = IKind::Tick;
  std::vector<std::uint32_t> targets;  // qubit ids; CX/CZ/Depol2 use pairs
  double p = 0;    // channel probability / measurement flip rate
  double p2 = 0;   // EC: p = q_fn, p2 = q_fp
  ResetKind reset_kind = ResetKind::Mixed;
  ResetPolicy reset_policy = ResetPolicy::Unconditional;
  bool noiseless = false;  // exempt from annotation (ideal boundary layers)
  bool fused = false;      // part of a composite op; not a timed op on its own
  std::vector<std::int32_t> recs;  // Detector/Observable measurement lookbacks
  std::uint32_t obs_index = 0;

  bool is_gate2q() const { return kind == IKind::CX || kind == IKind::CZ; }
  bool is_meas() const { return kind == IKind::MeasZ || kind == IKind::MeasX; }
  bool is_prep() const { return kind == IKind::PrepZ || kind == IKind::PrepX; }
  bool is_noise() const {
    return kind == IKind::ErasureLoc || kind == IKind::Depol1 ||
           kind == IKind::Depol2;
  }
};

struct CircuitMeta {
  int distance = 0;
  int ec_per_round = 0;  // the schedule parameter l
  int rounds = 0;
  std::string variant = "standard";     // standard | xzzx | no-ec-baseline
  std::string spread = "depolarizing";  // depolarizing | biased-z
  std::string basis = "Z";
};

// Time-ordered instruction list plus detector/observable definitions.
// Circuits are immutable once built and safe to share across threads.
struct ErasureCircuit {
  std::uint32_t num_qubits = 0;
  std::vector<Instruction> instructions;
  CircuitMeta meta;
  bool annotated = false;

  void append(Instruction in) { instructions.push_back(std::move(in)); }
  void tick() { instructions.push_back({IKind::Tick, {}}); }
};

// Flat index over a circuit: outcome streams, noise sites, tick boundaries.
// Built once per circuit; every downstream stage keys off these ids.
struct CircuitInfo {
  struct MeasRef {
    std::uint32_t instr;
    std::uint32_t qubit;
    bool x_basis;
    double flip_q;
  };
  struct EcRef {
    std::uint32_t instr;
    std::uint32_t qubit;
    double q_fn, q_fp;
  };
  struct LocRef {
    std::uint32_t instr;
    std::uint32_t qubit;
    double rate;
  };
  struct ResetRef {
    std::uint32_t instr;
    std::uint32_t qubit;
    ResetKind kind;
    ResetPolicy policy;
  };

  std::uint32_t num_qubits = 0;
  std::vector<MeasRef> measurements;
  std::vector<EcRef> ecs;
  std::vector<LocRef> erasure_locs;
  std::vector<ResetRef> resets;
  std::vector<std::vector<std::uint32_t>> detectors;    // -> measurement ids
  std::vector<std::vector<std::uint32_t>> observables;  // -> measurement ids

  std::size_t num_detectors() const { return detectors.size(); }
  std::size_t num_observables() const { return observables.size(); }
};

inline CircuitInfo index_circuit(const ErasureCircuit& c) {
  CircuitInfo info;
  info.num_qubits = c.num_qubits;
  for (std::uint32_t i = 0; i < c.instructions.size(); ++i) {
    const Instruction& in = c.instructions[i];
    for (std::uint32_t q : in.targets)
      if (q >= c.num_qubits && in.kind != IKind::Detector &&
          in.kind != IKind::Observable)
        throw std::out_of_range("instruction target outside qubit range");
    switch (in.kind) {
      case IKind::MeasZ:
      case IKind::MeasX:
        for (std::uint32_t q : in.targets)
          info.measurements.push_back({i, q, in.kind == IKind::MeasX, in.p});
        break;
      case IKind::EC:
        for (std::uint32_t q : in.targets)
          info.ecs.push_back({i, q, in.p, in.p2});
        break;
      case IKind::ErasureLoc:
        for (std::uint32_t q : in.targets)
          info.erasure_locs.push_back({i, q, in.p});
        break;
      case IKind::Reset:
        for (std::uint32_t q : in.targets)
          info.resets.push_back({i, q, in.reset_kind, in.reset_policy});
        break;
      case IKind::Detector:
      case IKind::Observable: {
        std::vector<std::uint32_t> ids;
        for (std::int32_t rec : in.recs) {
          if (rec >= 0 || static_cast<std::size_t>(-rec) > info.measurements.size())
            throw std::out_of_range("measurement lookback out of range");
          ids.push_back(
              static_cast<std::uint32_t>(info.measurements.size() + rec));
        }
        if (in.kind == IKind::Detector) {
          info.detectors.push_back(std::move(ids));
        } else {
          if (info.observables.size() <= in.obs_index)
            info.observables.resize(in.obs_index + 1);
          auto& obs = info.observables[in.obs_index];
          obs.insert(obs.end(), ids.begin(), ids.end());
        }
        break;
      }
      default:
        break;
    }
  }
  return info;
}

namespace detail {

// Per-tick view used by the annotator: which qubits act, and what their
// primary (non-fused) operation is.
struct TickOps {
  std::vector<std::uint32_t> instr_ids;
  bool all_noiseless = true;
  bool pure_ec = true;  // only EC/Reset primaries (plus idles)
};

}  // namespace detail

// Table-driven ideal -> simulated mapping: an erasure location per qubit per
// time step before its operation, depolarizing noise after every
// prep/gate/reset, classical flips on measurement outcomes, and asymmetric
// flips on EC outcomes.  Idle qubits get the same per-step treatment.
inline ErasureCircuit annotate_noise(const ErasureCircuit& ideal,
                                     const NoiseParams& params) {
  params.check();
  if (ideal.annotated)
    throw std::invalid_argument("circuit already carries noise annotations");

  ErasureCircuit out;
  out.num_qubits = ideal.num_qubits;
  out.meta = ideal.meta;
  out.annotated = true;

  // Split into ticks.
  std::vector<std::vector<Instruction>> ticks(1);
  for (const Instruction& in : ideal.instructions) {
    if (in.is_noise())
      throw std::invalid_argument("ideal circuit contains noise instructions");
    if (in.kind == IKind::Tick)
      ticks.emplace_back();
    else
      ticks.back().push_back(in);
  }

  for (std::size_t t = 0; t < ticks.size(); ++t) {
    if (t) out.tick();
    auto& ops = ticks[t];
    if (ops.empty()) continue;

    bool timed = false;  // tick contains at least one noisy primary op
    bool pure_ec = true;
    std::vector<std::uint8_t> busy(out.num_qubits, 0);
    for (const Instruction& in : ops) {
      if (in.kind == IKind::Detector || in.kind == IKind::Observable) continue;
      for (std::uint32_t q : in.targets) busy[q] = 1;
      if (in.fused || in.noiseless) continue;
      timed = true;
      if (in.kind != IKind::EC && in.kind != IKind::Reset) pure_ec = false;
    }
    bool skip_tick_noise =
        !timed || (params.noiseless_ec && pure_ec) ||
        (params.gate_only && pure_ec);

    // Erasure locations first: one per qubit, before this step's operations.
    if (!skip_tick_noise && params.e >= 0) {
      Instruction el{IKind::ErasureLoc, {}};
      el.p = params.e;
      for (std::uint32_t q = 0; q < out.num_qubits; ++q) {
        bool exempt = false;
        if (!busy[q] && (params.gate_only)) exempt = true;
        if (busy[q]) {
          // A qubit is exempt only if every primary op it touches this step
          // is exempt: noiseless ops (ideal boundary layers) always, EC/Reset
          // in the noiseless-EC scenario, non-gates in gate-only mode.
          exempt = true;
          for (const Instruction& in : ops) {
            if (in.kind == IKind::Detector || in.kind == IKind::Observable)
              continue;
            bool touches = false;
            for (std::uint32_t tq : in.targets) touches |= (tq == q);
            if (!touches || in.fused) continue;
            bool op_exempt =
                in.noiseless ||
                (params.noiseless_ec &&
                 (in.kind == IKind::EC || in.kind == IKind::Reset)) ||
                (params.gate_only && !in.is_gate2q());
            exempt = exempt && op_exempt;
          }
        }
        if (!exempt) el.targets.push_back(q);
      }
      if (!el.targets.empty()) out.append(el);
    }

    // The tick's own operations, with per-op noise parameters filled in.
    std::vector<std::uint32_t> depol1_targets;
    std::vector<std::uint32_t> depol2_targets;
    for (const Instruction& in : ops) {
      Instruction copy = in;
      if (in.is_meas() && !in.noiseless) copy.p = params.q;
      if (in.kind == IKind::EC && !in.noiseless) {
        copy.p = params.fn();
        copy.p2 = params.fp();
      }
      out.append(copy);
      if (in.noiseless || in.fused) continue;
      bool ec_free = params.noiseless_ec &&
                     (in.kind == IKind::EC || in.kind == IKind::Reset);
      if (params.gate_only && !in.is_gate2q()) continue;
      if (ec_free) continue;
      switch (in.kind) {
        case IKind::PrepZ:
        case IKind::PrepX:
        case IKind::Reset:
          for (std::uint32_t q : in.targets) depol1_targets.push_back(q);
          break;
        case IKind::CX:
        case IKind::CZ:
          for (std::uint32_t q : in.targets) depol2_targets.push_back(q);
          break;
        case IKind::H:
        case IKind::SGate:
          for (std::uint32_t q : in.targets) depol1_targets.push_back(q);
          break;
        default:
          break;  // measurements get classical flips, ECs asymmetric flips
      }
    }

    // Idle qubits: same per-step depolarizing channel as active ones.
    if (!skip_tick_noise && !params.gate_only) {
      for (std::uint32_t q = 0; q < out.num_qubits; ++q)
        if (!busy[q]) depol1_targets.push_back(q);
    }

    if (!depol2_targets.empty()) {
      Instruction d2{IKind::Depol2, std::move(depol2_targets)};
      d2.p = params.p;
      out.append(d2);
    }
    if (!depol1_targets.empty()) {
      Instruction d1{IKind::Depol1, std::move(depol1_targets)};
      d1.p = params.p;
      out.append(d1);
    }
  }
  return out;
}

}  // namespace qew
