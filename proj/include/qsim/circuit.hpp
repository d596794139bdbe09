#pragma once

#include "qsim/gates.hpp"
#include "qsim/register.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsim {

struct GateOp {
    NamedGate gate;
    int target = 0;
    std::vector<int> controls; // empty for single-qubit gates

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

/// An ordered gate sequence. `depth` records the generator layer count for
/// generated circuits (0 when assembled by hand or parsed without one).
struct Circuit {
    int num_qubits = 0;
    int depth = 0;
    std::vector<GateOp> ops;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class Topology { Linear };

struct RandomCircuitSpec {
    int num_qubits = 2;
    int depth = 1;
    std::uint64_t seed = 0;
    Topology topology = Topology::Linear;
};

/// Nearest-neighbour CZ pattern for one generator layer: pairs (i, i+1) with
/// i == layer_phase (mod 3). The pattern depends only on (num_qubits, layer),
/// never on the seed.
std::vector<std::pair<int, int>> cz_layer_pairs(int num_qubits, int layer);

/// Deterministic pseudo-random universal circuit:
///   - layer 0 applies H to every qubit;
///   - each later layer applies the fixed CZ pattern for that layer, and a
///     single-qubit gate from {T, SX, SY} to every qubit not in a CZ;
///   - a qubit's first single-qubit gate after its initial H is T;
///   - no single-qubit gate repeats on a qubit in consecutive layers (a CZ in
///     between clears the restriction).
/// Identical specs produce identical circuits; single-qubit choices come from
/// a SplitMix64 stream over the seed.
Circuit generate_random_circuit(const RandomCircuitSpec& spec);

struct GateCounts {
    std::uint64_t single = 0;
    std::uint64_t controlled = 0;
};

GateCounts gate_counts(const Circuit& circuit);

/// Line-oriented text form:
///   qubits N depth D
///   GATE target [controls...] [angle]
/// Angles appear only on RX/RY/RZ. '#' starts a comment; blank lines are
/// ignored. parse(serialize(c)) == c.
std::string serialize(const Circuit& circuit);
Circuit parse(std::string_view text);

/// Applies every op in order; density-matrix registers evolve by
/// conjugation, state vectors by the pair kernels.
void run_circuit(const Circuit& circuit, Register& reg, int workers = 0);

} // namespace qsim
