#pragma once

#include "qsim/gates.hpp"
#include "qsim/register.hpp"

#include <cstdint>
#include <vector>

namespace qsim {

/// One amplitude pair mixed by a single-qubit gate: hi = lo + 2^target and
/// lo's target bit is 0. For fixed (N, target) the 2^(N-1) pairs cover
/// [0, 2^N) exactly once.
struct PairIndex {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

/// Materialises the pair list for an N-qubit vector and a target qubit, in
/// pair order i = 0 .. 2^(N-1)-1.
std::vector<PairIndex> enumerate_pairs(int num_qubits, int target);

/// Applies a 2x2 gate to `target` of a state-vector register by updating
/// each amplitude pair in place. The pair index space is block-partitioned
/// over `workers` threads (0 = hardware parallelism); writes are disjoint so
/// results are bitwise identical for any worker count.
void apply_single_qubit_gate(Register& reg, int target, const GateMatrix& g,
                             int workers = 0);

/// Multi-controlled single-target gate: the pair update runs only on pairs
/// whose index has every control bit set. Empty `controls` reduces to
/// apply_single_qubit_gate.
void apply_controlled_gate(Register& reg, const std::vector<int>& controls,
                           int target, const GateMatrix& g, int workers = 0);

/// Resolves a named gate and applies it; density-matrix registers route
/// through the density evolution path.
void apply_named_gate(Register& reg, const NamedGate& gate,
                      const std::vector<int>& controls, int target,
                      int workers = 0);

/// Rotation about an arbitrary unit axis by `angle` radians.
void apply_single_qubit_rotation(Register& reg, int target,
                                 const std::array<double, 3>& axis,
                                 double angle, int workers = 0);

namespace detail {

/// Core pair kernel over a flat amplitude array of 2^flat_qubits elements.
/// `control_mask` holds one bit per control qubit; pairs whose base index
/// does not contain the full mask are skipped. Shared by the register API
/// and the distributed engine's rank-local path.
template <class T>
void apply_gate_span(std::complex<T>* amps, int flat_qubits, int target,
                     std::uint64_t control_mask, const GateMatrix& g,
                     int workers);

/// Count of core kernel entries since process start. Lets tests assert that
/// density evolution reuses the state-vector kernel rather than a parallel
/// implementation.
std::uint64_t kernel_invocations();

/// Validates target/control indices against a flat qubit count and builds
/// the control mask. Throws DomainError on out-of-range or overlapping
/// qubits.
std::uint64_t make_control_mask(int flat_qubits, const std::vector<int>& controls,
                                int target);

} // namespace detail

} // namespace qsim
