#include "qsim/kernels.hpp"

#include "qsim/density.hpp"
#include "qsim/detail/pair_math.hpp"
#include "qsim/detail/parallel.hpp"

#include <atomic>
#include <string>

namespace qsim {

namespace detail {

namespace {
std::atomic<std::uint64_t> g_kernel_invocations{0};
}

std::uint64_t kernel_invocations() {
    return g_kernel_invocations.load(std::memory_order_relaxed);
}

std::uint64_t make_control_mask(int flat_qubits, const std::vector<int>& controls,
                                int target) {
    if (target < 0 || target >= flat_qubits)
        throw DomainError("invalid target qubit " + std::to_string(target) +
                          " for " + std::to_string(flat_qubits) +
                          "-qubit vector");
    std::uint64_t mask = 0;
    for (int c : controls) {
        if (c < 0 || c >= flat_qubits)
            throw DomainError("invalid control qubit " + std::to_string(c));
        if (c == target)
            throw DomainError("control qubit " + std::to_string(c) +
                              " overlaps the target");
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (mask & bit)
            throw DomainError("duplicate control qubit " + std::to_string(c));
        mask |= bit;
    }
    return mask;
}

template <class T>
void apply_gate_span(std::complex<T>* amps, int flat_qubits, int target,
                     std::uint64_t control_mask, const GateMatrix& g,
                     int workers) {
    g_kernel_invocations.fetch_add(1, std::memory_order_relaxed);
    const std::uint64_t num_pairs = std::uint64_t{1} << (flat_qubits - 1);
    const std::uint64_t hi_offset = std::uint64_t{1} << target;
    const Mat2<T> m = Mat2<T>::from(g);
    parallel_chunks(num_pairs, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t base = pair_base_index(i, target);
            if ((base & control_mask) != control_mask)
                continue;
            update_pair(amps[base], amps[base + hi_offset], m);
        }
    });
}

template void apply_gate_span<float>(std::complex<float>*, int, int,
                                     std::uint64_t, const GateMatrix&, int);
template void apply_gate_span<double>(std::complex<double>*, int, int,
                                      std::uint64_t, const GateMatrix&, int);

} // namespace detail

std::vector<PairIndex> enumerate_pairs(int num_qubits, int target) {
    if (num_qubits < 1)
        throw DomainError("need at least 1 qubit");
    if (target < 0 || target >= num_qubits)
        throw DomainError("invalid target qubit " + std::to_string(target) +
                          " for " + std::to_string(num_qubits) + " qubits");
    const std::uint64_t num_pairs = std::uint64_t{1} << (num_qubits - 1);
    const std::uint64_t hi_offset = std::uint64_t{1} << target;
    std::vector<PairIndex> pairs(num_pairs);
    for (std::uint64_t i = 0; i < num_pairs; ++i) {
        const std::uint64_t base = detail::pair_base_index(i, target);
        pairs[i] = {base, base + hi_offset};
    }
    return pairs;
}

namespace {

void apply_to_state_vector(Register& reg, const std::vector<int>& controls,
                           int target, const GateMatrix& g, int workers) {
    const std::uint64_t mask =
        detail::make_control_mask(reg.flat_qubits(), controls, target);
    if (reg.precision() == Precision::Single)
        detail::apply_gate_span(reg.amps().data32(), reg.flat_qubits(), target,
                                mask, g, workers);
    else
        detail::apply_gate_span(reg.amps().data64(), reg.flat_qubits(), target,
                                mask, g, workers);
}

} // namespace

void apply_single_qubit_gate(Register& reg, int target, const GateMatrix& g,
                             int workers) {
    apply_controlled_gate(reg, {}, target, g, workers);
}

void apply_controlled_gate(Register& reg, const std::vector<int>& controls,
                           int target, const GateMatrix& g, int workers) {
    if (reg.kind() != RegisterKind::StateVector)
        throw DomainError(
            "state-vector kernel invoked on a density matrix; use the "
            "density evolution path");
    apply_to_state_vector(reg, controls, target, g, workers);
}

void apply_named_gate(Register& reg, const NamedGate& gate,
                      const std::vector<int>& controls, int target,
                      int workers) {
    const GateMatrix g = gate_matrix(gate);
    if (reg.kind() == RegisterKind::DensityMatrix)
        apply_gate_to_density(reg, controls, target, g, workers);
    else
        apply_controlled_gate(reg, controls, target, g, workers);
}

void apply_single_qubit_rotation(Register& reg, int target,
                                 const std::array<double, 3>& axis,
                                 double angle, int workers) {
    const GateMatrix g = rotation_matrix(axis, angle);
    if (reg.kind() == RegisterKind::DensityMatrix)
        apply_gate_to_density(reg, {}, target, g, workers);
    else
        apply_controlled_gate(reg, {}, target, g, workers);
}

} // namespace qsim
