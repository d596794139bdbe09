#include "qsim/density.hpp"

#include "qsim/detail/parallel.hpp"
#include "qsim/kernels.hpp"

#include <string>

namespace qsim {

namespace {

void require_density(const Register& reg, const char* what) {
    if (reg.kind() != RegisterKind::DensityMatrix)
        throw DomainError(std::string(what) + " requires a density-matrix register");
}

void require_ket_qubit(const Register& reg, int q) {
    if (q < 0 || q >= reg.num_qubits())
        throw DomainError("invalid qubit " + std::to_string(q) + " for " +
                          std::to_string(reg.num_qubits()) +
                          "-qubit density matrix");
}

/// Inserts a 0 bit at `pos`, shifting higher bits up.
std::uint64_t insert_zero_bit(std::uint64_t x, int pos) {
    const std::uint64_t low = x & ((std::uint64_t{1} << pos) - 1);
    return ((x >> pos) << (pos + 1)) | low;
}

/// Runs body(n00) over every flat index whose bits at `row_bit` and
/// `col_bit` are both zero: one call per 4-element group of the target
/// qubit's row/column subspace. Groups are disjoint, so the pass
/// parallelises like the gate kernels.
template <class Body>
void for_each_quad(int flat_qubits, int row_bit, int col_bit, int workers,
                   Body&& body) {
    const std::uint64_t count = std::uint64_t{1} << (flat_qubits - 2);
    detail::parallel_chunks(count, workers,
                            [&](std::uint64_t lo, std::uint64_t hi) {
                                for (std::uint64_t u = lo; u < hi; ++u) {
                                    const std::uint64_t n00 = insert_zero_bit(
                                        insert_zero_bit(u, row_bit), col_bit);
                                    body(n00);
                                }
                            });
}

template <class T>
void dephasing_pass(std::complex<T>* amps, int flat_qubits, int target,
                    double prob, int workers) {
    const int n = flat_qubits / 2;
    const std::uint64_t row = std::uint64_t{1} << target;
    const std::uint64_t col = std::uint64_t{1} << (target + n);
    const T scale = static_cast<T>(1.0 - 2.0 * prob);
    for_each_quad(flat_qubits, target, target + n, workers,
                  [&](std::uint64_t n00) {
                      amps[n00 | row] *= scale;
                      amps[n00 | col] *= scale;
                  });
}

template <class T>
void depolarising_pass(std::complex<T>* amps, int flat_qubits, int target,
                       double prob, int workers) {
    const int n = flat_qubits / 2;
    const std::uint64_t row = std::uint64_t{1} << target;
    const std::uint64_t col = std::uint64_t{1} << (target + n);
    const T keep = static_cast<T>(1.0 - 2.0 * prob / 3.0);
    const T swap = static_cast<T>(2.0 * prob / 3.0);
    const T off = static_cast<T>(1.0 - 4.0 * prob / 3.0);
    for_each_quad(flat_qubits, target, target + n, workers,
                  [&](std::uint64_t n00) {
                      const std::uint64_t n11 = n00 | row | col;
                      const std::complex<T> d0 = amps[n00];
                      const std::complex<T> d1 = amps[n11];
                      amps[n00] = keep * d0 + swap * d1;
                      amps[n11] = keep * d1 + swap * d0;
                      amps[n00 | row] *= off;
                      amps[n00 | col] *= off;
                  });
}

} // namespace

void apply_gate_to_density(Register& reg, const std::vector<int>& controls,
                           int target, const GateMatrix& g, int workers) {
    require_density(reg, "gate conjugation");
    require_ket_qubit(reg, target);
    for (int c : controls)
        require_ket_qubit(reg, c);
    const int n = reg.num_qubits();

    std::vector<int> bra_controls;
    bra_controls.reserve(controls.size());
    for (int c : controls)
        bra_controls.push_back(c + n);

    const GateMatrix conj = g.conjugate();
    const int flat = reg.flat_qubits();
    const std::uint64_t ket_mask =
        detail::make_control_mask(flat, controls, target);
    const std::uint64_t bra_mask =
        detail::make_control_mask(flat, bra_controls, target + n);

    if (reg.precision() == Precision::Single) {
        detail::apply_gate_span(reg.amps().data32(), flat, target, ket_mask, g,
                                workers);
        detail::apply_gate_span(reg.amps().data32(), flat, target + n, bra_mask,
                                conj, workers);
    } else {
        detail::apply_gate_span(reg.amps().data64(), flat, target, ket_mask, g,
                                workers);
        detail::apply_gate_span(reg.amps().data64(), flat, target + n, bra_mask,
                                conj, workers);
    }
}

void apply_dephasing(Register& reg, int target, double prob, int workers) {
    require_density(reg, "dephasing");
    require_ket_qubit(reg, target);
    if (prob < 0.0 || prob > 0.5)
        throw DomainError("dephasing probability must lie in [0, 1/2], got " +
                          std::to_string(prob));
    if (reg.precision() == Precision::Single)
        dephasing_pass(reg.amps().data32(), reg.flat_qubits(), target, prob,
                       workers);
    else
        dephasing_pass(reg.amps().data64(), reg.flat_qubits(), target, prob,
                       workers);
}

void apply_depolarising(Register& reg, int target, double prob, int workers) {
    require_density(reg, "depolarising");
    require_ket_qubit(reg, target);
    if (prob < 0.0 || prob > 0.75)
        throw DomainError(
            "depolarising probability must lie in [0, 3/4], got " +
            std::to_string(prob));
    if (reg.precision() == Precision::Single)
        depolarising_pass(reg.amps().data32(), reg.flat_qubits(), target, prob,
                          workers);
    else
        depolarising_pass(reg.amps().data64(), reg.flat_qubits(), target, prob,
                          workers);
}

Amp trace(const Register& reg) {
    require_density(reg, "trace");
    const std::uint64_t dim = std::uint64_t{1} << reg.num_qubits();
    Amp sum{0.0, 0.0};
    for (std::uint64_t j = 0; j < dim; ++j)
        sum += reg.get_amplitude(j * (dim + 1));
    return sum;
}

double purity(const Register& reg) {
    require_density(reg, "purity");
    return reg.norm_squared();
}

} // namespace qsim
