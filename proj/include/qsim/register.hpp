#pragma once

#include "qsim/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qsim {

/// Contiguous complex storage tagged with its precision. Exactly one of the
/// two backing vectors is populated.
class AmpVector {
  public:
    AmpVector() = default;
    AmpVector(Precision precision, std::uint64_t length);

    Precision precision() const { return precision_; }
    std::uint64_t size() const;
    std::uint64_t amp_bytes() const { return qsim::amp_bytes(precision_); }
    std::uint64_t byte_size() const { return size() * amp_bytes(); }

    Amp get(std::uint64_t index) const;
    void set(std::uint64_t index, Amp value);
    void fill_zero();

    /// Sum of |amplitude|^2 over the whole vector, accumulated in double.
    double norm_squared() const;

    std::complex<float>* data32() { return v32_.data(); }
    std::complex<double>* data64() { return v64_.data(); }
    const std::complex<float>* data32() const { return v32_.data(); }
    const std::complex<double>* data64() const { return v64_.data(); }

    std::span<std::byte> bytes();
    std::span<const std::byte> bytes() const;

  private:
    Precision precision_ = Precision::Double;
    std::vector<std::complex<float>> v32_;
    std::vector<std::complex<double>> v64_;
};

/// An N-qubit register: either a pure state of 2^N amplitudes or a density
/// matrix flattened to 2^(2N) amplitudes.
///
/// Indexing convention: qubit q contributes 2^q to a basis index (qubit 0 is
/// the least significant bit). A density-matrix element <j|rho|k> lives at
/// flat index j + 2^N * k, so the row (ket) qubits are flat qubits 0..N-1 and
/// the column (bra) qubits are flat qubits N..2N-1.
class Register {
  public:
    Register(int num_qubits, RegisterKind kind,
             Precision precision = Precision::Double);

    int num_qubits() const { return num_qubits_; }
    RegisterKind kind() const { return kind_; }
    Precision precision() const { return amps_.precision(); }

    /// Number of qubits of the flattened amplitude vector: N for state
    /// vectors, 2N for density matrices.
    int flat_qubits() const;

    /// Number of stored amplitudes: 2^flat_qubits().
    std::uint64_t size() const { return amps_.size(); }

    /// Resets to |0...0> (state vector) or |0...0><0...0| (density matrix).
    /// Idempotent.
    void init_zero_state();

    Amp get_amplitude(std::uint64_t index) const;

    /// Overwrites one amplitude. Rejects non-finite values; the caller is
    /// responsible for any renormalisation.
    void set_amplitude(std::uint64_t index, Amp value);

    double norm_squared() const { return amps_.norm_squared(); }

    AmpVector& amps() { return amps_; }
    const AmpVector& amps() const { return amps_; }

  private:
    int num_qubits_ = 0;
    RegisterKind kind_ = RegisterKind::StateVector;
    AmpVector amps_;
};

/// Bytes needed for the amplitude storage alone: amp_bytes x 2^N for state
/// vectors and amp_bytes x 2^(2N) for density matrices. Throws DomainError
/// when the count overflows 64 bits.
std::uint64_t memory_bytes(int num_qubits, RegisterKind kind, Precision precision);

} // namespace qsim
