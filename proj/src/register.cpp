#include "qsim/register.hpp"

#include <cmath>
#include <cstring>
#include <new>

namespace qsim {

AmpVector::AmpVector(Precision precision, std::uint64_t length)
    : precision_(precision) {
    try {
        if (precision_ == Precision::Single)
            v32_.assign(length, {0.0f, 0.0f});
        else
            v64_.assign(length, {0.0, 0.0});
    } catch (const std::bad_alloc&) {
        throw ResourceError("failed to allocate " +
                            std::to_string(length * amp_bytes()) +
                            " bytes of amplitude storage");
    } catch (const std::length_error&) {
        throw ResourceError("failed to allocate " +
                            std::to_string(length * amp_bytes()) +
                            " bytes of amplitude storage");
    }
}

std::uint64_t AmpVector::size() const {
    return precision_ == Precision::Single ? v32_.size() : v64_.size();
}

Amp AmpVector::get(std::uint64_t index) const {
    if (index >= size())
        throw DomainError("amplitude index " + std::to_string(index) +
                          " out of range [0, " + std::to_string(size()) + ")");
    if (precision_ == Precision::Single) {
        const auto v = v32_[index];
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    return v64_[index];
}

void AmpVector::set(std::uint64_t index, Amp value) {
    if (index >= size())
        throw DomainError("amplitude index " + std::to_string(index) +
                          " out of range [0, " + std::to_string(size()) + ")");
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw DomainError("amplitude must be finite");
    if (precision_ == Precision::Single)
        v32_[index] = {static_cast<float>(value.real()),
                       static_cast<float>(value.imag())};
    else
        v64_[index] = value;
}

void AmpVector::fill_zero() {
    if (precision_ == Precision::Single)
        std::memset(v32_.data(), 0, v32_.size() * sizeof(v32_[0]));
    else
        std::memset(v64_.data(), 0, v64_.size() * sizeof(v64_[0]));
}

double AmpVector::norm_squared() const {
    double sum = 0.0;
    if (precision_ == Precision::Single) {
        for (const auto& a : v32_) {
            const double re = a.real(), im = a.imag();
            sum += re * re + im * im;
        }
    } else {
        for (const auto& a : v64_) {
            sum += a.real() * a.real() + a.imag() * a.imag();
        }
    }
    return sum;
}

std::span<std::byte> AmpVector::bytes() {
    if (precision_ == Precision::Single)
        return {reinterpret_cast<std::byte*>(v32_.data()),
                v32_.size() * sizeof(v32_[0])};
    return {reinterpret_cast<std::byte*>(v64_.data()),
            v64_.size() * sizeof(v64_[0])};
}

std::span<const std::byte> AmpVector::bytes() const {
    if (precision_ == Precision::Single)
        return {reinterpret_cast<const std::byte*>(v32_.data()),
                v32_.size() * sizeof(v32_[0])};
    return {reinterpret_cast<const std::byte*>(v64_.data()),
            v64_.size() * sizeof(v64_[0])};
}

namespace {

int flat_qubit_count(int num_qubits, RegisterKind kind) {
    return kind == RegisterKind::DensityMatrix ? 2 * num_qubits : num_qubits;
}

} // namespace

Register::Register(int num_qubits, RegisterKind kind, Precision precision)
    : num_qubits_(num_qubits), kind_(kind) {
    if (num_qubits < 1)
        throw DomainError("register needs at least 1 qubit, got " +
                          std::to_string(num_qubits));
    // Preflight the byte count so absurd sizes fail with the required bytes
    // named instead of a bad_alloc deep inside the vector.
    const unsigned __int128 needed =
        static_cast<unsigned __int128>(qsim::amp_bytes(precision))
        << flat_qubit_count(num_qubits, kind);
    if (needed > (static_cast<unsigned __int128>(1) << 63)) {
        throw ResourceError("register of " + std::to_string(num_qubits) +
                            " qubits requires 2^" +
                            std::to_string(flat_qubit_count(num_qubits, kind) +
                                           (precision == Precision::Single ? 3 : 4)) +
                            " bytes");
    }
    amps_ = AmpVector(precision,
                      std::uint64_t{1} << flat_qubit_count(num_qubits, kind));
    init_zero_state();
}

int Register::flat_qubits() const {
    return flat_qubit_count(num_qubits_, kind_);
}

void Register::init_zero_state() {
    amps_.fill_zero();
    amps_.set(0, Amp{1.0, 0.0});
}

Amp Register::get_amplitude(std::uint64_t index) const {
    return amps_.get(index);
}

void Register::set_amplitude(std::uint64_t index, Amp value) {
    amps_.set(index, value);
}

std::uint64_t memory_bytes(int num_qubits, RegisterKind kind,
                           Precision precision) {
    if (num_qubits < 1)
        throw DomainError("register needs at least 1 qubit, got " +
                          std::to_string(num_qubits));
    const int shift = flat_qubit_count(num_qubits, kind) +
                      (precision == Precision::Single ? 3 : 4);
    if (shift >= 64)
        throw DomainError("memory byte count overflows 64 bits for " +
                          std::to_string(num_qubits) + " qubits");
    return std::uint64_t{1} << shift;
}

} // namespace qsim
