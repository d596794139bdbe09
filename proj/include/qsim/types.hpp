#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsim {

/// Canonical amplitude type at the API surface. Registers may store
/// amplitudes in single precision internally; accessors widen to double.
using Amp = std::complex<double>;

enum class Precision { Single, Double };

enum class RegisterKind { StateVector, DensityMatrix };

/// Bytes used to store one complex amplitude at the given precision.
constexpr std::uint64_t amp_bytes(Precision p) {
    return p == Precision::Single ? 8 : 16;
}

constexpr const char* to_string(Precision p) {
    return p == Precision::Single ? "single" : "double";
}

constexpr const char* to_string(RegisterKind k) {
    return k == RegisterKind::StateVector ? "statevector" : "density";
}

/// Invalid arguments: bad qubit indices, out-of-range probabilities,
/// malformed values, arithmetic overflow of a requested quantity.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Resource exhaustion: a register or plan that cannot be satisfied by the
/// available memory. Messages name the required bytes.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Failure inside a message transport. Messages name the ranks involved.
class CommError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed circuit text. Messages name the offending line.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qsim
