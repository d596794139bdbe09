#pragma once

#include "qsim/types.hpp"

#include <array>

namespace qsim {

/// A 2x2 complex matrix, the unit of all gate application. Rows/columns are
/// ordered |0>, |1>. Construction via unitary_checked() verifies G†G = I and
/// tags the matrix; untagged matrices may be non-unitary (useful in tests).
struct GateMatrix {
    Amp m00{1.0, 0.0}, m01{0.0, 0.0};
    Amp m10{0.0, 0.0}, m11{1.0, 0.0};
    bool unitary = false;

    GateMatrix() = default;
    GateMatrix(Amp a, Amp b, Amp c, Amp d) : m00(a), m01(b), m10(c), m11(d) {}

    /// Throws DomainError unless G†G = I within `tol` entrywise.
    static GateMatrix unitary_checked(Amp a, Amp b, Amp c, Amp d,
                                      double tol = 1e-12);

    GateMatrix dagger() const;
    GateMatrix conjugate() const;
    GateMatrix operator*(const GateMatrix& rhs) const;
};

bool is_unitary(const GateMatrix& g, double tol = 1e-12);

enum class Gate { H, T, CZ, SqrtX, SqrtY, Rx, Ry, Rz, X, Y, Z };

/// A gate by name plus its parameter when rotational. Resolution to a
/// GateMatrix is pure; CZ resolves to Z and is applied under a control.
struct NamedGate {
    Gate gate = Gate::H;
    double angle = 0.0; // used by Rx/Ry/Rz only

    friend bool operator==(const NamedGate&, const NamedGate&) = default;
};

GateMatrix gate_matrix(const NamedGate& g);

/// cos(angle/2) I - i sin(angle/2) (axis . sigma). Throws unless |axis| = 1
/// within 1e-12.
GateMatrix rotation_matrix(const std::array<double, 3>& axis, double angle);

const char* gate_name(Gate g);

/// Serialization token -> gate kind; throws DomainError on unknown names.
Gate gate_from_name(const std::string& name);

/// True for Rx/Ry/Rz, whose text form carries an angle.
bool gate_has_angle(Gate g);

} // namespace qsim
