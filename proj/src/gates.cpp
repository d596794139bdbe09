#include "qsim/gates.hpp"

#include <cmath>
#include <numbers>

namespace qsim {

namespace {

double max_abs(const Amp& a) {
    return std::max(std::abs(a.real()), std::abs(a.imag()));
}

} // namespace

bool is_unitary(const GateMatrix& g, double tol) {
    // G†G entries
    const Amp e00 = std::conj(g.m00) * g.m00 + std::conj(g.m10) * g.m10;
    const Amp e01 = std::conj(g.m00) * g.m01 + std::conj(g.m10) * g.m11;
    const Amp e10 = std::conj(g.m01) * g.m00 + std::conj(g.m11) * g.m10;
    const Amp e11 = std::conj(g.m01) * g.m01 + std::conj(g.m11) * g.m11;
    return max_abs(e00 - Amp{1, 0}) <= tol && max_abs(e01) <= tol &&
           max_abs(e10) <= tol && max_abs(e11 - Amp{1, 0}) <= tol;
}

GateMatrix GateMatrix::unitary_checked(Amp a, Amp b, Amp c, Amp d, double tol) {
    GateMatrix g{a, b, c, d};
    if (!is_unitary(g, tol))
        throw DomainError("matrix is not unitary within tolerance");
    g.unitary = true;
    return g;
}

GateMatrix GateMatrix::dagger() const {
    GateMatrix g{std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    g.unitary = unitary;
    return g;
}

GateMatrix GateMatrix::conjugate() const {
    GateMatrix g{std::conj(m00), std::conj(m01), std::conj(m10), std::conj(m11)};
    g.unitary = unitary;
    return g;
}

GateMatrix GateMatrix::operator*(const GateMatrix& r) const {
    return {m00 * r.m00 + m01 * r.m10, m00 * r.m01 + m01 * r.m11,
            m10 * r.m00 + m11 * r.m10, m10 * r.m01 + m11 * r.m11};
}

GateMatrix gate_matrix(const NamedGate& g) {
    using std::numbers::pi;
    const double s = 1.0 / std::sqrt(2.0);
    switch (g.gate) {
    case Gate::H:
        return GateMatrix::unitary_checked({s, 0}, {s, 0}, {s, 0}, {-s, 0});
    case Gate::T:
        return GateMatrix::unitary_checked({1, 0}, {0, 0}, {0, 0},
                                           {std::cos(pi / 4), std::sin(pi / 4)});
    case Gate::X:
        return GateMatrix::unitary_checked({0, 0}, {1, 0}, {1, 0}, {0, 0});
    case Gate::Y:
        return GateMatrix::unitary_checked({0, 0}, {0, -1}, {0, 1}, {0, 0});
    case Gate::Z:
    case Gate::CZ: // applied with the partner qubit as control
        return GateMatrix::unitary_checked({1, 0}, {0, 0}, {0, 0}, {-1, 0});
    case Gate::SqrtX:
        // squares exactly to X
        return GateMatrix::unitary_checked({0.5, 0.5}, {0.5, -0.5},
                                           {0.5, -0.5}, {0.5, 0.5});
    case Gate::SqrtY:
        // squares exactly to Y
        return GateMatrix::unitary_checked({0.5, 0.5}, {-0.5, -0.5},
                                           {0.5, 0.5}, {0.5, 0.5});
    case Gate::Rx:
        return rotation_matrix({1, 0, 0}, g.angle);
    case Gate::Ry:
        return rotation_matrix({0, 1, 0}, g.angle);
    case Gate::Rz:
        return rotation_matrix({0, 0, 1}, g.angle);
    }
    throw DomainError("unknown gate");
}

GateMatrix rotation_matrix(const std::array<double, 3>& axis, double angle) {
    const double len2 =
        axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
    if (std::abs(len2 - 1.0) > 1e-12)
        throw DomainError("rotation axis must be a unit vector");
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    // cos(a/2) I - i sin(a/2) (nx X + ny Y + nz Z)
    GateMatrix g{{c, -s * axis[2]},
                 {-s * axis[1], -s * axis[0]},
                 {s * axis[1], -s * axis[0]},
                 {c, s * axis[2]}};
    g.unitary = true;
    return g;
}

const char* gate_name(Gate g) {
    switch (g) {
    case Gate::H: return "H";
    case Gate::T: return "T";
    case Gate::CZ: return "CZ";
    case Gate::SqrtX: return "SX";
    case Gate::SqrtY: return "SY";
    case Gate::Rx: return "RX";
    case Gate::Ry: return "RY";
    case Gate::Rz: return "RZ";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    }
    return "?";
}

Gate gate_from_name(const std::string& name) {
    if (name == "H") return Gate::H;
    if (name == "T") return Gate::T;
    if (name == "CZ") return Gate::CZ;
    if (name == "SX") return Gate::SqrtX;
    if (name == "SY") return Gate::SqrtY;
    if (name == "RX") return Gate::Rx;
    if (name == "RY") return Gate::Ry;
    if (name == "RZ") return Gate::Rz;
    if (name == "X") return Gate::X;
    if (name == "Y") return Gate::Y;
    if (name == "Z") return Gate::Z;
    throw DomainError("unknown gate name '" + name + "'");
}

bool gate_has_angle(Gate g) {
    return g == Gate::Rx || g == Gate::Ry || g == Gate::Rz;
}

} // namespace qsim
