#pragma once

#include "qsim/gates.hpp"
#include "qsim/register.hpp"

#include <vector>

namespace qsim {

/// Conjugation rho -> G rho G† on a flattened density matrix, realised as two
/// state-vector kernel calls on the 2N-qubit amplitude vector: G at flat
/// qubit `target` (controls in place) and conj(G) at flat qubit `target + N`
/// (controls shifted by N).
void apply_gate_to_density(Register& reg, const std::vector<int>& controls,
                           int target, const GateMatrix& g, int workers = 0);

/// rho -> (1-p) rho + p Z rho Z on `target`; p in [0, 1/2]. Off-diagonal
/// elements in the target qubit scale by (1-2p); the trace is preserved
/// exactly.
void apply_dephasing(Register& reg, int target, double prob, int workers = 0);

/// rho -> (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z) on `target`;
/// p in [0, 3/4] with full mixing to I/2 at the upper endpoint.
void apply_depolarising(Register& reg, int target, double prob,
                        int workers = 0);

/// Sum of diagonal elements rho_jj.
Amp trace(const Register& reg);

/// Tr(rho^2); equals the squared 2-norm of the flat vector for Hermitian rho.
double purity(const Register& reg);

} // namespace qsim
