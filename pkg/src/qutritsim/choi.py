"""Choi-matrix construction and channel recovery.

Normalization convention, used everywhere: the Choi matrix is a state,
Omega = (1/3) sum_{i,k} E_{i,k} (x) Phi(E_{i,k}), trace one, ordering
input (x) output.  Channel recovery therefore multiplies by 3:
Phi(rho) = 3 Tr_in((rho^T (x) I) Omega).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .channels import ChannelRep, choi_of
from .circuits import Circuit, NoiseConfig
from .coupling import CouplingMap, route_circuit
from .decompositions import basis_density, prep_superposition_circuit
from .encoding import project_two_qutrits
from .linalg import as_matrix, kron
from .tomography import collect, fidelity, reconstruct_state


def analytic_choi(channel: ChannelRep) -> np.ndarray:
    """Trace-one Choi matrix of a dimension-3 channel representation."""
    if channel.dim != 3:
        raise la.ShapeError("analytic_choi expects a qutrit channel")
    return choi_of(channel)


# Coefficient matrix expressing each |i><j| in terms of the nine physical
# input states R_k (three basis projectors, three (+) superposition
# projectors, three (+i) superposition projectors).  Row order: E_00, E_01,
# E_02, E_10, E_11, E_12, E_20, E_21, E_22.  Stored as data and re-derived
# from scratch by rederive_coefficients(); a mismatch fails the test suite.
_A = 0.5 * (1 + 1j)
_B = 0.5 * (1 - 1j)
COEFFICIENTS = np.array([
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [-_A, -_A, 0, 1, 0, 0, 1j, 0, 0],
    [-_A, 0, -_A, 0, 1, 0, 0, 1j, 0],
    [-_B, -_B, 0, 1, 0, 0, -1j, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, -_A, -_A, 0, 0, 1, 0, 0, 1j],
    [-_B, 0, -_B, 0, 1, 0, 0, -1j, 0],
    [0, -_B, -_B, 0, 0, 1, 0, 0, -1j],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
], dtype=complex)


@dataclass(frozen=True)
class BasisDecomposition:
    coeffs: np.ndarray        # 9x9, rows indexed by (i, j) row-major
    basis_states: tuple       # the nine physical matrices R_k


def physical_basis() -> tuple:
    """The nine rank-1 physical states R_1..R_9 (same as the prep inputs)."""
    return tuple(basis_density(i) for i in range(1, 10))


def basis_decomposition() -> BasisDecomposition:
    return BasisDecomposition(COEFFICIENTS.copy(), physical_basis())


def rederive_coefficients() -> np.ndarray:
    """Solve the 9x9 linear system expressing each E_{i,j} in the R_k frame,
    independently of the stored table."""
    rs = physical_basis()
    b = np.column_stack([r.reshape(-1) for r in rs])
    out = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            e = np.zeros((3, 3), dtype=complex)
            e[i, j] = 1.0
            out[3 * i + j] = np.linalg.solve(b, e.reshape(-1))
    return out


def choi_linear(channel_on_basis) -> np.ndarray:
    """Assemble the Choi matrix from the channel's action on the nine
    physical basis states: Omega = (1/3) sum_ij E_ij (x) sum_k a_ij^k Phi(R_k)."""
    outs = [as_matrix(m) for m in channel_on_basis]
    if len(outs) != 9:
        raise ValueError("choi_linear needs exactly nine output matrices")
    for m in outs:
        if m.shape != (3, 3):
            raise la.ShapeError("each output must be 3x3")
        if abs(np.trace(m) - 1) > 1e-6:
            raise ValueError("outputs must have unit trace within 1e-6")
    omega = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            e = np.zeros((3, 3), dtype=complex)
            e[i, j] = 1.0
            block = sum(COEFFICIENTS[3 * i + j, k] * outs[k] for k in range(9))
            omega += kron(e, block)
    return omega / 3.0


def channel_from_choi(omega: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Phi(rho) = 3 Tr_in((rho^T (x) I) Omega) for a trace-one Choi matrix."""
    omega, rho = as_matrix(omega), as_matrix(rho)
    if omega.shape != (9, 9) or rho.shape != (3, 3):
        raise la.ShapeError("channel_from_choi expects 9x9 Choi and 3x3 state")
    prod = kron(rho.T, np.eye(3)) @ omega
    return 3.0 * la.partial_trace(prod, [3, 3], [1])


def choi_fidelity(th: np.ndarray, exp: np.ndarray) -> float:
    """Uhlmann fidelity between Choi states; estimates are projected to the
    nearest density matrix first (idempotent on valid states)."""
    th, exp = as_matrix(th), as_matrix(exp)
    if th.shape != (9, 9) or exp.shape != (9, 9):
        raise la.ShapeError("choi_fidelity expects 9x9 matrices")
    return fidelity(la.project_to_density(th), la.project_to_density(exp))


def choi_direct_circuit(channel_circuit: Circuit,
                        layout: CouplingMap | None = None,
                        placement=None) -> Circuit:
    """The 6-qubit direct Choi-state circuit.

    Wires: (0, 1) ancilla pair (kept as the input side), (2, 3) system pair,
    (4, 5) environment pair.  Prepares the uniform qutrit superposition on
    the system pair, copies it onto the ancilla pair in the computational
    basis (control = system, target = ancilla), then runs the channel
    circuit with its environment wires moved to (4, 5).
    """
    if channel_circuit.n_qubits != 4:
        raise ValueError("channel circuit must act on 4 qubits")
    c = Circuit(6)
    c.extend(prep_superposition_circuit().remapped([2, 3], 6).gates)
    c.add("cnot", (), (2, 0))
    c.add("cnot", (), (3, 1))
    # channel wires (e0, e1, s0, s1) -> physical (4, 5, 2, 3)
    c.extend(channel_circuit.remapped([4, 5, 2, 3], 6).gates)
    if layout is not None:
        c = route_circuit(c, layout, placement)
    return c


def choi_direct(channel_circuit: Circuit, shots: int, seed: int,
                noise: NoiseConfig | None = None,
                layout: CouplingMap | None = None,
                placement=None) -> np.ndarray:
    """Direct Choi-state estimate: build the 6-qubit circuit, tomograph the
    (ancilla, system) register over 81 settings, post-select both qutrit
    factors, and return the 9x9 estimate (input (x) output ordering)."""
    circuit = choi_direct_circuit(channel_circuit, layout, placement)
    measure = (0, 1, 2, 3)
    rec = collect(circuit, shots, seed, noise, measure_qubits=measure)
    rho16 = reconstruct_state(rec)
    omega, _leak = project_two_qutrits(rho16)
    return la.project_to_density(omega)


# --- Choi JSON ---------------------------------------------------------------


def choi_to_json(omega: np.ndarray) -> dict:
    obj = la.matrix_to_json(as_matrix(omega))
    obj["ordering"] = "input_output"
    obj["normalization"] = "trace_one"
    return obj


def choi_from_json(obj: dict) -> np.ndarray:
    if obj.get("ordering", "input_output") != "input_output":
        raise ValueError("unsupported Choi ordering")
    return la.matrix_from_json(obj)
