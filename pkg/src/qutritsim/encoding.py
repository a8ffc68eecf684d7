"""Embedding qutrits into qubit pairs and projecting back.

Encoding, fixed package-wide: qutrit level m maps to the two-qubit basis
state with index m, i.e. 0 -> |00>, 1 -> |01>, 2 -> |10>.  The |11> state
carries no logical meaning; any weight it picks up is "leakage" and is
discarded with renormalization (post-selection), coherences included.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .circuits import Circuit, NoiseConfig, simulate_density
from .linalg import as_matrix

QUTRIT_IDX = (0, 1, 2)  # embedded positions inside a qubit pair


class DegenerateProjectionError(ValueError):
    """All probability weight sits on the excluded |11> state."""


def embed_state(v: np.ndarray) -> np.ndarray:
    """3-vector amplitudes placed at two-qubit indices 0,1,2; index 3 zero."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != 3:
        raise la.ShapeError("embed_state needs a 3-vector")
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError("state must be normalized")
    out = np.zeros(4, dtype=complex)
    out[:3] = v
    return out


def embed_density(rho: np.ndarray) -> np.ndarray:
    """3x3 density into the top-left block of a 4x4; row/col 3 zero."""
    rho = as_matrix(rho)
    if rho.shape != (3, 3):
        raise la.ShapeError("embed_density needs a 3x3 matrix")
    if not la.is_density_matrix(rho, 1e-8):
        raise ValueError("input is not a density matrix")
    out = np.zeros((4, 4), dtype=complex)
    out[:3, :3] = rho
    return out


def project_qutrit(rho4: np.ndarray, atol: float = 1e-12):
    """Post-select the qutrit block: returns (rho3, leakage).

    rho3 = P rho4 P / Tr(P rho4 P) with P the projector onto
    span{|00>,|01>,|10>}; leakage = 1 - Tr(P rho4 P).
    """
    rho4 = as_matrix(rho4)
    if rho4.shape != (4, 4):
        raise la.ShapeError("project_qutrit needs a 4x4 matrix")
    block = rho4[np.ix_(QUTRIT_IDX, QUTRIT_IDX)]
    weight = np.trace(block).real
    if weight < atol:
        raise DegenerateProjectionError("no weight left in the qutrit subspace")
    # the discarded weight is exactly the |11> population for trace-one input
    leakage = float(np.clip(rho4[3, 3].real, 0.0, 1.0))
    return block / weight, leakage


def project_two_qutrits(rho16: np.ndarray, atol: float = 1e-12):
    """Post-select both qubit pairs of a 4-qubit state onto qutrit blocks.

    Input ordering: first pair = most significant.  Returns (rho9, leakage)
    with 9x9 index 3 * m_first + m_second.
    """
    rho16 = as_matrix(rho16)
    if rho16.shape != (16, 16):
        raise la.ShapeError("project_two_qutrits needs a 16x16 matrix")
    idx = [4 * a + b for a in QUTRIT_IDX for b in QUTRIT_IDX]
    block = rho16[np.ix_(idx, idx)]
    weight = np.trace(block).real
    if weight < atol:
        raise DegenerateProjectionError("no weight left in the qutrit x qutrit subspace")
    leakage = float(np.clip(np.trace(rho16).real - weight, 0.0, 1.0))
    return block / weight, leakage


def embed_two_qutrit_unitary(u9: np.ndarray) -> np.ndarray:
    """Lift a qutrit (x) qutrit unitary to 4 qubits, acting trivially on the
    non-qutrit states.  Factor order is preserved (first qutrit = first pair)."""
    u9 = as_matrix(u9)
    if u9.shape != (9, 9):
        raise la.ShapeError("embed_two_qutrit_unitary needs a 9x9 matrix")
    out = np.eye(16, dtype=complex)
    idx = [4 * a + b for a in QUTRIT_IDX for b in QUTRIT_IDX]
    for r, i in enumerate(idx):
        for c, j in enumerate(idx):
            out[i, j] = u9[r, c]
    return out


def induced_channel(c: Circuit, noise: NoiseConfig | None = None,
                    sys_qubits=(2, 3), env_qubits=(0, 1)):
    """Qutrit channel induced by a 4-qubit circuit.

    The composite map: embed the qutrit on the system pair, tensor with the
    environment pair in |00>, run the circuit, trace out the environment
    pair, project back onto the qutrit subspace.  Returns a function
    rho3 -> (rho3', leakage).
    """
    if c.n_qubits != 4:
        raise ValueError("induced_channel expects a 4-qubit circuit")
    order = list(sys_qubits) + list(env_qubits)
    if sorted(order) != [0, 1, 2, 3]:
        raise ValueError("sys_qubits and env_qubits must partition the register")

    def channel(rho3: np.ndarray):
        rho_sys = embed_density(rho3)
        env = np.zeros((4, 4), dtype=complex)
        env[0, 0] = 1.0
        # assemble the full density with each pair on its wires
        full = _place_pairs(rho_sys, env, sys_qubits, env_qubits)
        out = simulate_density(c, full, noise)
        red = la.partial_trace(out, [2, 2, 2, 2], list(sys_qubits))
        return project_qutrit(red)

    return channel


def _place_pairs(rho_a, rho_b, wires_a, wires_b):
    """kron the two 2-qubit factors onto the stated wires of a 4-qubit register."""
    if tuple(wires_a) == (2, 3) and tuple(wires_b) == (0, 1):
        full = np.kron(rho_b, rho_a)
    elif tuple(wires_a) == (0, 1) and tuple(wires_b) == (2, 3):
        full = np.kron(rho_a, rho_b)
    else:
        # general wire interleavings: build by tensor reordering
        full = np.kron(rho_a, rho_b)
        perm = list(wires_a) + list(wires_b)
        t = full.reshape((2,) * 8)
        inv = np.argsort(perm)
        t = t.transpose(list(inv) + [4 + p for p in inv])
        full = t.reshape(16, 16)
    return full
