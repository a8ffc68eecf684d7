"""Analytic qutrit channels, their Stinespring dilations, and representation
conversion / CPTP checks.

The two channels of interest:

* the spin-1 map  rho -> (Jx rho Jx + Jy rho Jy + Jz rho Jz) / 2, built from
  the spin-1 angular momentum matrices (``ls_apply``);
* the transpose-depolarizer  rho -> (Tr[rho] I - rho^T) / (d-1)
  (``wh_apply``), related to the first by conjugation with the unitary W.

Both are unital, CPTP, and have Kraus rank 3 with a flat Choi spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg as la
from .linalg import as_matrix, dagger, kron

_S2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SpinGenerators:
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray


def spin1_generators() -> SpinGenerators:
    """The three spin-1 generator matrices (hbar = 1)."""
    jx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _S2
    jy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / _S2
    jz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return SpinGenerators(jx, jy, jz)


def _require_density(rho: np.ndarray, atol: float = 1e-8) -> np.ndarray:
    rho = as_matrix(rho)
    if not la.is_density_matrix(rho, atol):
        raise ValueError("input is not a density matrix within tolerance")
    return rho


def ls_apply(rho: np.ndarray) -> np.ndarray:
    """Spin-1 channel output for a 3x3 density matrix."""
    rho = _require_density(rho)
    if rho.shape != (3, 3):
        raise la.ShapeError("ls_apply needs a 3x3 density matrix")
    return _ls_linear(rho)


def _ls_linear(m: np.ndarray) -> np.ndarray:
    j = spin1_generators()
    return (j.jx @ m @ j.jx + j.jy @ m @ j.jy + j.jz @ m @ j.jz) / 2.0


def wh_apply(rho: np.ndarray) -> np.ndarray:
    """Transpose-depolarizer output (Tr[rho] I - rho^T)/(d-1), d >= 2."""
    rho = _require_density(rho)
    d = rho.shape[0]
    if d < 2:
        raise ValueError("wh_apply needs dimension >= 2")
    return _wh_linear(rho)


def _wh_linear(m: np.ndarray) -> np.ndarray:
    d = m.shape[0]
    return (np.trace(m) * np.eye(d) - m.T) / (d - 1)


def covariance_unitary() -> np.ndarray:
    """The real symmetric unitary W with ls_apply(rho) == wh_apply(W rho W+)."""
    return np.array([[0, 0, 1], [0, -1, 0], [1, 0, 0]], dtype=complex)


class Ordering(Enum):
    SYSTEM_FIRST = "system_first"   # U acts on system (x) env
    ENV_FIRST = "env_first"         # U acts on env (x) system


@dataclass(frozen=True)
class StinespringDilation:
    u: np.ndarray
    rho_env: np.ndarray
    ordering: Ordering
    sys_dim: int
    env_dim: int

    def __post_init__(self):
        u = as_matrix(self.u)
        if not la.is_unitary(u, 1e-10):
            raise ValueError("dilation matrix is not unitary")
        if self.sys_dim * self.env_dim != u.shape[0]:
            raise ValueError("sys_dim * env_dim must match the dilation size")
        if not la.is_density_matrix(self.rho_env, 1e-10):
            raise ValueError("rho_env is not a density matrix")

    def kraus(self) -> "KrausSet":
        """Kraus operators, assuming rho_env is pure |e0><e0|."""
        w, v = la.hermitian_eig(self.rho_env)
        if abs(w[0] - 1.0) > 1e-10:
            raise ValueError("kraus extraction needs a pure environment state")
        e0 = v[:, 0]
        ds, de = self.sys_dim, self.env_dim
        u = as_matrix(self.u)
        ops = []
        if self.ordering is Ordering.SYSTEM_FIRST:
            t = u.reshape(ds, de, ds, de)
            col = np.tensordot(t, e0, axes=([3], [0]))  # (s_out, e_out, s_in)
            for e in range(de):
                ops.append(col[:, e, :])
        else:
            t = u.reshape(de, ds, de, ds)
            col = np.tensordot(t, e0, axes=([2], [0]))  # (e_out, s_out, s_in)
            for e in range(de):
                ops.append(col[e, :, :])
        return KrausSet(ops)


@dataclass
class KrausSet:
    operators: list

    def __post_init__(self):
        ops = [as_matrix(k) for k in self.operators]
        self.operators = ops
        s = sum(dagger(k) @ k for k in ops)
        if np.abs(s - np.eye(s.shape[0])).max() > 1e-10:
            raise ValueError("Kraus operators do not satisfy sum K+ K = I")

    def apply(self, m: np.ndarray) -> np.ndarray:
        return sum(k @ m @ dagger(k) for k in self.operators)


_EQ5_BLOCKS = {
    # 3x3 blocks of the 9x9 spin-1 dilation; row block = system out,
    # inner row = environment out, column block = system in (env in = inner col)
    (0, 0): [[0, 0, 0], [0, 0, 1j / _S2], [1 / _S2, 0, 0]],
    (0, 1): [[0.5, 0, 0], [-0.5j, 0, 0], [0, 0.5j - 1 / (2 * _S2), -1j / (2 * _S2)]],
    (0, 2): [[0, 1j / _S2, -0.5j], [0, 0, 0.5], [0, 0, 0]],
    (1, 0): [[0.5, 0, 0], [0.5j, 0, 0], [0, 1, 0]],
    (1, 1): [[0, 0.5 - 0.5j / _S2, 1 / (2 * _S2)],
             [0, 1 / (2 * _S2), -0.5 - 0.5j / _S2],
             [0, 0, 0]],
    (1, 2): [[0.5, 0, 0], [-0.5j, 0, 0], [0, 0, 0]],
    (2, 0): [[0, 0, 1 / _S2], [0, 0, 0], [0, 0, 0]],
    (2, 1): [[0.5, 0, 0], [0.5j, 0, 0], [0, 1 / (2 * _S2), 0.5 - 0.5j / _S2]],
    (2, 2): [[0, 0, 0.5j], [0, 1 / _S2, 0.5], [-1 / _S2, 0, 0]],
}


def ls_dilation_matrix() -> np.ndarray:
    """The fixed 9x9 unitary of the spin-1 dilation, system (x) env ordering."""
    u = np.zeros((9, 9), dtype=complex)
    for (bi, bj), block in _EQ5_BLOCKS.items():
        u[3 * bi:3 * bi + 3, 3 * bj:3 * bj + 3] = np.array(block)
    return u


def ls_stinespring() -> StinespringDilation:
    """Exact dilation of ls_apply with env = |0><0| and system-first ordering."""
    env = np.zeros((3, 3), dtype=complex)
    env[0, 0] = 1.0
    return StinespringDilation(ls_dilation_matrix(), env, Ordering.SYSTEM_FIRST, 3, 3)


_WH_FIXED_BLOCKS = [
    # first block-column (env out = block row, system out = inner row), env in = 0
    np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, 1], [0, -1, 0]], dtype=complex),
]


def wh_kraus() -> KrausSet:
    """The antisymmetric Kraus triple of wh_apply for d = 3."""
    return KrausSet([b / _S2 for b in _WH_FIXED_BLOCKS])


def wh_dilation_matrix() -> np.ndarray:
    """A 9x9 unitary dilating wh_apply, env (x) system ordering.

    Only the first block-column (the env-in = 0 columns) is fixed; the free
    columns are completed to a unitary by Gram-Schmidt over the standard
    basis, in index order, which makes the completion deterministic.  Any
    completion induces the same channel.
    """
    u = np.zeros((9, 9), dtype=complex)
    for e in range(3):
        u[3 * e:3 * e + 3, 0:3] = _WH_FIXED_BLOCKS[e] / _S2
    fixed = [u[:, j] for j in range(3)]
    basis = list(fixed)
    for cand_idx in range(9):
        if len(basis) == 9:
            break
        v = np.zeros(9, dtype=complex)
        v[cand_idx] = 1.0
        for b in basis:
            v = v - b * (np.conj(b) @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-9:
            basis.append(v / norm)
    out = np.zeros((9, 9), dtype=complex)
    # fixed columns are the env-in = 0 columns: indices 0..2 in env-first order
    for j, v in enumerate(basis):
        out[:, j] = v
    return out


def wh_stinespring() -> StinespringDilation:
    """Dilation of wh_apply with env = |0><0| and env-first ordering."""
    env = np.zeros((3, 3), dtype=complex)
    env[0, 0] = 1.0
    return StinespringDilation(wh_dilation_matrix(), env, Ordering.ENV_FIRST, 3, 3)


@dataclass
class ChannelRep:
    """A channel in one of four representations.

    kind: "analytic" (payload: "ls" | "wh" | "id"), "kraus", "stinespring",
    or "choi" (payload: trace-one Choi matrix, input (x) output ordering).
    """
    kind: str
    dim: int
    payload: object = None

    @classmethod
    def analytic(cls, name: str, dim: int = 3) -> "ChannelRep":
        if name not in ("ls", "wh", "id"):
            raise ValueError(f"unknown analytic channel {name!r}")
        if name == "ls" and dim != 3:
            raise ValueError("the spin-1 channel is dimension 3")
        return cls("analytic", dim, name)

    @classmethod
    def kraus(cls, ops) -> "ChannelRep":
        ks = ops if isinstance(ops, KrausSet) else KrausSet(list(ops))
        return cls("kraus", ks.operators[0].shape[1], ks)

    @classmethod
    def stinespring(cls, dil: StinespringDilation) -> "ChannelRep":
        return cls("stinespring", dil.sys_dim, dil)

    @classmethod
    def choi(cls, omega: np.ndarray) -> "ChannelRep":
        omega = as_matrix(omega)
        d = int(round(np.sqrt(omega.shape[0])))
        if d * d != omega.shape[0] or omega.shape[0] != omega.shape[1]:
            raise la.ShapeError("Choi matrix must be d^2 x d^2")
        return cls("choi", d, omega)


def apply_linear(rep: ChannelRep, m: np.ndarray) -> np.ndarray:
    """Apply the channel's linear extension to an arbitrary matrix (no
    density-matrix validation); needed when acting on |i><k| basis elements."""
    m = as_matrix(m)
    if rep.kind == "analytic":
        if rep.payload == "ls":
            return _ls_linear(m)
        if rep.payload == "wh":
            return _wh_linear(m)
        return m.copy()
    if rep.kind == "kraus":
        return rep.payload.apply(m)
    if rep.kind == "stinespring":
        return rep.payload.kraus().apply(m)
    if rep.kind == "choi":
        # Phi(m) = d * Tr_in((m^T (x) I) Omega) for a trace-one Choi matrix
        omega = rep.payload
        d = rep.dim
        op = kron(m.T, np.eye(d))
        prod = op @ omega
        return d * la.partial_trace(prod, [d, d], [1])
    raise ValueError(f"unknown representation kind {rep.kind!r}")


def apply_channel(rep: ChannelRep, rho: np.ndarray) -> np.ndarray:
    """Apply a channel to a density matrix of matching dimension."""
    rho = _require_density(rho)
    if rho.shape[0] != rep.dim:
        raise la.ShapeError(f"state dim {rho.shape[0]} != channel dim {rep.dim}")
    return apply_linear(rep, rho)


def choi_of(rep: ChannelRep) -> np.ndarray:
    """Trace-one Choi matrix (input (x) output ordering) of any representation."""
    d = rep.dim
    omega = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for k in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, k] = 1.0
            omega += kron(e, apply_linear(rep, e))
    return omega / d


def is_cptp(rep: ChannelRep, atol: float = 1e-8) -> bool:
    """Complete positivity (Choi PSD) and trace preservation (Tr_out = I/d)."""
    try:
        omega = choi_of(rep)
    except ValueError:
        return False
    if not la.is_psd(omega, atol):
        return False
    d = rep.dim
    tr_out = la.partial_trace(omega, [d, d], [0])
    return np.abs(tr_out - np.eye(d) / d).max() <= atol


# --- channel JSON ------------------------------------------------------------


def channel_to_json(rep: ChannelRep) -> dict:
    if rep.kind == "analytic":
        return {"kind": "analytic", "name": rep.payload, "dim": rep.dim}
    if rep.kind == "kraus":
        return {"kind": "kraus",
                "operators": [la.matrix_to_json(k) for k in rep.payload.operators]}
    if rep.kind == "stinespring":
        dil = rep.payload
        return {"kind": "stinespring", "u": la.matrix_to_json(dil.u),
                "rho_env": la.matrix_to_json(dil.rho_env),
                "ordering": dil.ordering.value,
                "sys_dim": dil.sys_dim, "env_dim": dil.env_dim}
    return {"kind": "choi", "omega": la.matrix_to_json(rep.payload),
            "ordering": "input_output", "normalization": "trace_one"}


def channel_from_json(obj: dict) -> ChannelRep:
    kind = obj["kind"]
    if kind == "analytic":
        return ChannelRep.analytic(obj["name"], int(obj["dim"]))
    if kind == "kraus":
        return ChannelRep.kraus([la.matrix_from_json(k) for k in obj["operators"]])
    if kind == "stinespring":
        dil = StinespringDilation(
            la.matrix_from_json(obj["u"]), la.matrix_from_json(obj["rho_env"]),
            Ordering(obj["ordering"]), int(obj["sys_dim"]), int(obj["env_dim"]))
        return ChannelRep.stinespring(dil)
    if kind == "choi":
        return ChannelRep.choi(la.matrix_from_json(obj["omega"]))
    raise ValueError(f"unknown channel kind {kind!r}")
