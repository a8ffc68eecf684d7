"""Shot-based measurement settings, state reconstruction, and fidelity.

Reconstruction is Pauli-basis linear inversion followed by projection onto
the nearest density matrix (eigenvalue simplex projection).  A complete
record holds one counts histogram per setting, 3^n settings for n measured
qubits, with per-qubit bases Z, X, Y and pre-rotations Z: none, X: h,
Y: u1(-pi/2) then h.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .circuits import (Circuit, Counts, NoiseConfig, exact_counts,
                       sample_counts, simulate_density, simulate_state)
from .encoding import project_qutrit

BASES = ("Z", "X", "Y")

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def settings_for(n_qubits: int) -> list:
    """All 3^n measurement settings, e.g. ['ZZ', 'ZX', 'ZY', 'XZ', ...]."""
    return ["".join(s) for s in itertools.product(BASES, repeat=n_qubits)]


def prerotation_gates(setting: str) -> list:
    """Gates mapping each qubit's measured Pauli eigenbasis to the
    computational basis."""
    gates = []
    for q, b in enumerate(setting):
        if b == "X":
            gates.append(("h", (), (q,)))
        elif b == "Y":
            gates.append(("u1", (-math.pi / 2,), (q,)))
            gates.append(("h", (), (q,)))
        elif b != "Z":
            raise ValueError(f"unknown basis {b!r}")
    return gates


@dataclass
class TomographyRecord:
    settings: list
    counts: list            # one Counts per setting
    shots: int
    seed: int

    def __post_init__(self):
        if len(self.settings) != len(self.counts):
            raise ValueError("one counts histogram per setting required")

    @property
    def n_qubits(self) -> int:
        return len(self.settings[0])

    def to_json(self) -> dict:
        return {
            "shots": self.shots,
            "seed": self.seed,
            "settings": list(self.settings),
            "counts": [c.to_json()["counts"] for c in self.counts],
        }

    @classmethod
    def from_json(cls, obj) -> "TomographyRecord":
        shots, seed = int(obj["shots"]), int(obj["seed"])
        counts = [Counts(dict(c), shots, seed + i) for i, c in enumerate(obj["counts"])]
        return cls(list(obj["settings"]), counts, shots, seed)


def collect(c: Circuit, shots: int, seed: int, noise: NoiseConfig | None = None,
            measure_qubits=None) -> TomographyRecord:
    """Run the circuit once, then sample every measurement setting.

    shots = 0 is exact mode: Born probabilities are stored in place of
    sampled counts.  Sampling for setting index i uses substream seed + i,
    so settings may be evaluated in any order (or in parallel) without
    changing results.
    """
    if shots < 0:
        raise ValueError("shots must be >= 0")
    n = c.n_qubits
    measure = tuple(measure_qubits) if measure_qubits is not None else tuple(range(n))
    psi0 = np.zeros(2 ** n, dtype=complex)
    psi0[0] = 1.0
    if noise is None or noise.is_zero():
        psi = simulate_state(c, psi0)
        rho_full = np.outer(psi, psi.conj())
    else:
        rho_full = simulate_density(c, np.outer(psi0, psi0.conj()), noise)
    rho_meas = la.partial_trace(rho_full, [2] * n, list(measure))

    k = len(measure)
    flip = noise.readout_flip if noise is not None else 0.0
    settings = settings_for(k)
    all_counts = []
    for i, s in enumerate(settings):
        frag = Circuit(k, prerotation_gates(s))
        rho = simulate_density(frag, rho_meas, noise)
        if shots == 0:
            all_counts.append(exact_counts(rho, seed=seed + i, readout_flip=flip))
        else:
            all_counts.append(sample_counts(rho, shots, seed + i, flip))
    return TomographyRecord(settings, all_counts, shots, seed)


def _probability_vector(counts: Counts, n: int) -> np.ndarray:
    p = np.zeros(2 ** n)
    for b, v in counts.counts.items():
        p[int(b, 2)] += v
    s = p.sum()
    return p / s


def _linear_inversion(rec: TomographyRecord) -> np.ndarray:
    """Averaged Pauli expectation values assembled into a matrix estimate."""
    n = rec.n_qubits
    if sorted(rec.settings) != sorted(settings_for(n)):
        raise ValueError("incomplete tomography record")
    d = 2 ** n
    # parity sign table: signs[mask, b] = (-1)^(popcount(mask & b))
    masks = np.arange(d)
    pop = np.zeros((d, d))
    for m in range(d):
        pop[m] = np.array([(-1) ** bin(m & b).count("1") for b in range(d)])
    est_sum = {}
    est_cnt = {}
    for s, cnt in zip(rec.settings, rec.counts):
        p = _probability_vector(cnt, n)
        for mask in masks:
            pauli = tuple(s[q] if (mask >> (n - 1 - q)) & 1 else "I" for q in range(n))
            val = float(pop[mask] @ p)
            est_sum[pauli] = est_sum.get(pauli, 0.0) + val
            est_cnt[pauli] = est_cnt.get(pauli, 0) + 1
    rho = np.zeros((d, d), dtype=complex)
    for pauli, total in est_sum.items():
        mean = total / est_cnt[pauli]
        op = _PAULI[pauli[0]]
        for q in range(1, n):
            op = np.kron(op, _PAULI[pauli[q]])
        rho += mean * op
    return rho / d


def reconstruct_state(rec: TomographyRecord) -> np.ndarray:
    """Linear inversion then nearest-density projection; always a valid state."""
    return la.project_to_density(_linear_inversion(rec))


def reconstruct_2q(rec: TomographyRecord) -> np.ndarray:
    if rec.n_qubits != 2:
        raise ValueError("reconstruct_2q needs a two-qubit record")
    return reconstruct_state(rec)


def reconstruct_qutrit(rec: TomographyRecord):
    """(rho3, leakage) from a two-qubit record via qutrit post-selection."""
    return project_qutrit(reconstruct_2q(rec))


def fidelity(s1: np.ndarray, s2: np.ndarray) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(s1) s2 sqrt(s1)))^2, clamped to [0, 1]."""
    s1, s2 = la.as_matrix(s1), la.as_matrix(s2)
    if s1.shape != s2.shape or s1.shape[0] != s1.shape[1]:
        raise la.ShapeError("fidelity needs equal-dimension square matrices")
    r = la.sqrtm_psd((s1 + la.dagger(s1)) / 2, atol=1e-7)
    mid = r @ s2 @ r
    w, _ = la.hermitian_eig(mid)
    # zero out eigenvalue dust: sqrt turns O(eps) noise into O(sqrt(eps))
    w = np.clip(w, 0.0, None)
    if w.size and w[0] > 0:
        w[w < w[0] * 1e-13] = 0.0
    val = float(np.sum(np.sqrt(w)) ** 2)
    return min(max(val, 0.0), 1.0)


def channel_fidelity_sweep(omega: np.ndarray, reference, a: int, b: int,
                           grid: int = 101):
    """Fidelity statistics of a reconstructed channel along the segment
    lam * rho_a + (1 - lam) * rho_b, lam on a uniform grid over [0, 1].

    ``reference`` is the exact channel (a callable rho -> rho).  Returns
    (min, max, mean) of fidelity(channel_from_choi(omega, rho), reference(rho)).
    """
    from .choi import channel_from_choi
    from .decompositions import basis_density

    if grid < 2:
        raise ValueError("grid must be >= 2")
    rho_a, rho_b = basis_density(a), basis_density(b)
    vals = []
    for lam in np.linspace(0.0, 1.0, grid):
        rho = lam * rho_a + (1 - lam) * rho_b
        got = la.project_to_density(channel_from_choi(omega, rho))
        want = reference(rho)
        vals.append(fidelity(got, want))
    return float(np.min(vals)), float(np.max(vals)), float(np.mean(vals))


def record_to_json_file(path, rec: TomographyRecord) -> None:
    with open(path, "w") as f:
        json.dump(rec.to_json(), f, sort_keys=True)


def record_from_json_file(path) -> TomographyRecord:
    with open(path) as f:
        return TomographyRecord.from_json(json.load(f))
