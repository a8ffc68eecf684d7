"""Dense complex linear algebra primitives shared by the whole package.

All matrices are plain ``numpy.ndarray`` of dtype complex128, row-major.
Dimensions in this package never exceed 64x64, so everything is dense and
exact to double precision.
"""

from __future__ import annotations

import json
import math

import numpy as np

ATOL = 1e-10  # default absolute tolerance for structural checks


class ShapeError(ValueError):
    """Matrix has the wrong shape for the requested operation."""


class NotPSDError(ValueError):
    """Matrix is not positive semidefinite within tolerance."""


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex ndarray, rejecting malformed input."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"expected a 2-D matrix, got shape {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("matrix entries must be finite")
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (i1*br+i2, j1*bc+j2) = a[i1,j1] b[i2,j2]."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*ops) -> np.ndarray:
    """Kronecker product of a sequence of matrices, left factor most significant."""
    out = as_matrix(ops[0])
    for o in ops[1:]:
        out = np.kron(out, as_matrix(o))
    return out


def partial_trace(m: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all subsystems not in ``keep``.

    ``dims`` lists the subsystem dimensions (product must match m); ``keep``
    is an ordered collection of subsystem indices.  The result's factors
    appear in ``keep`` order, so this doubles as a subsystem reordering.
    """
    m = as_matrix(m)
    dims = [int(d) for d in dims]
    n = len(dims)
    if m.shape[0] != m.shape[1]:
        raise ShapeError("partial_trace needs a square matrix")
    if math.prod(dims) != m.shape[0]:
        raise ShapeError(f"dims {dims} do not multiply to {m.shape[0]}")
    keep = [int(k) for k in keep]
    if any(k < 0 or k >= n for k in keep) or len(set(keep)) != len(keep):
        raise ShapeError(f"bad keep set {keep} for {n} subsystems")
    t = m.reshape(dims + dims)
    traced = [k for k in range(n) if k not in keep]
    for k in sorted(traced, reverse=True):
        t = np.trace(t, axis1=k, axis2=k + (t.ndim // 2))
    # axes now correspond to kept subsystems in ascending order
    asc = sorted(keep)
    perm = [asc.index(k) for k in keep]
    half = len(keep)
    t = t.transpose(perm + [p + half for p in perm])
    d = math.prod(dims[k] for k in keep) if keep else 1
    return t.reshape(d, d)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def is_hermitian(m: np.ndarray, atol: float = ATOL) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and np.abs(m - dagger(m)).max() <= atol


def is_unitary(m: np.ndarray, atol: float = ATOL) -> bool:
    """True iff m is square and ||m+ m - I||_max <= atol."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return np.abs(dagger(m) @ m - np.eye(m.shape[0])).max() <= atol


def hermitian_eig(m: np.ndarray):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (w, v) with m = v @ diag(w) @ v+ and v unitary.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError("hermitian_eig needs a square matrix")
    w, v = np.linalg.eigh((m + dagger(m)) / 2)
    order = np.argsort(w)[::-1]
    return w[order].real, v[:, order]


def is_psd(m: np.ndarray, atol: float = ATOL) -> bool:
    """True iff Hermitian within atol and min eigenvalue >= -atol."""
    if not is_hermitian(m, atol):
        return False
    w, _ = hermitian_eig(m)
    return w[-1] >= -atol


def sqrtm_psd(m: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-atol, 0) are clamped to zero; anything below -atol is
    an error rather than silently fixed.
    """
    m = as_matrix(m)
    if not is_hermitian(m, max(atol, ATOL) * m.shape[0]):
        raise ShapeError("sqrtm_psd needs a Hermitian matrix")
    w, v = hermitian_eig(m)
    if w[-1] < -atol:
        raise NotPSDError(f"eigenvalue {w[-1]:.3e} below -{atol:.1e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ dagger(v)


def is_density_matrix(m: np.ndarray, atol: float = 1e-8) -> bool:
    """Trace-1 PSD Hermitian check, loose by default for tomographic output."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return abs(np.trace(m) - 1) <= atol and is_psd(m, atol)


def project_to_density(m: np.ndarray) -> np.ndarray:
    """Nearest density matrix: hermitize, then project the spectrum onto the
    probability simplex (Euclidean projection), then reconstruct.

    Idempotent on valid density matrices.
    """
    m = as_matrix(m)
    w, v = hermitian_eig(m)
    # simplex projection of the eigenvalue vector (sorted descending already)
    cum = np.cumsum(w)
    ks = np.arange(1, len(w) + 1)
    cond = w - (cum - 1.0) / ks > 0
    k = int(np.nonzero(cond)[0][-1]) + 1
    theta = (cum[k - 1] - 1.0) / k
    w = np.clip(w - theta, 0.0, None)
    return (v * w) @ dagger(v)


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, atol: float = ATOL) -> bool:
    """True iff a == exp(i phi) b for some real phi, entrywise within atol."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        return False
    i = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(a[i]) <= atol:
        return np.abs(b).max() <= atol
    if abs(b[i]) <= atol:
        return False
    phase = b[i] / a[i]
    phase /= abs(phase)
    return np.abs(a * phase - b).max() <= atol


# --- matrix JSON format (used repo-wide) ------------------------------------
# {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}


def matrix_to_json(m: np.ndarray) -> dict:
    m = as_matrix(m)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "re": [[float(x.real) for x in row] for row in m],
        "im": [[float(x.imag) for x in row] for row in m],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    if rows < 1 or cols < 1:
        raise ShapeError("rows and cols must be positive")
    re, im = obj["re"], obj["im"]
    for part in (re, im):
        if len(part) != rows or any(len(r) != cols for r in part):
            raise ShapeError("ragged or mis-sized matrix data")
    a = np.array(re, dtype=float) + 1j * np.array(im, dtype=float)
    if not np.all(np.isfinite(np.array(re))) or not np.all(np.isfinite(np.array(im))):
        raise ValueError("matrix entries must be finite")
    return a


def save_matrix(path, m: np.ndarray) -> None:
    with open(path, "w") as f:
        json.dump(matrix_to_json(m), f, sort_keys=True)


def load_matrix(path) -> np.ndarray:
    with open(path) as f:
        return matrix_from_json(json.load(f))
