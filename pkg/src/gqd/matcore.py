"""Dense complex-matrix substrate for bipartite states.

Matrices are plain ``numpy.ndarray`` (complex128, row-major).  A
:class:`DensityMatrix` tags a validated matrix with its bipartite split
(d1, d2).  Validation happens once, at construction; everything downstream
assumes validated inputs and does not re-check.

Default tolerances: 1e-10 for hermiticity/trace, -1e-10 as the PSD floor,
1e-9 for eigendecomposition residuals.  Dimensions in scope stay <= 81, so
conditioning is mild and ``numpy.linalg`` is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NoConvergence,
    NonHermitian,
    NonSquare,
    NotPSD,
    TraceNotOne,
)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_FLOOR = -1e-10


@dataclass
class DensityMatrix:
    """Validated bipartite density matrix with subsystem dimensions (d1, d2)."""

    dim_a: int
    dim_b: int
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def as_tensor(self) -> np.ndarray:
        """View reshaped to (d1, d2, d1, d2); index order (row A, row B, col A, col B)."""
        d1, d2 = self.dim_a, self.dim_b
        return self.matrix.reshape(d1, d2, d1, d2)


@dataclass
class Spectrum:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise NonSquare(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def _require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix is {m.shape[0]}x{m.shape[1]}, not square")
    return m


def _round_sig(x: float, sig: int = 12) -> float:
    if x == 0.0 or not np.isfinite(x):
        return 0.0 if x == 0.0 else x
    from math import floor, log10

    return round(x, sig - 1 - floor(log10(abs(x))))


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest-magnitude entry is real positive."""
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    if abs(pivot) < 1e-300:
        return v
    return v * (abs(pivot) / pivot)


def hermitian_eig(a, symmetry_tol: float = HERMITICITY_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Ordering is deterministic: ties between eigenvalues equal after rounding
    to 12 significant digits are broken by lexicographic order of the
    phase-fixed, rounded eigenvectors, so repeated runs give identical
    Spectrum objects.

    Raises NonHermitian if ``max |a - a^dagger|`` exceeds ``symmetry_tol``,
    and NoConvergence if the underlying iterative solver fails.
    """
    m = _require_square(_as_matrix(a))
    dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if dev > symmetry_tol:
        raise NonHermitian(f"symmetry deviation {dev:.3e} exceeds tolerance {symmetry_tol:.1e}")
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]

    rounded = np.array([_round_sig(float(x)) for x in w])
    i = 0
    n = len(w)
    while i < n:
        j = i + 1
        while j < n and rounded[j] == rounded[i]:
            j += 1
        if j - i > 1:
            cols = []
            for k in range(i, j):
                vec = _canonical_phase(v[:, k])
                key = tuple(
                    (_round_sig(float(z.real)), _round_sig(float(z.imag))) for z in vec
                )
                cols.append((key, vec))
            cols.sort(key=lambda kv: kv[0])
            for off, (_, vec) in enumerate(cols):
                v[:, i + off] = vec
        i = j
    return Spectrum(eigenvalues=w, eigenvectors=v)


def trace_norm(a) -> float:
    """Sum of singular values; equals the sum of |eigenvalues| for Hermitian input."""
    m = _require_square(_as_matrix(a))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm sqrt(Tr(A^dagger A))."""
    m = _as_matrix(a)
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


def kron(a, b) -> np.ndarray:
    return np.kron(_as_matrix(a), _as_matrix(b))


def validate_density(matrix, d1: int, d2: int, tol: float = HERMITICITY_TOL) -> DensityMatrix:
    """Check hermiticity, unit trace, and positivity, then tag the dimensions.

    Error messages carry the violating magnitude so callers (and the CLI)
    can report how badly a matrix failed.
    """
    m = _require_square(_as_matrix(matrix))
    if m.shape[0] != d1 * d2:
        raise NonSquare(f"matrix is {m.shape[0]}x{m.shape[1]}, expected {d1 * d2}x{d1 * d2}")
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > tol:
        raise NonHermitian(f"hermiticity deviation {herm_dev:.3e} exceeds {tol:.1e}")
    tr_dev = abs(complex(np.trace(m)) - 1.0)
    if tr_dev > tol:
        raise TraceNotOne(f"|trace - 1| = {tr_dev:.3e} exceeds {tol:.1e}")
    min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())
    if min_eig < PSD_FLOOR:
        raise NotPSD(f"minimum eigenvalue {min_eig:.3e} below floor {PSD_FLOOR:.1e}")
    return DensityMatrix(dim_a=d1, dim_b=d2, matrix=m)


def partial_transpose(rho: DensityMatrix, subsystem: str = "B") -> np.ndarray:
    """Transpose one subsystem of a bipartite state; output is Hermitian, trace 1."""
    t = rho.as_tensor()
    if subsystem == "B":
        out = t.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        out = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return out.reshape(rho.dim, rho.dim).copy()


def partial_trace(rho: DensityMatrix, keep: str = "A") -> DensityMatrix:
    """Trace out one subsystem; the result is a valid single-system DensityMatrix."""
    t = rho.as_tensor()
    if keep == "A":
        m = np.einsum("abcb->ac", t)
        d = rho.dim_a
    elif keep == "B":
        m = np.einsum("abad->bd", t)
        d = rho.dim_b
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return validate_density(m, d, 1)


def reduced_states(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Both marginals as raw arrays (skips re-validation)."""
    t = rho.as_tensor()
    return np.einsum("abcb->ac", t), np.einsum("abad->bd", t)


def matrix_to_json_dict(m) -> dict:
    """Wire format used by the CLI: {"rows", "cols", "re", "im"}, row-major."""
    a = _as_matrix(m)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in a.real.ravel()],
        "im": [float(x) for x in a.imag.ravel()],
    }


def matrix_from_json_dict(d: dict) -> np.ndarray:
    rows, cols = int(d["rows"]), int(d["cols"])
    re = np.asarray(d["re"], dtype=float)
    im = np.asarray(d.get("im", np.zeros(rows * cols)), dtype=float)
    if re.size != rows * cols or im.size != rows * cols:
        raise ValueError(
            f"matrix payload has {re.size} re / {im.size} im entries, expected {rows * cols}"
        )
    return (re + 1j * im).reshape(rows, cols)
