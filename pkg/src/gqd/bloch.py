"""Generalized Gell-Mann basis and the Bloch-triplet map.

Basis conventions (dimension d, d*d - 1 elements, enumeration frozen):

* symmetric block   |j><k| + |k><j|          for j < k, (j, k) lexicographic
* antisymmetric     -i(|j><k| - |k><j|)      for j < k, (j, k) lexicographic
* diagonal          sqrt(2/(l(l+1))) (sum_{j<=l} |j><j| - l |l+1><l+1|), l = 1..d-1

Every element is traceless with Tr(L_i L_j) = 2 delta_ij; for d = 2 the set
is exactly (sigma_x, sigma_y, sigma_z).

The triplet components are defined by plain traces, with no extra scaling:

    x_i = Tr(rho (L_i x I)),  y_j = Tr(rho (I x L_j)),  T_ij = Tr(rho (L_i x L_j))

``reconstruct`` is the exact linear inverse of ``decompose``:

    rho = I/(d1 d2) + (1/(2 d2)) sum_i x_i L_i x I
                    + (1/(2 d1)) sum_j y_j I x L_j
                    + (1/4)      sum_ij T_ij L_i x L_j

so decompose(reconstruct(t)) == t for every dimension pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionTooSmall, InternalInconsistency, NotPSD
from .matcore import DensityMatrix, validate_density, reduced_states

IMAG_RESIDUE_TOL = 1e-12


@dataclass(frozen=True)
class GellMannBasis:
    dim: int
    symmetric: tuple
    antisymmetric: tuple
    diagonal: tuple

    @property
    def matrices(self) -> tuple:
        """All d^2 - 1 elements in the frozen enumeration order."""
        return self.symmetric + self.antisymmetric + self.diagonal

    def stacked(self) -> np.ndarray:
        return np.stack(self.matrices)


@lru_cache(maxsize=None)
def build_basis(d: int) -> GellMannBasis:
    if d < 2:
        raise DimensionTooSmall(f"basis needs dimension >= 2, got {d}")
    sym, antisym, diag = [], [], []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = 1.0
            m.setflags(write=False)
            sym.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            m.setflags(write=False)
            antisym.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for j in range(l):
            m[j, j] = 1.0
        m[l, l] = -float(l)
        m *= np.sqrt(2.0 / (l * (l + 1)))
        m.setflags(write=False)
        diag.append(m)
    return GellMannBasis(dim=d, symmetric=tuple(sym), antisymmetric=tuple(antisym),
                         diagonal=tuple(diag))


@dataclass
class BlochTriplet:
    """Local Bloch vectors and correlation matrix of a bipartite state."""

    dim_a: int
    dim_b: int
    x: np.ndarray
    y: np.ndarray
    T: np.ndarray = field(repr=False)


def _real_part(arr: np.ndarray, what: str) -> np.ndarray:
    residue = float(np.max(np.abs(arr.imag))) if arr.size else 0.0
    if residue > IMAG_RESIDUE_TOL:
        raise InternalInconsistency(
            f"{what} has imaginary residue {residue:.3e} (tolerance {IMAG_RESIDUE_TOL:.1e})"
        )
    return arr.real.copy()


def decompose(rho: DensityMatrix) -> BlochTriplet:
    """Bloch triplet {x, y, T} of a validated density matrix."""
    d1, d2 = rho.dim_a, rho.dim_b
    la = build_basis(d1).stacked()
    lb = build_basis(d2).stacked()
    rho_a, rho_b = reduced_states(rho)
    x = _real_part(np.einsum("nab,ba->n", la, rho_a), "x")
    y = _real_part(np.einsum("nab,ba->n", lb, rho_b), "y")
    t4 = rho.as_tensor()
    T = _real_part(np.einsum("bdac,iab,jcd->ij", t4, la, lb, optimize=True), "T")
    return BlochTriplet(dim_a=d1, dim_b=d2, x=x, y=y, T=T)


def reconstruct_matrix(triplet: BlochTriplet) -> np.ndarray:
    """The matrix the triplet maps back to, without any physicality check."""
    d1, d2 = triplet.dim_a, triplet.dim_b
    la = build_basis(d1).stacked()
    lb = build_basis(d2).stacked()
    n1, n2 = d1 * d1 - 1, d2 * d2 - 1
    if triplet.x.shape != (n1,) or triplet.y.shape != (n2,) or triplet.T.shape != (n1, n2):
        raise ValueError(
            f"triplet shapes {triplet.x.shape}/{triplet.y.shape}/{triplet.T.shape} "
            f"do not match dims ({d1},{d2})"
        )
    dim = d1 * d2
    out = np.eye(dim, dtype=complex) / dim
    ax = np.einsum("i,iab->ab", triplet.x, la) / (2.0 * d2)
    by = np.einsum("j,jcd->cd", triplet.y, lb) / (2.0 * d1)
    out += np.kron(ax, np.eye(d2))
    out += np.kron(np.eye(d1), by)
    out += np.einsum("ij,iab,jcd->acbd", triplet.T, la, lb, optimize=True).reshape(dim, dim) / 4.0
    return out


def reconstruct(triplet: BlochTriplet, require_state: bool = True) -> DensityMatrix:
    """Invert ``decompose``; raises NotPSD when the triplet is not a physical state.

    Pass ``require_state=False`` to skip the positivity gate (useful for
    intermediate objects such as unconstrained closest-classical ansatz).
    """
    m = reconstruct_matrix(triplet)
    if require_state:
        return validate_density(m, triplet.dim_a, triplet.dim_b)
    return DensityMatrix(dim_a=triplet.dim_a, dim_b=triplet.dim_b, matrix=m)


def basis_to_json(d: int) -> list:
    from .matcore import matrix_to_json_dict

    return [matrix_to_json_dict(m) for m in build_basis(d).matrices]
