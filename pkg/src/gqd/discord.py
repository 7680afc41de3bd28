"""Geometric quantum discord: analytic eigenvalue formulas and a minimization oracle.

Conventions
-----------
All formulas consume the trace-normalized Bloch triplet (``bloch.decompose``).
That choice is what reproduces the published closed forms for every worked
family in the regression suite (isotropic, alpha, rho_a, the two constructed
bound-entangled states, the key-rate shield pairs).

Two variants of the correlation quadratic form are kept selectable because
the source formulas are ambiguous between them:

* ``A_side``: T T^t, acting on measurement-side Bloch vectors.  This is the
  dimension-consistent choice for d1 != d2 and the one the minimization
  derivation actually produces; it is the default.
* ``B_side``: T^t T, only defined for d1 == d2.  A handful of published
  key-rate numbers are reproducible only under this variant, so the audit
  keeps both observable.

The oracle implements the definition directly: minimize ||rho - Pi(rho)||_2^2
over von Neumann measurements Pi on subsystem A.  It is the independent
check on the analytic route and is exact for the family it searches, up to
optimizer gap.  For 2x2 systems oracle and analytic agree to ~1e-12; for
3x3 systems the analytic formula is systematically below the oracle (the
formula's stationary ansatz is not constrained to physical measurement
bases), and the audit reports that gap rather than hiding it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochTriplet, decompose
from .errors import (
    InternalInconsistency,
    NoConvergence,
    NormViolation,
    VariantUnavailable,
    WrongDimension,
)
from .matcore import DensityMatrix, hermitian_eig

A_SIDE = "A_side"
B_SIDE = "B_side"

NEGATIVE_CLAMP = 1e-9
A_NORM_SQ = 4.0 / 3.0  # squared norm of measurement-basis Bloch vectors, d = 3


@dataclass
class MMatrix:
    dim: int
    variant: str
    matrix: np.ndarray = field(repr=False)


@dataclass
class DiscordResult:
    value: float
    variant: str
    spectrum: np.ndarray
    x_norm_sq: float
    t_norm_sq: float

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "variant": self.variant,
            "spectrum": [float(v) for v in self.spectrum],
            "x_norm_sq": self.x_norm_sq,
            "t_norm_sq": self.t_norm_sq,
        }


@dataclass
class ClassicalStateParams:
    """Stationary closest-classical-state parameters for a 3x3 state."""

    t: tuple
    u: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    probabilities: tuple
    basis_params: tuple | None = None


@dataclass
class OracleConfig:
    restarts: int = 200
    max_iters: int = 2000
    step_tol: float = 1e-10
    value_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass
class OracleResult:
    """Outcome of the measurement-minimization oracle."""

    value: float
    basis: np.ndarray = field(repr=False)
    converged: bool = True

    def to_json_dict(self) -> dict:
        return {"value": self.value, "converged": self.converged}


def _clamp(value: float) -> float:
    if value < -NEGATIVE_CLAMP:
        raise InternalInconsistency(
            f"discord value {value:.3e} more negative than rounding tolerance"
        )
    return max(value, 0.0)


def _correlation_form(T: np.ndarray, variant: str, square: bool) -> np.ndarray:
    if variant == A_SIDE:
        return T @ T.T
    if variant == B_SIDE:
        if not square:
            raise VariantUnavailable("B_side (T^t T) is only defined for d1 == d2")
        return T.T @ T
    raise ValueError(f"variant must be {A_SIDE!r} or {B_SIDE!r}, got {variant!r}")


def m_matrix(triplet: BlochTriplet, variant: str = A_SIDE) -> MMatrix:
    """Quadratic form whose top eigenvalues enter the discord formulas.

    For 3x3 systems this is the literal 8x8 matrix 3 x x^t + 2 T T' with the
    published coefficients; for other dimension pairs it carries the
    general-formula coefficients 2/(d1^2 d2) and 4/(d1^2 d2^2).
    """
    d1, d2 = triplet.dim_a, triplet.dim_b
    corr = _correlation_form(triplet.T, variant, square=(d1 == d2))
    if (d1, d2) == (3, 3):
        m = 3.0 * np.outer(triplet.x, triplet.x) + 2.0 * corr
    else:
        c1 = 2.0 / (d1 * d1 * d2)
        c2 = 4.0 / (d1 * d1 * d2 * d2)
        m = c1 * np.outer(triplet.x, triplet.x) + c2 * corr
    return MMatrix(dim=m.shape[0], variant=variant, matrix=m)


def _result(value, variant, mat, x, T) -> DiscordResult:
    spec = hermitian_eig(mat)
    return DiscordResult(
        value=_clamp(value),
        variant=variant,
        spectrum=spec.eigenvalues,
        x_norm_sq=float(x @ x),
        t_norm_sq=float(np.sum(T * T)),
    )


def gqd_two_qubit(rho: DensityMatrix, variant: str = A_SIDE) -> DiscordResult:
    """Two-qubit geometric discord D = (1/4)(|x|^2 + |T|^2 - lambda_max)."""
    if (rho.dim_a, rho.dim_b) != (2, 2):
        raise WrongDimension(f"gqd_two_qubit needs a 2x2 system, got {rho.dim_a}x{rho.dim_b}")
    tr = decompose(rho)
    m = np.outer(tr.x, tr.x) + _correlation_form(tr.T, variant, square=True)
    lam = np.linalg.eigvalsh(m)
    value = 0.25 * (tr.x @ tr.x + np.sum(tr.T * tr.T) - lam[-1])
    return _result(value, variant, m, tr.x, tr.T)


def gqd_3x3(rho: DensityMatrix, variant: str = A_SIDE) -> DiscordResult:
    """Two-qutrit geometric discord (2/81)(3|x|^2 + 2|T|^2 - lam1 - lam2)."""
    if (rho.dim_a, rho.dim_b) != (3, 3):
        raise WrongDimension(f"gqd_3x3 needs a 3x3 system, got {rho.dim_a}x{rho.dim_b}")
    tr = decompose(rho)
    mm = m_matrix(tr, variant)
    lam = np.sort(np.linalg.eigvalsh(mm.matrix))[::-1]
    value = (2.0 / 81.0) * (3.0 * tr.x @ tr.x + 2.0 * np.sum(tr.T * tr.T) - lam[0] - lam[1])
    return _result(value, variant, mm.matrix, tr.x, tr.T)


def gqd_general(rho: DensityMatrix, variant: str = A_SIDE) -> DiscordResult:
    """General d1 x d2 geometric discord.

    D = (2/(d1^2 d2)) |x|^2 + (4/(d1^2 d2^2)) |T|^2 - sum of the d1 - 1
    largest eigenvalues of the matching quadratic form.  Coincides exactly
    with ``gqd_two_qubit`` at (2,2) and ``gqd_3x3`` at (3,3).
    """
    d1, d2 = rho.dim_a, rho.dim_b
    if d1 < 2 or d2 < 2:
        raise WrongDimension(f"need both dimensions >= 2, got {d1}x{d2}")
    tr = decompose(rho)
    c1 = 2.0 / (d1 * d1 * d2)
    c2 = 4.0 / (d1 * d1 * d2 * d2)
    corr = _correlation_form(tr.T, variant, square=(d1 == d2))
    m = c1 * np.outer(tr.x, tr.x) + c2 * corr
    lam = np.sort(np.linalg.eigvalsh(m))[::-1]
    value = c1 * (tr.x @ tr.x) + c2 * np.sum(tr.T * tr.T) - float(np.sum(lam[: d1 - 1]))
    return _result(value, variant, m, tr.x, tr.T)


def discord_auto(rho: DensityMatrix, variant: str = A_SIDE) -> DiscordResult:
    """Dispatch to the dimension-specific formula (general form otherwise)."""
    dims = (rho.dim_a, rho.dim_b)
    if dims == (2, 2):
        return gqd_two_qubit(rho, variant)
    if dims == (3, 3):
        return gqd_3x3(rho, variant)
    return gqd_general(rho, variant)


# ---------------------------------------------------------------------------
# closest classical state (3x3 stationary solution)
# ---------------------------------------------------------------------------

def top_eigvec_a_pair(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Canonical (a1, a2) pair spanning the top-two eigenvector plane of M.

    The pair satisfies |a_k|^2 = 4/3 and a1 . a2 = -2/3, the constraints a
    qutrit measurement basis imposes on its Bloch vectors.
    """
    spec = hermitian_eig(m)
    e1 = spec.eigenvectors[:, 0].real
    e2 = spec.eigenvectors[:, 1].real
    a1 = np.sqrt(A_NORM_SQ) * e1
    a2 = np.sqrt(A_NORM_SQ) * (-0.5 * e1 + (np.sqrt(3.0) / 2.0) * e2)
    return a1, a2


def measurement_basis_bloch(psi_basis: np.ndarray) -> np.ndarray:
    """Bloch vectors a_k of the columns of an orthonormal basis matrix."""
    from .bloch import build_basis

    d = psi_basis.shape[0]
    lam = build_basis(d).stacked()
    return np.einsum("ka,nab,kb->kn", psi_basis.T.conj(), lam, psi_basis.T).real


def closest_classical_params(
    triplet: BlochTriplet, a1: np.ndarray, a2: np.ndarray
) -> ClassicalStateParams:
    """Stationary parameters of the closest-classical ansatz for a 3x3 state.

    Given measurement-side vectors with |a_k|^2 = 4/3, returns the values at
    which every partial derivative of ||rho - chi||_2^2 vanishes:

        t1 = x.a1 + (1/2) x.a2          t2 = (1/2) x.a1 + x.a2
        u  = y
        r1 = (3/4) T^t (a1 |a2|^2 + (2/3) a2)
        r2 = (3/4) T^t (a2 |a1|^2 + (2/3) a1)

    The correlation coupling enters through T^t (a_k live on the A side,
    r_k on the B side); with T in place of T^t the point is not stationary,
    which the finite-difference suite checks.
    """
    if triplet.dim_a != 3 or triplet.dim_b != 3:
        raise WrongDimension("closest_classical_params is defined for 3x3 systems")
    for k, a in enumerate((a1, a2), start=1):
        dev = abs(float(a @ a) - A_NORM_SQ)
        if dev > 1e-8:
            raise NormViolation(f"|a{k}|^2 deviates from 4/3 by {dev:.3e}")
    x, y, T = triplet.x, triplet.y, triplet.T
    t1 = float(x @ a1 + 0.5 * (x @ a2))
    t2 = float(0.5 * (x @ a1) + x @ a2)
    u = y.copy()
    r1 = 0.75 * (T.T @ (a1 * float(a2 @ a2) + (2.0 / 3.0) * a2))
    r2 = 0.75 * (T.T @ (a2 * float(a1 @ a1) + (2.0 / 3.0) * a1))
    p3 = (1.0 - t1 - t2) / 3.0
    probs = (t1 + p3, t2 + p3, p3)
    return ClassicalStateParams(t=(t1, t2), u=u, r1=r1, r2=r2, probabilities=probs)


def classical_triplet(params: ClassicalStateParams, a1: np.ndarray, a2: np.ndarray) -> BlochTriplet:
    """Assemble the ansatz triplet {a1 t1 + a2 t2, u, a1 r1^t + a2 r2^t}."""
    x = a1 * params.t[0] + a2 * params.t[1]
    S = np.outer(a1, params.r1) + np.outer(a2, params.r2)
    return BlochTriplet(dim_a=3, dim_b=3, x=x, y=params.u.copy(), T=S)


# ---------------------------------------------------------------------------
# measurement-minimization oracle
# ---------------------------------------------------------------------------

def _hermitian_directions(d: int) -> np.ndarray:
    """d^2 Hermitian basis matrices parametrizing exp(iH) steps."""
    dirs = []
    for i in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[i, i] = 1.0
        dirs.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = 1.0
            m[j, i] = 1.0
            dirs.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = -1.0j
            m[j, i] = 1.0j
            dirs.append(m)
    return np.stack(dirs)


def _expi(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def measured_state_distance_sq(rho: DensityMatrix, basis: np.ndarray) -> float:
    """||rho - Pi(rho)||_2^2 for the von Neumann measurement in ``basis`` columns."""
    t = rho.as_tensor()
    blocks = np.einsum("ak,abcd,ck->kbd", basis.conj(), t, basis, optimize=True)
    kept = float(np.sum(np.abs(blocks) ** 2))
    total = float(np.sum(np.abs(rho.matrix) ** 2))
    return total - kept


def measured_state(rho: DensityMatrix, basis: np.ndarray) -> np.ndarray:
    """The post-measurement (classical-quantum) state sum_k (P_k x I) rho (P_k x I)."""
    t = rho.as_tensor()
    blocks = np.einsum("ak,abcd,ck->kbd", basis.conj(), t, basis, optimize=True)
    dim = rho.dim
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(rho.dim_a):
        out += np.kron(np.outer(basis[:, k], basis[:, k].conj()), blocks[k])
    return out


def oracle_gqd(rho: DensityMatrix, config: OracleConfig | None = None) -> OracleResult:
    """Minimize ||rho - Pi(rho)||_2^2 over von Neumann measurements on A.

    Derivative-free pattern search on U(d1) (steps U -> U exp(i s H_j) along
    a Hermitian coordinate frame, shrinking s on failure), restarted from
    the eigenbasis of the A marginal, the identity, and seeded random
    unitaries.  Restart seeds are derived by counter, so the minimum over
    restarts does not depend on evaluation order.

    Never raises NoConvergence: a restart that exhausts ``max_iters`` before
    its step drops below ``step_tol`` only clears the ``converged`` flag.
    """
    cfg = config or OracleConfig()
    d1 = rho.dim_a
    t = rho.as_tensor()
    total = float(np.sum(np.abs(rho.matrix) ** 2))
    dirs = _hermitian_directions(d1)
    ndir = len(dirs)

    def objective(u: np.ndarray) -> float:
        blocks = np.einsum("ak,abcd,ck->kbd", u.conj(), t, u, optimize=True)
        return total - float(np.sum(np.abs(blocks) ** 2))

    rho_a = np.einsum("abcb->ac", t)
    _, va = np.linalg.eigh(rho_a)
    starts = [va, np.eye(d1, dtype=complex)]
    for k in range(max(cfg.restarts - 2, 0)):
        rng = np.random.default_rng([cfg.seed, k])
        starts.append(_expi(_random_hermitian(rng, dirs)))

    best_val = np.inf
    best_u = starts[0]
    any_converged = False
    for u0 in starts:
        u, val = u0, objective(u0)
        step = 0.5
        iters = 0
        while step > cfg.step_tol and iters < cfg.max_iters:
            improved = False
            for j in range(ndir):
                for sgn in (1.0, -1.0):
                    cand = u @ _expi(sgn * step * dirs[j])
                    iters += 1
                    cand_val = objective(cand)
                    if cand_val < val - 1e-18:
                        u, val = cand, cand_val
                        improved = True
                        break
                if improved:
                    break
            if not improved:
                step *= 0.5
        if step <= cfg.step_tol:
            any_converged = True
        if val < best_val:
            best_val, best_u = val, u
    return OracleResult(value=max(best_val, 0.0), basis=best_u, converged=any_converged)


def _random_hermitian(rng: np.random.Generator, dirs: np.ndarray) -> np.ndarray:
    coeffs = rng.normal(size=len(dirs))
    return np.einsum("n,nij->ij", coeffs, dirs)
