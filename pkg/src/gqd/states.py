"""Catalog of the bipartite state families used throughout the suite.

Every family is registered with its parameter intervals and, where one was
published, the closed-form discord as ``expected_discord``.  Each closed
form carries a ``verified`` flag recording whether our implementation
reproduces it; the handful of unverified forms are kept anyway (they are
what the regression suite documents disagreement against) together with a
``notes`` string describing the transcription decision taken.

Transcription notes for the awkward fixtures:

* ``rho_c``: the source prints sqrt(1+c^2)/2 for the (7,9) coupling, which
  is not positive semidefinite anywhere on (0,1) (minimum eigenvalue down to
  -0.028).  The builder uses sqrt(1-c^2)/2, which is PSD on the whole range
  (boundary rank-deficient) and matches the state's standard construction.
* ``qkd_ex1``: the printed sigma_1 has trace 1 + q/2; its (2,2) entry is
  transcribed as q/2 (mirroring sigma_0), which restores unit trace for all
  q and makes both pair discords land exactly on closed forms.
* ``qkd_ex2``: the printed sigma_2 has trace 2 - m/2 and no PSD repair that
  stays valid on [0,1]; it is transcribed verbatim and fails validation by
  design.  ``qkd_ex2_matrices`` exposes the raw matrices.
* ``qkd_ex1_sigma_cl``: the printed amplitudes (0.345, 0.655) are not
  normalized; the builder normalizes the basis kets and keeps their ratio.
* ``qkd_ex3_sigma_cl``: the printed Bloch coefficients give purity > 1; the
  builder keeps them verbatim (with the optional 1/2 convention) and the
  matrices fail the PSD check either way.  Exposed raw for inspection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadRank, ParamOutOfRange, UnknownFamily
from .matcore import DensityMatrix, validate_density

SQRT5 = np.sqrt(5.0)
ALPHA_KINK = (5.0 + SQRT5) / 2.0  # exact eigenvalue-crossing point printed as 3.618


# ---------------------------------------------------------------------------
# small constructors
# ---------------------------------------------------------------------------

def ket(d1: int, d2: int, i: int, j: int) -> np.ndarray:
    v = np.zeros(d1 * d2, dtype=complex)
    v[i * d2 + j] = 1.0
    return v


def proj(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


def max_entangled(d: int) -> np.ndarray:
    """|phi+> = (1/sqrt d) sum_i |ii>."""
    v = np.zeros(d * d, dtype=complex)
    for i in range(d):
        v[i * d + i] = 1.0
    return v / np.sqrt(d)


PHI_PLUS_2 = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
PHI_MINUS_2 = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
PSI_PLUS_2 = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
PSI_MINUS_2 = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
BELL_BASIS = (PHI_PLUS_2, PHI_MINUS_2, PSI_PLUS_2, PSI_MINUS_2)


def _qutrit_pair(i: int, j: int) -> np.ndarray:
    return ket(3, 3, i, j)


# ---------------------------------------------------------------------------
# family machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, v: float) -> bool:
        if v < self.lo or v > self.hi:
            return False
        if self.lo_open and v <= self.lo:
            return False
        if self.hi_open and v >= self.hi:
            return False
        return True

    def __str__(self) -> str:
        return f"{'(' if self.lo_open else '['}{self.lo}, {self.hi}{')' if self.hi_open else ']'}"


@dataclass
class ClosedForm:
    func: object
    verified: bool
    source_note: str = ""


@dataclass
class StateFamily:
    name: str
    dims: tuple
    params: dict
    builder: object
    kind: str = "state"  # "state" or "shield"
    closed_form: ClosedForm | None = None
    notes: str = ""

    def check_params(self, values: dict) -> dict:
        out = {}
        for pname, interval in self.params.items():
            if pname not in values:
                raise ParamOutOfRange(f"{self.name}: missing parameter {pname!r}")
            v = float(values[pname])
            if not interval.contains(v):
                raise ParamOutOfRange(f"{self.name}: {pname}={v} outside {interval}")
            out[pname] = v
        extra = set(values) - set(self.params)
        if extra:
            raise ParamOutOfRange(f"{self.name}: unknown parameters {sorted(extra)}")
        return out

    def build(self, **values):
        return self.builder(**self.check_params(values))

    def expected_discord(self, **values):
        if self.closed_form is None:
            return None
        return self.closed_form.func(**self.check_params(values))


CATALOG: dict = {}


def _register(family: StateFamily) -> StateFamily:
    CATALOG[family.name] = family
    return family


def get_family(name: str) -> StateFamily:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownFamily(
            f"unknown family {name!r}; known: {', '.join(sorted(CATALOG))}"
        ) from None


def build(name: str, **params):
    return get_family(name).build(**params)


def expected_discord(name: str, **params):
    return get_family(name).expected_discord(**params)


def catalog_json() -> list:
    out = []
    for name in sorted(CATALOG):
        fam = CATALOG[name]
        out.append(
            {
                "name": name,
                "kind": fam.kind,
                "dims": list(fam.dims),
                "params": {p: str(iv) for p, iv in fam.params.items()},
                "closed_form": fam.closed_form is not None,
                "closed_form_verified": bool(fam.closed_form.verified) if fam.closed_form else None,
                "notes": fam.notes,
            }
        )
    return out


# ---------------------------------------------------------------------------
# single-state families
# ---------------------------------------------------------------------------

def product_state(b: np.ndarray, c: np.ndarray) -> DensityMatrix:
    """rho1 (x) rho2 with factors I/3 + sum_i b_i L_i and I/3 + sum_i c_i L_i."""
    from .bloch import build_basis

    lam = build_basis(3).stacked()
    rho1 = np.eye(3, dtype=complex) / 3 + np.einsum("i,iab->ab", b, lam)
    rho2 = np.eye(3, dtype=complex) / 3 + np.einsum("i,iab->ab", c, lam)
    return validate_density(np.kron(rho1, rho2), 3, 3)


def _build_product(seed: float = 0.0) -> DensityMatrix:
    rng = np.random.default_rng(int(seed))
    b = rng.normal(size=8)
    c = rng.normal(size=8)
    # scale into the qutrit Bloch ball conservatively so the factors stay PSD
    b *= 0.1 / max(np.linalg.norm(b), 1.0)
    c *= 0.1 / max(np.linalg.norm(c), 1.0)
    return product_state(b, c)


def diagonal_state(weights: np.ndarray) -> DensityMatrix:
    w = np.asarray(weights, dtype=float)
    return validate_density(np.diag(w.astype(complex)), 3, 3)


def _build_diag(seed: float = 0.0) -> DensityMatrix:
    rng = np.random.default_rng(int(seed))
    w = rng.dirichlet(np.ones(9))
    return diagonal_state(w)


def _build_isotropic(beta: float) -> DensityMatrix:
    m = beta * proj(max_entangled(3)) + (1.0 - beta) / 9.0 * np.eye(9)
    return validate_density(m, 3, 3)


def _isotropic_expected(beta: float) -> float:
    return 32.0 / 243.0 * beta * beta


def _build_alpha(alpha: float) -> DensityMatrix:
    psi = proj(max_entangled(3))
    sig_plus = (proj(_qutrit_pair(0, 1)) + proj(_qutrit_pair(1, 2)) + proj(_qutrit_pair(2, 0))) / 3
    sig_minus = (proj(_qutrit_pair(1, 0)) + proj(_qutrit_pair(2, 1)) + proj(_qutrit_pair(0, 2))) / 3
    m = 2.0 / 7.0 * psi + alpha / 7.0 * sig_plus + (5.0 - alpha) / 7.0 * sig_minus
    return validate_density(m, 3, 3)


def _alpha_expected(alpha: float) -> float:
    if alpha <= 3.0:
        return 32.0 / 11907.0 * ((alpha - 2.5) ** 2 + 2.75)
    if alpha <= ALPHA_KINK:
        return 32.0 / 11907.0 * (alpha * alpha - 5.0 * alpha + 9.0)
    return 128.0 / 11907.0


def tiles_vectors() -> list:
    k0, k1, k2 = np.eye(3)
    return [
        np.kron(k0, k0 - k1) / np.sqrt(2),
        np.kron(k0 - k1, k2) / np.sqrt(2),
        np.kron(k2, k1 - k2) / np.sqrt(2),
        np.kron(k1 - k2, k0) / np.sqrt(2),
        np.kron(k0 + k1 + k2, k0 + k1 + k2) / 3.0,
    ]


def _build_gamma(gamma: float) -> DensityMatrix:
    psis = tiles_vectors()
    rho_psi = (np.eye(9) - sum(proj(p) for p in psis)) / 4.0
    m = gamma * proj(psis[0]) + (1.0 - gamma) * rho_psi
    return validate_density(m, 3, 3)


def _gamma_expected(gamma: float) -> float:
    # published closed form; our computation disagrees (see family notes)
    return 0.137129 * (2.5 * gamma * gamma - gamma + 1.0)


def _build_rho_a(a: float) -> DensityMatrix:
    chi1 = _qutrit_pair(0, 1) - a * _qutrit_pair(1, 0)
    chi2 = _qutrit_pair(0, 2) - a * _qutrit_pair(2, 0)
    chi3 = _qutrit_pair(0, 0) + _qutrit_pair(1, 1) + _qutrit_pair(2, 2)
    m = (proj(chi1) + proj(chi2) + proj(chi3)) / (5.0 + 2.0 * a * a)
    return validate_density(m, 3, 3)


def _rho_a_expected(a: float) -> float:
    return 8.0 * (128.0 + a * (17.0 * a ** 3 - 8.0 * a - 72.0)) / (729.0 * (5.0 + 2.0 * a * a) ** 2)


def rho_c_matrix(c: float, coupling: str = "psd") -> np.ndarray:
    """Raw matrix; coupling "psd" uses sqrt(1-c^2)/2, "printed" uses sqrt(1+c^2)/2."""
    s = np.sqrt(1.0 + c * c) / 2.0 if coupling == "printed" else np.sqrt(1.0 - c * c) / 2.0
    m = np.zeros((9, 9), dtype=complex)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = c
    for i in (1, 2, 3, 5, 7):
        m[i, i] = c
    m[6, 6] = (1.0 + c) / 2.0
    m[8, 8] = (1.0 + c) / 2.0
    m[6, 8] = s
    m[8, 6] = s
    return m / (8.0 * c + 1.0)


def _build_rho_c(c: float) -> DensityMatrix:
    return validate_density(rho_c_matrix(c), 3, 3)


def _build_cons33() -> DensityMatrix:
    a = (1.0 + SQRT5) / (3.0 + 9.0 * SQRT5)
    b = -2.0 / (3.0 + 9.0 * SQRT5)
    c = (-1.0 + SQRT5) / (3.0 + 9.0 * SQRT5)
    m = np.zeros((9, 9), dtype=complex)
    for i, v in enumerate((a, c, a, a, a, c, c, a, a)):
        m[i, i] = v
    for i, j in ((0, 4), (0, 8), (4, 0), (8, 0), (5, 7), (7, 5)):
        m[i, j] = b
    return validate_density(m, 3, 3)


def _cons33_expected() -> float:
    return 16.0 * (23.0 - 3.0 * SQRT5) / 29403.0


def _build_cons44() -> DensityMatrix:
    return validate_density(proj(max_entangled(4)), 4, 4)


def _cons44_expected() -> float:
    # published value; the general formula (subtracting d1 - 1 = 3 eigenvalues)
    # gives 12/256 instead -- see family notes
    return 13.0 / 256.0


# ---------------------------------------------------------------------------
# negativity closed forms (corrected signs / multiplicities; see tests)
# ---------------------------------------------------------------------------

def negativity_alpha(alpha: float) -> float:
    return (np.sqrt(41.0 - 20.0 * alpha + 4.0 * alpha * alpha) - 5.0) / 14.0


def negativity_isotropic(beta: float) -> float:
    return (4.0 * beta - 1.0) / 3.0


def negativity_rho_a(a: float) -> float:
    return (np.sqrt(2.0) * a - 1.0 - a * a + np.sqrt(a ** 4 - 2.0 * a * a + 5.0)) / (5.0 + 2.0 * a * a)


# ---------------------------------------------------------------------------
# QKD shield fixtures
# ---------------------------------------------------------------------------

def qkd_ex1_matrices(q: float, r: float) -> tuple:
    s = np.sqrt(1.0 - q) / 2.0
    t = np.sqrt(1.0 - r) / 2.0
    s0 = np.array([
        [q / 2, 0, 0, 0],
        [0, (1 - q) / 2, s, 0],
        [0, s, 0.5, 0],
        [0, 0, 0, 0],
    ], dtype=complex)
    s1 = np.array([
        [0.5, 0, 0, s],
        [0, q / 2, 0, 0],  # printed as q; trace-corrected (see module notes)
        [0, 0, 0, 0],
        [s, 0, 0, (1 - q) / 2],
    ], dtype=complex)
    s2 = np.array([
        [0.5, 0, 0, t],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [t, 0, 0, 0.5],
    ], dtype=complex)
    s3 = np.diag([0, 0.5, 0.5, 0]).astype(complex)
    return s0, s1, s2, s3


def qkd_ex2_matrices(m: float) -> tuple:
    u = np.sqrt(1.0 - m) / 2.0
    s0 = np.array([
        [0.5, 0.25, 0.25, 0],
        [0.25, 0.25, 0, 0],
        [0.25, 0, 0.25, 0],
        [0, 0, 0, 0],
    ], dtype=complex)
    s1 = np.diag([0, 0, 0, 1.0]).astype(complex)
    s2 = np.array([  # verbatim; trace is 2 - m/2, so validation rejects it
        [m / 2, 0, u, 0],
        [0, 1.0 - m, 0, 0],
        [u, 0, 1.0, 0],
        [0, 0, 0, 0],
    ], dtype=complex)
    s3 = np.diag([0, 0, 0, 1.0]).astype(complex)
    return s0, s1, s2, s3


def qkd_ex3_matrices() -> tuple:
    psi = max_entangled(3)
    s0 = proj(psi)
    s1 = (np.eye(9) - proj(psi)) / 8.0
    u = (_qutrit_pair(0, 1) + _qutrit_pair(1, 1)) / np.sqrt(2)
    s2 = proj(u)
    eta = (_qutrit_pair(0, 0) + _qutrit_pair(0, 2) + _qutrit_pair(1, 0)
           + _qutrit_pair(1, 2) + _qutrit_pair(2, 2))
    s3 = proj(eta) / 5.0
    return s0, s1, s2, s3


def qkd_ex4_matrices() -> tuple:
    s0 = np.array([
        [0.5, 0, 0, 0.25],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [0.25, 0, 0, 0.5],
    ], dtype=complex)
    s1 = np.array([
        [0, 0, 0, 0],
        [0, 0.5, 0.5, 0],
        [0, 0.5, 0.5, 0],
        [0, 0, 0, 0],
    ], dtype=complex)
    s2 = np.array([
        [0.5, 0, 0.5, 0],
        [0, 0, 0, 0],
        [0.5, 0, 0.5, 0],
        [0, 0, 0, 0],
    ], dtype=complex)
    s3 = np.array([
        [0, 0, 0, 0],
        [0, 0.25, 0, 0.1],
        [0, 0, 0, 0],
        [0, 0.1, 0, 0.75],
    ], dtype=complex)
    return s0, s1, s2, s3


def _shield_builder(matrices_fn, d: int):
    def build_shield(**params):
        from .qkd import ShieldQuadruple

        return ShieldQuadruple.from_matrices(matrices_fn(**params), d=d)

    return build_shield


def qkd_ex1_sigma_cl() -> DensityMatrix:
    """Two-qubit classical-quantum witness; basis kets normalized (see notes)."""
    alpha, beta, p1 = 0.345, 0.655, 0.24
    n = np.hypot(alpha, beta)
    a, b = alpha / n, beta / n
    psi1 = np.array([a, b], dtype=complex)
    psi2 = np.array([-b, a], dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    r = np.sqrt(0.1)
    rho_b = 0.5 * (np.eye(2, dtype=complex) + r * sx + r * sy)
    m = p1 * np.kron(proj(psi1), rho_b) + (1.0 - p1) * np.kron(proj(psi2), rho_b)
    return validate_density(m, 2, 2)


def qkd_ex3_sigma_cl_matrices(half_convention: bool = True) -> np.ndarray:
    """Printed 3x3 witness; not PSD under either Bloch-coefficient convention."""
    from .bloch import build_basis

    alpha, beta = 0.031, 0.656
    gamma = np.sqrt(1.0 - alpha ** 2 - beta ** 2)
    n = np.hypot(alpha, beta)
    psi1 = np.array([alpha, beta, gamma], dtype=complex)
    psi2 = np.array([-beta, alpha, 0.0], dtype=complex) / n
    psi3 = np.array([-alpha * gamma, -beta * gamma, n * n], dtype=complex) / n
    coeff = {
        1: {1: np.sqrt(0.1), 2: np.sqrt(0.1), 4: np.sqrt(0.2), 6: np.sqrt(0.5), 8: np.sqrt(0.1)},
        2: {1: np.sqrt(0.1), 2: np.sqrt(0.1), 4: np.sqrt(0.2), 8: np.sqrt(0.3)},
        3: {1: np.sqrt(0.1), 2: np.sqrt(0.1), 4: np.sqrt(0.2), 6: np.sqrt(0.5)},
    }
    lam = build_basis(3).matrices
    scale = 0.5 if half_convention else 1.0
    rhos = []
    for k in (1, 2, 3):
        m = np.eye(3, dtype=complex) / 3.0
        for i, v in coeff[k].items():
            m = m + scale * v * lam[i - 1]
        rhos.append(m)
    probs = (0.084, 0.866, 0.05)
    return sum(p * np.kron(proj(psi), rho) for p, psi, rho in zip(probs, (psi1, psi2, psi3), rhos))


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------

def random_state(d1: int, d2: int, rank: int | None = None, seed: int = 0) -> DensityMatrix:
    """Hilbert-Schmidt-induced random state: partial trace of a random pure state."""
    dim = d1 * d2
    rank = dim if rank is None else int(rank)
    if rank < 1 or rank > dim:
        raise BadRank(f"rank must be in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return validate_density(m, d1, d2)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def classical_quantum(basis: np.ndarray, probs, rhos) -> DensityMatrix:
    """Assemble sum_k p_k |psi_k><psi_k| (x) rho_k from basis columns psi_k."""
    d1 = basis.shape[0]
    d2 = rhos[0].shape[0]
    out = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for k in range(d1):
        out += probs[k] * np.kron(proj(basis[:, k]), rhos[k])
    return validate_density(out, d1, d2)


def random_classical_quantum(d1: int, d2: int, seed: int = 0) -> DensityMatrix:
    """Zero-discord state sum_k p_k |psi_k><psi_k| (x) rho_k with Haar basis {psi_k}."""
    rng = np.random.default_rng(seed)
    u = random_unitary(d1, rng)
    p = rng.dirichlet(np.ones(d1))
    rhos = []
    for _ in range(d1):
        g = rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2))
        rho_k = g @ g.conj().T
        rhos.append(rho_k / np.trace(rho_k).real)
    return classical_quantum(u, p, rhos)


def random_product(d1: int, d2: int, seed: int = 0) -> DensityMatrix:
    rng = np.random.default_rng(seed)
    out = None
    for d in (d1, d2):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        out = rho if out is None else np.kron(out, rho)
    return validate_density(out, d1, d2)


# ---------------------------------------------------------------------------
# registration
# ---------------------------------------------------------------------------

_register(StateFamily(
    name="product", dims=(3, 3), params={"seed": Interval(0, 1e9)},
    builder=_build_product,
    closed_form=ClosedForm(lambda seed: 0.0, verified=True, source_note="product states carry no correlations"),
))
_register(StateFamily(
    name="diag", dims=(3, 3), params={"seed": Interval(0, 1e9)},
    builder=_build_diag,
    closed_form=ClosedForm(lambda seed: 0.0, verified=True, source_note="diagonal two-qutrit states have zero discord"),
))
_register(StateFamily(
    name="isotropic", dims=(3, 3), params={"beta": Interval(-0.125, 1.0)},
    builder=_build_isotropic,
    closed_form=ClosedForm(_isotropic_expected, verified=True),
    notes="PPT/separable on [-1/8, 1/4], NPT entangled on (1/4, 1] "
          "(the PT eigenvalue (1-4b)/9 fixes the boundary at 1/4)",
))
_register(StateFamily(
    name="alpha", dims=(3, 3), params={"alpha": Interval(2.0, 5.0)},
    builder=_build_alpha,
    closed_form=ClosedForm(_alpha_expected, verified=True,
                           source_note="piecewise; kink at (5+sqrt5)/2 ~ 3.61803"),
    notes="separable on [2,3], PPT entangled on (3,4], NPT on (4,5]",
))
_register(StateFamily(
    name="gamma", dims=(3, 3), params={"gamma": Interval(0.2, 1.0)},
    builder=_build_gamma,
    closed_form=ClosedForm(_gamma_expected, verified=False,
                           source_note="published 0.137129(2.5 g^2 - g + 1) is irreconcilable: "
                                       "the state is a pure product at g = 1, forcing zero discord"),
    notes="tiles bound-entangled state mixed with one of its product kets",
))
_register(StateFamily(
    name="rho_a", dims=(3, 3), params={"a": Interval(1.0 / np.sqrt(2.0), 1.0)},
    builder=_build_rho_a,
    closed_form=ClosedForm(_rho_a_expected, verified=True),
    notes="NPT entangled on the whole interval",
))
_register(StateFamily(
    name="rho_c", dims=(3, 3), params={"c": Interval(0.0, 1.0, lo_open=True, hi_open=True)},
    builder=_build_rho_c,
    closed_form=None,
    notes="PPT entangled; printed sqrt(1+c^2)/2 coupling replaced by the PSD sqrt(1-c^2)/2 "
          "(printed form has min eigenvalue < 0 on the whole interval)",
))
_register(StateFamily(
    name="cons33", dims=(3, 3), params={},
    builder=_build_cons33,
    closed_form=ClosedForm(_cons33_expected, verified=True),
    notes="PPT entangled golden-ratio construction",
))
_register(StateFamily(
    name="cons44", dims=(4, 4), params={},
    builder=_build_cons44,
    closed_form=ClosedForm(_cons44_expected, verified=False,
                           source_note="published 13/256 subtracts only two eigenvalues; the "
                                       "d1-1 = 3 rule of the general formula gives 12/256"),
))
_register(StateFamily(
    name="qkd_ex1", dims=(2, 2),
    params={"q": Interval(0.0, 0.4, lo_open=True), "r": Interval(0.0, 0.4, lo_open=True)},
    builder=_shield_builder(qkd_ex1_matrices, d=2), kind="shield",
    notes="sigma_1 (2,2)-entry trace-corrected q -> q/2; pair discords q^2/16 and (1-r)/16",
))
_register(StateFamily(
    name="qkd_ex2", dims=(2, 2), params={"m": Interval(0.0, 1.0)},
    builder=_shield_builder(qkd_ex2_matrices, d=2), kind="shield",
    notes="sigma_2 transcribed verbatim and invalid (trace 2 - m/2); building the shield raises",
))
_register(StateFamily(
    name="qkd_ex3", dims=(3, 3), params={},
    builder=_shield_builder(qkd_ex3_matrices, d=3), kind="shield",
))
_register(StateFamily(
    name="qkd_ex4", dims=(2, 2), params={},
    builder=_shield_builder(qkd_ex4_matrices, d=2), kind="shield",
))
_register(StateFamily(
    name="qkd_ex1_sigma_cl", dims=(2, 2), params={},
    builder=qkd_ex1_sigma_cl,
    closed_form=ClosedForm(lambda: 0.0, verified=True, source_note="classical-quantum by construction"),
    notes="witness state; printed ket amplitudes normalized",
))


def qkd_ex2_d2sq_printed(m: float) -> float:
    """Published closed form for the second Example-2 pair (not reproducible)."""
    m1 = 5.0 + m * (-4.0 + 2.0 * m + m ** 3)
    return (3.0 + (-2.0 + m) * m + np.sqrt(m1)) / 32.0
