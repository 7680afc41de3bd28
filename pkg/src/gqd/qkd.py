"""Private-state assembly, privacy squeezing, and the discord key-rate bound.

The shield is a quadruple (sigma_0..sigma_3) of d x d density matrices.  The
shared state is the Bell-block form sum_k |Bell_k><Bell_k| (x) sigma_k; its
privacy-squeezed reduction is controlled entirely by the four trace norms
||sigma_0 +/- sigma_1||_1 and ||sigma_2 +/- sigma_3||_1, so the twisting
unitary itself is never materialized.

The distillable-key lower bound is

    K_D >= 1 + 2 D1 log2(2 D1) + 2 D2 log2(2 D2),   0 log 0 := 0

with D_i the square roots of the geometric discords of (sigma_0+sigma_1)/2
and (sigma_2+sigma_3)/2.  The derivation needs the balance condition O4
(equal trace norms of sum and difference within 1e-5, the precision the
worked examples quote), so ``key_rate_lower_bound`` refuses shields that
violate it; ``bound_from_discords`` exposes the bare formula for sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discord import (
    A_SIDE,
    OracleConfig,
    discord_auto,
    oracle_gqd,
)
from .errors import NegativeWeight, NotClassical, O4Violated, ParamOutOfRange
from .matcore import DensityMatrix, hs_norm, trace_norm, validate_density
from .states import BELL_BASIS, proj

O4_TOL = 1e-5

GUARANTEED = "GuaranteedPositive"
NOT_GUARANTEED = "NotGuaranteed"


@dataclass
class ShieldQuadruple:
    sigmas: tuple
    d: int

    @classmethod
    def from_matrices(cls, matrices, d: int) -> "ShieldQuadruple":
        sigmas = tuple(validate_density(m, d, d) for m in matrices)
        return cls(sigmas=sigmas, d=d)

    def pair_states(self) -> tuple[DensityMatrix, DensityMatrix]:
        """(sigma_0 + sigma_1)/2 and (sigma_2 + sigma_3)/2 as validated states."""
        s = [x.matrix for x in self.sigmas]
        d = self.d
        return (
            validate_density((s[0] + s[1]) / 2.0, d, d),
            validate_density((s[2] + s[3]) / 2.0, d, d),
        )


@dataclass
class SqueezeWeights:
    x: float
    y: float
    z: float
    w: float

    def as_tuple(self) -> tuple:
        return (self.x, self.y, self.z, self.w)


@dataclass
class KeyRateReport:
    weights: SqueezeWeights
    d1_term: float
    d2_term: float
    kd_lower_bound: float
    o4_satisfied: bool
    feasibility: str

    def to_json_dict(self) -> dict:
        return {
            "weights": {"x": self.weights.x, "y": self.weights.y,
                        "z": self.weights.z, "w": self.weights.w},
            "d1_term": self.d1_term,
            "d2_term": self.d2_term,
            "d1_sq": self.d1_term ** 2,
            "d2_sq": self.d2_term ** 2,
            "kd_lower_bound": self.kd_lower_bound,
            "o4_satisfied": self.o4_satisfied,
            "feasibility": self.feasibility,
        }


def assemble_private_state(shield: ShieldQuadruple) -> DensityMatrix:
    """Bell-block state (1/4) sum_k |Bell_k><Bell_k| (x) sigma_k.

    The published block layout omits the 1/4 (its trace is 4); the factor is
    restored here so the result is a state.  The (1,4) corner block is then
    (sigma_0 - sigma_1)/8, i.e. the printed (sigma_0 - sigma_1)/2 divided by
    the same factor.
    """
    d2 = shield.d * shield.d
    out = np.zeros((4 * d2, 4 * d2), dtype=complex)
    for bell, sigma in zip(BELL_BASIS, shield.sigmas):
        out += np.kron(proj(bell), sigma.matrix)
    return validate_density(out / 4.0, 4, d2)


def squeeze_weights(shield: ShieldQuadruple) -> SqueezeWeights:
    """Purification weights (x, y, z, w) from the four shield trace norms."""
    s = [m.matrix for m in shield.sigmas]
    p01, m01 = trace_norm(s[0] + s[1]), trace_norm(s[0] - s[1])
    p23, m23 = trace_norm(s[2] + s[3]), trace_norm(s[2] - s[3])
    return SqueezeWeights(
        x=(p01 + m01) / 2.0,
        y=(p01 - m01) / 2.0,
        z=(p23 + m23) / 2.0,
        w=(p23 - m23) / 2.0,
    )


def check_o4(shield: ShieldQuadruple, tol: float = O4_TOL) -> bool:
    """True iff ||s0+s1||_1 == ||s0-s1||_1 and ||s2+s3||_1 == ||s2-s3||_1 within tol."""
    w = squeeze_weights(shield)
    return abs(w.y) <= tol and abs(w.w) <= tol


def verify_classical_witness(
    target: DensityMatrix,
    sigma_cl: DensityMatrix,
    oracle_config: OracleConfig | None = None,
) -> bool:
    """Check ||target||_2 >= ||target - sigma_cl||_2 for a zero-discord sigma_cl.

    ``sigma_cl`` must pass the oracle's zero-discord test (<= 1e-8), else
    NotClassical is raised.
    """
    cfg = oracle_config or OracleConfig(restarts=8, seed=0)
    res = oracle_gqd(sigma_cl, cfg)
    if res.value > 1e-8:
        raise NotClassical(f"sigma_cl has oracle discord {res.value:.3e} > 1e-8")
    return hs_norm(target.matrix) >= hs_norm(target.matrix - sigma_cl.matrix)


def _xlog2x(u: float) -> float:
    return 0.0 if u <= 0.0 else u * np.log2(u)


def bound_from_discords(d1_sq: float, d2_sq: float) -> float:
    """1 + 2 D1 log2(2 D1) + 2 D2 log2(2 D2) with D_i = sqrt of the inputs."""
    return 1.0 + _xlog2x(2.0 * np.sqrt(d1_sq)) + _xlog2x(2.0 * np.sqrt(d2_sq))


def feasibility_interval(d1_term: float) -> str:
    """Guarantee classification of the smaller discord root D1.

    GuaranteedPositive exactly on [0, 0.125) union (0.25, 1]; the published
    interval endpoints are open, and the bound is exactly zero at 0.125 and
    0.25 when D1 = D2.
    """
    if d1_term < 0.0 or d1_term > 1.0:
        raise ParamOutOfRange(f"d1_term must lie in [0, 1], got {d1_term}")
    if d1_term < 0.125 or d1_term > 0.25:
        return GUARANTEED
    return NOT_GUARANTEED


def key_rate_lower_bound(
    shield: ShieldQuadruple,
    discord_fn: str = "analytic",
    variant: str = A_SIDE,
    o4_tol: float = O4_TOL,
    oracle_config: OracleConfig | None = None,
) -> KeyRateReport:
    """Discord lower bound on the distillable key rate of a shield quadruple.

    ``discord_fn`` selects the engine: "analytic" (dimension-matched
    eigenvalue formula, variant selectable) or "oracle" (measurement
    minimization).  Raises O4Violated when the shield fails the balance
    condition, since the bound's derivation requires y = w = 0.
    """
    weights = squeeze_weights(shield)
    o4 = abs(weights.y) <= o4_tol and abs(weights.w) <= o4_tol
    if not o4:
        raise O4Violated(
            f"trace-norm balance violated: y = {weights.y:.6f}, w = {weights.w:.6f} "
            f"(tolerance {o4_tol:g})"
        )
    pair0, pair1 = shield.pair_states()
    if discord_fn == "analytic":
        d1_sq = discord_auto(pair0, variant).value
        d2_sq = discord_auto(pair1, variant).value
    elif discord_fn == "oracle":
        cfg = oracle_config or OracleConfig(restarts=20, seed=0)
        d1_sq = oracle_gqd(pair0, cfg).value
        d2_sq = oracle_gqd(pair1, cfg).value
    else:
        raise ValueError(f"discord_fn must be 'analytic' or 'oracle', got {discord_fn!r}")
    d1, d2 = float(np.sqrt(d1_sq)), float(np.sqrt(d2_sq))
    lo = min(d1, d2)
    return KeyRateReport(
        weights=weights,
        d1_term=d1,
        d2_term=d2,
        kd_lower_bound=bound_from_discords(d1_sq, d2_sq),
        o4_satisfied=True,
        feasibility=feasibility_interval(lo),
    )


def ccq_projectors(weights: SqueezeWeights) -> tuple:
    """Eavesdropper-side vectors (delta_00, delta_01, delta_10, delta_11).

    Components live in the orthonormal frame (e0, e1, e2, e3):
    delta_00/01 = sqrt(x) e0 +/- sqrt(y) e1, delta_10/11 = sqrt(z) e2 +/- sqrt(w) e3.
    """
    vals = weights.as_tuple()
    if any(v < 0.0 for v in vals):
        raise NegativeWeight(f"weights must be non-negative, got {vals}")
    sx, sy, sz, sw = (np.sqrt(v) for v in vals)
    return (
        np.array([sx, sy, 0.0, 0.0]),
        np.array([sx, -sy, 0.0, 0.0]),
        np.array([0.0, 0.0, sz, sw]),
        np.array([0.0, 0.0, sz, -sw]),
    )
