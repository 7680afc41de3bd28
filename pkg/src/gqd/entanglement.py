"""Negativity and PPT/NPT classification.

Negativity follows N = (||rho^T_B||_1 - 1)/(d - 1) = (2/(d-1)) sum |negative
PT eigenvalues|, with the absolute value taken on the strictly negative part
of the spectrum (threshold -1e-10, aligned with the density-matrix PSD
floor).  The normalization d - 1 is only meaningful for d x d systems;
unequal dimensions raise rather than guessing a convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnequalDims
from .matcore import DensityMatrix, partial_transpose

NEG_EIG_THRESHOLD = -1e-10


@dataclass
class EntanglementReport:
    negativity: float
    min_pt_eigenvalue: float
    negative_pt_eigenvalues: list
    ppt: bool

    def to_json_dict(self) -> dict:
        return {
            "negativity": self.negativity,
            "min_pt_eigenvalue": self.min_pt_eigenvalue,
            "negative_pt_eigenvalues": list(self.negative_pt_eigenvalues),
            "ppt": self.ppt,
        }


def pt_spectrum(rho: DensityMatrix, subsystem: str = "B") -> np.ndarray:
    """Eigenvalues of the partial transpose, ascending."""
    return np.linalg.eigvalsh(partial_transpose(rho, subsystem))


def negativity(rho: DensityMatrix) -> EntanglementReport:
    if rho.dim_a != rho.dim_b:
        raise UnequalDims(
            f"negativity normalization d-1 undefined for {rho.dim_a}x{rho.dim_b}; "
            "inspect pt_spectrum directly instead"
        )
    ev = pt_spectrum(rho)
    neg = ev[ev < NEG_EIG_THRESHOLD]
    value = 2.0 / (rho.dim_a - 1) * float(np.sum(-neg))
    return EntanglementReport(
        negativity=value,
        min_pt_eigenvalue=float(ev.min()),
        negative_pt_eigenvalues=[float(v) for v in neg],
        ppt=neg.size == 0,
    )


def classify(rho: DensityMatrix) -> str:
    """"NPT" when the partial transpose has an eigenvalue below the floor, else "PPT"."""
    ev = pt_spectrum(rho)
    return "NPT" if float(ev.min()) < NEG_EIG_THRESHOLD else "PPT"


@dataclass
class ComparisonRow:
    param: float
    discord: float
    negativity: float
    error: str = ""


@dataclass
class ComparisonTable:
    family: str
    parameter: str
    rows: list
    crossing_params: list

    def crossing(self) -> float | None:
        return self.crossing_params[0] if self.crossing_params else None


def compare_discord_negativity(family, parameter: str, grid, fixed_params=None) -> ComparisonTable:
    """Tabulate (param, D_G, N) over a grid and locate |D_G - N| minima.

    ``family`` is a catalog entry from :mod:`gqd.states`.  Rows that fail to
    build or evaluate carry the error message instead of numbers.  The
    crossing report lists interior grid points where |D_G - N| is locally
    minimal (within 1e-12 of the global minimum).
    """
    from .discord import discord_auto

    fixed = dict(fixed_params or {})
    rows = []
    for value in grid:
        try:
            rho = family.build(**{parameter: float(value)}, **fixed)
            d = discord_auto(rho).value
            n = negativity(rho).negativity
            rows.append(ComparisonRow(param=float(value), discord=d, negativity=n))
        except Exception as exc:  # recorded per-row, surfaced by the caller
            rows.append(ComparisonRow(param=float(value), discord=np.nan,
                                      negativity=np.nan, error=str(exc)))
    gaps = [abs(r.discord - r.negativity) for r in rows if not r.error]
    crossings = []
    if gaps:
        best = min(gaps)
        for r in rows:
            if not r.error and abs(abs(r.discord - r.negativity) - best) <= 1e-12:
                crossings.append(r.param)
    return ComparisonTable(family=family.name, parameter=parameter, rows=rows,
                           crossing_params=crossings)
