"""Analytic-vs-oracle discord audit over random states.

For each sample the report records both analytic variants and the oracle
value, then summarizes which variant tracks the oracle.  Two flags matter:

* ``oracle_below_analytic``: the oracle, being a minimum over actual
  measurements, can exceed the analytic value but should never undercut it
  by more than optimizer noise; rows where it does by > 1e-6 indicate a
  formula-variant problem and are listed.
* ``no_convergence``: restarts that hit the iteration cap.

On 2x2 systems the A_side variant and the oracle agree to ~1e-12.  On 3x3
systems both analytic variants sit systematically below the oracle (gap of
order 1e-2 on full-rank states); the audit quantifies that gap instead of
papering over it.
"""

from __future__ import annotations

import numpy as np

from .discord import A_SIDE, B_SIDE, OracleConfig, discord_auto, oracle_gqd
from .states import random_state


def run_audit(d1: int, d2: int, samples: int = 20, seed: int = 0,
              restarts: int = 12) -> dict:
    rows = []
    flagged = []
    unconverged = 0
    for k in range(samples):
        rho = random_state(d1, d2, seed=[seed, k])
        a_val = discord_auto(rho, A_SIDE).value
        b_val = discord_auto(rho, B_SIDE).value if d1 == d2 else None
        res = oracle_gqd(rho, OracleConfig(restarts=restarts, seed=seed + k))
        if not res.converged:
            unconverged += 1
        row = {
            "sample": k,
            "analytic_A_side": a_val,
            "analytic_B_side": b_val,
            "oracle": res.value,
            "oracle_converged": res.converged,
        }
        rows.append(row)
        if res.value < a_val - 1e-6 or (b_val is not None and res.value < b_val - 1e-6):
            flagged.append(k)

    gaps_a = [abs(r["oracle"] - r["analytic_A_side"]) for r in rows]
    gaps_b = [abs(r["oracle"] - r["analytic_B_side"]) for r in rows
              if r["analytic_B_side"] is not None]
    summary = {
        "dims": [d1, d2],
        "samples": samples,
        "seed": seed,
        "max_abs_gap_A_side": max(gaps_a),
        "mean_abs_gap_A_side": float(np.mean(gaps_a)),
        "max_abs_gap_B_side": max(gaps_b) if gaps_b else None,
        "mean_abs_gap_B_side": float(np.mean(gaps_b)) if gaps_b else None,
        "selected_variant": A_SIDE if (not gaps_b or max(gaps_a) <= max(gaps_b)) else B_SIDE,
        "oracle_below_analytic_samples": flagged,
        "no_convergence_count": unconverged,
    }
    return {"summary": summary, "rows": rows}
