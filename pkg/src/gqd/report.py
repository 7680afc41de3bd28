"""Canonical sweep datasets behind the published figures, with rendering.

Each entry in :data:`FIGURES` produces one delimited dataset (CSV) and, via
``render``, one PNG line plot next to it.  The datasets are deterministic,
so repeated runs are byte-identical.

Two datasets need a caveat, recorded here and in the README:

* ``fig03_tiles``: the published curve is claimed increasing, but the family
  interpolates to a pure product state, so the discord must (and does) fall
  to zero; the dataset shows the computed, decreasing curve.
* ``fig11/fig12`` (key-rate families): the bound column applies the key-rate
  formula directly to the two pair discords.  For family 1 the printed
  shield violates the trace-norm balance condition, and for family 2 the
  second pair has no valid printed state, so fig12's x-axis uses the
  published closed form for that pair.
"""

from __future__ import annotations

import csv
import os

import numpy as np

from . import states
from .discord import discord_auto
from .entanglement import negativity
from .qkd import bound_from_discords


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _family_sweep(family_name, param, grid, quantities):
    fam = states.get_family(family_name)
    header = [param] + list(quantities)
    rows = []
    for v in grid:
        rho = fam.build(**{param: float(v)})
        row = [float(v)]
        for q in quantities:
            if q == "discord":
                row.append(discord_auto(rho).value)
            elif q == "negativity":
                row.append(negativity(rho).negativity)
            else:
                raise ValueError(f"unknown quantity {q!r}")
        rows.append(row)
    return header, rows


def _fig_discord(family, param, lo, hi, steps=121):
    def make():
        return _family_sweep(family, param, np.linspace(lo, hi, steps), ["discord"])

    return make


def _fig_comparison(family, param, lo, hi, steps=201):
    def make():
        return _family_sweep(family, param, np.linspace(lo, hi, steps),
                             ["discord", "negativity"])

    return make


def _fig_keyrate_family1():
    qs = np.linspace(0.04, 0.4, 10)
    rs = np.linspace(0.04, 0.4, 10)
    header = ["q", "r", "d1_sq", "d2_sq", "kd_bound"]
    rows = []
    for q in qs:
        for r in rs:
            s0, s1, s2, s3 = states.qkd_ex1_matrices(q, r)
            from .matcore import validate_density

            pair0 = validate_density((s0 + s1) / 2, 2, 2)
            pair1 = validate_density((s2 + s3) / 2, 2, 2)
            d1_sq = discord_auto(pair0).value
            d2_sq = discord_auto(pair1).value
            rows.append([q, r, d1_sq, d2_sq, bound_from_discords(d1_sq, d2_sq)])
    return header, rows


def _fig_keyrate_family2():
    from .matcore import validate_density

    s0, s1, _, _ = states.qkd_ex2_matrices(0.5)
    pair0 = validate_density((s0 + s1) / 2, 2, 2)
    d1_sq = discord_auto(pair0).value
    header = ["m", "d1_sq", "d2_sq", "kd_bound"]
    rows = []
    for m in np.linspace(0.0, 1.0, 101):
        d2_sq = states.qkd_ex2_d2sq_printed(m)
        rows.append([m, d1_sq, d2_sq, bound_from_discords(d1_sq, d2_sq)])
    return header, rows


FIGURES = {
    "fig01_isotropic_separable": _fig_discord("isotropic", "beta", -0.125, 1.0 / 3.0),
    "fig02_alpha_separable": _fig_discord("alpha", "alpha", 2.0, 3.0),
    "fig03_tiles": _fig_discord("gamma", "gamma", 0.2, 1.0),
    "fig04_isotropic_npt": _fig_discord("isotropic", "beta", 1.0 / 3.0, 1.0),
    "fig05_rho_a": _fig_discord("rho_a", "a", 1.0 / np.sqrt(2.0), 1.0),
    "fig06_rho_c": _fig_discord("rho_c", "c", 0.01, 0.99),
    "fig07_alpha_ppt": _fig_discord("alpha", "alpha", 3.0001, 4.0),
    "fig08_alpha_discord_vs_negativity": _fig_comparison("alpha", "alpha", 4.0001, 5.0),
    "fig09_isotropic_discord_vs_negativity": _fig_comparison("isotropic", "beta", 1.0 / 3.0, 1.0),
    "fig10_rho_a_discord_vs_negativity": _fig_comparison("rho_a", "a", 1.0 / np.sqrt(2.0), 1.0),
    "fig11_keyrate_family1": _fig_keyrate_family1,
    "fig12_keyrate_family2": _fig_keyrate_family2,
}


def write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def render(name: str, header, rows, png_path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = np.array([[float(v) for v in row] for row in rows])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if name == "fig11_keyrate_family1":
        for r in np.unique(data[:, 1])[::3]:
            sel = data[np.isclose(data[:, 1], r)]
            ax.plot(sel[:, 2], sel[:, 4], marker=".", label=f"r = {r:.2f}")
        ax.set_xlabel("discord of first shield pair")
        ax.set_ylabel("key-rate lower bound")
        ax.legend(fontsize=8)
    elif name == "fig12_keyrate_family2":
        ax.plot(data[:, 2], data[:, 3], marker=".")
        ax.set_xlabel("discord of second shield pair")
        ax.set_ylabel("key-rate lower bound")
    else:
        for col in range(1, data.shape[1]):
            ax.plot(data[:, 0], data[:, col], label=header[col])
        ax.set_xlabel(header[0])
        ax.set_ylabel("value")
        if data.shape[1] > 2:
            ax.legend()
    ax.set_title(name)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)


def run_report(outdir: str, names=None) -> list:
    """Write CSV + PNG for the selected figures; returns the files written."""
    os.makedirs(outdir, exist_ok=True)
    selected = list(FIGURES) if not names else list(names)
    written = []
    for name in selected:
        if name not in FIGURES:
            raise ValueError(f"unknown figure {name!r}; known: {', '.join(FIGURES)}")
        header, rows = FIGURES[name]()
        csv_path = os.path.join(outdir, f"{name}.csv")
        png_path = os.path.join(outdir, f"{name}.png")
        write_csv(csv_path, header, rows)
        render(name, header, rows, png_path)
        written.extend([csv_path, png_path])
    return written
