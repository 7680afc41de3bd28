"""Command-line front end.

Exit codes: 0 success, 1 partial sweep failure, 2 validation error,
3 dimension error, 4 trace-norm balance (O4) violation, 5 unknown family.

States come either from the catalog (``--family`` plus repeatable
``--param name=value``) or from a JSON matrix file
({"rows": n, "cols": n, "re": [...], "im": [...]}, row-major) with
``--dims d1 d2``.  ``GQD_SEED`` sets the default seed; an optional config
file holds flat ``key=value`` lines mirroring the flags, with explicit
flags taking precedence.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys

import numpy as np

from . import states
from .bloch import basis_to_json
from .discord import A_SIDE, B_SIDE, OracleConfig, discord_auto, oracle_gqd
from .entanglement import classify, negativity
from .errors import (
    DimensionError,
    GqdError,
    O4Violated,
    UnknownFamily,
    ValidationError,
)
from .matcore import matrix_from_json_dict, validate_density
from .qkd import ShieldQuadruple, key_rate_lower_bound


def _float12(x) -> float:
    return float(f"{float(x):.12g}")


def _parse_params(pairs) -> dict:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValidationError(f"--param expects name=value, got {pair!r}")
        key, _, val = pair.partition("=")
        out[key.strip()] = float(val)
    return out


def _load_state(args):
    if args.family:
        built = states.build(args.family, **_parse_params(args.param))
        if isinstance(built, ShieldQuadruple):
            raise ValidationError(
                f"{args.family} is a shield family; use the keyrate subcommand"
            )
        return built
    if not args.file:
        raise ValidationError("provide --family or --file")
    if not args.dims:
        raise DimensionError("--file requires --dims d1 d2")
    with open(args.file) as fh:
        m = matrix_from_json_dict(json.load(fh))
    return validate_density(m, args.dims[0], args.dims[1])


def _load_shield(args) -> ShieldQuadruple:
    if args.family:
        built = states.build(args.family, **_parse_params(args.param))
        if not isinstance(built, ShieldQuadruple):
            raise ValidationError(f"{args.family} is not a shield family")
        return built
    if not args.files:
        raise ValidationError("provide --family or --files f0 f1 f2 f3")
    if not args.dims:
        raise DimensionError("--files requires --dims d d")
    mats = []
    for path in args.files:
        with open(path) as fh:
            mats.append(matrix_from_json_dict(json.load(fh)))
    if args.dims[0] != args.dims[1]:
        raise DimensionError("shield subsystems must have equal dimensions")
    return ShieldQuadruple.from_matrices(mats, d=args.dims[0])


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_discord(args) -> int:
    rho = _load_state(args)
    if args.engine == "oracle":
        cfg = OracleConfig(restarts=args.restarts, seed=args.seed)
        res = oracle_gqd(rho, cfg)
        _print_json({"engine": "oracle", "value": _float12(res.value),
                     "converged": res.converged})
    else:
        res = discord_auto(rho, args.variant)
        payload = res.to_json_dict()
        payload["value"] = _float12(payload["value"])
        payload["spectrum"] = [_float12(v) for v in payload["spectrum"]]
        payload["engine"] = "analytic"
        _print_json(payload)
    return 0


def cmd_negativity(args) -> int:
    rho = _load_state(args)
    rep = negativity(rho)
    payload = rep.to_json_dict()
    payload["negativity"] = _float12(payload["negativity"])
    _print_json(payload)
    return 0


def cmd_classify(args) -> int:
    rho = _load_state(args)
    _print_json({"classification": classify(rho)})
    return 0


def cmd_keyrate(args) -> int:
    shield = _load_shield(args)
    cfg = OracleConfig(restarts=args.restarts, seed=args.seed)
    report = key_rate_lower_bound(shield, discord_fn=args.engine,
                                  variant=args.variant, oracle_config=cfg)
    payload = report.to_json_dict()
    for key in ("d1_term", "d2_term", "d1_sq", "d2_sq", "kd_lower_bound"):
        payload[key] = _float12(payload[key])
    _print_json(payload)
    return 0


def _parse_grid(spec: str):
    name, _, rng = spec.partition("=")
    parts = rng.split(":")
    if len(parts) != 3:
        raise ValidationError(f"--grid expects name=start:stop:steps, got {spec!r}")
    start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1 or stop < start:
        raise ValidationError(f"bad grid {spec!r}: need steps >= 1 and stop >= start")
    values = np.linspace(start, stop, steps) if steps > 1 else np.array([start])
    return name.strip(), values


def cmd_sweep(args) -> int:
    fam = states.get_family(args.family)
    grids = [_parse_grid(g) for g in args.grid or []]
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    if not grids and fam.params:
        raise ValidationError("sweep needs at least one --grid for parametric families")
    names = [g[0] for g in grids]
    rows = []
    any_error = False
    for combo in itertools.product(*(g[1] for g in grids)) if grids else [()]:
        point = dict(zip(names, (float(v) for v in combo)))
        row = {name: _float12(v) for name, v in point.items()}
        try:
            if fam.kind == "shield":
                shield = fam.build(**point)
                rep = key_rate_lower_bound(shield, variant=args.variant)
                row.update(
                    d1_sq=_float12(rep.d1_term ** 2),
                    d2_sq=_float12(rep.d2_term ** 2),
                    kd_bound=_float12(rep.kd_lower_bound),
                    o4=rep.o4_satisfied,
                    feasibility=rep.feasibility,
                )
            else:
                rho = fam.build(**point)
                for q in quantities:
                    if q == "discord":
                        row["discord"] = _float12(discord_auto(rho, args.variant).value)
                    elif q == "negativity":
                        row["negativity"] = _float12(negativity(rho).negativity)
                    elif q == "classification":
                        row["classification"] = classify(rho)
                    elif q == "kd_bound":
                        raise ValidationError("kd_bound is only defined for shield families")
                    else:
                        raise ValidationError(f"unknown quantity {q!r}")
            row["error"] = ""
        except GqdError as exc:
            row["error"] = str(exc)
            any_error = True
        rows.append(row)

    columns = list(dict.fromkeys(key for row in rows for key in row))
    if args.format == "json":
        payload = {"family": args.family, "rows": rows}
        text = json.dumps(payload, indent=2, sort_keys=True)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        lines = []
        out = csv.writer(LineCollector(lines))
        out.writerow(columns)
        for row in rows:
            out.writerow([row.get(c, "") for c in columns])
        text = "".join(lines)
        if args.output:
            with open(args.output, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 1 if any_error else 0


class LineCollector:
    def __init__(self, store):
        self.store = store

    def write(self, line):
        self.store.append(line)


def cmd_catalog(_args) -> int:
    _print_json(states.catalog_json())
    return 0


def cmd_basis_dump(args) -> int:
    _print_json(basis_to_json(args.dim))
    return 0


def cmd_audit(args) -> int:
    from .audit import run_audit

    report = run_audit(args.dims[0], args.dims[1], samples=args.samples,
                       seed=args.seed, restarts=args.restarts)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_report(args) -> int:
    from .report import run_report

    names = [n.strip() for n in args.figures.split(",") if n.strip()] if args.figures else None
    written = run_report(args.outdir, names)
    for path in written:
        print(path)
    return 0


def _add_state_source(p, shield=False):
    p.add_argument("--family", help="catalog family name")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="family parameter, repeatable")
    if shield:
        p.add_argument("--files", nargs=4, metavar="FILE",
                       help="four shield matrix files (JSON)")
    else:
        p.add_argument("--file", help="matrix file (JSON)")
    p.add_argument("--dims", nargs=2, type=int, metavar=("D1", "D2"),
                   help="subsystem dimensions for --file input")


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("GQD_SEED", "0"))
    ap = argparse.ArgumentParser(prog="gqd",
                                 description="geometric discord, negativity, and "
                                             "key-rate bounds for bipartite states")
    ap.add_argument("--config", help="flat key=value file providing flag defaults")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discord", help="geometric discord of a state")
    _add_state_source(p)
    p.add_argument("--engine", choices=["analytic", "oracle"], default="analytic")
    p.add_argument("--variant", choices=[A_SIDE, B_SIDE], default=A_SIDE)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=default_seed)
    p.set_defaults(func=cmd_discord)

    p = sub.add_parser("negativity", help="negativity and PT spectrum")
    _add_state_source(p)
    p.set_defaults(func=cmd_negativity)

    p = sub.add_parser("classify", help="PPT/NPT classification")
    _add_state_source(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("keyrate", help="key-rate lower bound for a shield quadruple")
    _add_state_source(p, shield=True)
    p.add_argument("--engine", choices=["analytic", "oracle"], default="analytic")
    p.add_argument("--variant", choices=[A_SIDE, B_SIDE], default=A_SIDE)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=default_seed)
    p.set_defaults(func=cmd_keyrate)

    p = sub.add_parser("sweep", help="tabulate quantities over parameter grids")
    p.add_argument("--family", required=True)
    p.add_argument("--grid", action="append", metavar="NAME=START:STOP:STEPS")
    p.add_argument("--quantities", default="discord",
                   help="comma list from discord,negativity,classification,kd_bound")
    p.add_argument("--variant", choices=[A_SIDE, B_SIDE], default=A_SIDE)
    p.add_argument("--output", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--seed", type=int, default=default_seed)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="list state families as JSON")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("audit", help="analytic-vs-oracle discord audit")
    p.add_argument("--dims", nargs=2, type=int, default=[2, 2], metavar=("D1", "D2"))
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--restarts", type=int, default=12)
    p.add_argument("--output", help="write JSON report here instead of stdout")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("basis-dump", help="dump an operator basis as JSON")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_basis_dump)

    p = sub.add_parser("report", help="write figure datasets (CSV) and plots (PNG)")
    p.add_argument("--outdir", default="report_out")
    p.add_argument("--figures", help="comma list of figure names (default: all)")
    p.set_defaults(func=cmd_report)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv) -> list:
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    defaults = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, val = line.partition("=")
            defaults[key.strip().replace("-", "_")] = val.strip()
    for action_key, raw in defaults.items():
        for sp in ap._subparsers._group_actions[0].choices.values():  # noqa: SLF001
            for action in sp._actions:  # noqa: SLF001
                if action.dest == action_key and action.type is not None:
                    sp.set_defaults(**{action_key: action.type(raw)})
                elif action.dest == action_key:
                    sp.set_defaults(**{action_key: raw})
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    argv = _apply_config(ap, argv)
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UnknownFamily as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except O4Violated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, GqdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
