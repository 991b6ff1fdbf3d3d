"""Command-line front end.

Subcommands: verify, sweep, sequence, minimize, probe, classify.
All outputs are JSON (plus CSV for sweep-like tables); ``--plot`` adds a
static SVG line chart per sweep.  Runs are reproducible: every report
echoes its full configuration, and randomness is controlled by ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .classify import STANDARD_FAMILY_SEED, classify_operator, standard_family
from .explorer import (
    minimize_functional,
    probe_conjecture_4_13,
    run_sequence,
    shapiro_growth,
    sweep,
)
from .families import parse_family
from .grid import GridSpec, boundary_mass, desk_grid, load_field
from .inequalities import FunctionalSpec, evaluate_spec
from .operators import FourierTransform, load_operator


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be dim,points,extent (e.g. 1,4096,20)")
    dim, points, extent = int(parts[0]), int(parts[1]), float(parts[2])
    return GridSpec(dim, extent, points)


def _parse_values(text: str):
    """lo:hi:count[:log] or a comma-separated list."""
    import numpy as np

    if ":" in text:
        parts = text.split(":")
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if len(parts) > 3 and parts[3] == "log":
            return list(np.geomspace(lo, hi, count))
        return list(np.linspace(lo, hi, count))
    return [float(v) for v in text.split(",")]


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
    return obj


def _write_json(data: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(_json_ready(data), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")


def _write_sweep_csv(result_dict: dict, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([result_dict["parameter"], "value"])
        for x, y in zip(result_dict["grid"], result_dict["values"]):
            writer.writerow([repr(x), repr(y)])
    print(f"wrote {path}")


def _maybe_plot(result_dict: dict, path: Path, title: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(result_dict["grid"], result_dict["values"], marker="o", lw=1)
    positive = all(v > 0 for v in result_dict["values"]) and all(x > 0 for x in result_dict["grid"])
    if positive:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel(result_dict["parameter"])
    ax.set_ylabel("value")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    print(f"wrote {path}")


def _load_spec(path: str) -> FunctionalSpec:
    with open(path) as fh:
        return FunctionalSpec.from_dict(json.load(fh))


def _resolve_operator(args):
    if getattr(args, "operator", None):
        return load_operator(args.operator)
    name = getattr(args, "op", None) or "fourier"
    base, _, conv = name.partition(":")
    if base == "fourier":
        return FourierTransform(conv or "two_pi")
    raise SystemExit(f"unknown operator shortcut {name!r}; pass --operator FILE")


def _resolve_field(args, grid: GridSpec):
    if getattr(args, "field", None):
        return load_field(args.field, label=Path(args.field).stem)
    if getattr(args, "family", None):
        return parse_family(args.family, grid)[1]
    raise SystemExit("need --field FILE or --family DESCRIPTOR")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="uncertkit", description=__doc__)
    parser.add_argument("--grid", type=_parse_grid, default=None, help="dim,points,extent")
    parser.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--plot", action="store_true", help="emit an SVG per sweep")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="evaluate one inequality report")
    p_verify.add_argument("--spec", required=True, help="functional spec JSON file")
    p_verify.add_argument("--field", help="field binary file")
    p_verify.add_argument("--family", help="family descriptor, e.g. gc:c=0.5")
    p_verify.add_argument("--operator", help="operator descriptor JSON file")
    p_verify.add_argument("--op", help="operator shortcut, e.g. fourier:unitary")

    p_sweep = sub.add_parser("sweep", help="evaluate a spec across a family grid")
    p_sweep.add_argument("--spec", required=True)
    p_sweep.add_argument("--family", required=True, choices=["gaussian", "gc", "falpha", "hermite"])
    p_sweep.add_argument("--values", required=True, help="lo:hi:count[:log] or list")
    p_sweep.add_argument("--operator")
    p_sweep.add_argument("--op")

    p_seq = sub.add_parser("sequence", help="vanishing-ratio sequence drivers")
    p_seq.add_argument("--prop", required=True, choices=["one", "two", "three_hermite", "three_gc"])
    p_seq.add_argument("--n", type=int, required=True)
    p_seq.add_argument("--q", type=float)
    p_seq.add_argument("--beta", type=float)
    p_seq.add_argument("--indices", help="parameter list or lo:hi:count[:log]")

    p_min = sub.add_parser("minimize", help="derivative-free functional search")
    p_min.add_argument("--spec", required=True)
    p_min.add_argument("--family", required=True, choices=["gaussian", "gc", "falpha"])
    p_min.add_argument("--budget", type=int, default=200)
    p_min.add_argument("--operator")
    p_min.add_argument("--op")

    p_probe = sub.add_parser("probe", help="image probing of the p,2 functional")
    p_probe.add_argument("--p", type=float, required=True)
    p_probe.add_argument("--kmax", type=int, default=64)
    p_probe.add_argument("--shapiro", action="store_true", help="run the growth probe instead")
    p_probe.add_argument("--q", type=float, help="growth-probe exponent in [1, 2)")

    p_cls = sub.add_parser("classify", help="operator class membership report")
    p_cls.add_argument("--operator", help="operator descriptor JSON file")
    p_cls.add_argument("--op")
    p_cls.add_argument("--testset", default="std64", choices=["std64"])
    p_cls.add_argument("--claimed-k", type=float, default=None)

    args = parser.parse_args(argv)
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)

    if args.command == "verify":
        spec = _load_spec(args.spec)
        grid = args.grid or desk_grid(spec.dim)
        field = _resolve_field(args, grid)
        operator = _resolve_operator(args)
        report = evaluate_spec(spec, field, operator)
        data = report.to_dict()
        # window-truncation diagnostic: squared-mass fraction at the rim
        data["field_boundary_mass"] = boundary_mass(field)
        _write_json(data, out / "report.json")
        return 0

    if args.command == "sweep":
        spec = _load_spec(args.spec)
        grid = args.grid or desk_grid(spec.dim)
        operator = _resolve_operator(args)
        result = sweep(spec, args.family, _parse_values(args.values), grid, operator, seed=args.seed)
        data = result.to_dict()
        _write_json(data, out / "sweep.json")
        _write_sweep_csv(data, out / "sweep.csv")
        if args.plot:
            _maybe_plot(data, out / "sweep.svg", f"{spec.variant} over {args.family}")
        return 0

    if args.command == "sequence":
        indices = _parse_values(args.indices) if args.indices else None
        result = run_sequence(args.prop, n=args.n, q=args.q, indices=indices, beta=args.beta)
        data = result.to_dict()
        _write_json(data, out / "sequence.json")
        _write_sweep_csv(data, out / "sequence.csv")
        if args.plot:
            _maybe_plot(data, out / "sequence.svg", f"sequence {args.prop}")
        return 0

    if args.command == "minimize":
        spec = _load_spec(args.spec)
        grid = args.grid or desk_grid(spec.dim)
        operator = _resolve_operator(args)
        result = minimize_functional(
            spec, args.family, grid, operator, budget=args.budget, seed=args.seed
        )
        _write_json(result.to_dict(), out / "minimize.json")
        return 0

    if args.command == "probe":
        if args.shapiro:
            if args.q is None:
                raise SystemExit("--shapiro needs --q")
            result = shapiro_growth(args.q, args.kmax)
            name = "shapiro"
        else:
            p = math.inf if args.p == float("inf") else args.p
            result = probe_conjecture_4_13(p, k_max=args.kmax)
            name = "probe"
        data = result.to_dict()
        _write_json(data, out / f"{name}.json")
        _write_sweep_csv(data, out / f"{name}.csv")
        if args.plot:
            _maybe_plot(data, out / f"{name}.svg", name)
        return 0

    if args.command == "classify":
        operator = _resolve_operator(args)
        grid = args.grid or desk_grid(1)
        fields = standard_family(grid, seed=args.seed if args.seed else STANDARD_FAMILY_SEED)
        report = classify_operator(
            operator, fields, testset_name=args.testset, k=args.claimed_k
        )
        _write_json(report.to_dict(), out / "classify.json")
        return 0

    return 1


if __name__ == "__main__":
    sys.exit(main())
