"""Command-line entry point: spectra, series runs, golden tables, validation."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
import tempfile
from dataclasses import asdict
from typing import Optional, Sequence

import numpy as np
import scipy

from . import __version__, models, perturb, series, tables, validate
from .errors import DeltaSpectraError, DomainError
from .models import BoxDeltaSpec, FiniteWellDeltaSpec, HydrogenDeltaSpec, OscillatorDeltaSpec, Units

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3

SPECTRUM_COLUMNS = ("ordinal", "parity", "E_exact", "E0", "E1", "E2", "E_pt", "residual", "abs_diff")


class UsageError(Exception):
    """Flag values rejected after parsing; maps to exit code 2."""


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % (v + 0.0)  # folds -0 into 0
    if v is None:
        return ""
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        v = float(v) + 0.0
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def render_csv(columns: Sequence[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def render_json(command: str, params: dict, columns: Sequence[str], rows: list[dict], units: Optional[Units]) -> str:
    doc = {
        "command": command,
        "params": {k: _json_value(v) for k, v in params.items()},
        "rows": [{c: _json_value(r.get(c)) for c in columns} for r in rows],
        "provenance": {
            "versions": {
                "delta_spectra": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "python": platform.python_version(),
            },
            "units": asdict(units) if units is not None else None,
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def write_output(text: str, path: Optional[str]) -> None:
    """Write to stdout, or atomically to ``path`` (no partial file on failure)."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".delta-spectra-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- spectrum


def _units(args) -> Units:
    return Units(args.hbar, args.mass)


def build_model(args):
    """ModelSpec from flags; raises UsageError for inconsistent combinations."""
    units = _units(args)
    lam = args.lam
    if args.model == "box-delta":
        ps = args.p or [0.5]
        if args.strength and len(args.strength) != len(ps):
            raise UsageError("--strength must be given once per --p")
        strengths = args.strength or [lam] * len(ps)
        return BoxDeltaSpec(args.L, tuple((p, s) for p, s in zip(ps, strengths)), units)
    if args.p or args.strength:
        raise UsageError("--p and --strength apply to box-delta only")
    if args.model == "well-delta":
        if args.V0 is None:
            raise UsageError("well-delta needs --V0")
        return FiniteWellDeltaSpec(args.L, args.V0, lam, units)
    if args.model == "sho-delta":
        return OscillatorDeltaSpec(args.omega, lam, units)
    return HydrogenDeltaSpec(args.a, lam, args.e2, units)


def _levels(model, count: Optional[int]):
    if isinstance(model, BoxDeltaSpec):
        return models.box_delta_full_spectrum(model, count or 3)
    if isinstance(model, FiniteWellDeltaSpec):
        levels = models.finite_well_delta_spectrum(model)
        return levels[:count] if count else levels
    if isinstance(model, OscillatorDeltaSpec):
        return models.sho_delta_spectrum(model, count or 4)
    return models.hydrogen_delta_spectrum(model, count or 3)


def _closed(model, level) -> perturb.PTCoefficients:
    if isinstance(model, BoxDeltaSpec):
        if len(model.deltas) != 1:
            raise UsageError("closed-form coefficients need a single delta")
        return perturb.box_pt_closed(level.label, model.deltas[0][0], model.L, model.units)
    if isinstance(model, OscillatorDeltaSpec):
        if level.parity == "odd":
            return perturb.sho_pt_closed(level.label // 2, model, "odd")
        n = level.label // 2
        c = perturb.sho_pt_closed(n, model)
        # first order from the eigenfunction at the origin; the printed E1 is sqrt(pi) too large
        return perturb.PTCoefficients(c.E0, perturb.sho_e1_matrix_element(n, model), c.E2, c.provenance)
    raise UsageError("closed-form coefficients exist for box-delta and sho-delta only")


def cmd_spectrum(args) -> tuple[list[str], list[dict], dict, Units]:
    model = build_model(args)
    if args.states is not None and args.states < 1:
        raise UsageError("--states must be >= 1")
    if args.coefficients == "closed" and not isinstance(model, (BoxDeltaSpec, OscillatorDeltaSpec)):
        raise UsageError("closed-form coefficients exist for box-delta and sho-delta only")
    levels = _levels(model, args.states)
    unit, lam = perturb.unit_coupling(model)
    rows = []
    for lv in levels:
        if args.coefficients == "closed":
            c = _closed(model, lv)
        elif isinstance(model, OscillatorDeltaSpec) and lv.parity == "odd":
            c = perturb.sho_pt_closed(lv.label // 2, model, "odd")
        else:
            c = perturb.numeric_pt_extract(unit, lv.label)
        E_pt = c.E0 + lam * c.E1 + lam * lam * c.E2
        rows.append({
            "ordinal": lv.label, "parity": lv.parity or "", "E_exact": lv.energy,
            "E0": c.E0, "E1": c.E1, "E2": c.E2, "E_pt": E_pt,
            "residual": lv.residual, "abs_diff": abs(lv.energy - E_pt),
        })
    params = {"model": args.model, "lambda": lam, "coefficients": args.coefficients}
    if isinstance(model, BoxDeltaSpec):
        params.update(L=model.L, p=",".join("%.17g" % x for x, _ in model.deltas),
                      strengths=",".join("%.17g" % s for _, s in model.deltas))
    elif isinstance(model, FiniteWellDeltaSpec):
        params.update(L=model.L, V0=model.V0)
    elif isinstance(model, OscillatorDeltaSpec):
        params.update(omega=model.omega)
    else:
        params.update(a=model.a, e2=model.e2)
    return list(SPECTRUM_COLUMNS), rows, params, model.units


# ---------------------------------------------------------------- series


def _checkpoints(total: int, requested: Optional[Sequence[int]]) -> list[int]:
    if requested:
        bad = [c for c in requested if not 1 <= c <= total]
        if bad:
            raise UsageError(f"checkpoints {bad} outside 1..{total}")
        return sorted(set(requested))
    pts = {1, total}
    d = 10
    while d < total:
        pts.add(d)
        d *= 10
    return sorted(pts)


def cmd_series(args) -> tuple[list[str], list[dict], dict, Optional[Units]]:
    name = args.series
    if args.terms < 1:
        raise UsageError("--terms must be >= 1")
    if name == "odd-reciprocal":
        run = series.odd_reciprocal_sum(args.n, args.terms)
    elif name == "unrestricted":
        run = series.unrestricted_sum(args.n, args.terms)
    elif name == "sum-rule":
        run = series.sum_rule_series(args.n, args.p, args.x, args.L, args.terms, parity=args.parity)
    elif name == "pi":
        run = series.pi_series(args.terms)
    else:
        run = series.sho_series(args.n, args.terms)
        rows = [{"candidate": k, "value": v, "supported": k == run.supported} for k, v in run.candidates.items()]
        rows.append({"candidate": "raw", "value": run.extra["raw"], "supported": None})
        rows.append({"candidate": "tail_corrected", "value": run.extra["corrected"], "supported": None})
        params = {"series": name, "n": args.n, "l_max": args.terms}
        return ["candidate", "value", "supported"], rows, params, None
    rows = []
    for c in _checkpoints(run.partial_sums.size, args.checkpoint):
        r = {"count": c, "partial_sum": run.at(c), "target": run.target}
        if run.partial_lo is not None:
            r["partial_sum_lo"] = float(run.partial_lo[c - 1])
        if run.averaged is not None:
            r["averaged"] = float(run.averaged[c - 2]) if c >= 2 else None
            r["pi_estimate"] = float(run.extra["pi_estimates"][c - 1])
            r["pi_averaged"] = float(run.extra["averaged_pi_estimates"][c - 2]) if c >= 2 else None
        rows.append(r)
    cols = ["count", "partial_sum", "partial_sum_lo", "target"]
    if run.averaged is not None:
        cols += ["averaged", "pi_estimate", "pi_averaged"]
    params = {"series": name, "terms": args.terms, "index_convention": run.index_convention}
    params.update({k: v for k, v in run.params.items() if k not in params})
    if run.supported is not None:
        params["supported_target"] = run.supported
    return cols, rows, params, None


# ---------------------------------------------------------------- tables, validate


def cmd_tables(args) -> tuple[list[str], list[dict], dict, None]:
    rows = [
        {"table": r.table, "key": r.key, "column": r.column, "computed": r.computed,
         "printed": r.printed, "match": r.match}
        for r in tables.table(args.id)
    ]
    return ["table", "key", "column", "computed", "printed", "match"], rows, {"id": args.id}, None


def cmd_validate(args) -> tuple[list[str], list[dict], dict, None, list[str]]:
    results = validate.run(args.only, args.inject_fault)
    rows = [{"group": r.group, "check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} [{r.group}] {r.name} ({r.seconds:.2f} s): {r.detail}", file=sys.stderr)
    failed = [r.name for r in results if not r.passed]
    params = {"only": ",".join(args.only) if args.only else "all"}
    return ["group", "check", "passed", "detail"], rows, params, None, failed


# ---------------------------------------------------------------- parser


def _positive(kind):
    def conv(text):
        v = kind(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text}")
        return v
    return conv


def _finite(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delta-spectra", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o", help="output file (default: standard output)")

    sp = sub.add_parser("spectrum", help="exact levels next to E0 + lambda E1 + lambda^2 E2")
    sp.add_argument("--model", required=True, choices=("box-delta", "well-delta", "sho-delta", "hydrogen-delta"))
    sp.add_argument("--L", type=_positive(float), default=1.0, help="box length or well half-width")
    sp.add_argument("--p", type=float, action="append", help="delta position as a fraction of L (repeatable)")
    sp.add_argument("--strength", type=_finite, action="append", help="per-delta strength, one per --p")
    sp.add_argument("--lambda", dest="lam", type=_finite, default=0.0, help="delta strength")
    sp.add_argument("--V0", type=_positive(float), help="well depth")
    sp.add_argument("--omega", type=_positive(float), default=1.0)
    sp.add_argument("--a", type=_positive(float), default=1.0, help="hydrogen delta radius")
    sp.add_argument("--e2", type=_positive(float), default=1.0, help="Coulomb strength e^2")
    sp.add_argument("--hbar", type=_positive(float), default=1.0)
    sp.add_argument("--mass", type=_positive(float), default=0.5)
    sp.add_argument("--states", type=int, help="number of levels (well: default all bound states)")
    sp.add_argument("--coefficients", choices=("extract", "closed"), default="extract")
    output_flags(sp)

    ss = sub.add_parser("series", help="partial sums of the series identities")
    ss.add_argument("--series", required=True, choices=("odd-reciprocal", "unrestricted", "sum-rule", "pi", "sho"))
    ss.add_argument("--n", type=int, default=1)
    ss.add_argument("--terms", type=int, default=100_000, help="terms (pi: j; sho: l_max)")
    ss.add_argument("--p", type=float, default=0.5)
    ss.add_argument("--x", type=float, default=0.25)
    ss.add_argument("--L", type=_positive(float), default=1.0)
    ss.add_argument("--parity", choices=("odd", "all"), default="odd")
    ss.add_argument("--checkpoint", type=int, action="append", help="report the partial sum after this many terms")
    output_flags(ss)

    st = sub.add_parser("tables", help="reproduce a golden table at its printed precision")
    st.add_argument("--id", type=int, required=True, choices=(1, 2, 3))
    output_flags(st)

    sv = sub.add_parser("validate", help="run the cross-validation suite")
    sv.add_argument("--only", action="append", choices=validate.GROUPS, help="restrict to a check group (repeatable)")
    sv.add_argument("--inject-fault", choices=validate.FAULTS, help=argparse.SUPPRESS)
    output_flags(sv)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    failed: list[str] = []
    try:
        if args.command == "spectrum":
            cols, rows, params, units = cmd_spectrum(args)
        elif args.command == "series":
            cols, rows, params, units = cmd_series(args)
        elif args.command == "tables":
            cols, rows, params, units = cmd_tables(args)
        else:
            cols, rows, params, units, failed = cmd_validate(args)
    except (UsageError, DomainError) as exc:
        print(f"delta-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DeltaSpectraError, ArithmeticError, RuntimeError) as exc:
        print(f"delta-spectra: solver failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        # parameter invariants checked by the model and series constructors
        print(f"delta-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render_json(args.command, params, cols, rows, units) if args.format == "json" else render_csv(cols, rows)
    write_output(text, args.output)
    if failed:
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
