"""Command-line front end.

Subcommands: ``optimal`` (single-point query), ``region`` and ``curves``
and ``confidence`` (CSV parameter sweeps), ``verify`` (closed forms
against the brute-force oracle), ``simulate`` (Monte Carlo).

Exit codes: 0 ok, 2 usage or domain error, 3 internal verification
failure, 4 I/O error, 5 oracle mismatch.  Numbers are serialized with 12
significant digits; CSV data carries no timestamps, only a ``#`` metadata
header with the package version and the invoking flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .errors import (
    DomainError,
    InsufficientDataError,
    PureStateError,
    TrineError,
    UndefinedError,
    VerificationError,
    ZeroPriorError,
)
from .max_confidence import (
    confidence,
    confidence_report,
    mc_confidence_closed_form,
    min_error_confidence,
)
from .min_error import (
    boundary_determinant,
    critical_delta,
    optimal_measurement,
    p_correct_three_element,
    p_correct_two_element,
)
from .oracle import brute_force_max_confidence, brute_force_min_error
from .qubit import INCONCLUSIVE
from .simulate import estimate_confidence, estimate_success
from .trine import (
    Priors,
    antitrine_measurement,
    canonicalize_priors,
    priors_from_p_delta,
    random_priors,
    trine_measurement,
    trine_projectors,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFICATION = 3
EXIT_IO = 4
EXIT_MISMATCH = 5

SWEEP_COLUMNS = [
    "p",
    "delta",
    "p0",
    "p1",
    "p2",
    "strategy",
    "p_correct",
    "determinant",
    "confidence_0",
    "confidence_1",
    "confidence_2",
    "critical_delta",
]


def sig12(x: float) -> float:
    """Round to 12 significant digits (the serialization precision)."""
    return float(f"{x:.12g}")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _json_ready(obj):
    if isinstance(obj, float):
        return sig12(obj)
    if isinstance(obj, dict):
        return {str(k): _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return sig12(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _emit_json(payload, stream):
    json.dump(_json_ready(payload), stream, indent=2)
    stream.write("\n")


def _measurement_payload(m):
    out = []
    for label, op in m.elements:
        out.append(
            {
                "label": label,
                "entries_real": [[sig12(op[i, j].real) for j in range(2)] for i in range(2)],
                "entries_imag": [[sig12(op[i, j].imag) for j in range(2)] for i in range(2)],
            }
        )
    return out


def _priors_from_args(args) -> Priors:
    triple = (args.p0, args.p1, args.p2)
    has_triple = all(v is not None for v in triple)
    has_pdelta = args.p is not None and args.delta is not None
    if has_triple == has_pdelta:
        raise DomainError("specify either --p0/--p1/--p2 or --p/--delta")
    if has_triple:
        return canonicalize_priors(*triple)
    return priors_from_p_delta(args.p, args.delta)


def _add_prior_flags(parser):
    parser.add_argument("--p0", type=float)
    parser.add_argument("--p1", type=float)
    parser.add_argument("--p2", type=float)
    parser.add_argument("--p", type=float)
    parser.add_argument("--delta", type=float)


@contextmanager
def _open_out(path):
    if path == "-" or path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _write_csv(stream, command: str, flags: str, columns, rows):
    stream.write(f"# trinedisc {__version__} {command} {flags}\n")
    writer = csv.writer(stream)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _dispatched_p_correct(priors: Priors) -> tuple[str, float]:
    det = boundary_determinant(priors)
    if det >= -1e-12 or priors.p2 <= 0.0:
        return "two_element", p_correct_two_element(priors)
    return "three_element", p_correct_three_element(priors)


def _sweep_row(priors: Priors):
    strategy, p_correct = _dispatched_p_correct(priors)
    cd = critical_delta(min(max(priors.p, 1.0 / 3.0), 0.5))
    conf = []
    for i in range(3):
        try:
            conf.append(mc_confidence_closed_form(priors, i))
        except UndefinedError:
            conf.append(None)  # pure ensemble corner (p0 = 1)
    return [
        priors.p,
        priors.delta,
        priors.p0,
        priors.p1,
        priors.p2,
        strategy,
        p_correct,
        boundary_determinant(priors),
        conf[0],
        conf[1],
        conf[2],
        cd,
    ]


def cmd_optimal(args) -> int:
    priors = _priors_from_args(args)
    result = optimal_measurement(priors)
    payload = {
        "priors": {
            "p0": priors.p0,
            "p1": priors.p1,
            "p2": priors.p2,
            "p": priors.p,
            "delta": priors.delta,
            "permutation": list(priors.permutation),
        },
        "strategy": result.strategy,
        "p_correct": result.p_correct,
        "determinant": result.boundary_determinant,
        "theta": result.theta,
        "gamma": None
        if result.gamma is None
        else {
            "a": result.gamma.a,
            "b_x": result.gamma.b_x,
            "b_y": result.gamma.b_y,
            "p_corr": result.gamma.p_corr,
        },
        "elements": _measurement_payload(result.measurement),
        "helstrom": {
            "max_offdiag_residual": result.helstrom.max_offdiag_residual,
            "min_global_eigenvalue": result.helstrom.min_global_eigenvalue,
            "passes": bool(result.helstrom.passes),
            "success_probability": result.helstrom.success_probability,
        },
    }
    if args.json:
        _emit_json(payload, sys.stdout)
    else:
        print(f"strategy: {result.strategy}")
        print(f"p_correct: {_fmt(result.p_correct)}")
        print(f"determinant: {_fmt(result.boundary_determinant)}")
        if result.theta is not None:
            print(f"theta: {_fmt(result.theta)}")
        if result.gamma is not None:
            print(
                f"gamma: a={_fmt(result.gamma.a)} "
                f"b_x={_fmt(result.gamma.b_x)} b_y={_fmt(result.gamma.b_y)}"
            )
        for item in payload["elements"]:
            print(f"element {item['label']}:")
            for r_row, i_row in zip(item["entries_real"], item["entries_imag"]):
                rendered = "  ".join(
                    f"{re:+.12g}{im:+.12g}j" for re, im in zip(r_row, i_row)
                )
                print(f"  {rendered}")
        print(
            "helstrom: offdiag="
            f"{_fmt(result.helstrom.max_offdiag_residual)} "
            f"min_eig={_fmt(result.helstrom.min_global_eigenvalue)} "
            f"passes={bool(result.helstrom.passes)}"
        )
    return EXIT_OK


def cmd_region(args) -> int:
    if args.grid < 2:
        raise DomainError(f"--grid must be at least 2, got {args.grid}")
    rows = []
    for p in np.linspace(1.0 / 3.0, 0.5, args.grid):
        dmax = min(p, 3.0 * p - 1.0)
        for delta in np.linspace(0.0, dmax, args.grid):
            rows.append(_sweep_row(priors_from_p_delta(float(p), float(delta))))
    with _open_out(args.out) as fh:
        _write_csv(fh, "region", f"--grid {args.grid}", SWEEP_COLUMNS, rows)
    return EXIT_OK


def _parse_values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise DomainError(f"invalid value list {text!r}") from exc


CURVE_COLUMNS = [
    "p",
    "delta",
    "p0",
    "p1",
    "p2",
    "p_2el",
    "p_3el",
    "p_3el_valid",
    "p_correct",
    "determinant",
    "critical_delta",
]


def _curve_row(priors: Priors):
    det = boundary_determinant(priors)
    p2el = p_correct_two_element(priors)
    try:
        p3el = p_correct_three_element(priors)
    except ZeroPriorError:
        p3el = None
    strategy, p_correct = _dispatched_p_correct(priors)
    return [
        priors.p,
        priors.delta,
        priors.p0,
        priors.p1,
        priors.p2,
        p2el,
        p3el,
        int(det < 0.0),
        p_correct,
        det,
        critical_delta(min(max(priors.p, 1.0 / 3.0), 0.5)),
    ]


def cmd_curves(args) -> int:
    if (args.p_values is None) == (args.delta_values is None):
        raise DomainError("specify exactly one of --p-values or --delta-values")
    rows = []
    if args.p_values is not None:
        for p in _parse_values(args.p_values):
            dmax = min(p, 3.0 * p - 1.0)
            for delta in np.linspace(0.0, dmax, args.steps):
                rows.append(_curve_row(priors_from_p_delta(p, float(delta))))
        flags = f"--p-values {args.p_values} --steps {args.steps}"
    else:
        for delta in _parse_values(args.delta_values):
            p_min = max(1.0 / 3.0, (1.0 + delta) / 3.0, delta)
            for p in np.linspace(p_min, 0.5, args.steps):
                rows.append(_curve_row(priors_from_p_delta(float(p), delta)))
        flags = f"--delta-values {args.delta_values} --steps {args.steps}"
    rows.sort(key=lambda r: (r[0], r[1]))
    with _open_out(args.out) as fh:
        _write_csv(fh, "curves", flags, CURVE_COLUMNS, rows)
    return EXIT_OK


CONFIDENCE_COLUMNS = [
    "p",
    "delta",
    "p0",
    "p1",
    "p2",
    "mc_confidence_0",
    "mc_confidence_1",
    "mc_confidence_2",
    "me_confidence_0",
    "me_confidence_1",
    "me_confidence_2",
    "inconclusive_probability",
]


def _confidence_row(priors: Priors):
    report = confidence_report(priors)
    me_conf = min_error_confidence(priors)
    return [
        priors.p,
        priors.delta,
        priors.p0,
        priors.p1,
        priors.p2,
        *report.per_state_confidence,
        *me_conf,
        report.inconclusive_probability,
    ]


def cmd_confidence(args) -> int:
    if args.sweep is not None:
        if args.delta is None:
            raise DomainError("--sweep needs --delta (sweeps p at fixed delta)")
        delta = args.delta
        p_min = max(1.0 / 3.0, (1.0 + delta) / 3.0, delta)
        rows = []
        for p in np.linspace(p_min, 0.5, args.sweep):
            priors = priors_from_p_delta(float(p), delta)
            if priors.p0 >= 1.0 - 1e-9:
                continue  # pure ensemble density: confidence undefined
            rows.append(_confidence_row(priors))
        with _open_out(args.out) as fh:
            _write_csv(
                fh,
                "confidence",
                f"--delta {args.delta} --sweep {args.sweep}",
                CONFIDENCE_COLUMNS,
                rows,
            )
        return EXIT_OK
    priors = _priors_from_args(args)
    report = confidence_report(priors)
    me_conf = min_error_confidence(priors)
    payload = {
        "priors": {"p0": priors.p0, "p1": priors.p1, "p2": priors.p2},
        "max_confidence": list(report.per_state_confidence),
        "min_error_confidence": [c for c in me_conf],
        "inconclusive_probability": report.inconclusive_probability,
        "inconclusive_convention": "maximal common element scale",
    }
    with _open_out(args.out) as fh:
        _emit_json(payload, fh)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise DomainError(f"--samples must be at least 1, got {args.samples}")
    rng = np.random.default_rng(args.seed)
    worst = {"kind": None, "priors": None, "difference": 0.0}
    for n in range(args.samples):
        priors = random_priors(rng)
        _, closed = _dispatched_p_correct(priors)
        result = brute_force_min_error(priors, args.resolution, args.refinements)
        diff = abs(result.best_value - closed)
        if diff > worst["difference"]:
            worst = {
                "kind": "min_error",
                "priors": list(priors.canonical),
                "difference": diff,
            }
        state = n % 3
        closed_conf = mc_confidence_closed_form(priors, state)
        conf = brute_force_max_confidence(
            priors, state, max(args.resolution, 360), args.refinements
        )
        diff = abs(conf.best_value - closed_conf)
        if diff > worst["difference"]:
            worst = {
                "kind": f"confidence_{state}",
                "priors": list(priors.canonical),
                "difference": diff,
            }
    ok = worst["difference"] <= args.tolerance
    payload = {
        "samples": args.samples,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "resolution": args.resolution,
        "refinements": args.refinements,
        "worst": worst,
        "ok": bool(ok),
    }
    _emit_json(payload, sys.stdout)
    return EXIT_OK if ok else EXIT_MISMATCH


def _strategy_measurement(args, priors: Priors):
    if args.strategy == "optimal":
        return optimal_measurement(priors).measurement
    if args.strategy == "trine":
        return trine_measurement()
    if args.strategy == "antitrine":
        return antitrine_measurement()
    if args.strategy == "maxconf":
        return confidence_report(priors).measurement
    raise DomainError(f"unknown strategy {args.strategy!r}")


def cmd_simulate(args) -> int:
    if args.shots < 1:
        raise DomainError(f"--shots must be positive, got {args.shots}")
    priors = _priors_from_args(args)
    m = _strategy_measurement(args, priors)
    if args.confidence_outcome is not None:
        result = estimate_confidence(
            priors, m, args.confidence_outcome, args.shots, args.seed, args.partitions
        )
        analytic = confidence(priors, m, args.confidence_outcome)
        quantity = "confidence"
    else:
        result = estimate_success(priors, m, args.shots, args.seed, args.partitions)
        analytic = sum(
            q * float(np.trace(rho @ op).real)
            for q, rho, op in _success_terms(priors, m)
        )
        quantity = "success_probability"
    se = result.standard_error
    payload = {
        "strategy": args.strategy,
        "quantity": quantity,
        "shots": result.shots,
        "total_shots": result.total_shots,
        "successes": result.successes,
        "estimate": result.estimate,
        "standard_error": se,
        "per_outcome_counts": {str(k): v for k, v in result.per_outcome_counts.items()},
        "seed": result.seed,
        "rng_algorithm": result.algorithm,
        "analytic": analytic,
        "se_multiple": abs(result.estimate - analytic) / se if se > 0 else 0.0,
    }
    _emit_json(payload, sys.stdout)
    return EXIT_OK


def _success_terms(priors: Priors, m):
    q = priors.original
    rhos = trine_projectors()
    for lab, op in m.elements:
        if lab != INCONCLUSIVE:
            yield q[lab], rhos[lab], op


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trinedisc",
        description="Optimal trine-state discrimination measurements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimal", help="optimal minimum-error measurement")
    _add_prior_flags(p_opt)
    p_opt.add_argument("--json", action="store_true")
    p_opt.set_defaults(func=cmd_optimal)

    p_reg = sub.add_parser("region", help="strategy-region grid (CSV)")
    p_reg.add_argument("--grid", type=int, default=100)
    p_reg.add_argument("--out", default="-")
    p_reg.set_defaults(func=cmd_region)

    p_cur = sub.add_parser("curves", help="success-probability curves (CSV)")
    p_cur.add_argument("--p-values")
    p_cur.add_argument("--delta-values")
    p_cur.add_argument("--steps", type=int, default=100)
    p_cur.add_argument("--out", default="-")
    p_cur.set_defaults(func=cmd_curves)

    p_conf = sub.add_parser("confidence", help="max-confidence report or sweep")
    _add_prior_flags(p_conf)
    p_conf.add_argument("--sweep", type=int)
    p_conf.add_argument("--out", default="-")
    p_conf.set_defaults(func=cmd_confidence)

    p_ver = sub.add_parser("verify", help="closed forms vs brute-force oracle")
    p_ver.add_argument("--samples", type=int, default=100)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tolerance", type=float, default=1e-4)
    p_ver.add_argument("--resolution", type=int, default=72)
    p_ver.add_argument("--refinements", type=int, default=24)
    p_ver.set_defaults(func=cmd_verify)

    p_sim = sub.add_parser("simulate", help="Monte Carlo estimate")
    _add_prior_flags(p_sim)
    p_sim.add_argument("--shots", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument(
        "--strategy",
        choices=("optimal", "trine", "antitrine", "maxconf"),
        default="optimal",
    )
    p_sim.add_argument("--confidence-outcome", type=int)
    p_sim.add_argument("--partitions", type=int, default=None)
    p_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "partitions", None) is None and hasattr(args, "partitions"):
        env_cap = os.environ.get("TRINE_THREADS")
        args.partitions = max(1, int(env_cap)) if env_cap else 1
    try:
        return args.func(args)
    except (DomainError, ZeroPriorError, PureStateError, InsufficientDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TrineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
