"""Command-line interface.

Commands: validate, cohomology, find-lck, verify, transverse, sweep,
catalog.  Models come from JSON files or the built-in catalog
("catalog:NAME").  Exit codes: 0 feasible/success, 10 infeasible with a
verified certificate, 20 undecided, 1 parse/validation/integrity errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .catalog import catalog_models, get_model
from .cohomology import closed_one_forms, ker_d_theta_11, morse_novikov
from .duality import SolverConfig, find_lck, verify_certificate, verify_metric
from .exact import format_rational, parse_rational, rat
from .model import ModelValidationError
from .reports import (
    ReportError,
    build_report,
    exit_code_for_verdict,
    form_to_json,
    load_model_file,
    model_to_json,
    report_json,
    reverify_report,
    transverse_verdict_to_json,
    verdict_to_json,
)
from .transverse import find_transverse, verify_transverse_form

DEFAULT_SCALES = "-2,-1,-1/2,1/2,1,2"


def _load_model(spec):
    if spec.startswith("catalog:"):
        try:
            return get_model(spec.split(":", 1)[1])
        except KeyError as exc:
            raise ReportError(str(exc.args[0]))
    return load_model_file(spec)


def _parse_theta(text, dim):
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != dim:
        raise ReportError(f"theta needs {dim} coefficients, got {len(parts)}")
    return [parse_rational(p) for p in parts]


def _solver_config(args):
    tol = args.tol
    if tol is None:
        env = os.environ.get("LCKCERT_TOL")
        tol = float(env) if env else 1e-8
    return SolverConfig(
        tolerance=tol,
        max_iterations=args.max_iter,
        rationalization_denominator_bound=args.denominator_bound,
        seed=args.seed,
    )


def _emit(report, args, stream=None):
    print(report_json(report, pretty=args.pretty), file=stream or sys.stdout)


def _add_common(parser, theta=True, solver=True):
    parser.add_argument("model", help="model file path or catalog:NAME")
    if theta:
        parser.add_argument("--theta", help="Lee form coefficients, e.g. '0,0,-1,0'")
    if solver:
        parser.add_argument("--tol", type=float, default=None,
                            help="feasibility tolerance (env LCKCERT_TOL overrides default 1e-8)")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--max-iter", type=int, default=4000)
        parser.add_argument("--denominator-bound", type=int, default=10**6)
    parser.add_argument("--pretty", action="store_true", help="indented JSON output")
    parser.add_argument("--json", action="store_true", help="compact JSON output (default)")


def cmd_validate(args):
    model = _load_model(args.model)
    report = model.validate()
    out = build_report(
        "validate",
        model,
        None,
        payload={
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks
            ],
            "ok": report.ok,
        },
    )
    _emit(out, args)
    return 0 if report.ok else 1


def cmd_cohomology(args):
    model = _load_model(args.model).require_valid()
    theta = _parse_theta(args.theta, model.dim) if args.theta else None
    t0 = time.perf_counter()
    table = morse_novikov(model, theta)
    timing = (time.perf_counter() - t0) * 1000.0
    payload = {
        "betti": list(table.betti_vector()),
        "alternating_sum": table.alternating_sum(),
        "degrees": [
            {
                "degree": d.degree,
                "space_dim": d.space_dim,
                "kernel_dim": d.kernel_dim,
                "rank": d.rank,
                "betti": d.betti,
                "representatives": [form_to_json(f) for f in d.representatives],
            }
            for d in table.degrees
        ],
    }
    out = build_report("cohomology", model, theta, payload=payload, timing_ms=timing)
    _emit(out, args)
    if args.plot:
        from .plotting import save_betti_figure

        save_betti_figure(
            list(table.betti_vector()), args.plot,
            title=f"{model.name}: twisted Betti numbers",
        )
    return 0


def _decide(model, theta, cfg):
    t0 = time.perf_counter()
    verdict = find_lck(model, theta, cfg)
    timing = (time.perf_counter() - t0) * 1000.0
    verification = {}
    if verdict.kind == "feasible":
        check = verify_metric(model, theta, verdict.metric)
        verification = {"metric_ok": check.ok, "reason": check.reason}
        if not check.ok:
            raise ReportError("tool integrity: emitted metric failed verification")
    elif verdict.kind == "infeasible":
        check = verify_certificate(model, theta, verdict.certificate)
        verification = {"certificate_ok": check.ok, "reason": check.reason}
        if not check.ok:
            raise ReportError("tool integrity: emitted certificate failed verification")
    return verdict, verification, timing


def cmd_find_lck(args):
    model = _load_model(args.model).require_valid()
    theta = _parse_theta(args.theta, model.dim) if args.theta else None
    cfg = _solver_config(args)
    verdict, verification, timing = _decide(model, theta, cfg)
    out = build_report(
        "find-lck",
        model,
        theta,
        verdict=verdict_to_json(verdict),
        verification=verification,
        timing_ms=timing,
        cfg=cfg,
    )
    _emit(out, args)
    return exit_code_for_verdict(verdict.kind)


def cmd_verify(args):
    with open(args.report) as fh:
        try:
            report = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ReportError(f"{args.report}: invalid JSON at line {exc.lineno}: {exc.msg}")
    if args.model != "-":
        model = _load_model(args.model)
        if model_to_json(model) != report.get("model"):
            raise ReportError("report was produced for a different model")
    result, detail = reverify_report(report)
    out = {
        "tool": "lckcert",
        "command": "verify",
        "report_command": report.get("command"),
        "ok": result.ok,
        "reason": result.reason,
        "detail": detail,
    }
    _emit(out, args)
    return 0 if result.ok else 1


def cmd_transverse(args):
    model = _load_model(args.model).require_valid()
    theta = _parse_theta(args.theta, model.dim) if args.theta else None
    cfg = _solver_config(args)
    t0 = time.perf_counter()
    verdict = find_transverse(model, theta, args.p, cfg)
    timing = (time.perf_counter() - t0) * 1000.0
    verification = {}
    if verdict.kind == "feasible" and verdict.guarantee == "exact":
        check = verify_transverse_form(model, theta, verdict.form, args.p)
        verification = {"form_ok": check.ok, "reason": check.reason}
        if not check.ok:
            raise ReportError("tool integrity: emitted transverse form failed verification")
    out = build_report(
        "transverse",
        model,
        theta,
        verdict=transverse_verdict_to_json(verdict),
        verification=verification,
        timing_ms=timing,
        cfg=cfg,
    )
    _emit(out, args)
    return exit_code_for_verdict(verdict.kind)


def cmd_sweep(args):
    model = _load_model(args.model).require_valid()
    cfg = _solver_config(args)
    if args.axis:
        axes = [tuple(_parse_theta(a, model.dim)) for a in args.axis]
    else:
        axes = closed_one_forms(model)
    scales = [parse_rational(s) for s in args.scales.replace(",", " ").split() if s]
    grid = []
    for ai, axis in enumerate(axes):
        for si, scale in enumerate(scales):
            theta = [scale * c for c in axis]
            grid.append((ai, si, scale, theta))

    def work(point):
        ai, si, scale, theta = point
        verdict, verification, timing = _decide(model, theta, cfg)
        return verdict, verification, timing

    workers = max(1, args.workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(work, grid))

    figure_points = []
    for index, ((ai, si, scale, theta), (verdict, verification, timing)) in enumerate(
        zip(grid, results)
    ):
        out = build_report(
            "sweep-point",
            model,
            theta,
            verdict=verdict_to_json(verdict),
            verification=verification,
            timing_ms=timing,
            cfg=cfg,
            payload={"grid": {"index": index, "axis": ai, "scale": format_rational(scale)}},
        )
        _emit(out, args)
        margin = None
        if verdict.kind == "feasible":
            margin = verdict.eig_margin
        elif verdict.kind == "undecided":
            margin = verdict.best_margin
        figure_points.append(
            {
                "index": index,
                "label": f"a{ai}*{format_rational(scale)}",
                "kind": verdict.kind,
                "margin": margin,
            }
        )
    if args.plot:
        from .plotting import save_sweep_figure

        save_sweep_figure(figure_points, args.plot, title=f"{model.name}: sweep verdicts")
    return 0


def cmd_catalog(args):
    models = catalog_models()
    if args.dump:
        model = models.get(args.dump)
        if model is None:
            raise ReportError(f"unknown catalog model '{args.dump}'")
        print(json.dumps(model_to_json(model), indent=2, sort_keys=True))
        return 0
    listing = []
    for name, model in sorted(models.items()):
        report = model.validate()
        listing.append(
            {
                "name": name,
                "dim": model.dim,
                "theta": [format_rational(x) for x in model.theta],
                "valid": report.ok,
                "description": model.description,
            }
        )
    print(json.dumps({"catalog": listing}, indent=2, sort_keys=True))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lckcert",
        description="Existence of locally conformally Kahler metrics with a "
        "prescribed Lee form on invariant models, with exactly verified "
        "witnesses and certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    _add_common(p, theta=False, solver=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="twisted cohomology table")
    _add_common(p, solver=False)
    p.add_argument("--plot", help="write a Betti-number figure to this path")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("find-lck", help="decide LCK existence for theta")
    _add_common(p)
    p.set_defaults(func=cmd_find_lck)

    p = sub.add_parser("verify", help="re-verify the witness embedded in a report")
    p.add_argument("model", help="model file, catalog:NAME, or '-' to use the embedded model")
    p.add_argument("report", help="report JSON file produced by this tool")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transverse", help="transverse (p,p)-form existence")
    _add_common(p)
    p.add_argument("--p", type=int, required=True, help="form bidegree parameter p")
    p.set_defaults(func=cmd_transverse)

    p = sub.add_parser("sweep", help="verdict sweep over a theta grid (JSON lines)")
    _add_common(p, theta=False)
    p.add_argument("--axis", action="append",
                   help="sweep direction coefficients (repeatable; default: closed 1-form basis)")
    p.add_argument("--scales", default=DEFAULT_SCALES,
                   help=f"comma-separated scales (default {DEFAULT_SCALES})")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--plot", help="write a margin figure to this path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="list built-in models")
    p.add_argument("--dump", help="print one catalog entry as a model file")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ReportError, ModelValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
