"""Self-contained JSON reports.

Every report embeds the model, theta, the verdict with its exact witness
coefficients (rational strings, lossless) and the verification booleans,
so the verdict can be re-checked offline from the report alone.  The
serialized form is canonical (sorted keys, fixed separators): identical
inputs produce byte-identical reports apart from the timing field.
"""

from __future__ import annotations

import json

from . import __version__
from .duality import Certificate, CheckResult, Feasible, Infeasible, Undecided
from .exact import QQi, format_rational, parse_rational
from .model import LieModel
from .multilinear import Current, GradedForm
from .transverse import TransverseCertificate, TransverseVerdict


class ReportError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Scalar / index atoms
# ---------------------------------------------------------------------------

def qqi_to_json(x):
    return [format_rational(x.re), format_rational(x.im)]


def qqi_from_json(val):
    if isinstance(val, str):
        return QQi(parse_rational(val))
    return QQi(parse_rational(val[0]), parse_rational(val[1]))


def _index_key(idx):
    return ",".join(str(i) for i in idx)


def _index_from_key(key):
    return tuple(int(s) for s in key.split(",")) if key else ()


# ---------------------------------------------------------------------------
# Forms, currents, certificates
# ---------------------------------------------------------------------------

def form_to_json(form):
    terms = {}
    for k in form.degrees:
        for idx, c in form.components[k].items():
            terms[_index_key(idx)] = qqi_to_json(c)
    return {"dim": form.dim, "terms": terms}


def form_from_json(data):
    terms = {
        _index_from_key(key): qqi_from_json(val)
        for key, val in data.get("terms", {}).items()
    }
    return GradedForm.from_terms(data["dim"], terms)


def current_to_json(t):
    return {
        "bidegree": list(t.bidegree),
        "coeffs": {_index_key(s): qqi_to_json(c) for s, c in t.coeffs.items()},
    }


def current_from_json(data, frame):
    coeffs = {
        _index_from_key(key): qqi_from_json(val)
        for key, val in data.get("coeffs", {}).items()
    }
    return Current(frame, tuple(data["bidegree"]), coeffs)


def certificate_to_json(cert):
    return {
        "T": current_to_json(cert.t),
        "S_21": current_to_json(cert.s_21),
        "S_12": current_to_json(cert.s_12),
    }


def certificate_from_json(data, frame):
    return Certificate(
        t=current_from_json(data["T"], frame),
        s_21=current_from_json(data["S_21"], frame),
        s_12=current_from_json(data["S_12"], frame),
    )


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------

def model_to_json(m):
    structure = [
        [i, j, k, format_rational(c)] for (i, j, k), c in sorted(m.structure.items())
    ]
    return {
        "name": m.name,
        "dim": m.dim,
        "structure": structure,
        "J": [[format_rational(x) for x in row] for row in m.j_matrix],
        "theta": [format_rational(x) for x in m.theta],
        "description": m.description,
    }


def model_from_json(data):
    try:
        name = data["name"]
        dim = int(data["dim"])
        structure = {}
        for entry in data.get("structure", []):
            if len(entry) != 4:
                raise ReportError(f"structure entry {entry!r} must be [i, j, k, value]")
            i, j, k, val = entry
            structure[(int(i), int(j), int(k))] = parse_rational(val)
        j_rows = data["J"]
        theta = data["theta"]
        description = data.get("description", "")
    except KeyError as exc:
        raise ReportError(f"model file is missing field {exc}") from exc
    return LieModel(
        name=name,
        dim=dim,
        structure=structure,
        j_matrix=j_rows,
        theta=theta,
        description=description,
    )


def load_model_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    except OSError as exc:
        raise ReportError(f"{path}: {exc}")
    try:
        return model_from_json(data)
    except (ReportError, ValueError) as exc:
        raise ReportError(f"{path}: {exc}")


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

def verdict_to_json(verdict):
    if isinstance(verdict, Feasible):
        return {
            "kind": "feasible",
            "metric": form_to_json(verdict.metric),
            "eig_margin": verdict.eig_margin,
            "exact": verdict.exact,
        }
    if isinstance(verdict, Infeasible):
        return {
            "kind": "infeasible",
            "certificate": certificate_to_json(verdict.certificate),
        }
    if isinstance(verdict, Undecided):
        return {
            "kind": "undecided",
            "best_margin": verdict.best_margin,
            "detail": verdict.detail,
        }
    raise ReportError(f"unknown verdict {verdict!r}")


def transverse_verdict_to_json(verdict):
    out = {
        "kind": verdict.kind,
        "p": verdict.p,
        "guarantee": verdict.guarantee,
        "detail": verdict.detail,
    }
    if verdict.form is not None:
        out["form"] = form_to_json(verdict.form)
    if verdict.margin is not None:
        out["margin"] = verdict.margin
    if verdict.weights is not None:
        out["weights"] = verdict.weights
    cert = verdict.certificate
    if cert is not None:
        out["certificate"] = {
            "T": current_to_json(cert.t),
            "S": {
                _index_key(bideg): current_to_json(cur)
                for bideg, cur in cert.s_parts.items()
            },
            "avatar": [[qqi_to_json(x) for x in row] for row in cert.avatar.entries]
            if cert.avatar is not None
            else None,
            "generator_pairings": cert.generator_pairings,
        }
    return out


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def build_report(command, model, theta, *, verdict=None, verification=None,
                 payload=None, timing_ms=None, cfg=None):
    report = {
        "tool": "lckcert",
        "version": __version__,
        "command": command,
        "model": model_to_json(model),
        "theta": [format_rational(x) for x in model.resolve_theta(theta)],
        "timing_ms": timing_ms,
    }
    if cfg is not None:
        report["config"] = {
            "tolerance": cfg.tolerance,
            "max_iterations": cfg.max_iterations,
            "rationalization_denominator_bound": cfg.rationalization_denominator_bound,
            "seed": cfg.seed,
        }
    if verdict is not None:
        report["verdict"] = verdict
    if verification is not None:
        report["verification"] = verification
    if payload is not None:
        report.update(payload)
    return report


def report_json(report, pretty=False):
    if pretty:
        return json.dumps(report, indent=2, sort_keys=True)
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def canonical_report_body(report):
    """Canonical bytes with the volatile timing field removed, for
    determinism comparisons."""
    trimmed = {k: v for k, v in report.items() if k != "timing_ms"}
    return json.dumps(trimmed, sort_keys=True, separators=(",", ":"))


def reverify_report(report):
    """Re-run the exact verifier on the witness embedded in a report.

    Returns (ok: CheckResult, detail: dict).  The model and theta are
    reconstructed from the report alone.
    """
    from .duality import verify_certificate, verify_metric

    model = model_from_json(report["model"])
    validation = model.validate()
    if not validation.ok:
        return CheckResult(False, "embedded_model_invalid"), {}
    theta = [parse_rational(x) for x in report["theta"]]
    verdict = report.get("verdict")
    if verdict is None:
        return CheckResult(False, "report_has_no_verdict"), {}
    kind = verdict.get("kind")
    if kind == "feasible":
        metric = form_from_json(verdict["metric"])
        result = verify_metric(model, theta, metric)
        return result, {"metric_ok": result.ok, "reason": result.reason}
    if kind == "infeasible":
        cert = certificate_from_json(verdict["certificate"], model.frame)
        result = verify_certificate(model, theta, cert)
        return result, {"certificate_ok": result.ok, "reason": result.reason}
    if kind == "undecided":
        return CheckResult(True), {"undecided": True}
    return CheckResult(False, f"unknown_verdict_kind_{kind}"), {}


def exit_code_for_verdict(kind):
    return {"feasible": 0, "infeasible": 10, "undecided": 20}[kind]
