"""Transverse (p,p)-forms: d_theta-closed forms in the interior of the
strongly positive cone.

For p = 1 the strongly positive cone is the positive-definite Hermitian
cone and the question delegates verbatim to the (1,1) solver.  For
p = n-1 the cone is again linearly spectrahedral through the dual
Hermitian avatar H'(Phi), defined by wedging against the (1,1) generators:
Phi wedge (i alpha wedge conj(alpha)) = (v* H' v) vol, so the same PSD
machinery applies and verdicts are exact.  For 2 <= p <= n-2 membership in
the strongly positive cone is not spectrahedral; we solve a linear program
over a sampled set of decomposable generators and label the guarantees
one-sidedly (inner for feasibility inside the sampled cone, outer for
certificates checked against the sampled generators only).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .duality import (
    Certificate,
    CheckResult,
    SolverConfig,
    _dual_subspace_basis,
    _exact_dual_from_float,
    _face_certificate,
    _primal_candidate,
    currents_from_functional,
    current_d_theta,
    find_lck,
    sdp_feasibility,
    solve_boundary_preimage,
)
from .exact import (
    I,
    ONE,
    QQi,
    ZERO,
    kernel_basis,
    mat_inverse,
    mat_vec,
    project_onto_span,
    rat,
    solve_consistent,
)
from .multilinear import (
    Current,
    GradedForm,
    HermitianMatrix,
    _wedge_sparse,
    current_params_of_avatar,
    degree_basis,
    hermitian_param_dim,
    hermitian_to_params,
    pair,
    params_to_hermitian,
)


@dataclass
class PositiveConeModel:
    """How positivity of (p,p)-forms is represented for the solver."""

    p: int
    mode: str  # "exact_psd" | "exact_dual_psd" | "sampled"
    generators: list | None = None
    seed: int = 0


@dataclass
class TransverseCertificate:
    """Positive (p,p)-current that is a d_theta-boundary component."""

    t: Current
    s_parts: dict
    avatar: HermitianMatrix | None = None
    generator_pairings: list | None = None


@dataclass
class TransverseVerdict:
    kind: str  # "feasible" | "infeasible" | "undecided"
    p: int
    guarantee: str | None = None  # "exact" | "inner" | "outer"
    form: GradedForm | None = None
    margin: float | None = None
    certificate: object | None = None
    weights: list | None = None  # conic weights, sampled mode
    detail: str = ""


def positive_cone_model(n, p, count=None, seed=0):
    if p == 1:
        return PositiveConeModel(p=p, mode="exact_psd")
    if p == n - 1:
        return PositiveConeModel(p=p, mode="exact_dual_psd")
    if count is None:
        count = dim_real_pp(n, p) + 16
    return PositiveConeModel(
        p=p,
        mode="sampled",
        generators=strongly_positive_sample(n, p, count, seed),
        seed=seed,
    )


def dim_real_pp(n, p):
    from math import comb

    return comb(n, p) ** 2


# ---------------------------------------------------------------------------
# Strongly positive generators (frame-coordinate data, frame agnostic)
# ---------------------------------------------------------------------------

def _generator_raw(vectors, n):
    """Frame coordinates of prod_j (i alpha_j wedge conj(alpha_j))."""
    acc = {(): ONE}
    for alpha in vectors:
        one = {}
        for a in range(n):
            if alpha[a].is_zero():
                continue
            for b in range(n):
                if alpha[b].is_zero():
                    continue
                one[(a + 1, b + 1 + n)] = I * alpha[a] * alpha[b].conjugate()
        acc = _wedge_sparse(acc, one)
        if not acc:
            return {}
    return acc


def _random_exact_vector(rng, n):
    while True:
        v = [
            QQi(rat(rng.randint(-3, 3), rng.randint(1, 2)), rat(rng.randint(-3, 3), rng.randint(1, 2)))
            for _ in range(n)
        ]
        if any(not x.is_zero() for x in v):
            return v


def strongly_positive_sample(n, p, count, seed):
    """Deterministic list of exact decomposable strongly positive
    generators, in frame coordinates.  The axis-aligned products over the
    frame come first, then seeded random decomposables."""
    if not 1 <= p <= n:
        raise ValueError("p out of range")
    rng = random.Random(seed)
    gens = []
    from itertools import combinations

    for subset in combinations(range(n), p):
        vectors = []
        for a in subset:
            v = [ZERO] * n
            v[a] = ONE
            vectors.append(v)
        gens.append(_generator_raw(vectors, n))
    while len(gens) < count:
        vectors = [_random_exact_vector(rng, n) for _ in range(p)]
        raw = _generator_raw(vectors, n)
        if raw:
            gens.append(raw)
    return gens


def generator_form(frame, raw):
    """Materialize generator frame coordinates as a form."""
    degree = len(next(iter(raw))) if raw else 0
    return frame.from_frame_coords(raw, degree)


# ---------------------------------------------------------------------------
# Dual Hermitian avatar of (n-1, n-1)-forms
# ---------------------------------------------------------------------------

def dual_hermitian(frame, phi):
    """H' with Phi wedge zeta_{a,b} = H'_{ba} vol; PD iff Phi transverse."""
    n = frame.n
    entries = [[ZERO] * n for _ in range(n)]
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            zeta = frame.zeta_form((a, b + n))
            w = frame.top_coefficient(phi.wedge(zeta))
            entries[b - 1][a - 1] = w
    return HermitianMatrix(entries)


def _real_pp_param_forms(frame, p):
    """Real basis of [Lambda^{p,p}]_R built from the zeta basis."""
    n = frame.n
    indices = frame.bidegree_indices(p, p)
    pos = {s: i for i, s in enumerate(indices)}

    def swap(s):
        holo = sorted(x + n for x in s if x <= n)
        anti = sorted(x - n for x in s if x > n)
        return tuple(anti + holo)

    forms = []
    seen = set()
    for s in indices:
        sw = swap(s)
        if s == sw:
            forms.append(frame.zeta_form(s))
        elif s not in seen:
            seen.add(sw)
            zs, zw = frame.zeta_form(s), frame.zeta_form(sw)
            forms.append(zs + zw)
            forms.append((zs - zw).scale(I))
    return forms


def _dual_param_system(m, theta, cache={}):
    """Forms realizing the H'-parameter directions, plus the closedness
    constraint matrix in those parameters."""
    key = (id(m), m.resolve_theta(theta))
    hit = cache.get(key)
    if hit is not None:
        return hit
    frame = m.frame
    n = frame.n
    p = n - 1
    base = _real_pp_param_forms(frame, p)
    columns = [hermitian_to_params(dual_hermitian(frame, f)) for f in base]
    matrix = [[columns[j][i] for j in range(len(columns))] for i in range(len(columns[0]))]
    inverse = mat_inverse(matrix)

    def from_dual_params(vec):
        weights = mat_vec(inverse, list(vec))
        out = GradedForm.zero(m.dim)
        for w, f in zip(weights, base):
            if not w.is_zero():
                out = out + f.scale(w)
        return out

    param_forms = []
    for j in range(hermitian_param_dim(n)):
        unit = [ZERO] * hermitian_param_dim(n)
        unit[j] = ONE
        param_forms.append(from_dual_params(unit))

    ops = m.operators(theta)
    degree = 2 * p + 1
    nrows = len(degree_basis(m.dim, degree))
    cols = [ops.d_theta(f).coeff_vector(degree) for f in param_forms]
    constraint = [[col[r] for col in cols] for r in range(nrows)]
    kern = kernel_basis(constraint, cols=len(param_forms))
    result = (param_forms, constraint, kern, from_dual_params)
    cache[key] = result
    return result


def current_from_dual_avatar(frame, g):
    """(n-1,n-1)-current pairing Phi to tr(G' H'(Phi))."""
    n = frame.n
    p = n - 1
    coeffs = {}
    for s in frame.bidegree_indices(p, p):
        h = dual_hermitian(frame, frame.zeta_form(s))
        acc = ZERO
        for a in range(n):
            for b in range(n):
                x, y = g.entries[b][a], h.entries[a][b]
                if not (x.is_zero() or y.is_zero()):
                    acc = acc + x * y
        if not acc.is_zero():
            coeffs[s] = acc
    return Current(frame, (p, p), coeffs)


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def verify_transverse_form(m, theta, phi, p):
    """Exact verifier for p in {1, n-1}: closed and strictly inside the
    strongly positive cone through the (dual) Hermitian avatar."""
    m.require_valid()
    n = m.frame.n
    if p == 1:
        from .duality import verify_metric

        return verify_metric(m, theta, phi)
    if p != n - 1:
        raise ValueError("exact transverse verification only at p = 1 or n-1")
    if not isinstance(phi, GradedForm) or phi.dim != m.dim:
        return CheckResult(False, "wrong_dimension")
    if phi.is_zero() or not phi.is_real():
        return CheckResult(False, "not_real_nonzero")
    split = m.frame.bidegree_split(phi)
    if set(split) != {(p, p)}:
        return CheckResult(False, "not_bidegree_pp")
    if not m.operators(theta).d_theta(phi).is_zero():
        return CheckResult(False, "not_closed")
    if not dual_hermitian(m.frame, phi).is_pd():
        return CheckResult(False, "not_transverse")
    return CheckResult(True)


def verify_transverse_certificate(m, theta, cert, p, generators=None):
    """Exact membership and positivity checks for a (p,p) certificate.

    Positivity is exact through the avatar at p = n-1; in sampled mode it
    is the outer check against the provided generators.
    """
    m.require_valid()
    t = cert.t
    if t.bidegree != (p, p):
        return CheckResult(False, "wrong_bidegree")
    if t.is_zero():
        return CheckResult(False, "trivial_current")
    boundary = Current.zero(m.frame, (p, p))
    for part in cert.s_parts.values():
        comp = current_d_theta(m, part, theta).get((p, p))
        if comp is not None:
            boundary = boundary + comp
    if boundary != t:
        return CheckResult(False, "not_boundary_component")
    if cert.avatar is not None:
        if not cert.avatar.is_psd():
            return CheckResult(False, "not_positive")
        if current_from_dual_avatar(m.frame, cert.avatar) != t:
            return CheckResult(False, "avatar_mismatch")
    elif generators is not None:
        total = ZERO
        for raw in generators:
            value = pair(t, generator_form(m.frame, raw))
            if not value.is_real() or value.re < 0:
                return CheckResult(False, "negative_on_sampled_generator")
            total = total + value
        if total.re <= 0:
            return CheckResult(False, "zero_on_sampled_cone")
    else:
        return CheckResult(False, "no_positivity_data")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

def find_transverse(m, theta=None, p=1, cfg=None, mode=None):
    """Transverse d_theta-closed (p,p)-form, or a positive (p,p) boundary
    current; guarantees labeled per cone representation."""
    cfg = cfg or SolverConfig()
    m.require_valid()
    n = m.frame.n
    if not 1 <= p <= n - 1:
        raise ValueError(f"p must lie in 1..{n - 1}")
    if mode is None:
        mode = positive_cone_model(n, p, seed=cfg.seed).mode

    if mode == "exact_psd":
        verdict = find_lck(m, theta, cfg)
        if verdict.kind == "feasible":
            return TransverseVerdict(
                kind="feasible",
                p=p,
                guarantee="exact",
                form=verdict.metric,
                margin=verdict.eig_margin,
            )
        if verdict.kind == "infeasible":
            cert = verdict.certificate
            wrapped = TransverseCertificate(
                t=cert.t,
                s_parts={(2, 1): cert.s_21, (1, 2): cert.s_12},
                avatar=cert.t.hermitian_avatar(),
            )
            return TransverseVerdict(
                kind="infeasible", p=p, guarantee="exact", certificate=wrapped
            )
        return TransverseVerdict(
            kind="undecided", p=p, margin=verdict.best_margin, detail=verdict.detail
        )

    if mode == "exact_dual_psd":
        return _find_transverse_dual_psd(m, theta, p, cfg)
    if mode == "sampled":
        cone = positive_cone_model(n, p, seed=cfg.seed)
        return _find_transverse_sampled(m, theta, p, cfg, cone.generators)
    raise ValueError(f"unknown cone mode {mode!r}")


def _find_transverse_dual_psd(m, theta, p, cfg):
    key = m.resolve_theta(theta)
    frame = m.frame
    n = frame.n
    param_forms, constraint, kern, from_dual_params = _dual_param_system(m, key)
    sdp = sdp_feasibility(constraint, cfg, n=n)

    if sdp.t_star > cfg.tolerance and sdp.h is not None and kern:
        h = _primal_candidate(sdp.h, kern, n, cfg)
        if h is not None:
            phi = from_dual_params(hermitian_to_params(h))
            if verify_transverse_form(m, key, phi, p):
                return TransverseVerdict(
                    kind="feasible",
                    p=p,
                    guarantee="exact",
                    form=phi,
                    margin=h.min_eigenvalue(),
                )

    cert = _dual_psd_certificate(m, key, p, cfg, constraint, kern, n, sdp)
    if cert is not None:
        return TransverseVerdict(
            kind="infeasible", p=p, guarantee="exact", certificate=cert
        )
    return TransverseVerdict(
        kind="undecided",
        p=p,
        margin=float(sdp.t_star),
        detail="no candidate survived exact re-verification",
    )


def _dual_psd_certificate(m, theta, p, cfg, constraint, kern, n, sdp):
    dual_basis = _dual_subspace_basis(kern, n)
    candidates = []
    g_interior = sdp.dual_data.get("g")
    if g_interior is not None and sdp.dual_data.get("t_dual", -1e9) > cfg.tolerance:
        g = _exact_dual_from_float(g_interior, dual_basis, n, cfg)
        if g is not None:
            candidates.append(g)
    if not candidates:
        for key in ("g_face", "g"):
            g = _face_certificate(sdp.dual_data.get(key), kern, n, cfg)
            if g is not None:
                candidates.append(g)
                break
    frame = m.frame
    for g in candidates:
        t_current = current_from_dual_avatar(frame, g)
        if t_current.is_zero():
            continue
        s_vec = solve_boundary_preimage(constraint, current_params_of_avatar(g))
        if s_vec is None:
            continue
        parts = currents_from_functional(
            frame, s_vec, 2 * p + 1, ((p + 1, p), (p, p + 1))
        )
        cert = TransverseCertificate(t=t_current, s_parts=parts, avatar=g)
        if verify_transverse_certificate(m, theta, cert, p):
            return cert
    return None


def _find_transverse_sampled(m, theta, p, cfg, generators):
    from scipy.optimize import linprog

    key = m.resolve_theta(theta)
    frame = m.frame
    ops = m.operators(key)
    degree = 2 * p + 1
    nrows = len(degree_basis(m.dim, degree))
    forms = [generator_form(frame, raw) for raw in generators]
    cols = [ops.d_theta(f).coeff_vector(degree) for f in forms]
    constraint = [[col[r] for col in cols] for r in range(nrows)]
    count = len(forms)

    a_eq, b_eq = [], []
    for row in constraint:
        fr = [float(x.re) for x in row]
        if any(abs(v) > 0 for v in fr):
            a_eq.append(fr + [0.0])
            b_eq.append(0.0)
    a_eq.append([1.0] * count + [0.0])
    b_eq.append(1.0)
    a_ub = []
    for i in range(count):
        row = [0.0] * (count + 1)
        row[i] = -1.0
        row[count] = 1.0
        a_ub.append(row)
    c = [0.0] * count + [-1.0]
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=[0.0] * count,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(None, None)] * (count + 1),
        method="highs",
    )

    if res.status == 0 and res.x is not None and res.x[count] > cfg.tolerance:
        verdict = _rationalize_sampled_primal(
            m, key, p, cfg, constraint, forms, res.x[:count]
        )
        if verdict is not None:
            return verdict

    cert = _sampled_farkas_certificate(m, key, p, cfg, constraint, forms, generators)
    if cert is not None:
        return TransverseVerdict(
            kind="infeasible", p=p, guarantee="outer", certificate=cert
        )
    return TransverseVerdict(
        kind="undecided",
        p=p,
        margin=float(res.x[count]) if res.status == 0 and res.x is not None else None,
        detail="sampling exhausted without a verifiable candidate",
    )


def _rationalize_sampled_primal(m, theta, p, cfg, constraint, forms, lam_float):
    from .duality import _denominators
    from .exact import rationalize_float

    count = len(forms)
    rows = [row for row in constraint if any(not x.is_zero() for x in row)]
    rows.append([ONE] * count)
    rhs = [ZERO] * (len(rows) - 1) + [ONE]
    particular = solve_consistent(rows, rhs)
    if particular is None:
        return None
    homogeneous = kernel_basis(rows, cols=count)
    for bound in _denominators(cfg):
        approx = [QQi(rationalize_float(float(x), bound)) for x in lam_float]
        if all(
            sum((r * a for r, a in zip(row, approx)), ZERO) == b
            for row, b in zip(rows, rhs)
        ):
            lam = approx  # already exactly on the affine slice
        else:
            shifted = [a - b for a, b in zip(approx, particular)]
            corrected = project_onto_span(homogeneous, shifted)
            lam = [x + y for x, y in zip(particular, corrected)]
        if any(not x.is_real() for x in lam):
            continue
        margin = min(x.re for x in lam)
        if margin <= 0:
            continue
        phi = GradedForm.zero(m.dim)
        for w, f in zip(lam, forms):
            if not w.is_zero():
                phi = phi + f.scale(w)
        if not m.operators(theta).d_theta(phi).is_zero():
            continue
        return TransverseVerdict(
            kind="feasible",
            p=p,
            guarantee="inner",
            form=phi,
            margin=float(margin),
            weights=[str(x.re) for x in lam],
        )
    return None


def _sampled_farkas_certificate(m, theta, p, cfg, constraint, forms, generators):
    """Outer certificate: a boundary current pairing every sampled
    generator nonnegatively, with total pairing 1 (hence nonzero).

    Boundary currents annihilate every closed form; closed sampled
    generators therefore pair to zero exactly, so nonnegativity (not
    strictness) is the right sampled-cone condition.  The search runs as
    an exact rational linear program over the achievable pairing vectors.
    """
    from .exact import lp_feasible_point, rat, rref

    count = len(forms)
    nrows = len(constraint)
    if nrows == 0:
        return None
    # achievable pairing vectors {(<T(y), g_j>)_j : y} = row space of the
    # transposed pairing matrix
    bt_rows = [[constraint[r][j] for j in range(count)] for r in range(nrows)]
    red, pivots = rref(bt_rows)
    vb = [red[i] for i in range(len(pivots))]
    dim = len(vb)
    if dim == 0:
        return None
    zero = rat(0)
    vbr = [[x.re for x in row] for row in vb]
    # variables (u, w, s) >= 0 with v = sum (u_k - w_k) vb_k = s, total(v) = 1
    lp_rows = []
    lp_rhs = []
    for j in range(count):
        row = [vbr[k][j] for k in range(dim)]
        row += [-vbr[k][j] for k in range(dim)]
        slack = [zero] * count
        slack[j] = rat(-1)
        lp_rows.append(row + slack)
        lp_rhs.append(zero)
    totals = [sum(vbr[k][j] for j in range(count)) for k in range(dim)]
    lp_rows.append(totals + [-t for t in totals] + [zero] * count)
    lp_rhs.append(rat(1))
    x = lp_feasible_point(lp_rows, lp_rhs)
    if x is None:
        return None
    xi = [x[k] - x[dim + k] for k in range(dim)]
    pairing_vec = [
        sum((xi[k] * vbr[k][j] for k in range(dim)), zero) for j in range(count)
    ]
    if any(v < 0 for v in pairing_vec) or sum(pairing_vec, zero) <= 0:
        return None
    # recover the degree-(2p+1) functional: B y = v
    b_rows = [[constraint[r][j] for r in range(nrows)] for j in range(count)]
    y = solve_consistent(b_rows, [QQi(v) for v in pairing_vec])
    if y is None:
        return None
    frame = m.frame
    parts = currents_from_functional(frame, y, 2 * p + 1, ((p + 1, p), (p, p + 1)))
    t_current = Current.zero(frame, (p, p))
    for part in parts.values():
        comp = current_d_theta(m, part, theta).get((p, p))
        if comp is not None:
            t_current = t_current + comp
    cert = TransverseCertificate(
        t=t_current,
        s_parts=parts,
        generator_pairings=[str(v) for v in pairing_vec],
    )
    if verify_transverse_certificate(m, theta, cert, p, generators=generators):
        return cert
    return None
