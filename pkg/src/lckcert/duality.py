"""Existence of a positive d_theta-closed real (1,1)-form, decided with
exactly verified output.

Either a positive definite d_theta-closed (1,1)-form exists (the metric of
an invariant LCK structure), or the orthogonal complement of the closed
subspace meets the positive-semidefinite currents nontrivially, yielding a
nonzero positive (1,1)-current that is the (1,1)-component of a twisted
boundary.  The two outcomes exclude each other: a PD form pairs strictly
positively with every nonzero PSD current, while boundary currents pair
every closed form to zero.

The numeric inner loop is a bounded alternating-projection scheme between
an affine slice and the shifted PSD cone, with bisection on the shift.
Floats live in isometric coordinates (off-diagonal parts scaled by sqrt 2,
so the Euclidean parameter norm is the Frobenius norm and eigenvalue
clipping is a true projection).  Every candidate that survives the loop is
rationalized by continued fractions under a denominator bound, projected
exactly back onto its subspace and re-verified exactly; no float reaches
the output.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .cohomology import annihilator_check, ker_d_theta_11, one_one_system
from .exact import (
    ONE,
    QQi,
    ZERO,
    kernel_basis,
    mat_mul,
    project_onto_span,
    rat,
    rationalize_float,
    solve_consistent,
)
from .multilinear import (
    Current,
    GradedForm,
    HermitianMatrix,
    avatar_of_current_params,
    current_params_of_avatar,
    degree_basis,
    from_hermitian,
    hermitian_param_dim,
    hermitian_to_params,
    pair,
    params_to_hermitian,
    positive_generator,
    to_hermitian,
)

_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Output contracts
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    """Nonzero positive (1,1)-current T = Pi_{1,1}(d_theta S), normalized
    against the reference Hermitian form by pair(T, psi) = 1."""

    t: Current
    s_21: Current
    s_12: Current

    def scaled(self, c):
        return Certificate(self.t.scale(c), self.s_21.scale(c), self.s_12.scale(c))


@dataclass
class Feasible:
    metric: GradedForm
    eig_margin: float
    exact: bool = True

    kind = "feasible"


@dataclass
class Infeasible:
    certificate: Certificate

    kind = "infeasible"


@dataclass
class Undecided:
    best_margin: float
    detail: str = ""

    kind = "undecided"


@dataclass
class SolverConfig:
    tolerance: float = 1e-8
    max_iterations: int = 4000
    rationalization_denominator_bound: int = 10**6
    seed: int = 0
    psi: GradedForm | None = None

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# Twisted differential on currents (exact adjoint of the form-side operator)
# ---------------------------------------------------------------------------

def current_d_theta(m, t, theta=None):
    """Components of d_theta T, as a {bidegree: Current} map.

    Defined by <d_theta T, eta> = <T, d_theta eta>; only the bidegrees
    (p-1, q) and (p, q-1) survive.
    """
    m.require_valid()
    ops = m.operators(theta)
    frame = m.frame
    p, q = t.bidegree
    out = {}
    for kind, (rp, rq) in (("partial", (p - 1, q)), ("partialbar", (p, q - 1))):
        if rp < 0 or rq < 0:
            continue
        matrix = ops.bidegree_matrix(kind, rp, rq)
        rows_idx = frame.bidegree_indices(p, q)
        cols_idx = frame.bidegree_indices(rp, rq)
        coeffs = {}
        for j, s in enumerate(cols_idx):
            acc = ZERO
            for i, r in enumerate(rows_idx):
                c = t.coeffs.get(r)
                if c is not None and not matrix[i][j].is_zero():
                    acc = acc + c * matrix[i][j]
            if not acc.is_zero():
                coeffs[s] = acc
        out[(rp, rq)] = Current(frame, (rp, rq), coeffs)
    return out


def d_theta_pq(m, t, bidegree, theta=None):
    """Pi_{p,q} of d_theta T; the zero current off the two allowed shifts."""
    comps = current_d_theta(m, t, theta)
    target = tuple(bidegree)
    if target in comps:
        return comps[target]
    return Current.zero(m.frame, target)


def boundary_component_11(m, s_21, s_12, theta=None):
    """Pi_{1,1}(d_theta S) for a 3-current with (2,1) and (1,2) parts."""
    out = Current.zero(m.frame, (1, 1))
    for part in (s_21, s_12):
        comps = current_d_theta(m, part, theta)
        piece = comps.get((1, 1))
        if piece is not None:
            out = out + piece
    return out


# ---------------------------------------------------------------------------
# Verifiers (exact; these are the contracts reports are checked against)
# ---------------------------------------------------------------------------

def verify_metric(m, theta, w):
    """Exact check: real, pure (1,1), d_theta-closed, positive definite."""
    m.require_valid()
    if not isinstance(w, GradedForm) or w.dim != m.dim:
        return CheckResult(False, "wrong_dimension")
    if w.is_zero():
        return CheckResult(False, "not_positive_definite")
    if not w.is_real():
        return CheckResult(False, "not_real")
    split = m.frame.bidegree_split(w)
    if set(split) != {(1, 1)}:
        return CheckResult(False, "not_bidegree_11")
    ops = m.operators(theta)
    if not ops.d_theta(w).is_zero():
        return CheckResult(False, "not_closed")
    h = to_hermitian(w, m.frame)
    if not h.is_pd():
        return CheckResult(False, "not_positive_definite")
    return CheckResult(True)


def verify_certificate(m, theta, cert, basis=None):
    """Exact check: T nonzero, PSD, equal to Pi_{1,1}(d_theta S); also
    cross-checks that T annihilates the closed (1,1) kernel."""
    m.require_valid()
    t = cert.t
    if t.bidegree != (1, 1):
        return CheckResult(False, "wrong_bidegree")
    if t.is_zero():
        return CheckResult(False, "trivial_current")
    if not t.is_real():
        return CheckResult(False, "not_real")
    if not t.hermitian_avatar().is_psd():
        return CheckResult(False, "not_positive")
    boundary = boundary_component_11(m, cert.s_21, cert.s_12, theta)
    if boundary != t:
        return CheckResult(False, "not_boundary_component")
    if basis is None:
        basis = ker_d_theta_11(m, theta)
    if not annihilator_check(basis, t):
        return CheckResult(False, "annihilator_check_failed")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# Float side.  Isometric parameter coordinates for n x n Hermitian
# matrices: (diag entries, sqrt2*Re H_ab, sqrt2*Im H_ab for a < b).
# ---------------------------------------------------------------------------

def _iso_params(h):
    n = h.shape[0]
    out = []
    for a in range(n):
        out.append(h[a, a].real)
    for a in range(n):
        for b in range(a + 1, n):
            out.append(_SQRT2 * h[a, b].real)
            out.append(_SQRT2 * h[a, b].imag)
    return np.array(out)


def _iso_matrix(x, n):
    h = np.zeros((n, n), dtype=complex)
    pos = 0
    for a in range(n):
        h[a, a] = x[pos]
        pos += 1
    for a in range(n):
        for b in range(a + 1, n):
            h[a, b] = (x[pos] + 1j * x[pos + 1]) / _SQRT2
            h[b, a] = (x[pos] - 1j * x[pos + 1]) / _SQRT2
            pos += 2
    return h


def _iso_equation(row, n):
    """Translate a linear functional on plain Hermitian parameters into
    the isometric coordinates (off-diagonal entries divide by sqrt 2)."""
    out = [float(v) for v in row]
    for pos in range(n, len(out)):
        out[pos] /= _SQRT2
    return out


def _exact_row_floats(row):
    return [float(x.re) if isinstance(x, QQi) else float(x) for x in row]


def _trace_row_iso(n):
    row = [0.0] * hermitian_param_dim(n)
    for a in range(n):
        row[a] = 1.0
    return row


class _AffinePsdProblem:
    """Feasibility of {E x = rhs} cap {H(x) >= t I} in isometric coords."""

    def __init__(self, equations, rhs, n):
        self.n = n
        self.e = np.array(equations, dtype=float)
        self.rhs = np.array(rhs, dtype=float)
        self.pinv = np.linalg.pinv(self.e)
        x0 = self.pinv @ self.rhs
        self.affine_feasible = bool(np.allclose(self.e @ x0, self.rhs, atol=1e-9))

    def project_affine(self, x):
        return x - self.pinv @ (self.e @ x - self.rhs)

    def project_psd(self, x, t):
        h = _iso_matrix(x, self.n)
        w, v = np.linalg.eigh(h)
        w = np.maximum(w, t)
        return _iso_params((v * w) @ v.conj().T)

    def run(self, t, max_iter, conv_eps=1e-10):
        """Alternating projections; (converged, affine-side point, gap).

        The gap between the two sets is non-increasing; a plateau at a
        positive value certifies (numerically) that they do not meet.
        """
        x = _iso_params(np.eye(self.n, dtype=complex))
        a = x
        gap = np.inf
        prev = np.inf
        stall = 0
        for _ in range(max_iter):
            a = self.project_affine(x)
            p = self.project_psd(a, t)
            gap = float(np.linalg.norm(a - p))
            if gap < conv_eps:
                return True, a, gap
            if prev - gap < 1e-13 + 1e-7 * gap:
                stall += 1
                if stall >= 12:
                    return False, a, gap
            else:
                stall = 0
            prev = gap
            x = p
        return False, a, gap

    def max_min_eigenvalue(self, cfg, hi=1.0 + 1e-9):
        """Bisect for t_star = max { t : t-shifted cone meets the slice }."""
        lo = -float(self.n + 2)
        if not self.affine_feasible:
            return lo, None
        ok, point, _ = self.run(lo, cfg.max_iterations)
        if not ok:
            return lo, None
        best = point
        bis_tol = max(cfg.tolerance / 8.0, 1e-12)
        for _ in range(80):
            if hi - lo <= bis_tol:
                break
            mid = 0.5 * (lo + hi)
            ok, point, _ = self.run(mid, cfg.max_iterations)
            if ok:
                lo, best = mid, point
            else:
                hi = mid
        return lo, best


@dataclass
class SdpOutcome:
    t_star: float
    h: np.ndarray | None
    dual_data: dict = field(default_factory=dict)


def _dual_equation_rows(kernel, n):
    """Float rows expressing tr(K G) = 0 for each closed direction K, in
    isometric coordinates (a factor 2 from the Frobenius pairing and a
    factor 1/sqrt2 from the coordinates combine to sqrt 2)."""
    rows = []
    for vec in kernel:
        row = _exact_row_floats(vec)
        for pos in range(n, len(row)):
            row[pos] *= _SQRT2
        rows.append(row)
    return rows


def sdp_feasibility(constraint_matrix, cfg, n=None):
    """max t s.t. H >= t I, trace H = n, constraint_matrix . params(H) = 0.

    t_star above tolerance comes with a float primal candidate; otherwise
    float dual data is attached: the analogous maximizer over the
    orthogonal-complement subspace, plus a boundary point of that subspace
    when its interior is empty.  Deterministic given the config.
    """
    rows = [list(r) for r in constraint_matrix]
    n_sq = len(rows[0]) if rows else None
    if n is None:
        if n_sq is None:
            raise ValueError("cannot infer matrix size from an empty constraint")
        n = int(round(n_sq**0.5))
    n_sq = hermitian_param_dim(n)

    exact_rows = [
        [x if isinstance(x, QQi) else QQi(rat(x)) for x in row] for row in rows
    ]
    float_rows = [
        _iso_equation(_exact_row_floats(row), n)
        for row in exact_rows
        if any(not x.is_zero() for x in row)
    ]
    primal_eqs = float_rows + [_trace_row_iso(n)]
    primal_rhs = [0.0] * len(float_rows) + [float(n)]
    primal = _AffinePsdProblem(primal_eqs, primal_rhs, n)
    t_star, point = primal.max_min_eigenvalue(cfg)
    h = _iso_matrix(point, n) if point is not None else None

    dual_data = {"affine_feasible": primal.affine_feasible}
    if not (t_star > cfg.tolerance):
        kern = kernel_basis(exact_rows, cols=n_sq)
        dual_eqs = _dual_equation_rows(kern, n) + [_trace_row_iso(n)]
        dual_rhs = [0.0] * len(kern) + [float(n)]
        dual = _AffinePsdProblem(dual_eqs, dual_rhs, n)
        t_dual, g_point = dual.max_min_eigenvalue(cfg)
        dual_data["t_dual"] = t_dual
        dual_data["g"] = _iso_matrix(g_point, n) if g_point is not None else None
        if g_point is None or t_dual <= cfg.tolerance:
            ok, g_face, gap = dual.run(0.0, cfg.max_iterations)
            dual_data["g_face"] = _iso_matrix(g_face, n) if ok else None
            dual_data["face_gap"] = gap
    return SdpOutcome(t_star=t_star, h=h, dual_data=dual_data)


# ---------------------------------------------------------------------------
# Rationalization of float candidates (back to the exact world)
# ---------------------------------------------------------------------------

_BASE_LADDER = (16, 1024, 65536)


def _denominators(cfg):
    bound = cfg.rationalization_denominator_bound
    ladder = [d for d in _BASE_LADDER if d < bound]
    ladder.append(bound)
    return ladder


def _rationalize_herm_params(h_float, bound):
    """Plain Hermitian parameters (exact) from a float Hermitian matrix."""
    n = h_float.shape[0]
    out = []
    for a in range(n):
        out.append(QQi(rationalize_float(float(h_float[a, a].real), bound)))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(QQi(rationalize_float(float(h_float[a, b].real), bound)))
            out.append(QQi(rationalize_float(float(h_float[a, b].imag), bound)))
    return out


def _rationalize_current_params(g_float, bound):
    """Current-side coordinates (factor 2 off-diagonal) of a float avatar."""
    n = g_float.shape[0]
    out = []
    for a in range(n):
        out.append(QQi(rationalize_float(float(g_float[a, a].real), bound)))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(QQi(rationalize_float(2.0 * float(g_float[a, b].real), bound)))
            out.append(QQi(rationalize_float(2.0 * float(g_float[a, b].imag), bound)))
    return out


def _primal_candidate(h_float, kernel, n, cfg):
    """Rationalize a float Hermitian candidate, project exactly onto the
    closed subspace, and demand exact positive definiteness."""
    for bound in _denominators(cfg):
        approx = _rationalize_herm_params(h_float, bound)
        projected = project_onto_span(kernel, approx)
        h = params_to_hermitian(projected, n)
        if not h.is_zero() and h.is_pd():
            return h
    return None


# ---------------------------------------------------------------------------
# Certificate extraction (exact side)
# ---------------------------------------------------------------------------

def _dual_subspace_basis(kernel, n):
    """Exact basis, in current coordinates, of the annihilator of the
    closed subspace: the finite realization of the boundary currents."""
    n_sq = hermitian_param_dim(n)
    if not kernel:
        return [[ONE if i == j else ZERO for i in range(n_sq)] for j in range(n_sq)]
    rows = []
    for vec in kernel:
        row = list(vec)
        for pos in range(n, n_sq):
            row[pos] = row[pos] + row[pos]  # Frobenius pairing: factor 2
        rows.append(row)
    return kernel_basis(rows, cols=n_sq)


def _exact_dual_from_float(g_float, dual_basis, n, cfg):
    for bound in _denominators(cfg):
        approx = _rationalize_current_params(g_float, bound)
        projected = project_onto_span(dual_basis, approx)
        g = avatar_of_current_params(projected, n)
        if not g.is_zero() and g.is_psd():
            return g
    return None


def _congruence(a_cols, x, n, r):
    """G = A X A* for exact column vectors a_cols (length r, entries C^n)."""
    g = [[ZERO] * n for _ in range(n)]
    for k in range(r):
        for l in range(r):
            c = x.entries[k][l]
            if c.is_zero():
                continue
            ak, al = a_cols[k], a_cols[l]
            for i in range(n):
                if ak[i].is_zero():
                    continue
                cik = ak[i] * c
                for j in range(n):
                    if not al[j].is_zero():
                        g[i][j] = g[i][j] + cik * al[j].conjugate()
    return HermitianMatrix(g)


def _face_certificate(g_float, kernel, n, cfg):
    """Dual search on a face of the PSD cone when the dual has empty
    interior: rationalized null directions of the float dual point are
    imposed exactly via G = A X A* over an exact complement A, and the
    compressed problem is solved with interior again."""
    if g_float is None:
        return None
    eigvals, eigvecs = np.linalg.eigh(g_float)
    scale = max(1.0, float(abs(eigvals).max()))
    null_positions = [i for i in range(len(eigvals)) if eigvals[i] < 1e-5 * scale]
    if not null_positions:
        return None
    null_positions.sort(key=lambda i: eigvals[i])

    current_rows = []
    for vec in kernel:
        row = list(vec)
        for pos in range(n, len(row)):
            row[pos] = row[pos] + row[pos]
        current_rows.append(row)

    for count in range(len(null_positions), 0, -1):
        chosen = null_positions[:count]
        for bound in (8, 64, 4096):
            nulls = []
            for i in chosen:
                v = np.array(eigvecs[:, i])
                pivot = int(np.argmax(np.abs(v)))
                v = v / v[pivot]
                nulls.append(
                    [
                        QQi(
                            rationalize_float(float(z.real), bound),
                            rationalize_float(float(z.imag), bound),
                        )
                        for z in v
                    ]
                )
            rows = [[x.conjugate() for x in v] for v in nulls]
            comp = kernel_basis(rows, cols=n)
            r = len(comp)
            if r == 0:
                continue
            # transport constraints to X-space: row . params(A X A*)
            w_cols = []
            for j in range(hermitian_param_dim(r)):
                unit = [ZERO] * hermitian_param_dim(r)
                unit[j] = ONE
                w_cols.append(
                    hermitian_to_params(_congruence(comp, params_to_hermitian(unit, r), n, r))
                )
            e_x_rows = []
            for row in current_rows:
                new_row = []
                for col in w_cols:
                    acc = ZERO
                    for x, y in zip(row, col):
                        if not (x.is_zero() or y.is_zero()):
                            acc = acc + x * y
                    new_row.append(acc)
                e_x_rows.append(new_row)
            x_kernel = kernel_basis(e_x_rows, cols=hermitian_param_dim(r))
            if not x_kernel:
                continue
            float_rows = [
                _iso_equation(_exact_row_floats(row), r)
                for row in e_x_rows
                if any(not x.is_zero() for x in row)
            ]
            eqs = float_rows + [_trace_row_iso(r)]
            rhs = [0.0] * len(float_rows) + [float(r)]
            problem = _AffinePsdProblem(eqs, rhs, r)
            t_face, x_point = problem.max_min_eigenvalue(cfg)
            if x_point is None or t_face <= cfg.tolerance:
                continue
            x_float = _iso_matrix(x_point, r)
            for rbound in _denominators(cfg):
                approx = _rationalize_herm_params(x_float, rbound)
                projected = project_onto_span(x_kernel, approx)
                x_herm = params_to_hermitian(projected, r)
                if x_herm.is_zero() or not x_herm.is_pd():
                    continue
                return _congruence(comp, x_herm, n, r)
    return None


def solve_boundary_preimage(m_rows, t_params):
    """Exact least-norm solve of M^T s = t over the codomain coefficients."""
    if not m_rows:
        return None
    mt = [list(col) for col in zip(*m_rows)]
    gram = mat_mul(mt, m_rows)  # M^T M, consistent iff t lies in Im M^T
    y = solve_consistent(gram, list(t_params))
    if y is None:
        return None
    s = []
    for row in m_rows:
        acc = ZERO
        for x, c in zip(row, y):
            if not (x.is_zero() or c.is_zero()):
                acc = acc + x * c
        s.append(acc)
    return s


def currents_from_functional(frame, s_vec, degree, bidegrees):
    """Restrict a functional on degree-k coefficients to the dual bases of
    the requested bidegrees."""
    e_basis = degree_basis(frame.dim, degree)
    position = {idx: i for i, idx in enumerate(e_basis)}
    out = {}
    for (p, q) in bidegrees:
        coeffs = {}
        for s_idx in frame.bidegree_indices(p, q):
            zeta = frame.zeta_form(s_idx)
            acc = ZERO
            for idx, c in zeta.components.get(degree, {}).items():
                val = s_vec[position[idx]]
                if not (val.is_zero() or c.is_zero()):
                    acc = acc + val * c
            if not acc.is_zero():
                coeffs[s_idx] = acc
        out[(p, q)] = Current(frame, (p, q), coeffs)
    return out


def _certificate_from_avatar(m, theta, system, g, psi_form):
    """Normalize an exact PSD avatar against psi, solve for the boundary
    preimage and package the certificate."""
    frame = m.frame
    t_current = Current.from_hermitian_avatar(frame, g)
    norm = pair(t_current, psi_form)
    if not norm.is_real() or norm.re <= 0:
        return None
    g = g.scale(ONE / QQi(norm.re))
    t_current = Current.from_hermitian_avatar(frame, g)
    s_vec = solve_boundary_preimage(system.matrix, current_params_of_avatar(g))
    if s_vec is None:
        return None
    parts = currents_from_functional(frame, s_vec, 3, ((2, 1), (1, 2)))
    return Certificate(t=t_current, s_21=parts[(2, 1)], s_12=parts[(1, 2)])


def _extract_certificate(m, theta, system, sdp, n, cfg, psi_form):
    dual_basis = _dual_subspace_basis(system.kernel, n)
    if not dual_basis:
        return None
    candidates = []
    g_interior = sdp.dual_data.get("g")
    if g_interior is not None and sdp.dual_data.get("t_dual", -1e9) > cfg.tolerance:
        g = _exact_dual_from_float(g_interior, dual_basis, n, cfg)
        if g is not None:
            candidates.append(g)
    if not candidates:
        for key in ("g_face", "g"):
            g = _face_certificate(sdp.dual_data.get(key), system.kernel, n, cfg)
            if g is not None:
                candidates.append(g)
                break
    if not candidates and len(dual_basis) == hermitian_param_dim(n):
        # unconstrained dual: the identity avatar is a witness
        candidates.append(HermitianMatrix.identity(n))
    for g in candidates:
        cert = _certificate_from_avatar(m, theta, system, g, psi_form)
        if cert is not None and verify_certificate(m, theta, cert):
            return cert
    return None


# ---------------------------------------------------------------------------
# The decision procedure
# ---------------------------------------------------------------------------

def default_psi(m):
    """Reference Hermitian form: identity avatar in the model's frame."""
    return from_hermitian(HermitianMatrix.identity(m.frame.n), m.frame)


def find_lck(m, theta=None, cfg=None):
    """Decide existence of an LCK metric with the prescribed Lee form.

    Returns Feasible with an exactly verified metric, Infeasible with an
    exactly verified certificate, or Undecided with the achieved margin
    (never a silent wrong answer).
    """
    cfg = cfg or SolverConfig()
    m.require_valid()
    key = m.resolve_theta(theta)
    ops = m.operators(key)
    if not m.d(ops.theta_form).is_zero():
        raise ValueError("theta must be closed")

    frame = m.frame
    n = frame.n
    psi_form = cfg.psi if cfg.psi is not None else default_psi(m)
    if not to_hermitian(psi_form, frame).is_pd():
        raise ValueError("reference form psi must be positive definite")

    system = one_one_system(m, key)
    sdp = sdp_feasibility(system.matrix, cfg, n=n)

    metric_h = None
    if sdp.t_star > cfg.tolerance and sdp.h is not None and system.kernel:
        metric_h = _primal_candidate(sdp.h, system.kernel, n, cfg)

    if metric_h is not None and sdp.dual_data.get("t_dual", -1e9) > cfg.tolerance:
        # transient double candidate: weak duality says at most one side
        # can verify exactly; insist on it
        cert = _extract_certificate(m, key, system, sdp, n, cfg, psi_form)
        if cert is not None:
            raise RuntimeError(
                "internal error: verified metric and verified certificate coexist"
            )

    if metric_h is not None:
        omega = from_hermitian(metric_h, frame)
        if verify_metric(m, key, omega):
            return Feasible(
                metric=omega,
                eig_margin=metric_h.min_eigenvalue(),
                exact=True,
            )

    certificate = _extract_certificate(m, key, system, sdp, n, cfg, psi_form)
    if certificate is not None:
        return Infeasible(certificate=certificate)

    return Undecided(
        best_margin=float(sdp.t_star),
        detail="no candidate survived exact re-verification "
        "at the configured denominator bound",
    )


# ---------------------------------------------------------------------------
# Wirtinger-style positivity audit
# ---------------------------------------------------------------------------

@dataclass
class WirtingerAudit:
    samples: int
    all_positive: bool
    min_value: str
    min_value_float: float
    violation: list | None = None


def _random_gauss_vector(rng, n):
    while True:
        v = [
            QQi(
                rat(rng.randint(-9, 9), rng.randint(1, 4)),
                rat(rng.randint(-9, 9), rng.randint(1, 4)),
            )
            for _ in range(n)
        ]
        if any(not x.is_zero() for x in v):
            return v


def wirtinger_pairing_audit(m, w, samples=1000, seed=0):
    """Pair seeded positive generators against a (1,1)-form; for a valid
    metric every pairing is strictly positive.  Exact arithmetic."""
    m.require_valid()
    frame = m.frame
    rng = random.Random(seed)
    best = None
    violation = None
    for _ in range(samples):
        v = _random_gauss_vector(rng, frame.n)
        value = pair(positive_generator(frame, v), w)
        if not value.is_real():
            raise RuntimeError("pairing of a real pair must be real")
        q = value.re
        if best is None or q < best:
            best = q
        if q <= 0 and violation is None:
            violation = v
    return WirtingerAudit(
        samples=samples,
        all_positive=violation is None,
        min_value=str(best),
        min_value_float=float(best),
        violation=[str(x) for x in violation] if violation is not None else None,
    )
