"""Finite invariant models: Lie algebra, complex structure, reference 1-form.

A model is the dual picture of a real Lie algebra of dimension 2n given by
structure constants c^k_{ij} (with de^k = -sum_{i<j} c^k_{ij} e^i wedge e^j),
a complex structure J and a closed 1-form theta.  Validation checks the
Jacobi identity, J^2 = -I, vanishing of the Nijenhuis tensor and
closedness of theta, all in exact arithmetic; every operator below
requires a validated model.

The twisted differential is d_theta = d - theta wedge, together with its
bidegree refinements and the twisted d^c.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .exact import QQi, ZERO, parse_rational, rat
from .multilinear import ComplexFrame, GradedForm, degree_basis


@dataclass
class ValidationCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def __repr__(self):
        lines = [
            f"  [{'pass' if c.ok else 'FAIL'}] {c.name}"
            + (f" ({c.detail})" if c.detail else "")
            for c in self.checks
        ]
        return "ValidationReport(\n" + "\n".join(lines) + "\n)"


class ModelValidationError(ValueError):
    pass


class LieModel:
    """Structure constants + complex structure + reference 1-form."""

    def __init__(self, name, dim, structure, j_matrix, theta, description=""):
        if dim % 2:
            raise ValueError("model dimension must be even")
        self.name = name
        self.dim = dim
        self.description = description
        struct = {}
        items = structure.items() if isinstance(structure, dict) else (
            (tuple(entry[:3]), entry[3]) for entry in structure
        )
        for (i, j, k), val in items:
            if not (1 <= i < j <= dim and 1 <= k <= dim):
                raise ValueError(f"bad structure index ({i},{j},{k})")
            q = parse_rational(val)
            if q != 0:
                struct[(i, j, k)] = q
        self.structure = struct
        self.j_matrix = tuple(
            tuple(parse_rational(x) for x in row) for row in j_matrix
        )
        if len(self.j_matrix) != dim or any(len(r) != dim for r in self.j_matrix):
            raise ValueError("J must be a 2n x 2n matrix")
        self.theta = tuple(parse_rational(x) for x in theta)
        if len(self.theta) != dim:
            raise ValueError("theta must have 2n coefficients")

        self._validation = None
        self._frame = None
        self._d_cache = {}
        self._ops = {}
        self._lock = threading.Lock()

    # -- basic structure ------------------------------------------------
    def bracket_constant(self, i, j, k):
        """c^k_{ij}, extended antisymmetrically."""
        if i == j:
            return rat(0)
        if i < j:
            return self.structure.get((i, j, k), rat(0))
        return -self.structure.get((j, i, k), rat(0))

    def bracket_vectors(self, x, y):
        """[x, y] for coefficient vectors over the e_i basis."""
        dim = self.dim
        out = [rat(0)] * dim
        for (i, j, k), c in self.structure.items():
            coef = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if coef != 0:
                out[k - 1] += c * coef
        return out

    def j_column(self, i):
        return [self.j_matrix[l][i - 1] for l in range(self.dim)]

    def apply_j(self, x):
        dim = self.dim
        return [
            sum((self.j_matrix[l][m] * x[m] for m in range(dim)), rat(0))
            for l in range(dim)
        ]

    def theta_field(self):
        return GradedForm(
            self.dim,
            {1: {(i + 1,): QQi(c) for i, c in enumerate(self.theta) if c != 0}},
        )

    # -- validation -------------------------------------------------------
    def validate(self):
        if self._validation is None:
            self._validation = _run_validation(self)
        return self._validation

    def require_valid(self):
        report = self.validate()
        if not report.ok:
            bad = ", ".join(c.name for c in report.failures())
            raise ModelValidationError(f"model '{self.name}' fails validation: {bad}")
        return self

    @property
    def frame(self):
        if self._frame is None:
            self._frame = ComplexFrame(self.j_matrix)
        return self._frame

    # -- Chevalley-Eilenberg differential ----------------------------------
    def d_covector(self, k):
        """de^k = -sum_{i<j} c^k_{ij} e^i wedge e^j."""
        coeffs = {}
        for (i, j, kk), c in self.structure.items():
            if kk == k:
                coeffs[(i, j)] = QQi(-c)
        return GradedForm(self.dim, {2: coeffs})

    def _d_basis(self, idx):
        cached = self._d_cache.get(idx)
        if cached is not None:
            return cached
        dim = self.dim
        out = GradedForm.zero(dim)
        for pos, s in enumerate(idx):
            ds = self.d_covector(s)
            if ds.is_zero():
                continue
            rest = tuple(x for x in idx if x != s)
            rest_form = GradedForm(dim, {len(rest): {rest: QQi(1)}})
            term = ds.wedge(rest_form)
            if pos % 2:
                term = -term
            out = out + term
        self._d_cache[idx] = out
        return out

    def d(self, form):
        """Exterior differential, extended from covectors by the Leibniz rule."""
        out = GradedForm.zero(self.dim)
        for k, comp in form.components.items():
            if k == 0:
                continue  # invariant functions are constants
            for idx, c in comp.items():
                base = self._d_basis(idx)
                if not base.is_zero():
                    out = out + base.scale(c)
        return out

    def ce_d(self, k):
        """Exact matrix of d on degree k (rows index degree k+1)."""
        if not 0 <= k <= self.dim:
            raise ValueError(f"degree {k} out of range 0..{self.dim}")
        self.require_valid()
        cols = []
        for idx in degree_basis(self.dim, k):
            form = GradedForm(self.dim, {k: {idx: QQi(1)}})
            cols.append(self.d(form).coeff_vector(k + 1) if k < self.dim else [])
        nrows = len(degree_basis(self.dim, k + 1)) if k < self.dim else 0
        return [[col[r] for col in cols] for r in range(nrows)]

    # -- twisted operators -------------------------------------------------
    def resolve_theta(self, theta=None):
        """Normalize a theta argument to a tuple of exact rationals."""
        if theta is None:
            return self.theta
        if isinstance(theta, GradedForm):
            vec = theta.coeff_vector(1)
            if any(not c.is_real() for c in vec):
                raise ValueError("theta must be a real 1-form")
            return tuple(c.re for c in vec)
        return tuple(parse_rational(x) for x in theta)

    def operators(self, theta=None):
        key = self.resolve_theta(theta)
        with self._lock:
            ops = self._ops.get(key)
            if ops is None:
                ops = TwistedOperators(self, key)
                self._ops[key] = ops
        return ops

    def __repr__(self):
        return f"LieModel({self.name!r}, dim={self.dim})"


def _run_validation(m):
    report = ValidationReport()
    dim = m.dim

    # Jacobi identity on all basis triples
    jac_ok, jac_detail = True, ""
    for i in range(1, dim + 1):
        for j in range(i + 1, dim + 1):
            for k in range(j + 1, dim + 1):
                acc = [rat(0)] * dim
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = [m.bracket_constant(b, c, l) for l in range(1, dim + 1)]
                    ea = [rat(0)] * dim
                    ea[a - 1] = rat(1)
                    term = m.bracket_vectors(ea, inner)
                    acc = [x + y for x, y in zip(acc, term)]
                if any(x != 0 for x in acc):
                    jac_ok, jac_detail = False, f"first violation at triple ({i},{j},{k})"
                    break
            if not jac_ok:
                break
        if not jac_ok:
            break
    report.checks.append(ValidationCheck("jacobi", jac_ok, jac_detail))

    # J^2 = -I
    jj_ok, jj_detail = True, ""
    for i in range(dim):
        for j in range(dim):
            want = rat(-1) if i == j else rat(0)
            got = sum((m.j_matrix[i][l] * m.j_matrix[l][j] for l in range(dim)), rat(0))
            if got != want:
                jj_ok, jj_detail = False, f"first violation at entry ({i + 1},{j + 1})"
                break
        if not jj_ok:
            break
    report.checks.append(ValidationCheck("j_squared", jj_ok, jj_detail))

    # Nijenhuis tensor on all basis pairs
    nij_ok, nij_detail = True, ""
    if jj_ok:
        for i in range(1, dim + 1):
            for j in range(i + 1, dim + 1):
                ei = [rat(0)] * dim
                ei[i - 1] = rat(1)
                ej = [rat(0)] * dim
                ej[j - 1] = rat(1)
                jei, jej = m.apply_j(ei), m.apply_j(ej)
                n1 = m.bracket_vectors(jei, jej)
                n2 = m.bracket_vectors(ei, ej)
                n3 = m.apply_j(m.bracket_vectors(jei, ej))
                n4 = m.apply_j(m.bracket_vectors(ei, jej))
                nij = [a - b - c - d for a, b, c, d in zip(n1, n2, n3, n4)]
                if any(x != 0 for x in nij):
                    nij_ok, nij_detail = False, f"first violation at pair ({i},{j})"
                    break
            if not nij_ok:
                break
    else:
        nij_ok, nij_detail = False, "skipped: J^2 != -I"
    report.checks.append(ValidationCheck("nijenhuis", nij_ok, nij_detail))

    # d theta = 0
    dtheta = m.d(m.theta_field())
    dt_ok = dtheta.is_zero()
    dt_detail = ""
    if not dt_ok:
        comp = dtheta.components.get(2, {})
        first = min(comp)
        dt_detail = f"d theta has component {first}"
    report.checks.append(ValidationCheck("theta_closed", dt_ok, dt_detail))
    return report


def validate(m):
    """Exact validation report: Jacobi, J^2=-I, Nijenhuis, d theta = 0."""
    return m.validate()


class TwistedOperators:
    """Cached matrices of the twisted operators for one (model, theta).

    Degree-indexed matrices for d, d_theta, dc_theta and d_theta dc_theta;
    bidegree-indexed matrices for partial_theta and partialbar_theta over
    the zeta bases.  Built lazily, safe for concurrent reads afterwards.
    """

    KINDS = ("d", "d_theta", "dc_theta", "d_theta_dc_theta")

    def __init__(self, model, theta_key):
        model.require_valid()
        self.model = model
        self.theta = theta_key
        self.theta_form = GradedForm(
            model.dim,
            {1: {(i + 1,): QQi(c) for i, c in enumerate(theta_key) if c != 0}},
        )
        frame = model.frame
        self.theta_10 = frame.project_covector(self.theta_form, (1, 0))
        self.theta_01 = frame.project_covector(self.theta_form, (0, 1))
        self._matrices = {}
        self._bidegree_matrices = {}
        self._lock = threading.Lock()

    # -- action on forms ------------------------------------------------
    def d_theta(self, form):
        return self.model.d(form) - self.theta_form.wedge(form)

    def _split_apply(self, form, shift_p, shift_q):
        """Project d_theta(component) onto the shifted bidegree, summed."""
        frame = self.model.frame
        out = GradedForm.zero(self.model.dim)
        for (p, q), piece in frame.bidegree_split(form).items():
            image = self.d_theta(piece)
            if image.is_zero():
                continue
            out = out + frame.bidegree_component(image, p + shift_p, q + shift_q)
        return out

    def partial_theta(self, form):
        return self._split_apply(form, 1, 0)

    def partialbar_theta(self, form):
        return self._split_apply(form, 0, 1)

    def dc_theta(self, form):
        from .exact import I as IMAG

        diff = self.partial_theta(form) - self.partialbar_theta(form)
        return diff.scale(IMAG)

    def d_theta_dc_theta(self, form):
        return self.d_theta(self.dc_theta(form))

    def apply(self, kind, form):
        table = {
            "d": self.model.d,
            "d_theta": self.d_theta,
            "partial": self.partial_theta,
            "partialbar": self.partialbar_theta,
            "dc_theta": self.dc_theta,
            "d_theta_dc_theta": self.d_theta_dc_theta,
        }
        return table[kind](form)

    # -- matrices ---------------------------------------------------------
    def matrix(self, kind, k):
        """Exact matrix of a degree-homogeneous operator on degree k."""
        key = (kind, k)
        with self._lock:
            cached = self._matrices.get(key)
        if cached is not None:
            return cached
        dim = self.model.dim
        shift = {"d": 1, "d_theta": 1, "dc_theta": 1, "d_theta_dc_theta": 2}[kind]
        target = k + shift
        nrows = len(degree_basis(dim, target)) if target <= dim else 0
        cols = []
        for idx in degree_basis(dim, k):
            form = GradedForm(dim, {k: {idx: QQi(1)}})
            image = self.apply(kind, form)
            cols.append(image.coeff_vector(target) if target <= dim else [])
        matrix = [[col[r] for col in cols] for r in range(nrows)]
        with self._lock:
            self._matrices[key] = matrix
        return matrix

    def bidegree_matrix(self, kind, p, q):
        """Matrix of partial/partialbar from the (p,q) zeta basis."""
        key = (kind, p, q)
        with self._lock:
            cached = self._bidegree_matrices.get(key)
        if cached is not None:
            return cached
        frame = self.model.frame
        tp, tq = (p + 1, q) if kind == "partial" else (p, q + 1)
        rows_idx = frame.bidegree_indices(tp, tq) if tp <= frame.n and tq <= frame.n else []
        row_pos = {s: i for i, s in enumerate(rows_idx)}
        cols = []
        for s in frame.bidegree_indices(p, q):
            image = self.apply(kind, frame.zeta_form(s))
            coeffs = frame.zeta_coeffs(image, tp, tq) if rows_idx else {}
            col = [ZERO] * len(rows_idx)
            for t, c in coeffs.items():
                col[row_pos[t]] = c
            cols.append(col)
        matrix = [[col[r] for col in cols] for r in range(len(rows_idx))]
        with self._lock:
            self._bidegree_matrices[key] = matrix
        return matrix


def twisted_d(m, form, theta=None):
    """d_theta = d - theta wedge."""
    return m.operators(theta).d_theta(form)


def partial_t(m, form, theta=None):
    return m.operators(theta).partial_theta(form)


def partialbar_t(m, form, theta=None):
    return m.operators(theta).partialbar_theta(form)


def dc_t(m, form, theta=None):
    """Twisted d^c = i (partial_theta - partialbar_theta)."""
    return m.operators(theta).dc_theta(form)


def theta_pluriharmonic_defect(m, u, v, theta=None):
    """d_theta v + d_theta^c u for constants u, v; zero iff u + iv extends
    to an invariant antiholomorphic-closed function."""
    ops = m.operators(theta)
    u_form = GradedForm.constant(m.dim, u)
    v_form = GradedForm.constant(m.dim, v)
    return ops.d_theta(v_form) + ops.dc_theta(u_form)
