"""Exact exterior algebra over a 2n-dimensional space with complex structure.

Forms are elements of the exterior algebra of the dual space, with
Gaussian-rational coefficients over the basis e^1..e^{2n}.  A complex
structure J induces the frame of (1,0)-covectors, bidegree projections,
the Hermitian-matrix avatar of real (1,1)-forms, and the dual picture of
currents paired against forms.

Conventions (fixed once, everything downstream depends on them):
  * Basis of degree k: strictly increasing multi-indices, lex order,
    1-based.
  * Frame covectors Z^a = (I - i J^T) e^{k_a} for greedily chosen
    independent k_a; for the standard block J this is e^{2a-1} + i e^{2a}.
  * Bidegree basis element for holomorphic index set A and antiholomorphic
    index set B: zeta_{A,B} = i^{pq} Z^A wedge Zbar^B, so that
    conj(zeta_{A,B}) = zeta_{B,A}.
  * Hermitian avatar: w = (i/2) sum_{a,b} H_{ab} Z^a wedge Zbar^b; with the
    standard J this makes to_hermitian(e^{2a-1} wedge e^{2a}) carry a +1
    diagonal entry.
  * A current of bidegree (p,q) is a coefficient vector over the basis
    dual to {zeta_{A,B}}; pairing is the plain coefficient dot product,
    and vanishes on every other bidegree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exact import (
    I,
    I_POW,
    ONE,
    QQi,
    ZERO,
    is_pd_exact,
    is_psd_exact,
    mat_inverse,
    qi,
)

# ---------------------------------------------------------------------------
# Multi-index tables
# ---------------------------------------------------------------------------

_TABLES = {}


def _tables(dim):
    try:
        return _TABLES[dim]
    except KeyError:
        basis = {}
        position = {}
        for k in range(dim + 1):
            tuples = list(combinations(range(1, dim + 1), k))
            basis[k] = tuples
            position[k] = {t: i for i, t in enumerate(tuples)}
        _TABLES[dim] = (basis, position)
        return _TABLES[dim]


def degree_basis(dim, k):
    """Lex-ordered strictly increasing multi-indices of length k."""
    return _tables(dim)[0][k]


def basis_position(dim, k):
    return _tables(dim)[1][k]


def merge_indices(s, t):
    """Merge two increasing multi-indices; (sign, merged) or None on overlap."""
    out = []
    sign = 1
    i, j = 0, 0
    while i < len(s) and j < len(t):
        if s[i] == t[j]:
            return None
        if s[i] < t[j]:
            out.append(s[i])
            i += 1
        else:
            # t[j] jumps over the remaining entries of s
            if (len(s) - i) % 2:
                sign = -sign
            out.append(t[j])
            j += 1
    out.extend(s[i:])
    out.extend(t[j:])
    return sign, tuple(out)


def _wedge_sparse(a, b):
    """Wedge of two sparse {multi-index: QQi} coefficient maps."""
    out = {}
    for sa, ca in a.items():
        if ca.is_zero():
            continue
        for sb, cb in b.items():
            if cb.is_zero():
                continue
            merged = merge_indices(sa, sb)
            if merged is None:
                continue
            sign, idx = merged
            term = ca * cb if sign > 0 else -(ca * cb)
            acc = out.get(idx)
            out[idx] = term if acc is None else acc + term
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# Graded forms
# ---------------------------------------------------------------------------

class GradedForm:
    """Exterior form with exact coefficients, possibly of mixed degree."""

    __slots__ = ("dim", "components")

    def __init__(self, dim, components=None):
        self.dim = dim
        comps = {}
        if components:
            for k, coeffs in components.items():
                clean = {}
                for idx, c in coeffs.items():
                    c = qi(c) if not isinstance(c, QQi) else c
                    if not c.is_zero():
                        clean[tuple(idx)] = c
                if clean:
                    comps[k] = clean
        self.components = comps

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def constant(cls, dim, value=1):
        return cls(dim, {0: {(): qi(value)}})

    @classmethod
    def covector(cls, dim, i, value=1):
        return cls(dim, {1: {(i,): qi(value)}})

    @classmethod
    def from_coeff_vector(cls, dim, k, vector):
        coeffs = {}
        for idx, c in zip(degree_basis(dim, k), vector):
            if not c.is_zero():
                coeffs[idx] = c
        return cls(dim, {k: coeffs})

    @classmethod
    def from_terms(cls, dim, terms):
        """Build from {multi-index tuple: coefficient}; degrees inferred."""
        comps = {}
        for idx, c in terms.items():
            comps.setdefault(len(idx), {})[tuple(idx)] = c
        return cls(dim, comps)

    # -- structure -----------------------------------------------------
    @property
    def degrees(self):
        return sorted(self.components)

    def is_zero(self):
        return not self.components

    def is_homogeneous(self, k=None):
        degs = self.degrees
        if k is None:
            return len(degs) <= 1
        return degs == [] or degs == [k]

    def homogeneous(self, k):
        comp = self.components.get(k)
        return GradedForm(self.dim, {k: dict(comp)} if comp else None)

    def coefficient(self, idx):
        idx = tuple(idx)
        return self.components.get(len(idx), {}).get(idx, ZERO)

    def coeff_vector(self, k):
        comp = self.components.get(k, {})
        return [comp.get(idx, ZERO) for idx in degree_basis(self.dim, k)]

    def is_real(self):
        return all(
            c.is_real() for comp in self.components.values() for c in comp.values()
        )

    def conjugate(self):
        return GradedForm(
            self.dim,
            {
                k: {idx: c.conjugate() for idx, c in comp.items()}
                for k, comp in self.components.items()
            },
        )

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        comps = {k: dict(v) for k, v in self.components.items()}
        for k, comp in other.components.items():
            tgt = comps.setdefault(k, {})
            for idx, c in comp.items():
                acc = tgt.get(idx, ZERO) + c
                if acc.is_zero():
                    tgt.pop(idx, None)
                else:
                    tgt[idx] = acc
        return GradedForm(self.dim, comps)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GradedForm(
            self.dim,
            {
                k: {idx: -c for idx, c in comp.items()}
                for k, comp in self.components.items()
            },
        )

    def scale(self, c):
        c = qi(c) if not isinstance(c, QQi) else c
        if c.is_zero():
            return GradedForm.zero(self.dim)
        return GradedForm(
            self.dim,
            {
                k: {idx: c * x for idx, x in comp.items()}
                for k, comp in self.components.items()
            },
        )

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def wedge(self, other):
        self._check(other)
        comps = {}
        for ka, ca in self.components.items():
            for kb, cb in other.components.items():
                k = ka + kb
                if k > self.dim:
                    continue
                part = _wedge_sparse(ca, cb)
                if not part:
                    continue
                tgt = comps.setdefault(k, {})
                for idx, c in part.items():
                    acc = tgt.get(idx, ZERO) + c
                    if acc.is_zero():
                        tgt.pop(idx, None)
                    else:
                        tgt[idx] = acc
        return GradedForm(self.dim, comps)

    def __xor__(self, other):
        return self.wedge(other)

    def __eq__(self, other):
        return (
            isinstance(other, GradedForm)
            and self.dim == other.dim
            and self.components == other.components
        )

    def __hash__(self):
        return hash(
            (self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.components.items())))
        )

    def _check(self, other):
        if not isinstance(other, GradedForm) or other.dim != self.dim:
            raise ValueError("dimension mismatch between forms")

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in self.degrees:
            for idx in degree_basis(self.dim, k):
                c = self.components[k].get(idx)
                if c is None:
                    continue
                label = "1" if k == 0 else "e" + "".join(str(i) for i in idx)
                parts.append(f"({c})*{label}")
        return " + ".join(parts)


def wedge(a, b):
    """Exterior product; bilinear, associative, graded-commutative."""
    return a.wedge(b)


# ---------------------------------------------------------------------------
# Complex frame and bidegree machinery
# ---------------------------------------------------------------------------

def _class_of(index, n):
    p = sum(1 for s in index if s <= n)
    return (p, len(index) - p)


class ComplexFrame:
    """Type decomposition data induced by a complex structure J.

    Holds the (1,0)/(0,1) projectors on covectors, the frame
    Z^1..Z^n and conjugates, and per-degree change of basis between the
    real exterior basis and frame products (computed via exterior powers
    of the frame transition matrix, so no large eliminations are needed).
    """

    def __init__(self, j_matrix):
        dim = len(j_matrix)
        if dim % 2:
            raise ValueError("complex structure needs even dimension")
        self.dim = dim
        self.n = dim // 2
        jt = [[qi(j_matrix[k][l]) for k in range(dim)] for l in range(dim)]
        half = QQi(qi("1/2").re)
        self.projector_10 = [
            [half * (ONE if l == k else ZERO) - half * I * jt[l][k] for k in range(dim)]
            for l in range(dim)
        ]
        self.projector_01 = [
            [self.projector_10[l][k].conjugate() for k in range(dim)]
            for l in range(dim)
        ]
        self._build_frame()
        self._lambda = {}
        self._lambda_inv = {}

    def _build_frame(self):
        dim, n = self.dim, self.n
        chosen = []
        echelon = []  # (pivot, reduced vector)
        self.frame_sources = []
        for k in range(dim):
            cand = [self.projector_10[l][k] + self.projector_10[l][k] for l in range(dim)]
            red = cand[:]
            for piv, vec in echelon:
                f = red[piv]
                if f.is_zero():
                    continue
                red = [x - f * y for x, y in zip(red, vec)]
            piv = next((i for i, x in enumerate(red) if not x.is_zero()), None)
            if piv is None:
                continue
            inv = ONE / red[piv]
            echelon.append((piv, [x * inv for x in red]))
            chosen.append(cand)
            self.frame_sources.append(k + 1)
            if len(chosen) == n:
                break
        if len(chosen) != n:
            raise ValueError("projector images do not span the (1,0) space")
        conj = [[x.conjugate() for x in z] for z in chosen]
        self.frame_cols = chosen + conj  # axes 1..n holomorphic, n+1..2n conjugate
        q = [[self.frame_cols[j][i] for j in range(dim)] for i in range(dim)]
        self.q_matrix = q
        self.q_inverse = mat_inverse(q)

    # -- covector projections -----------------------------------------
    def project_covector(self, form, part):
        """(1,0) or (0,1) part of a 1-form."""
        if not form.is_homogeneous(1):
            raise ValueError("covector projection expects a 1-form")
        proj = self.projector_10 if part == (1, 0) else self.projector_01
        vec = form.coeff_vector(1)
        out = {}
        for l in range(self.dim):
            s = ZERO
            for k in range(self.dim):
                if not vec[k].is_zero():
                    s = s + proj[l][k] * vec[k]
            if not s.is_zero():
                out[(l + 1,)] = s
        return GradedForm(self.dim, {1: out})

    # -- exterior powers of the transition ------------------------------
    def _lambda_cols(self, k):
        """Frame product F_S in e-coordinates, per frame multi-index S."""
        if k in self._lambda:
            return self._lambda[k]
        if k == 0:
            cols = {(): {(): ONE}}
        else:
            prev = self._lambda_cols(k - 1)
            cols = {}
            for s in degree_basis(self.dim, k):
                head, last = s[:-1], s[-1]
                one_form = {
                    (l + 1,): self.frame_cols[last - 1][l]
                    for l in range(self.dim)
                    if not self.frame_cols[last - 1][l].is_zero()
                }
                cols[s] = _wedge_sparse(prev[head], one_form)
        self._lambda[k] = cols
        return cols

    def _lambda_inv_cols(self, k):
        """e-basis element e^T in frame coordinates, per multi-index T."""
        if k in self._lambda_inv:
            return self._lambda_inv[k]
        if k == 0:
            cols = {(): {(): ONE}}
        else:
            prev = self._lambda_inv_cols(k - 1)
            cols = {}
            for t in degree_basis(self.dim, k):
                head, last = t[:-1], t[-1]
                one_form = {
                    (l + 1,): self.q_inverse[l][last - 1]
                    for l in range(self.dim)
                    if not self.q_inverse[l][last - 1].is_zero()
                }
                cols[t] = _wedge_sparse(prev[head], one_form)
        self._lambda_inv[k] = cols
        return cols

    def frame_coords(self, form, k):
        """Degree-k part of a form in frame-product coordinates."""
        comp = form.components.get(k, {})
        cols = self._lambda_inv_cols(k)
        out = {}
        for t, c in comp.items():
            for s, f in cols[t].items():
                acc = out.get(s, ZERO) + c * f
                if acc.is_zero():
                    out.pop(s, None)
                else:
                    out[s] = acc
        return out

    def from_frame_coords(self, coords, k):
        cols = self._lambda_cols(k)
        out = {}
        for s, c in coords.items():
            if c.is_zero():
                continue
            for t, f in cols[s].items():
                acc = out.get(t, ZERO) + c * f
                if acc.is_zero():
                    out.pop(t, None)
                else:
                    out[t] = acc
        return GradedForm(self.dim, {k: out})

    # -- bidegree ----------------------------------------------------------
    def bidegree_indices(self, p, q):
        """Frame multi-indices of class (p,q), in lex order."""
        return [
            s for s in degree_basis(self.dim, p + q) if _class_of(s, self.n) == (p, q)
        ]

    def zeta_scale(self, p, q):
        """zeta_{A,B} = i^{pq} * frame product."""
        return I_POW[(p * q) % 4]

    def zeta_form(self, index):
        p, q = _class_of(index, self.n)
        coords = {index: self.zeta_scale(p, q)}
        return self.from_frame_coords(coords, p + q)

    def zeta_coeffs(self, form, p, q):
        """Coefficients of the (p,q)-part of a form over the zeta basis."""
        coords = self.frame_coords(form, p + q)
        inv_scale = I_POW[(-(p * q)) % 4]
        out = {}
        for s, c in coords.items():
            if _class_of(s, self.n) == (p, q):
                v = c * inv_scale
                if not v.is_zero():
                    out[s] = v
        return out

    def bidegree_component(self, form, p, q):
        coords = self.frame_coords(form, p + q)
        part = {s: c for s, c in coords.items() if _class_of(s, self.n) == (p, q)}
        return self.from_frame_coords(part, p + q)

    def bidegree_split(self, form):
        """Split a form into pure-bidegree components; components sum to it."""
        if form.dim != self.dim:
            raise ValueError("dimension mismatch between form and frame")
        out = {}
        for k in form.degrees:
            coords = self.frame_coords(form, k)
            groups = {}
            for s, c in coords.items():
                groups.setdefault(_class_of(s, self.n), {})[s] = c
            for pq, part in groups.items():
                piece = self.from_frame_coords(part, k)
                if not piece.is_zero():
                    out[pq] = out.get(pq, GradedForm.zero(self.dim)) + piece
        return out

    # -- volume normalization (used by the dual (n-1,n-1) picture) -----
    def volume_form(self):
        """Product of i Z^a wedge Zbar^a over a; a positive real top form."""
        vol = GradedForm.constant(self.dim, 1)
        for a in range(1, self.n + 1):
            za = self.from_frame_coords({(a,): ONE}, 1)
            zbar = self.from_frame_coords({(a + self.n,): ONE}, 1)
            vol = vol.wedge(za.wedge(zbar).scale(I))
        return vol

    def top_coefficient(self, form):
        """Coefficient of a top-degree form against the J-volume."""
        top = tuple(range(1, self.dim + 1))
        vol = self.volume_form().coefficient(top)
        return form.coefficient(top) / vol


def bidegree_split(form, frame):
    return frame.bidegree_split(form)


# ---------------------------------------------------------------------------
# Hermitian avatar of real (1,1)-forms
# ---------------------------------------------------------------------------

class HermitianMatrix:
    """n x n Hermitian matrix with exact entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = [[qi(x) if not isinstance(x, QQi) else x for x in row] for row in entries]

    @classmethod
    def zero(cls, n):
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.entries)

    def is_hermitian(self):
        n = self.n
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i].conjugate():
                    return False
        return True

    def is_psd(self):
        return is_psd_exact(self.entries)

    def is_pd(self):
        return is_pd_exact(self.entries)

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def scale(self, c):
        c = qi(c) if not isinstance(c, QQi) else c
        return HermitianMatrix([[c * x for x in row] for row in self.entries])

    def add(self, other):
        return HermitianMatrix(
            [
                [x + y for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def trace(self):
        t = ZERO
        for i in range(self.n):
            t = t + self.entries[i][i]
        return t

    def quadratic_form(self, v):
        """v* H v for an exact complex vector v."""
        s = ZERO
        for a in range(self.n):
            for b in range(self.n):
                x = self.entries[a][b]
                if not (x.is_zero() or v[a].is_zero() or v[b].is_zero()):
                    s = s + v[a].conjugate() * x * v[b]
        return s

    def to_numpy(self):
        import numpy as np

        return np.array([[complex(x) for x in row] for row in self.entries])

    def min_eigenvalue(self):
        import numpy as np

        if self.n == 0:
            return 0.0
        return float(np.linalg.eigvalsh(self.to_numpy())[0])

    def __eq__(self, other):
        return isinstance(other, HermitianMatrix) and self.entries == other.entries

    def __repr__(self):
        return "HermitianMatrix(" + repr(self.entries) + ")"


def to_hermitian(form, frame):
    """Hermitian avatar H of a real (1,1)-form w = (i/2) sum H_ab Z^a Zbar^b."""
    if form.dim != frame.dim:
        raise ValueError("dimension mismatch between form and frame")
    if not form.is_real():
        raise ValueError("hermitian avatar requires a real form")
    split = frame.bidegree_split(form)
    for pq, piece in split.items():
        if pq != (1, 1) and not piece.is_zero():
            raise ValueError("hermitian avatar requires a pure (1,1)-form")
    n = frame.n
    coords = frame.frame_coords(form, 2)
    h = [[ZERO] * n for _ in range(n)]
    minus_two_i = QQi(0, -2).__mul__(ONE)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            y = coords.get((a, b + n), ZERO)
            h[a - 1][b - 1] = minus_two_i * y
    return HermitianMatrix(h)


def from_hermitian(h, frame):
    """Real (1,1)-form with prescribed Hermitian avatar."""
    n = frame.n
    half_i = QQi(0, qi("1/2").re)
    coords = {}
    for a in range(n):
        for b in range(n):
            x = h.entries[a][b]
            if not x.is_zero():
                coords[(a + 1, b + 1 + n)] = half_i * x
    return frame.from_frame_coords(coords, 2)


# ---------------------------------------------------------------------------
# Currents
# ---------------------------------------------------------------------------

class Current:
    """Functional on forms of one fixed bidegree.

    Coefficients live over the basis dual to {zeta_{A,B}}; the index is the
    frame multi-index S (holomorphic axes <= n, antiholomorphic > n).
    """

    __slots__ = ("frame", "bidegree", "coeffs")

    def __init__(self, frame, bidegree, coeffs=None):
        self.frame = frame
        self.bidegree = tuple(bidegree)
        clean = {}
        if coeffs:
            for s, c in coeffs.items():
                c = qi(c) if not isinstance(c, QQi) else c
                if not c.is_zero():
                    clean[tuple(s)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, frame, bidegree):
        return cls(frame, bidegree)

    def is_zero(self):
        return not self.coeffs

    def is_real(self):
        """Pairs real forms to real scalars (needs p = q)."""
        p, q = self.bidegree
        if p != q:
            return False
        n = self.frame.n
        for s, c in self.coeffs.items():
            swapped = _swap_index(s, n)
            if self.coeffs.get(swapped, ZERO) != c.conjugate():
                return False
        return True

    def scale(self, c):
        c = qi(c) if not isinstance(c, QQi) else c
        return Current(
            self.frame, self.bidegree, {s: c * x for s, x in self.coeffs.items()}
        )

    def add(self, other):
        if other.bidegree != self.bidegree or other.frame is not self.frame:
            raise ValueError("current addition needs matching bidegree and frame")
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            acc = out.get(s, ZERO) + c
            if acc.is_zero():
                out.pop(s, None)
            else:
                out[s] = acc
        return Current(self.frame, self.bidegree, out)

    def __add__(self, other):
        return self.add(other)

    def __eq__(self, other):
        return (
            isinstance(other, Current)
            and self.bidegree == other.bidegree
            and self.coeffs == other.coeffs
        )

    def hermitian_avatar(self):
        """G with <T, w> = tr(G H(w)); defined for bidegree (1,1)."""
        if self.bidegree != (1, 1):
            raise ValueError("hermitian avatar requires bidegree (1,1)")
        n = self.frame.n
        half = qi("1/2")
        g = [[ZERO] * n for _ in range(n)]
        for (a, bn), c in self.coeffs.items():
            g[bn - n - 1][a - 1] = half * c
        return HermitianMatrix(g)

    @classmethod
    def from_hermitian_avatar(cls, frame, g):
        n = frame.n
        two = qi(2)
        coeffs = {}
        for a in range(n):
            for b in range(n):
                x = g.entries[b][a]
                if not x.is_zero():
                    coeffs[(a + 1, b + 1 + n)] = two * x
        return cls(frame, (1, 1), coeffs)

    def __repr__(self):
        return f"Current{self.bidegree}({self.coeffs!r})"


def _swap_index(s, n):
    holo = sorted(x + n for x in s if x <= n)
    anti = sorted(x - n for x in s if x > n)
    return tuple(anti + holo)


def pair(t, form):
    """Duality pairing <T, form>; zero on every bidegree but T's."""
    if form.dim != t.frame.dim:
        raise ValueError("dimension mismatch between current and form")
    p, q = t.bidegree
    if p + q not in form.components:
        return ZERO
    coeffs = t.frame.zeta_coeffs(form, p, q)
    s = ZERO
    for idx, c in t.coeffs.items():
        f = coeffs.get(idx)
        if f is not None:
            s = s + c * f
    return s


def positive_generator(frame, v):
    """Extreme ray of the positive (1,1)-current cone: avatar v v*."""
    n = frame.n
    vv = [qi(x) if not isinstance(x, QQi) else x for x in v]
    if len(vv) != n:
        raise ValueError(f"generator vector must have length {n}")
    two = qi(2)
    coeffs = {}
    for a in range(n):
        if vv[a].is_zero():
            continue
        for b in range(n):
            if vv[b].is_zero():
                continue
            coeffs[(a + 1, b + 1 + n)] = two * vv[a].conjugate() * vv[b]
    return Current(frame, (1, 1), coeffs)


@dataclass
class PositivityWitness:
    is_positive: bool
    min_eigenvalue: float

    def __bool__(self):
        return self.is_positive


# ---------------------------------------------------------------------------
# Real parametrization of Hermitian matrices / real (1,1)-forms.
#
# Parameter order: the n diagonal entries, then (Re, Im) per off-diagonal
# pair (a < b).  The same coordinates serve real (1,1)-forms (through
# from_hermitian) and their dual currents; the current-side coordinates of
# an avatar G carry a factor 2 on the off-diagonal parts so that the plain
# dot product of coordinates equals tr(G H).
# ---------------------------------------------------------------------------

def hermitian_param_dim(n):
    return n * n


def params_to_hermitian(vec, n):
    h = [[ZERO] * n for _ in range(n)]
    pos = 0
    for a in range(n):
        h[a][a] = qi(vec[pos]) if not isinstance(vec[pos], QQi) else vec[pos]
        pos += 1
    for a in range(n):
        for b in range(a + 1, n):
            re = qi(vec[pos]) if not isinstance(vec[pos], QQi) else vec[pos]
            im = qi(vec[pos + 1]) if not isinstance(vec[pos + 1], QQi) else vec[pos + 1]
            pos += 2
            h[a][b] = re + I * im
            h[b][a] = re - I * im
    return HermitianMatrix(h)


def hermitian_to_params(h):
    n = h.n
    out = []
    for a in range(n):
        out.append(QQi(h.entries[a][a].re))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(QQi(h.entries[a][b].re))
            out.append(QQi(h.entries[a][b].im))
    return out


def current_params_of_avatar(g):
    """Coordinates of the current with avatar G: dot with form params = tr(G H)."""
    n = g.n
    two = qi(2)
    out = []
    for a in range(n):
        out.append(QQi(g.entries[a][a].re))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(two * QQi(g.entries[a][b].re))
            out.append(two * QQi(g.entries[a][b].im))
    return out


def avatar_of_current_params(vec, n):
    half = qi("1/2")
    h = [[ZERO] * n for _ in range(n)]
    pos = 0
    for a in range(n):
        h[a][a] = qi(vec[pos]) if not isinstance(vec[pos], QQi) else vec[pos]
        pos += 1
    for a in range(n):
        for b in range(a + 1, n):
            re = half * (qi(vec[pos]) if not isinstance(vec[pos], QQi) else vec[pos])
            im = half * (qi(vec[pos + 1]) if not isinstance(vec[pos + 1], QQi) else vec[pos + 1])
            pos += 2
            h[a][b] = re + I * im
            h[b][a] = re - I * im
    return HermitianMatrix(h)


def real_one_one_param_forms(frame):
    """Real (1,1)-forms realizing the Hermitian parameter directions."""
    n = frame.n
    forms = []
    for pos in range(hermitian_param_dim(n)):
        vec = [ZERO] * hermitian_param_dim(n)
        vec[pos] = ONE
        forms.append(from_hermitian(params_to_hermitian(vec, n), frame))
    return forms


def is_positive(t):
    """Exact PSD test of a real (1,1)-current, with a float eigenvalue witness."""
    if not t.is_real():
        raise ValueError("positivity is defined for real currents")
    g = t.hermitian_avatar()
    return PositivityWitness(g.is_psd(), g.min_eigenvalue())
