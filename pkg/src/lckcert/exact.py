"""Exact scalar arithmetic and rational linear algebra.

Everything structural in this package runs over the Gaussian rationals
Q(i); floating point appears only inside the numeric feasibility loop
and every float that survives it is rationalized and re-verified here.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    def rat(num=0, den=None):
        return _mpq(num) if den is None else _mpq(num, den)

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def rat(num=0, den=None):
        return Fraction(num) if den is None else Fraction(num, den)

RAT_ZERO = rat(0)
RAT_ONE = rat(1)


def parse_rational(text):
    """Parse "p/q" or "p" (also plain ints) into an exact rational."""
    if isinstance(text, str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return rat(int(num), int(den))
        return rat(int(text))
    if isinstance(text, float):
        raise ValueError(f"refusing to parse float {text!r} as exact rational")
    return rat(text)


def format_rational(q):
    return str(q)


def rationalize_float(x, max_denominator):
    """Nearest rational to x with denominator <= max_denominator."""
    f = Fraction(x).limit_denominator(max_denominator)
    return rat(f.numerator, f.denominator)


class QQi:
    """A Gaussian rational re + im*i with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(RAT_ZERO) else rat(re)
        self.im = im if type(im) is type(RAT_ZERO) else rat(im)

    @staticmethod
    def from_rational(q):
        return QQi(q, RAT_ZERO)

    def __add__(self, other):
        if not isinstance(other, QQi):
            other = QQi(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QQi):
            other = QQi(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QQi(other) - self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, QQi):
            other = QQi(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, QQi):
            other = QQi(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return QQi(other) / self

    def conjugate(self):
        return QQi(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        return self.re == other and self.im == 0

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)
# i^k for k mod 4; used by bidegree basis normalizations
I_POW = (ONE, I, QQi(-1), QQi(0, -1))


def qi(re=0, im=0):
    """Convenience constructor accepting ints, rationals or "p/q" strings."""
    if isinstance(re, QQi):
        return re
    return QQi(parse_rational(re), parse_rational(im))


# ---------------------------------------------------------------------------
# Dense exact linear algebra over QQi.  Matrices are lists of row lists.
# Sizes here stay small (<= ~70); plain Gaussian elimination is enough.
# ---------------------------------------------------------------------------

def mat_zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]

def mat_identity(n):
    m = mat_zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m

def mat_copy(a):
    return [row[:] for row in a]

def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = mat_zeros(rows, cols)
    for i in range(rows):
        arow = a[i]
        orow = out[i]
        for k in range(inner):
            aik = arow[k]
            if aik.is_zero():
                continue
            brow = b[k]
            for j in range(cols):
                bkj = brow[j]
                if not bkj.is_zero():
                    orow[j] = orow[j] + aik * bkj
    return out

def mat_vec(a, v):
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if not (x.is_zero() or y.is_zero()):
                s = s + x * y
        out.append(s)
    return out

def mat_transpose(a):
    return [list(col) for col in zip(*a)]

def mat_conj_transpose(a):
    return [[x.conjugate() for x in col] for col in zip(*a)]

def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def rref(a):
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pivot = m[r][c]
        m[r] = [x / pivot for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    return len(rref(a)[1])


def kernel_basis(a, cols=None):
    """Exact basis of the right kernel, one vector per free column."""
    rows = len(a)
    if cols is None:
        cols = len(a[0]) if rows else 0
    if rows == 0:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    red, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_consistent(a, b):
    """One exact solution of a x = b, or None when inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def mat_inverse(a):
    n = len(a)
    aug = [a[i][:] + mat_identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def gram_matrix(vectors):
    """Gram matrix <v_i, conj(v_j)> of exact vectors (Hermitian inner product)."""
    k = len(vectors)
    g = mat_zeros(k, k)
    for i in range(k):
        for j in range(k):
            s = ZERO
            for x, y in zip(vectors[i], vectors[j]):
                if not (x.is_zero() or y.is_zero()):
                    s = s + x * y.conjugate()
            g[i][j] = s
    return g


def project_onto_span(vectors, target):
    """Exact orthogonal projection of target onto span(vectors).

    Uses the Hermitian dot product; vectors need not be orthogonal but must
    be linearly independent.
    """
    if not vectors:
        return [ZERO] * len(target)
    # normal equations: sum_j c_j <v_j, v_i> = <target, v_i>
    g = gram_matrix(vectors)
    normal = [[g[j][i] for j in range(len(vectors))] for i in range(len(vectors))]
    rhs = []
    for v in vectors:
        s = ZERO
        for x, y in zip(target, v):
            if not (x.is_zero() or y.is_zero()):
                s = s + x * y.conjugate()
        rhs.append(s)
    coeffs = solve_consistent(normal, rhs)
    if coeffs is None:
        raise ValueError("projection basis is linearly dependent")
    out = [ZERO] * len(target)
    for c, v in zip(coeffs, vectors):
        if c.is_zero():
            continue
        for idx, x in enumerate(v):
            if not x.is_zero():
                out[idx] = out[idx] + c * x
    return out


# ---------------------------------------------------------------------------
# Exact positivity tests for Hermitian matrices (entries QQi, H = H*).
# ---------------------------------------------------------------------------

def is_hermitian(h):
    n = len(h)
    for i in range(n):
        if not h[i][i].is_real():
            return False
        for j in range(i + 1, n):
            if h[i][j] != h[j][i].conjugate():
                return False
    return True


def _determinant(a):
    n = len(a)
    m = mat_copy(a)
    det = ONE
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return ZERO
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det = det * m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c].is_zero():
                continue
            f = m[i][c] * inv
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def char_poly_coeffs(h):
    """Coefficients e_1..e_n with det(xI - H) = sum (-1)^k e_k x^(n-k).

    e_k is the sum of the k x k principal minors; computed by
    Faddeev-LeVerrier, exact for QQi entries.
    """
    n = len(h)
    coeffs = []
    mk = mat_identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(h, mk)
        tr = ZERO
        for i in range(n):
            tr = tr + mk[i][i]
        ck = tr / QQi(k)
        coeffs.append(ck if k % 2 else -ck)
        for i in range(n):
            mk[i][i] = mk[i][i] - ck
    return coeffs


def is_psd_exact(h):
    """H positive semidefinite, decided exactly.

    A Hermitian matrix is PSD iff every elementary symmetric function of
    its (real) eigenvalues is >= 0, i.e. all sums of principal minors
    are >= 0.
    """
    if not is_hermitian(h):
        raise ValueError("positivity test requires a Hermitian matrix")
    for ek in char_poly_coeffs(h):
        if not ek.is_real():
            raise ValueError("characteristic coefficients must be real")
        if ek.re < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Exact linear programming feasibility (phase-1 simplex, Bland's rule).
# Entries are plain rationals; sizes here stay small.
# ---------------------------------------------------------------------------

def lp_feasible_point(a, b):
    """One exact solution of A x = b with x >= 0, or None.

    Phase-1 simplex with Bland's anti-cycling rule; deterministic and
    terminating.  `a` is a list of rows of exact rationals, `b` a list of
    exact rationals.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    zero, one = rat(0), rat(1)
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in a[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(a[i]))
            rhs.append(b[i])
    # tableau columns: n structural + m artificial; artificial basis
    tableau = []
    for i in range(m):
        art = [zero] * m
        art[i] = one
        tableau.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials; reduced-cost row
    cost = [zero] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] = cost[j] - tableau[i][j]
    for i in range(m):
        cost[n + i] = zero

    total = n + m
    for _ in range(20000):
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][total] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return None  # unbounded phase-1 cannot happen, defensive
        pivot = tableau[leave][enter]
        inv = one / pivot
        tableau[leave] = [x * inv for x in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tableau[leave])]
        basis[leave] = enter
    if -cost[total] != 0:
        return None  # infeasible: artificials cannot all vanish
    x = [zero] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tableau[i][total]
    return x


def is_pd_exact(h):
    """H positive definite via Sylvester's criterion, decided exactly."""
    if not is_hermitian(h):
        raise ValueError("positivity test requires a Hermitian matrix")
    n = len(h)
    for k in range(1, n + 1):
        minor = _determinant([row[:k] for row in h[:k]])
        if not minor.is_real():
            raise ValueError("leading principal minors must be real")
        if minor.re <= 0:
            return False
    return True
