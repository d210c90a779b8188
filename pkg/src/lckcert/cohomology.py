"""Exact twisted cohomology of a model.

Ranks, kernels and representatives of the twisted complex are computed by
rational Gaussian elimination; no floating point enters here.  Rank
decisions are brittle in floats and cheap exactly at these dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import ONE, ZERO, kernel_basis, rank, rref
from .multilinear import (
    GradedForm,
    degree_basis,
    hermitian_param_dim,
    pair,
    real_one_one_param_forms,
)


@dataclass
class DegreeData:
    degree: int
    space_dim: int
    kernel_dim: int
    rank: int           # rank of d_theta on this degree
    betti: int
    representatives: list = field(default_factory=list)


@dataclass
class CohomologyTable:
    model_name: str
    theta: tuple
    degrees: list = field(default_factory=list)

    def betti(self, k):
        return self.degrees[k].betti

    def betti_vector(self):
        return tuple(d.betti for d in self.degrees)

    def alternating_sum(self):
        return sum((-1) ** d.degree * d.betti for d in self.degrees)

    def __repr__(self):
        return (
            f"CohomologyTable({self.model_name}, theta={self.theta}, "
            f"betti={self.betti_vector()})"
        )


def _column_space_basis(matrix):
    """Canonical (RREF of the transpose) basis of the column space."""
    if not matrix:
        return []
    cols = [list(col) for col in zip(*matrix)]
    red, pivots = rref(cols)
    return [red[i] for i in range(len(pivots))]


def _representatives(kernel, image_basis):
    """Kernel vectors extending the image to a kernel basis, deterministically."""
    reps = []
    echelon = []

    def reduce(vec):
        red = vec[:]
        for piv, base in echelon:
            f = red[piv]
            if not f.is_zero():
                red = [x - f * y for x, y in zip(red, base)]
        return red

    def insert(vec):
        red = reduce(vec)
        piv = next((i for i, x in enumerate(red) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = ONE / red[piv]
        echelon.append((piv, [x * inv for x in red]))
        return True

    for vec in image_basis:
        insert(vec)
    for vec in kernel:
        if insert(vec):
            reps.append(vec)
    return reps


def morse_novikov(m, theta=None):
    """Twisted cohomology table with exact ranks and representatives."""
    m.require_valid()
    key = m.resolve_theta(theta)
    ops = m.operators(key)
    if not m.d(ops.theta_form).is_zero():
        raise ValueError("theta must be closed")

    dim = m.dim
    matrices = [ops.matrix("d_theta", k) for k in range(dim + 1)]
    table = CohomologyTable(model_name=m.name, theta=key)
    prev_rank = 0
    prev_image = []
    for k in range(dim + 1):
        space_dim = len(degree_basis(dim, k))
        mat = matrices[k]
        rk = rank(mat) if mat else 0
        ker = kernel_basis(mat, cols=space_dim)
        betti = len(ker) - prev_rank
        reps = _representatives(ker, prev_image)
        forms = [GradedForm.from_coeff_vector(dim, k, v) for v in reps]
        table.degrees.append(
            DegreeData(
                degree=k,
                space_dim=space_dim,
                kernel_dim=len(ker),
                rank=rk,
                betti=betti,
                representatives=forms,
            )
        )
        prev_rank = rk
        prev_image = _column_space_basis(matrices[k]) if k < dim else []
    return table


@dataclass
class OneOneSystem:
    """The closedness constraint on real (1,1)-forms in parameter form.

    matrix rows live over the degree-3 coefficient basis, columns over the
    Hermitian parameters; its kernel is ker d_theta restricted to real
    (1,1)-forms.
    """

    param_forms: list
    matrix: list
    kernel: list

    @property
    def n_params(self):
        return len(self.param_forms)


def one_one_system(m, theta=None):
    m.require_valid()
    ops = m.operators(m.resolve_theta(theta))
    frame = m.frame
    params = real_one_one_param_forms(frame)
    nrows = len(degree_basis(m.dim, 3))
    cols = [ops.d_theta(f).coeff_vector(3) for f in params]
    matrix = [[col[r] for col in cols] for r in range(nrows)]
    kern = kernel_basis(matrix, cols=len(params))
    return OneOneSystem(param_forms=params, matrix=matrix, kernel=kern)


def ker_d_theta_11(m, theta=None):
    """Exact basis of the d_theta-closed real (1,1)-forms."""
    system = one_one_system(m, theta)
    out = []
    for vec in system.kernel:
        form = GradedForm.zero(m.dim)
        for c, f in zip(vec, system.param_forms):
            if not c.is_zero():
                form = form + f.scale(c)
        out.append(form)
    return out


def annihilator_check(basis, t):
    """True iff the current annihilates every basis form exactly."""
    return all(pair(t, form).is_zero() for form in basis)


def closed_one_forms(m):
    """Exact basis of the closed invariant 1-forms, as coefficient tuples."""
    m.require_valid()
    matrix = m.ce_d(1)
    kern = kernel_basis(matrix, cols=m.dim)
    out = []
    for vec in kern:
        if any(not c.is_real() for c in vec):
            raise RuntimeError("closed 1-form basis must be real")
        out.append(tuple(c.re for c in vec))
    return out
