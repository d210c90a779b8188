"""Built-in model catalog.

Desk-scale positive and negative instances: flat tori (Kahler), the
Kodaira-Thurston nilmanifold model, the Hopf model R + su(2), and a
solvable Inoue-type algebra.  All use the standard block complex
structure J e_{2a-1} = e_{2a}; every entry validates exactly.
"""

from __future__ import annotations

from .model import LieModel


def block_j(n):
    dim = 2 * n
    j = [[0] * dim for _ in range(dim)]
    for a in range(n):
        j[2 * a + 1][2 * a] = 1
        j[2 * a][2 * a + 1] = -1
    return j


def _torus(n):
    dim = 2 * n
    return LieModel(
        name=f"torus{dim}",
        dim=dim,
        structure={},
        j_matrix=block_j(n),
        theta=[0] * dim,
        description=f"abelian algebra of dimension {dim}; flat Kahler torus model",
    )


def _kodaira_thurston():
    return LieModel(
        name="kt",
        dim=4,
        structure={(1, 2, 4): -1},  # de^4 = e^1 wedge e^2
        j_matrix=block_j(2),
        theta=[0, 0, -1, 0],
        description="Kodaira-Thurston nilpotent model; LCK for theta = -e^3",
    )


def _hopf():
    # R + su(2): de^2 = -e^34, de^3 = e^24, de^4 = -e^23
    return LieModel(
        name="hopf",
        dim=4,
        structure={(3, 4, 2): 1, (2, 4, 3): -1, (2, 3, 4): 1},
        j_matrix=block_j(2),
        theta=[1, 0, 0, 0],
        description="Hopf surface model R + su(2); LCK for theta = e^1",
    )


def _inoue_type():
    # R acting on R^3 by ad(e_4) = diag(1, 1, -2):
    # de^1 = e^14, de^2 = e^24, de^3 = -2 e^34
    return LieModel(
        name="inoue",
        dim=4,
        structure={(1, 4, 1): -1, (2, 4, 2): -1, (3, 4, 3): 2},
        j_matrix=block_j(2),
        theta=[0, 0, 0, -2],
        description="solvable Inoue-type algebra R x R^3; LCK for theta = -2 e^4",
    )


def catalog_models():
    """Fresh instances of every catalog entry, keyed by name."""
    models = [_torus(2), _torus(3), _kodaira_thurston(), _hopf(), _inoue_type()]
    return {m.name: m for m in models}


def get_model(name):
    models = catalog_models()
    if name not in models:
        known = ", ".join(sorted(models))
        raise KeyError(f"unknown catalog model '{name}' (known: {known})")
    return models[name]
