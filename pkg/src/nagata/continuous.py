"""Continuous group models: exact closed-form laws plus a metric coframe.

The metric tensor at x is C(x)^T C(x) for the coframe coefficient matrix
C(x) (row i holds the dx-coefficients of the i-th 1-form), so it is
positive definite wherever C is invertible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class ContinuousGroupModel:
    name: str
    dim: int
    multiply: Callable[[tuple, tuple], tuple]
    inverse: Callable[[tuple], tuple]
    coframe: Callable[[np.ndarray], np.ndarray]   # (m, dim) pts -> (m, dim, dim)
    box: tuple                                     # default per-coordinate ranges

    def identity(self) -> tuple:
        return (0.0,) * self.dim

    def metric_tensor(self, x: Sequence[float]) -> np.ndarray:
        C = self.coframe(np.asarray([x], dtype=float))[0]
        return C.T @ C

    def speed(self, x: Sequence[float], v: Sequence[float]) -> float:
        C = self.coframe(np.asarray([x], dtype=float))[0]
        return float(np.linalg.norm(C @ np.asarray(v, dtype=float)))

    def segment_length(self, p: Sequence[float], q: Sequence[float],
                       quadrature: int = 64) -> float:
        """Midpoint-rule length of the straight coordinate segment p -> q."""
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        ts = (np.arange(quadrature) + 0.5) / quadrature
        mids = p[None, :] + ts[:, None] * (q - p)[None, :]
        C = self.coframe(mids)
        step = (q - p) / quadrature
        return float(np.linalg.norm(np.einsum("nij,j->ni", C, step), axis=1).sum())


def left_invariance_residual(model: ContinuousGroupModel,
                             segments: Sequence[tuple],
                             translators: Sequence[tuple],
                             quadrature: int = 256) -> float:
    """max over samples of |len(g.seg) - len(seg)| / len(seg).

    Exact zero (up to quadrature) iff the coframe is invariant under the
    sampled left translations.
    """
    worst = 0.0
    for p, q in segments:
        base = model.segment_length(p, q, quadrature)
        for g in translators:
            gp = model.multiply(g, p)
            gq = model.multiply(g, q)
            moved = model.segment_length(gp, gq, quadrature)
            worst = max(worst, abs(moved - base) / base)
    return worst


# --- the 4-dimensional filiform model ---------------------------------------

def filiform4_multiply(x: tuple, y: tuple) -> tuple:
    """Degree-3 polynomial group law of the filiform algebra's group."""
    cross = -x[1] * y[0] + x[0] * y[1]
    return (
        x[0] + y[0],
        x[1] + y[1],
        x[2] + y[2] + cross / 2.0,
        x[3] + y[3] + (x[0] - y[0]) * cross / 12.0 + (-x[2] * y[0] + x[0] * y[2]) / 2.0,
    )


def filiform4_inverse(x: tuple) -> tuple:
    return (-x[0], -x[1], -x[2], -x[3])


def _filiform4_coframe(X: np.ndarray) -> np.ndarray:
    """Coframe whose restriction to each slice x1 = a reproduces the slice
    metric (dy2 + a dy3 + a^2 dy4)^2 + (dy3 + a dy4)^2 + dy4^2 in the
    right-translation parametrization of the slice, extended by dx1^2.

    Identity at the origin, unit determinant everywhere (triangular
    factors), so positive definite on all of R^4.
    """
    a = X[:, 0]
    n = len(X)
    C = np.zeros((n, 4, 4))
    C[:, 0, 0] = 1.0
    C[:, 1, 1] = 1.0 + a * a / 2.0 + a ** 4 / 6.0
    C[:, 1, 2] = a + a ** 3 / 2.0
    C[:, 1, 3] = a * a
    C[:, 2, 1] = a / 2.0 + a ** 3 / 6.0
    C[:, 2, 2] = 1.0 + a * a / 2.0
    C[:, 2, 3] = a
    C[:, 3, 1] = a * a / 6.0
    C[:, 3, 2] = a / 2.0
    C[:, 3, 3] = 1.0
    return C


def filiform4_model() -> ContinuousGroupModel:
    return ContinuousGroupModel(
        name="filiform4",
        dim=4,
        multiply=filiform4_multiply,
        inverse=filiform4_inverse,
        coframe=_filiform4_coframe,
        box=((-4.0, 4.0),) * 4,
    )


def euclidean_model(dim: int = 4) -> ContinuousGroupModel:
    def mul(x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(x):
        return tuple(-a for a in x)

    def coframe(X: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.eye(dim), (len(X), dim, dim)).copy()

    return ContinuousGroupModel(f"euclidean{dim}", dim, mul, inv, coframe,
                                ((-10.0, 10.0),) * dim)


CONTINUOUS_MODELS = {
    "filiform4": filiform4_model,
    "euclidean4": lambda: euclidean_model(4),
}
