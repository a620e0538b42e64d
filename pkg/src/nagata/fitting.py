"""Growth-law fits: linear, log, and power models with a held-out residual.

Samples are ranked by abscissa; parameters come from the even-ranked half,
the reported residual is the max relative error on the odd-ranked half.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MODELS = ("linear", "log", "power")


class InsufficientSamplesError(ValueError):
    pass


@dataclass
class FitReport:
    model: str
    params: dict
    max_rel_residual: float
    n_samples: int
    sample_range: tuple

    def predict(self, x: float) -> float:
        p = self.params
        if self.model == "linear":
            return p["a"] * x + p["b"]
        if self.model == "log":
            return p["a"] * math.log(x + 1.0) + p["b"]
        return p["a"] * x ** p["alpha"]

    def as_dict(self) -> dict:
        return {"model": self.model, "params": self.params,
                "max_rel_residual": self.max_rel_residual,
                "n_samples": self.n_samples,
                "sample_range": list(self.sample_range)}


def _lstsq(design: np.ndarray, target: np.ndarray) -> np.ndarray:
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    return coef


def fit(samples, model: str, min_samples: int = 8) -> FitReport:
    """Least squares on even-ranked samples, max relative residual on odd.

    samples: iterable of (x, y) pairs.  The default 8-sample floor guards
    distortion fits; certificate fits across a handful of scales pass a
    smaller floor explicitly.
    """
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    pts = sorted((float(x), float(y)) for x, y in samples)
    if model == "power":
        pts = [(x, y) for x, y in pts if x > 0 and y > 0]
    if len(pts) < min_samples:
        raise InsufficientSamplesError(
            f"need >= {min_samples} samples for a {model} fit, got {len(pts)}")
    train = pts[::2]
    holdout = pts[1::2] or train
    xs = np.array([p[0] for p in train])
    ys = np.array([p[1] for p in train])
    if model == "linear":
        coef = _lstsq(np.stack([xs, np.ones_like(xs)], axis=1), ys)
        params = {"a": float(coef[0]), "b": float(coef[1])}
    elif model == "log":
        coef = _lstsq(np.stack([np.log(xs + 1.0), np.ones_like(xs)], axis=1), ys)
        params = {"a": float(coef[0]), "b": float(coef[1])}
    else:
        coef = _lstsq(np.stack([np.log(xs), np.ones_like(xs)], axis=1), np.log(ys))
        params = {"alpha": float(coef[0]), "a": float(math.exp(coef[1]))}
    report = FitReport(model, params, 0.0, len(pts), (pts[0][0], pts[-1][0]))
    rel = 0.0
    for x, y in holdout:
        pred = report.predict(x)
        denom = abs(y) if y != 0 else max(abs(pred), 1.0)
        rel = max(rel, abs(pred - y) / denom)
    report.max_rel_residual = float(rel)
    return report
