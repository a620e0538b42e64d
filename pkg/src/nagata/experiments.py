"""Experiment orchestration: validated specs, deterministic outputs,
content-addressed persistence.

Primary outputs (spec.json, outputs.json) are byte-deterministic: floats
are rounded to 6 significant digits at the serialization boundary and all
collections are emitted in sorted or construction order.  Timestamps live
in a separate meta.json so reruns stay bit-for-bit comparable.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog as catalog_mod
from .constructions import (brick_cover, central_word_norm, exact_sequence_cover,
                            fiber_interval_builder, heisenberg_brick_cover)
from .continuous import filiform4_model
from .covers import ControlCertificate, certify
from .discrete import (BUILTIN_MODELS, SUBGROUPS, DiscreteGroupModel,
                       heisenberg_center, sol_fiber)
from .distortion import (HEISENBERG_LAYERS, fit_distortion, karidi_comparison,
                         subgroup_distortion)
from .fitting import fit
from .greedy import empirical_control_curve
from .grid import grid_distances, interval_points, translated_set_diameter
from .lie_algebra import BUILTIN_ALGEBRAS, classify, load_algebra
from .metrics import euclidean_view, hausdorff_quotient, word_metric_view
from .words import WordBall, bfs_ball, cached_ball

CODE_VERSION = "nagata-0.1.0"

EXPERIMENT_KINDS = ("distortion", "karidi", "cover", "control-curve",
                    "filiform-diameter", "lie-classify")


class SpecValidationError(ValueError):
    def __init__(self, problems: list):
        self.problems = problems
        super().__init__("invalid experiment spec: " + "; ".join(problems))


def round_floats(obj, sig: int = 6):
    """Round every float to sig significant digits, recursively."""
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return repr(obj)
        return float(f"%.{sig}g" % obj)
    if isinstance(obj, dict):
        return {k: round_floats(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, sig) for v in obj]
    return obj


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def spec_hash(spec: dict) -> str:
    return hashlib.sha256(canonical_json(spec).encode()).hexdigest()[:16]


@dataclass
class ExperimentRecord:
    experiment_id: str
    spec: dict
    outputs: dict
    code_version: str = CODE_VERSION

    def as_dict(self) -> dict:
        return {"experiment": self.spec.get("experiment"),
                "experiment_id": self.experiment_id,
                "spec": self.spec, "outputs": self.outputs,
                "code_version": self.code_version}

    def save(self, results_dir) -> Path:
        out = Path(results_dir) / self.experiment_id
        if out.exists() and (out / "outputs.json").exists():
            prior = json.loads((out / "outputs.json").read_text())
            if prior != self.outputs:
                raise RuntimeError(
                    f"content-addressed directory {out} holds different outputs; "
                    "refusing to overwrite")
        out.mkdir(parents=True, exist_ok=True)
        (out / "spec.json").write_text(canonical_json(self.spec) + "\n")
        (out / "outputs.json").write_text(canonical_json(self.outputs) + "\n")
        (out / "meta.json").write_text(json.dumps(
            {"written_at": time.time(), "code_version": self.code_version}) + "\n")
        return out

    @staticmethod
    def load(path) -> "ExperimentRecord":
        p = Path(path)
        spec = json.loads((p / "spec.json").read_text())
        outputs = json.loads((p / "outputs.json").read_text())
        meta = json.loads((p / "meta.json").read_text())
        return ExperimentRecord(p.name, spec, outputs, meta["code_version"])

    def __eq__(self, other):
        return (isinstance(other, ExperimentRecord)
                and self.experiment_id == other.experiment_id
                and self.spec == other.spec and self.outputs == other.outputs)


# --- shared resources --------------------------------------------------------

def get_ball(model: DiscreteGroupModel, radius: int,
             cache_dir=None) -> WordBall:
    cache = cache_dir or os.environ.get("NAGATA_CACHE")
    if cache:
        return cached_ball(model, radius, cache)
    return bfs_ball(model, radius)


def _require(spec: dict, fields: dict) -> list:
    problems = []
    for name, check in fields.items():
        if name not in spec:
            problems.append(f"missing field {name!r}")
            continue
        ok, why = check(spec[name])
        if not ok:
            problems.append(f"invalid field {name!r}: {why}")
    return problems


def _is_model(v):
    return (v in BUILTIN_MODELS, f"unknown model {v!r}")


def _is_pos_int(v):
    return (isinstance(v, int) and v > 0, "must be a positive integer")


def _is_scales(v):
    ok = (isinstance(v, list) and v
          and all(isinstance(s, (int, float)) and s >= 1 for s in v))
    return (ok, "must be a nonempty list of scales >= 1")


# --- experiment implementations -----------------------------------------------

def _run_distortion(spec: dict, cache_dir) -> dict:
    problems = _require(spec, {"model": _is_model, "radius": _is_pos_int})
    sub = spec.get("subgroup", "center")
    key = (spec.get("model"), sub)
    if not problems and key not in SUBGROUPS:
        problems.append(f"invalid field 'subgroup': no subgroup {sub!r} of {key[0]!r}")
    if problems:
        raise SpecValidationError(problems)
    model = BUILTIN_MODELS[spec["model"]]()
    H = SUBGROUPS[key]()
    ball = get_ball(model, spec["radius"], cache_dir)
    sample = subgroup_distortion(ball, H)
    fit_model = spec.get("fit", "power")
    report = fit_distortion(sample, fit_model)
    return {
        "model": model.name, "subgroup": H.name, "radius": ball.radius,
        "n_pairs": len(sample.pairs),
        "n_interior_pairs": len(sample.fit_pairs()),
        "fit": report.as_dict(),
        "pairs_head": sample.pairs[:20],
    }


def _run_karidi(spec: dict, cache_dir) -> dict:
    problems = _require(spec, {"model": _is_model, "radius": _is_pos_int})
    if not problems and spec["model"] != "heisenberg":
        problems.append("invalid field 'model': karidi layers shipped for heisenberg")
    if problems:
        raise SpecValidationError(problems)
    R = spec["radius"]
    R0 = spec.get("compare_radius", max(2, (3 * R) // 4))
    model = BUILTIN_MODELS[spec["model"]]()
    ball = get_ball(model, R, cache_dir)
    big = karidi_comparison(ball, HEISENBERG_LAYERS, R)
    small = karidi_comparison(ball, HEISENBERG_LAYERS, R0)
    change = abs(big.kappa_hat - small.kappa_hat) / small.kappa_hat
    return {
        "model": model.name, "radius": R, "compare_radius": R0,
        "kappa_hat": big.kappa_hat, "kappa_hat_small": small.kappa_hat,
        "relative_change": change,
        "n_samples": big.n_samples,
        "worst_element": list(big.worst_element),
    }


def build_cover_certificate(model_name: str, construction: str, radius: int,
                            scales, cache_dir=None) -> ControlCertificate:
    model = BUILTIN_MODELS[model_name]()
    if construction == "brick":
        n = {"Z": 1, "Z^2": 2, "Z^3": 3}.get(model_name)
        if n is None:
            raise SpecValidationError([f"invalid field 'model': bricks need Z^n, got {model_name!r}"])
        ball = get_ball(model, radius, cache_dir)
        carrier = list(ball.lengths)
        view = euclidean_view(carrier, name=f"{model_name}-ball{radius}-euclid")
        covers = [brick_cover(carrier, n, s) for s in scales]
        return certify(covers, view, view.name)
    if construction == "heis-brick":
        if model_name != "heisenberg":
            raise SpecValidationError(["invalid field 'model': heis-brick needs heisenberg"])
        table = get_ball(model, 2 * radius, cache_dir)
        view = word_metric_view(model, table, radius)
        ball = WordBall(model.name, table.gen_hash, radius,
                        {g: l for g, l in table.lengths.items() if l <= radius})
        covers = [heisenberg_brick_cover(ball, int(s), radius) for s in scales]
        for c in covers:
            c.claimed_bound = 2.0 * radius  # carrier diameter; verification is exact
        return certify(covers, view, view.name)
    if construction == "exact-seq":
        if model_name != "heisenberg":
            raise SpecValidationError(["invalid field 'model': exact-seq shipped for heisenberg"])
        table = get_ball(model, 2 * radius, cache_dir)
        view = word_metric_view(model, table, radius)
        ball = WordBall(model.name, table.gen_hash, radius,
                        {g: l for g, l in table.lengths.items() if l <= radius})
        K = heisenberg_center()
        qview, qnorms = hausdorff_quotient(ball, K)
        builder = fiber_interval_builder(central_word_norm)
        covers = []
        for s in scales:
            keys = qview.carrier
            coverH = brick_cover(keys, 2, int(s))
            covers.append(exact_sequence_cover(
                view, qview, qnorms.norms, K, coverH, builder,
                fiber_coordinate=lambda y: y[2], model=model))
        return certify(covers, view, view.name)
    raise SpecValidationError([f"invalid field 'construction': {construction!r}"])


def _run_cover(spec: dict, cache_dir) -> dict:
    problems = _require(spec, {"model": _is_model, "radius": _is_pos_int,
                               "scales": _is_scales})
    construction = spec.get("construction", "brick")
    if construction not in ("brick", "heis-brick", "exact-seq"):
        problems.append(f"invalid field 'construction': {construction!r}")
    if problems:
        raise SpecValidationError(problems)
    cert = build_cover_certificate(spec["model"], construction, spec["radius"],
                                   spec["scales"], cache_dir)
    return cert.as_dict()


def _run_control_curve(spec: dict, cache_dir) -> dict:
    problems = _require(spec, {"model": _is_model, "radius": _is_pos_int,
                               "families": _is_pos_int, "scales": _is_scales})
    if problems:
        raise SpecValidationError(problems)
    model = BUILTIN_MODELS[spec["model"]]()
    ball = get_ball(model, spec["radius"], cache_dir)
    n = spec["families"] - 1
    samples = empirical_control_curve(model, ball, n, spec["scales"],
                                      rho_cap=spec.get("rho_cap"))
    pts = [(c.scale, c.bound) for c in samples if not c.failed]
    out = {
        "model": model.name, "radius": ball.radius, "families": n + 1,
        "heuristic": True,
        "samples": [{"scale": c.scale, "bound": c.bound, "rho": c.rho,
                     "failed": c.failed} for c in samples],
    }
    if len(pts) >= 3:
        out["linear_fit"] = fit(pts, "linear", min_samples=3).as_dict()
        out["power_fit"] = fit(pts, "power", min_samples=3).as_dict()
    return out


def _run_filiform_diameter(spec: dict, cache_dir) -> dict:
    direction = spec.get("direction", "e4")
    problems = []
    if direction not in ("e3", "e4"):
        problems.append(f"invalid field 'direction': {direction!r}")
    c = spec.get("length", 0.5)
    h = spec.get("h", 1.0 / 16)
    x1s = spec.get("x1", [1, 2, 3])
    if not (isinstance(x1s, list) and x1s):
        problems.append("invalid field 'x1': need a nonempty list")
    if h <= 0 or h > 0.1:
        problems.append("invalid field 'h': need 0 < h <= 0.1")
    if problems:
        raise SpecValidationError(problems)
    model = filiform4_model()
    axis = 2 if direction == "e3" else 3
    pts = interval_points(axis, c, samples=spec.get("samples", 5))
    rows = []
    for a in x1s:
        target = a * a * c if direction == "e4" else a * c
        diam, meta = translated_set_diameter(model, pts, (float(a), 0.0, 0.0, 0.0), h)
        diam_half, _ = translated_set_diameter(model, pts, (float(a), 0.0, 0.0, 0.0), h / 2)
        rows.append({
            "x1": a, "target": target, "diameter": diam,
            "diameter_half_step": diam_half,
            "ratio": diam / target,
            "refinement_change": abs(diam - diam_half) / diam,
            "n_nodes": meta["n_nodes"],
        })
    return {"direction": direction, "length": c, "h": h, "rows": rows}


def _run_lie_classify(spec: dict, cache_dir) -> dict:
    name = spec.get("algebra")
    if not name:
        raise SpecValidationError(["missing field 'algebra'"])
    if name in BUILTIN_ALGEBRAS:
        alg = BUILTIN_ALGEBRAS[name]()
    elif Path(str(name)).exists():
        alg = load_algebra(name)
    else:
        raise SpecValidationError(
            [f"invalid field 'algebra': {name!r} is neither builtin nor a file"])
    return classify(alg).as_dict()


_RUNNERS = {
    "distortion": _run_distortion,
    "karidi": _run_karidi,
    "cover": _run_cover,
    "control-curve": _run_control_curve,
    "filiform-diameter": _run_filiform_diameter,
    "lie-classify": _run_lie_classify,
}


def run_experiment(spec: dict, cache_dir=None, results_dir=None) -> ExperimentRecord:
    """Validate, execute, round, and optionally persist one experiment."""
    kind = spec.get("experiment")
    if kind not in _RUNNERS:
        raise SpecValidationError(
            [f"missing or invalid field 'experiment': must be one of {EXPERIMENT_KINDS}"])
    outputs = _RUNNERS[kind](spec, cache_dir)
    outputs = round_floats(outputs)
    record = ExperimentRecord(spec_hash(spec), dict(spec), outputs)
    if results_dir:
        record.save(results_dir)
    return record


def compare_record(record: ExperimentRecord, entry_name: str) -> catalog_mod.Verdict:
    entry = catalog_mod.lookup(entry_name)
    return catalog_mod.compare_to_prediction(record.as_dict(), entry)
