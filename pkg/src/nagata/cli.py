"""Command-line entry points.  Exit codes: 0 PASS/EVIDENCE-ONLY, 1 FAIL, 2 error."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog as catalog_mod
from .catalog import FAIL, builtin_catalog, compare_to_prediction, lookup
from .covers import Cover, verify_control
from .discrete import BUILTIN_MODELS
from .experiments import (ExperimentRecord, SpecValidationError, get_ball,
                          round_floats, run_experiment, spec_hash)
from .lie_algebra import classify, load_algebra
from .metrics import euclidean_view, word_metric_view
from .words import ball_to_csv, bfs_ball, cached_ball


def _emit(args, payload: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(round_floats(payload), indent=2, sort_keys=True))
    else:
        for k, v in round_floats(payload).items():
            print(f"{k}: {v}")


def _parse_scales(text: str) -> list:
    return [float(s) if "." in s else int(s) for s in text.split(",") if s]


def cmd_lie(args) -> int:
    alg = load_algebra(args.file)
    report = classify(alg)
    _emit(args, report.as_dict())
    return 0


def cmd_ball(args) -> int:
    model = BUILTIN_MODELS[args.model]()
    cache = args.cache or os.environ.get("NAGATA_CACHE")
    ball = cached_ball(model, args.radius, cache) if cache else bfs_ball(model, args.radius)
    payload = {"model": model.name, "radius": ball.radius, "size": len(ball)}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            ball_to_csv(ball, fh)
        payload["csv"] = args.csv
    _emit(args, payload)
    return 0


def cmd_distortion(args) -> int:
    spec = {"experiment": "distortion", "model": args.model,
            "subgroup": args.subgroup, "radius": args.radius, "fit": args.fit}
    record = run_experiment(spec, results_dir=args.results)
    _emit(args, record.as_dict())
    return 0


def cmd_karidi(args) -> int:
    spec = {"experiment": "karidi", "model": args.model, "radius": args.radius}
    if args.compare_radius:
        spec["compare_radius"] = args.compare_radius
    record = run_experiment(spec, results_dir=args.results)
    _emit(args, record.as_dict())
    return 0


def cmd_cover_build(args) -> int:
    spec = {"experiment": "cover", "model": args.model,
            "construction": args.construction, "radius": args.radius,
            "scales": _parse_scales(args.scales)}
    record = run_experiment(spec, results_dir=args.results)
    _emit(args, record.as_dict())
    ok = record.outputs["all_scales_passed"]
    return 0 if ok else 1


def cmd_cover_verify(args) -> int:
    cover = Cover.from_json(Path(args.cover).read_text())
    if args.scale:
        cover.scale = args.scale
    model = BUILTIN_MODELS[args.model]()
    if args.metric == "euclidean":
        ball = get_ball(model, args.radius)
        view = euclidean_view(list(ball.lengths), name=f"{model.name}-euclid")
    else:
        table = get_ball(model, 2 * args.radius)
        view = word_metric_view(model, table, args.radius)
    entry = verify_control(cover, view)
    _emit(args, entry.as_dict())
    return 0 if entry.passed else 1


def cmd_control_curve(args) -> int:
    spec = {"experiment": "control-curve", "model": args.model,
            "radius": args.radius, "families": args.families,
            "scales": _parse_scales(args.scales)}
    record = run_experiment(spec, results_dir=args.results)
    _emit(args, record.as_dict())
    return 0


def cmd_run(args) -> int:
    spec = json.loads(Path(args.spec).read_text())
    record = run_experiment(spec, results_dir=args.results)
    payload = record.as_dict()
    code = 0
    if args.compare:
        verdict = compare_to_prediction(payload, lookup(args.compare))
        payload["verdict"] = verdict.as_dict()
        if verdict.verdict == FAIL:
            code = 1
    _emit(args, payload)
    return code


def cmd_catalog(args) -> int:
    entries = builtin_catalog()
    if args.name:
        entries = [e for e in entries if e.name == args.name]
        if not entries:
            print(f"no catalog entry named {args.name!r}", file=sys.stderr)
            return 2
    payload = {e.name: {
        "model": e.model, "lie_algebra": e.lie_algebra,
        "predictions": {q: {"value": p.value, "citation": p.citation}
                        for q, p in e.predictions.items()},
        "notes": e.decomposition_notes,
    } for e in entries}
    _emit(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="nagata")
    top.add_argument("--json", action="store_true", help="emit JSON")
    top.add_argument("--results", default=None,
                     help="persist experiment records under this directory")
    sub = top.add_subparsers(dest="command", required=True)

    lie = sub.add_parser("lie", help="Lie algebra calculator")
    lie_sub = lie.add_subparsers(dest="lie_command", required=True)
    cls = lie_sub.add_parser("classify")
    cls.add_argument("file")
    cls.set_defaults(func=cmd_lie)

    ball = sub.add_parser("ball", help="breadth-first word ball")
    ball.add_argument("model", choices=sorted(BUILTIN_MODELS))
    ball.add_argument("--radius", type=int, required=True)
    ball.add_argument("--cache", default=None)
    ball.add_argument("--csv", default=None)
    ball.set_defaults(func=cmd_ball)

    dis = sub.add_parser("distortion", help="subgroup distortion scan")
    dis.add_argument("model", choices=sorted(BUILTIN_MODELS))
    dis.add_argument("--subgroup", default="center")
    dis.add_argument("--radius", type=int, required=True)
    dis.add_argument("--fit", default="power", choices=("linear", "log", "power"))
    dis.set_defaults(func=cmd_distortion)

    kar = sub.add_parser("karidi", help="quasi-norm comparison")
    kar.add_argument("model", choices=sorted(BUILTIN_MODELS))
    kar.add_argument("--radius", type=int, required=True)
    kar.add_argument("--compare-radius", type=int, default=None)
    kar.set_defaults(func=cmd_karidi)

    cov = sub.add_parser("cover", help="cover construction and verification")
    cov_sub = cov.add_subparsers(dest="cover_command", required=True)
    cb = cov_sub.add_parser("build")
    cb.add_argument("--construction", required=True,
                    choices=("brick", "heis-brick", "exact-seq"))
    cb.add_argument("--model", required=True, choices=sorted(BUILTIN_MODELS))
    cb.add_argument("--radius", type=int, required=True)
    cb.add_argument("--scales", required=True)
    cb.set_defaults(func=cmd_cover_build)
    cv = cov_sub.add_parser("verify")
    cv.add_argument("cover")
    cv.add_argument("--scale", type=float, default=None)
    cv.add_argument("--model", required=True, choices=sorted(BUILTIN_MODELS))
    cv.add_argument("--radius", type=int, required=True)
    cv.add_argument("--metric", default="word", choices=("word", "euclidean"))
    cv.set_defaults(func=cmd_cover_verify)

    curve = sub.add_parser("control-curve", help="greedy control curve")
    curve.add_argument("model", choices=sorted(BUILTIN_MODELS))
    curve.add_argument("--families", type=int, required=True)
    curve.add_argument("--scales", required=True)
    curve.add_argument("--radius", type=int, required=True)
    curve.set_defaults(func=cmd_control_curve)

    run = sub.add_parser("run", help="run a JSON experiment spec")
    run.add_argument("spec")
    run.add_argument("--compare", default=None,
                     help="compare outputs to this catalog entry")
    run.set_defaults(func=cmd_run)

    cat = sub.add_parser("catalog", help="list catalog predictions")
    cat.add_argument("name", nargs="?")
    cat.set_defaults(func=cmd_catalog)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
