"""Command line: run checks from JSON configs, write the example corpus, evaluate dimensions."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import CONFIG_SCHEMA, TASKS, ConfigError, JobConfig, load_config, parse_config
from .core import Poly, PolyMatrix, QuadNumber
from .hitchin import HitchinPoint, equivariance_check, hitchin_image, strong_vanishing_check
from .pairing import compatible_higgs_space
from .parabolic import PARABOLIC, STRONG, HiggsField, hom_section_space, parabolic_degree
from .stability import stability_decide_rank2
from .verystable import (ModuliDimParams, moduli_dimension, moduli_dimension_general,
                         serre_duality_check, very_stability_verdict)

REPORT_SCHEMA = "parhiggs.report/1"
EXIT_OK, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2


def to_json(x):
    """Exact JSON form: rationals as ``"num/den"``, polynomials as coefficient lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, QuadNumber):
        return {"a": to_json(x.a), "b": to_json(x.b), "sqrt": to_json(x.c)}
    if isinstance(x, Poly):
        return [to_json(c) for c in x.coeffs]
    if isinstance(x, PolyMatrix):
        return [[to_json(x[i, j]) for j in range(x.cols)] for i in range(x.rows)]
    if isinstance(x, HiggsField):
        return to_json(x.matrix)
    if isinstance(x, HitchinPoint):
        return {"group": x.group, "coefficients": [to_json(c) for c in x.coefficients]}
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_json(v) for v in items]
    if is_dataclass(x):
        return {f.name: to_json(getattr(x, f.name)) for f in fields(x) if not f.name.startswith("_")}
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed in reports")
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _sample_coeffs(rng: random.Random, k: int):
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)]


# ---------------------------------------------------------------------------
# tasks


def task_sections(cfg: JobConfig, rng):
    E, P = cfg.bundle, cfg.pairing
    Wst = compatible_higgs_space(E, P, STRONG)
    W = compatible_higgs_space(E, P, PARABOLIC)
    k = E.curve.kd_degree
    return {
        "twist": k,
        "dim_W_st": Wst.dimension,
        "dim_W": W.dimension,
        "dim_strong_endomorphisms": hom_section_space(E, k, STRONG).dimension,
        "dim_parabolic_endomorphisms": hom_section_space(E, k, PARABOLIC).dimension,
        "basis_W_st": list(Wst.basis),
        "basis_W": list(W.basis),
        "parabolic_degree": parabolic_degree(E),
    }


def task_hitchin(cfg: JobConfig, rng):
    E, P = cfg.bundle, cfg.pairing
    group = P.group()
    out = {"group": group}
    for key, mode in (("strong", STRONG), ("parabolic", PARABOLIC)):
        W = compatible_higgs_space(E, P, mode)
        phi = W.combine(_sample_coeffs(rng, W.dimension))
        images = [hitchin_image(b, group, P) for b in W.basis]
        image = hitchin_image(phi, group, P)
        rep = {"sample_coefficients": _coeffs_of(W, phi), "sample_image": image,
               "basis_images": images,
               "degree_bounds_ok": all(a.degree_bounds_ok(E.curve.kd_degree) for a in images + [image])}
        if mode == STRONG:
            rep["vanish_at_marked_points"] = all(strong_vanishing_check(a, E.curve)
                                                 for a in images + [image])
        out[key] = rep
    return out


def _coeffs_of(W, phi):
    c = W.coordinates(phi)
    return c if c is not None else []


def task_equivariance(cfg: JobConfig, rng):
    E, P = cfg.bundle, cfg.pairing
    group = P.group()
    W = compatible_higgs_space(E, P, PARABOLIC)
    phi = W.combine(_sample_coeffs(rng, W.dimension))
    ts = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(3)]
    checks = [{"t": t, "holds": equivariance_check(phi, t, group, P)} for t in ts]
    return {"group": group, "checks": checks, "all_hold": all(c["holds"] for c in checks)}


def task_very_stable(cfg: JobConfig, rng):
    return very_stability_verdict(cfg.bundle, cfg.pairing, seed=cfg.seed)


def task_stability(cfg: JobConfig, rng):
    E = cfg.bundle
    if E.rank != 2:
        return {"verdict": "not-applicable", "method": "rank-check",
                "reason": f"the stability decision covers rank 2 only, this bundle has rank {E.rank}"}
    v = stability_decide_rank2(E, cfg.pairing)
    return {"verdict": v.verdict, "slope": v.slope, "method": v.method,
            "candidates": v.candidates, "witness": v.witness,
            "witness_pardeg": v.witness.pardeg if v.witness else None}


def task_serre(cfg: JobConfig, rng):
    rep = serre_duality_check(cfg.bundle, cfg.pairing)
    rep["method"] = "euler-characteristic"
    return rep


def task_dimensions(cfg: JobConfig, rng):
    n = len(cfg.splitting)
    group = cfg.pairing.group() if cfg.pairing is not None else f"Sp({n})"
    params = ModuliDimParams(group, n // 2, cfg.g, len(cfg.points))
    d = moduli_dimension(params)
    general = moduli_dimension_general(params)
    return {"group": group, "m": params.m, "g": params.g, "r": params.r, "dimension": d,
            "general_formula": general, "agree": d == general, "method": "closed-form"}


TASK_FUNCS = {
    "sections": task_sections,
    "hitchin": task_hitchin,
    "equivariance": task_equivariance,
    "very-stable": task_very_stable,
    "stability": task_stability,
    "serre": task_serre,
    "dimensions": task_dimensions,
}


def run_report(cfg: JobConfig, tasks=None) -> dict:
    """Run the requested tasks in a fixed order; failures are recorded per task."""
    wanted = [t for t in TASKS if t in (tasks or cfg.tasks)]
    results = {}
    failed = []
    for t in wanted:
        rng = random.Random(f"{cfg.seed}:{t}")
        try:
            results[t] = {"status": "ok", "result": to_json(TASK_FUNCS[t](cfg, rng))}
        except Exception as exc:  # recorded, never aborts the batch
            results[t] = {"status": "error", "error": f"{type(exc).__name__}: {exc}"}
            failed.append(t)
    return {"schema": REPORT_SCHEMA, "version": __version__, "seed": cfg.seed, "name": cfg.name,
            "task_order": wanted, "tasks": results, "failed_tasks": failed}


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# example corpus

Q14, Q34, Q12 = "1/4", "3/4", "1/2"
SP4_WEIGHTS = ["1/8", "3/8", "5/8", "7/8"]
ALL_TASKS = list(TASKS)

CORPUS = {
    "sp2_r4.json": {
        "description": "O+O with four generic flags; strongly very stable",
        "points": [0, 1, 2, 3], "splitting": [0, 0], "weights": [Q14, Q34],
        "flags": "generic", "seed": 4},
    "sp2_r5.json": {
        "description": "O+O with five generic flags; dim W_st = 2",
        "points": [0, 1, 2, 3, 4], "splitting": [0, 0], "weights": [Q14, Q34],
        "flags": "generic", "seed": 5},
    "sp2_r4_tuned.json": {
        "description": "flag lines at the first two points both equal to e1; "
                       "[[0, (z-2)(z-3)], [0, 0]] is a nonzero nilpotent strong field",
        "points": [0, 1, 2, 3], "splitting": [0, 0], "weights": [Q14, Q34],
        "flags": [[[0, 1], [1, 0]], [[0, 1], [1, 0]], [[1, 1], [0, 1]], [[1, -1], [1, 1]]],
        "seed": 0},
    "sp2_unstable.json": {
        "description": "O(1)+O(-1) with weights (0, 1/2) at three points; O(1) destabilizes",
        "points": [0, 1, 2], "splitting": [1, -1], "weights": [0, Q12],
        "flags": "generic", "seed": 7},
    "so3_r4.json": {
        "description": "split orthogonal O+O+O, four points; odd-rank parity check",
        "points": [0, 1, 2, 3], "splitting": [0, 0, 0], "weights": [Q14, Q12, Q34],
        "pairing": {"symmetry": "symmetric", "degree": 0, "omega": "standard"},
        "flags": "generic", "seed": 3},
    "so4_r3.json": {
        "description": "split orthogonal rank 4, three points; Pfaffian slot",
        "points": [0, 1, 2], "splitting": [0, 0, 0, 0], "weights": SP4_WEIGHTS,
        "pairing": {"symmetry": "symmetric", "degree": 0, "omega": "standard"},
        "flags": "generic", "seed": 11},
    "sp4_r3.json": {
        "description": "symplectic rank 4, three points",
        "points": [0, 1, 2], "splitting": [0, 0, 0, 0], "weights": SP4_WEIGHTS,
        "flags": "generic", "seed": 2},
    "sp2_dimensions.json": {
        "description": "moduli dimension for Sp(2), genus 2, one point",
        "points": [0], "splitting": [0, 0], "weights": [Q14, Q34], "g": 2,
        "flags": "generic", "seed": 0, "tasks": ["dimensions"]},
}


def corpus_configs() -> dict[str, dict]:
    out = {}
    for name, body in CORPUS.items():
        cfg = {"schema": CONFIG_SCHEMA, "name": name[:-5], "tasks": ALL_TASKS}
        cfg.setdefault("pairing", {"symmetry": "antisymmetric", "degree": 0, "omega": "standard"})
        cfg.update(body)
        out[name] = cfg
    return out


def emit_examples(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, cfg in corpus_configs().items():
        path = directory / name
        path.write_text(json.dumps(cfg, sort_keys=True, indent=2) + "\n")
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# entry point


def _cmd_check(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        for p in exc.problems:
            print(f"config error: {p}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None and args.seed != cfg.seed:
        data = json.loads(Path(args.config).read_text())
        data["seed"] = args.seed
        try:
            cfg = parse_config(data, args.config)
        except ConfigError as exc:
            for p in exc.problems:
                print(f"config error: {p}", file=sys.stderr)
            return EXIT_CONFIG
    tasks = args.task or None
    report = run_report(cfg, tasks)
    text = dump_report(report)
    out = args.out or cfg.output
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    for t in report["task_order"]:
        res = report["tasks"][t]
        line = res["status"] if res["status"] == "error" else _summary(t, res["result"])
        print(f"{t}: {line}", file=sys.stderr)
    return EXIT_INTERNAL if report["failed_tasks"] else EXIT_OK


def _summary(task: str, res: dict) -> str:
    if task == "sections":
        return f"dim W_st = {res['dim_W_st']}, dim W = {res['dim_W']}"
    if task == "very-stable":
        return f"{res['verdict']} ({res['strong']['method']}); {res['very_stable']}"
    if task == "stability":
        return res["verdict"]
    if task == "serre":
        return f"dim W_st = {res['dim_W_st']}, h1 = {res['h1']}, equal = {res['equal']}"
    if task == "dimensions":
        return str(res["dimension"])
    if task == "equivariance":
        return f"all hold = {res['all_hold']}"
    return "ok"


def _cmd_corpus(args) -> int:
    try:
        for path in emit_examples(args.directory):
            print(path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def _cmd_dim(args) -> int:
    try:
        params = ModuliDimParams(args.group, args.m, args.g, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(moduli_dimension(params))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="parhiggs", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the tasks of a JSON config and print the report")
    p.add_argument("config")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--task", action="append", choices=TASKS,
                   help="run only this task (repeatable)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("corpus", help="write the bundled example configs")
    p.add_argument("directory")
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("dim", help="moduli dimension, e.g. dim Sp 1 2 1")
    p.add_argument("group", help="Sp, SO(2m), SO(2m+1) or a concrete group such as SO(5)")
    p.add_argument("m", type=int)
    p.add_argument("g", type=int)
    p.add_argument("r", type=int)
    p.set_defaults(func=_cmd_dim)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
