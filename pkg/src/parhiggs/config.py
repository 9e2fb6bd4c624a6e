"""Job configuration: JSON parsing, validation and expansion into bundle data."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import Poly, PolyMatrix, as_rational
from .pairing import (ANTISYMMETRIC, SYMMETRIC, PairingForm, check_pairing_iso,
                      isotropic_generic_flags, standard_form)
from .parabolic import ParabolicBundle, make_bundle, validate

CONFIG_SCHEMA = "parhiggs.config/1"
TASKS = ("sections", "hitchin", "equivariance", "very-stable", "stability", "serre", "dimensions")


class ConfigError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class JobConfig:
    name: str
    points: tuple[Fraction, ...]
    splitting: tuple[int, ...]
    weights: tuple[tuple[Fraction, ...], ...]
    flags: object  # "generic" or explicit matrices
    symmetry: str
    pairing_degree: int
    omega: object  # "standard" or PolyMatrix
    tasks: tuple[str, ...]
    seed: int = 0
    g: int = 0
    output: str | None = None
    bundle: ParabolicBundle | None = field(default=None, repr=False)
    pairing: PairingForm | None = field(default=None, repr=False)


def _rational(x, where, problems):
    if isinstance(x, bool) or isinstance(x, float):
        problems.append(f"{where}: expected an exact rational (int or \"num/den\"), got {x!r}")
        return None
    try:
        return as_rational(x)
    except (TypeError, ValueError, ZeroDivisionError):
        problems.append(f"{where}: cannot parse {x!r} as a rational")
        return None


def _int(x, where, problems):
    if isinstance(x, bool) or not isinstance(x, int):
        problems.append(f"{where}: expected an integer, got {x!r}")
        return None
    return x


def _poly(x, where, problems):
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        c = _rational(x, where, problems)
        return None if c is None else Poly.const(c)
    if not isinstance(x, list):
        problems.append(f"{where}: expected a coefficient list (constant term first)")
        return None
    cs = [_rational(c, f"{where}[{i}]", problems) for i, c in enumerate(x)]
    return None if any(c is None for c in cs) else Poly(cs)


def parse_config(data: dict, source: str = "<config>") -> JobConfig:
    """Validate a decoded JSON object and expand it into a :class:`JobConfig`."""
    problems: list[str] = []
    if not isinstance(data, dict):
        raise ConfigError([f"{source}: top level must be an object"])
    schema = data.get("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        problems.append(f"schema: expected {CONFIG_SCHEMA!r}, got {schema!r}")
    known = {"schema", "name", "points", "splitting", "weights", "flags", "pairing", "tasks",
             "seed", "g", "output", "description"}
    for key in sorted(set(data) - known):
        problems.append(f"{key}: unknown field")

    raw_points = data.get("points")
    points = []
    if not isinstance(raw_points, list):
        problems.append("points: expected a list of rationals")
    else:
        points = [_rational(p, f"points[{i}]", problems) for i, p in enumerate(raw_points)]
        seen = set()
        for i, p in enumerate(points):
            if p is not None and p in seen:
                problems.append(f"points[{i}]: duplicate marked point {p}")
            seen.add(p)

    raw_split = data.get("splitting")
    splitting = []
    if not isinstance(raw_split, list) or not raw_split:
        problems.append("splitting: expected a nonempty list of integers")
    else:
        splitting = [_int(d, f"splitting[{i}]", problems) for i, d in enumerate(raw_split)]
    n = len(splitting)
    r = len(points)

    raw_w = data.get("weights")
    weights = []
    if isinstance(raw_w, list) and raw_w and all(not isinstance(x, list) for x in raw_w):
        raw_w = [raw_w] * r
    if not isinstance(raw_w, list) or len(raw_w) != r:
        problems.append(f"weights: expected one weight vector or {r} per-point vectors")
    else:
        for k, w in enumerate(raw_w):
            if not isinstance(w, list) or len(w) != n:
                problems.append(f"weights[{k}]: expected {n} weights")
                continue
            weights.append(tuple(_rational(a, f"weights[{k}][{i}]", problems)
                                 for i, a in enumerate(w)))

    seed = data.get("seed", 0)
    seed = _int(seed, "seed", problems)
    g = _int(data.get("g", 0), "g", problems)
    if g is not None and g < 0:
        problems.append("g: genus must be non-negative")

    raw_tasks = data.get("tasks")
    tasks = []
    if not isinstance(raw_tasks, list) or not raw_tasks:
        problems.append("tasks: expected a nonempty list")
    else:
        for t in raw_tasks:
            if t not in TASKS:
                problems.append(f"tasks: unknown task {t!r} (choose from {', '.join(TASKS)})")
        tasks = [t for t in TASKS if t in raw_tasks]
    if g and any(t != "dimensions" for t in tasks):
        problems.append("g: only the dimensions task supports positive genus")

    pairing = data.get("pairing", {})
    if not isinstance(pairing, dict):
        problems.append("pairing: expected an object")
        pairing = {}
    symmetry = pairing.get("symmetry", ANTISYMMETRIC)
    if symmetry not in (ANTISYMMETRIC, SYMMETRIC):
        problems.append(f"pairing.symmetry: expected antisymmetric or symmetric, got {symmetry!r}")
    ell = _int(pairing.get("degree", 0), "pairing.degree", problems)
    omega = pairing.get("omega", "standard")
    if omega == "standard":
        if symmetry == ANTISYMMETRIC and n % 2:
            problems.append(f"pairing.omega: the standard antisymmetric form needs even rank, got {n}")
    elif isinstance(omega, list) and len(omega) == n and all(isinstance(row, list) and len(row) == n
                                                              for row in omega):
        entries = [[_poly(x, f"pairing.omega[{i}][{j}]", problems) for j, x in enumerate(row)]
                   for i, row in enumerate(omega)]
        if not any(x is None for row in entries for x in row):
            omega = PolyMatrix.from_rows(entries)
    else:
        problems.append(f"pairing.omega: expected \"standard\" or a {n}x{n} matrix")

    flags = data.get("flags", "generic")
    if flags != "generic":
        if not isinstance(flags, list) or len(flags) != r:
            problems.append(f"flags: expected \"generic\" or {r} matrices")
        else:
            parsed = []
            for k, F in enumerate(flags):
                if not isinstance(F, list) or len(F) != n or any(
                        not isinstance(row, list) or len(row) != n for row in F):
                    problems.append(f"flags[{k}]: expected an {n}x{n} matrix")
                    continue
                parsed.append([[_rational(x, f"flags[{k}][{i}][{j}]", problems)
                                for j, x in enumerate(row)] for i, row in enumerate(F)])
            flags = parsed

    if problems:
        raise ConfigError(problems)

    cfg = JobConfig(name=str(data.get("name", Path(source).stem)), points=tuple(points),
                    splitting=tuple(splitting), weights=tuple(weights), flags=flags,
                    symmetry=symmetry, pairing_degree=ell, omega=omega, tasks=tuple(tasks),
                    seed=seed, g=g, output=data.get("output"))
    _expand(cfg)
    return cfg


def _expand(cfg: JobConfig) -> None:
    """Build the pairing and bundle; ``generic`` flags come from the seed."""
    n = len(cfg.splitting)
    if cfg.omega == "standard":
        P = standard_form(n, cfg.symmetry, cfg.pairing_degree)
    else:
        P = PairingForm(cfg.omega, cfg.symmetry, cfg.pairing_degree)
    problems = []
    if cfg.flags == "generic":
        try:
            flags = isotropic_generic_flags(P, cfg.points, random.Random(cfg.seed))
        except ValueError as exc:
            raise ConfigError([f"flags: cannot generate isotropic flags ({exc})"]) from exc
    else:
        flags = cfg.flags
    E = make_bundle(cfg.points, cfg.splitting, flags, cfg.weights)
    problems += [f"bundle: {m}" for m in validate(E)]
    if not problems:
        problems += [f"pairing: {m}" for m in check_pairing_iso(E, P)]
    if problems:
        raise ConfigError(problems)
    cfg.bundle = E
    cfg.pairing = P


def load_config(path) -> JobConfig:
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from exc
    return parse_config(data, str(path))
