"""Command-line front end.

Inputs come either inline (``--points``, ``--coeffs``) or from a JSON file
with fields ``points``, ``C`` and optionally ``B`` and ``D``.  Rationals in
JSON must be strings such as "3/4" or plain integers.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Sequence

from . import poly as P
from .config import SparseSystem, SupportConfig, normalize_to_orthant
from .errors import ParseError, SparseMultError, ValidationError
from .families import (
    bounds_report,
    hypersurface_bounds,
    max_hypersurface_mult,
    max_mult_circuit_system,
    verify_cyclic,
    witness_system,
)
from .gale import (
    GaleData,
    duality_square,
    gale_data,
    gale_system,
    hdual_multiplicity,
    hdual_series,
    reduced_gale_dual_D,
    repair_convenience,
    repair_gale_convenience,
)
from .newton import (
    VanishingSumEvaluator,
    covolume_single,
    is_convenient,
    mixed_covolume,
    newton_diagram,
    polytope_from_points,
    staircase,
    staircase_of_poly,
)
from .oracle import (
    DEGENERATE,
    INFINITE,
    NON_DEGENERATE,
    PolySystem,
    hypersurface_multiplicity,
    multiplicity_at_origin,
    nondegeneracy_check,
    system_multiplicity,
    system_nondegeneracy,
)

COMMANDS = ("mult", "gale", "hdual", "square", "diagram", "covolume", "bounds", "witness", "cyclic", "hyper", "reproduce")
TARGETS = ("triangle", "cube", "planar-witness", "table1", "highmult", "witness-grid")
GOLDEN_DIR = Path(__file__).resolve().parents[2] / "reproductions"


@dataclass
class ParsedInput:
    config: SupportConfig
    coeffs: tuple | None = None
    B: tuple | None = None
    D: tuple | None = None


@dataclass
class JobSpec:
    command: str
    input: str | None = None
    options: Dict[str, object] = field(default_factory=dict)


# parsing


def parse_rational(text, where: str = "") -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"{where}: rationals must be strings or integers, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: not a rational number: {text!r}") from None


def parse_points_text(text: str) -> List[tuple]:
    """'0,1,2,3' gives four 1-d points; '0,0;1,0;0,1' gives 2-d points."""
    text = text.strip()
    if ";" in text:
        chunks = [c for c in text.split(";") if c.strip()]
        return [tuple(parse_rational(x, "--points") for x in c.split(",")) for c in chunks]
    return [(parse_rational(x, "--points"),) for x in text.split(",") if x.strip()]


def parse_matrix_text(text: str, name: str) -> List[tuple]:
    rows = [r for r in text.strip().split(";") if r.strip()]
    return [tuple(parse_rational(x, name) for x in r.split(",")) for r in rows]


def _matrix_field(data, key: str) -> List[tuple] | None:
    if key not in data:
        return None
    value = data[key]
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(f"field {key!r} must be a list of rows")
    return [tuple(parse_rational(x, f"{key}[{i}]") for x in r) for i, r in enumerate(value)]


def parse_document(text: str) -> ParsedInput:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", 1, 1)
    if "points" not in data:
        raise ParseError("missing field 'points'")
    points = _matrix_field(data, "points")
    coeffs = _matrix_field(data, "C")
    B = _matrix_field(data, "B")
    D = _matrix_field(data, "D")
    return build_input(points, coeffs, B, D)


def build_input(points, coeffs=None, B=None, D=None) -> ParsedInput:
    config = SupportConfig(tuple(points))
    if coeffs is not None:
        system = SparseSystem(config, coeffs)
        coeffs = system.coeffs
    gd_B = gd_D = None
    if (B is None) != (D is None):
        raise ValidationError("Gale pair", "B and D must be given together")
    if B is not None:
        try:
            B = tuple(tuple(int(x) for x in row) for row in B)
        except (TypeError, ValueError):
            raise ValidationError("integer B", "entries of B must be integers") from None
        gd = GaleData(B, D)
        if coeffs is not None:
            gd.check_against(config, coeffs)
        gd_B, gd_D = gd.B, gd.D
    return ParsedInput(config, coeffs, gd_B, gd_D)


def parse_input(path: str) -> ParsedInput:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def input_from_args(args) -> ParsedInput:
    if args.file:
        return parse_input(args.file)
    if args.witness:
        n, m = (int(x) for x in args.witness.split(","))
        w = witness_system(n, m)
        return ParsedInput(w.system.config, w.system.coeffs)
    if not args.points:
        raise ParseError("give --file, --points or --witness")
    points = parse_points_text(args.points)
    coeffs = parse_matrix_text(args.coeffs, "--coeffs") if args.coeffs else None
    return build_input(points, coeffs)


# serialization


def to_jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "infinite"
        return value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def _render_scalar(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_render_scalar(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    return str(value)


def _render_table(data, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            _render_table(value, indent + 1, out)
        else:
            out.append(f"{pad}{key}: {_render_scalar(value)}")


def emit(report: dict, fmt: str = "table") -> bytes:
    data = to_jsonable(report)
    if fmt == "json":
        return (json.dumps(data, sort_keys=True, indent=2) + "\n").encode()
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    lines: List[str] = []
    _render_table(data, 0, lines)
    return ("\n".join(lines) + "\n").encode()


# computations


def _poly_text(p) -> str:
    return P.format_poly(p)


def _x_poly(points, row) -> str:
    return P.format_poly(
        {tuple(int(x) for x in pt): Fraction(c) for pt, c in zip(points, row) if c},
        [f"x{i + 1}" for i in range(len(points[0]))],
    )


def _shifted_staircases(system: SparseSystem):
    config, _ = normalize_to_orthant(system.config)
    weights = []
    for pt in config.points:
        w = Fraction(1)
        for q, a in zip(system.base_point, pt):
            w *= q**a
        weights.append(w)
    return [
        staircase(VanishingSumEvaluator([c * w for c, w in zip(row, weights)], config.points))
        for row in system.coeffs
    ]


def _covolume_claim(status: str, mu, covolume) -> str:
    if covolume is None:
        return "unavailable (not convenient)"
    if status == NON_DEGENERATE:
        return "certified equal" if mu == covolume else "VIOLATED"
    if status == DEGENERATE:
        return "degenerate: multiplicity exceeds covolume" if mu != INFINITE and mu > covolume else "degenerate"
    return "consistent (uncertified)" if mu == covolume else "unknown"


def _face_certificates(report) -> List[str]:
    lines = []
    for ft, status in report.faces:
        names = ",".join(f"z{i + 1}" for i in ft.variables)
        lines.append(f"vars {names} weight {list(ft.weight)} dim {ft.face_dim}: {status}")
    return lines


def run_mult(args) -> dict:
    parsed = input_from_args(args)
    if parsed.coeffs is None:
        raise ValidationError("coefficients", "mult needs a coefficient matrix")
    system = SparseSystem(parsed.config, parsed.coeffs)
    ceiling = args.ceiling
    if args.at == "origin":
        polys = tuple(
            {tuple(int(x) for x in pt): c for pt, c in zip(parsed.config.points, row) if c}
            for row in parsed.coeffs
        )
        ps = PolySystem(parsed.config.n, polys)
        mu = multiplicity_at_origin(ps, ceiling)
        nd = nondegeneracy_check(ps)
        sts = [staircase_of_poly(p, ps.dim) for p in ps.polys]
    else:
        if args.seed is not None:
            system = repair_convenience(system, args.seed)
        mu = system_multiplicity(system, ceiling)
        nd = system_nondegeneracy(system)
        try:
            sts = _shifted_staircases(system)
        except SparseMultError:
            sts = None
    covolume = None
    if sts is not None and all(is_convenient(s) for s in sts):
        covolume = mixed_covolume(*[polytope_from_points(s.minimal_points) for s in sts])
    return {
        "command": "mult",
        "inputs": {"points": list(parsed.config.points), "C": list(system.coeffs), "at": args.at},
        "results": {"multiplicity": mu, "mixed_covolume": covolume},
        "certificates": {
            "convenient": covolume is not None,
            "nondegeneracy": nd.status,
            "nondegeneracy_reason": nd.reason,
            "faces": _face_certificates(nd),
            "covolume_claim": _covolume_claim(nd.status, mu, covolume),
        },
    }


def _gale_from(parsed: ParsedInput, seed) -> GaleData:
    if parsed.B is not None:
        gd = GaleData(parsed.B, parsed.D)
    else:
        if parsed.coeffs is None:
            raise ValidationError("coefficients", "Gale duality needs a coefficient matrix")
        gd = gale_data(parsed.config, parsed.coeffs)
    if seed is not None:
        gd = repair_gale_convenience(gd, seed)
    return gd


def run_gale(args) -> dict:
    parsed = input_from_args(args)
    gd = _gale_from(parsed, args.seed)
    gs = gale_system(gd)
    ps = gs.as_poly_system()
    mu = multiplicity_at_origin(ps, args.ceiling or 64)
    nd = nondegeneracy_check(ps)
    sts = [staircase_of_poly(g, gd.m) for g in gs.polys]
    covolume = None
    if all(is_convenient(s) for s in sts):
        covolume = mixed_covolume(*[polytope_from_points(s.minimal_points) for s in sts])
    return {
        "command": "gale",
        "inputs": {"points": list(parsed.config.points), "C": list(parsed.coeffs or ())},
        "results": {
            "B": list(gd.B),
            "D": list(gd.D),
            "linear_forms": [_poly_text(p) for p in gs.linear_forms],
            "gale_system": [_poly_text(g) for g in gs.polys],
            "multiplicity": mu,
            "mixed_covolume": covolume,
        },
        "certificates": {
            "convenient": covolume is not None,
            "nondegeneracy": nd.status,
            "faces": _face_certificates(nd),
            "covolume_claim": _covolume_claim(nd.status, mu, covolume),
        },
    }


def run_hdual(args) -> dict:
    parsed = input_from_args(args)
    gd = _gale_from(parsed, args.seed)
    order = args.order or 8
    hd = hdual_series(gd, order)
    return {
        "command": "hdual",
        "inputs": {"points": list(parsed.config.points), "C": list(parsed.coeffs or ()), "order": order},
        "results": {
            "series": [_poly_text(h) for h in hd.series],
            "staircases": [list(staircase(hd.evaluator(k)).minimal_points) for k in range(gd.m)],
            "multiplicity": hdual_multiplicity(gd, args.ceiling or 64),
        },
    }


def run_square(args) -> dict:
    parsed = input_from_args(args)
    if parsed.coeffs is None:
        raise ValidationError("coefficients", "the duality square needs a coefficient matrix")
    system = SparseSystem(parsed.config, parsed.coeffs)
    gd = GaleData(parsed.B, parsed.D) if parsed.B is not None else None
    sq = duality_square(system, gd, args.order)
    return {
        "command": "square",
        "inputs": {"points": list(parsed.config.points), "C": list(parsed.coeffs)},
        "results": {
            "mu_original": sq.mu,
            "mu_gale": sq.mu_gale,
            "mu_hdual": sq.mu_prime,
            "mu_fourth": sq.mu_fourth,
            "gale_system": [_poly_text(g) for g in sq.gale_system.polys],
            "fourth_system": [_poly_text(g) for g in sq.fourth.polys],
            "staircases_agree": sq.staircases_agree,
            "mu_equals_mu_prime": sq.mu == sq.mu_prime,
        },
    }


def run_diagram(args) -> dict:
    parsed = input_from_args(args)
    if parsed.coeffs is None:
        raise ValidationError("coefficients", "diagram needs a coefficient matrix")
    system = SparseSystem(parsed.config, parsed.coeffs)
    out = []
    for st in _shifted_staircases(system):
        diagram = newton_diagram(st)
        out.append(
            {
                "staircase": list(st.minimal_points),
                "axis_intercepts": list(st.axis_intercepts),
                "faces": [[list(v) for v in f.vertices] for f in diagram.faces],
            }
        )
    return {
        "command": "diagram",
        "inputs": {"points": list(parsed.config.points), "C": list(parsed.coeffs)},
        "results": {"diagrams": out},
    }


def run_covolume(args) -> dict:
    if not args.points:
        raise ParseError("covolume needs --points; separate polytopes with '|'")
    groups = [parse_points_text(g) for g in args.points.split("|")]
    polys = [polytope_from_points(g) for g in groups]
    if len(polys) == 1:
        value = covolume_single(polys[0])
        kind = "covolume"
    else:
        value = mixed_covolume(*polys)
        kind = "mixed_covolume"
    return {
        "command": "covolume",
        "inputs": {"polytopes": [list(p.vertices) for p in polys]},
        "results": {kind: value},
    }


def run_bounds(args) -> dict:
    parsed = input_from_args(args)
    if parsed.coeffs is None:
        raise ValidationError("coefficients", "bounds need a coefficient matrix")
    system = SparseSystem(parsed.config, parsed.coeffs)
    gd = GaleData(parsed.B, parsed.D) if parsed.B is not None else None
    report = bounds_report(system, gd)
    mu = system_multiplicity(system, args.ceiling)
    nd = system_nondegeneracy(system)
    results = {k: v for k, v in report.__dict__.items() if k != "absent"}
    return {
        "command": "bounds",
        "inputs": {"points": list(parsed.config.points), "C": list(parsed.coeffs)},
        "results": {"multiplicity": mu, "bounds": results, "absent": report.absent},
        "certificates": {"nondegeneracy": nd.status},
    }


def _witness_row(nm):
    n, m = nm
    w = witness_system(n, m)
    mu = system_multiplicity(w.system)
    return n, m, mu, math.comb(n + m, n)


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SPARSEMULT_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    workers = min(_thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_witness(args) -> dict:
    n, m = args.n, args.m
    w = witness_system(n, m)
    mu = system_multiplicity(w.system, args.ceiling)
    return {
        "command": "witness",
        "inputs": {"n": n, "m": m},
        "results": {
            "C": list(w.C),
            "A": list(w.A),
            "polynomials": [_x_poly(list(p.keys()), list(p.values())) for p in w.polys],
            "multiplicity": mu,
            "binomial_n_plus_m_choose_n": math.comb(n + m, n),
            "equality_observed": mu == math.comb(n + m, n),
        },
    }


def run_cyclic(args) -> dict:
    if not args.d:
        raise ParseError("cyclic needs --d with n+2 distinct values")
    values = [parse_rational(x, "--d") for x in args.d.split(",")]
    system = max_mult_circuit_system(values)
    mu = system_multiplicity(system, args.ceiling)
    return {
        "command": "cyclic",
        "inputs": {"d": values},
        "results": {
            "points": list(system.config.points),
            "C": list(system.coeffs),
            "multiplicity": mu,
            "expected": system.n + 1,
            "certificate_verified": verify_cyclic(system.config, [v - values[0] for v in values]),
        },
    }


def run_hyper(args) -> dict:
    if args.points:
        config = SupportConfig(tuple(parse_points_text(args.points)))
        best = max_hypersurface_mult(config)
        hb = hypersurface_bounds(config.n, config.m) if config.m >= 1 else None
        results = {
            "max_multiplicity": best.multiplicity,
            "witness": list(best.witness),
            "full_row_rank": best.full_row_rank,
        }
        n, m = config.n, config.m
    else:
        n, m = args.n, args.m
        hb = hypersurface_bounds(n, m)
        results = {}
    if hb is not None:
        results.update({"sigma": hb.sigma, "b": hb.b, "mu0_bracket": list(hb.mu0_bracket)})
    return {"command": "hyper", "inputs": {"n": n, "m": m}, "results": results}


# reproductions


def reproduce_triangle() -> List[str]:
    tri = polytope_from_points([(3, 0), (1, 1), (0, 3)])
    return [
        "triangle: (3,0) (1,1) (0,3)",
        f"covolume: {covolume_single(tri)}",
    ]


def _cube_gale():
    config = SupportConfig((0, 1, 2, 3))
    coeffs = ((-1, 3, -3, 1),)
    D = reduced_gale_dual_D(coeffs)
    B = ((1, 2), (-2, -3), (1, 0), (0, 1))
    first = GaleData(B, D)
    a, b, c, d = 1, 0, 2, 1
    D2 = ((1, 0, 0), (1, a, b), (1, c, d), (1, 3 * (c - a), 3 * (d - b)))
    B2 = ((1, -1), (-2, 3), (1, -3), (0, 1))
    second = GaleData(B2, D2)
    return config, coeffs, first, second


def reproduce_cube() -> List[str]:
    config, coeffs, first, second = _cube_gale()
    system = SparseSystem(config, coeffs)
    lines = ["system: (x-1)^3 on A = {0,1,2,3}"]
    lines.append("D: " + " ".join("(" + ",".join(str(x) for x in row) + ")" for row in first.D))
    lines.append("B: " + " ".join("(" + ",".join(str(x) for x in row) + ")" for row in first.B))
    gs = gale_system(first)
    for k, g in enumerate(gs.polys, 1):
        lines.append(f"g{k}: {_poly_text(g)}")
    ps = gs.as_poly_system()
    lines.append(f"multiplicity original at 1: {system_multiplicity(system)}")
    lines.append(f"multiplicity Gale at 0: {multiplicity_at_origin(ps)}")
    lines.append(f"first choice: {nondegeneracy_check(ps).status}")
    gs2 = gale_system(second)
    ps2 = gs2.as_poly_system()
    for k, g in enumerate(gs2.polys, 1):
        lines.append(f"modified g{k}: {_poly_text(g)}")
    sts = [staircase_of_poly(g, 2) for g in gs2.polys]
    cov = mixed_covolume(*[polytope_from_points(s.minimal_points) for s in sts])
    lines.append(f"modified choice: {nondegeneracy_check(ps2).status}")
    lines.append(f"modified mixed covolume: {cov}")
    lines.append(f"modified multiplicity: {multiplicity_at_origin(ps2)}")
    sq = duality_square(system, second)
    lines.append(
        f"square: original {sq.mu} gale {sq.mu_gale} hdual {sq.mu_prime} fourth {sq.mu_fourth} "
        f"staircases agree {str(sq.staircases_agree).lower()}"
    )
    return lines


def reproduce_planar_witness() -> List[str]:
    lines = ["m mu binom(m+2,2) (m+1)(m+2) covolume"]
    for m in range(1, 5):
        w = witness_system(2, m)
        mu = system_multiplicity(w.system)
        sts = _shifted_staircases(w.system)
        cov = mixed_covolume(*[polytope_from_points(s.minimal_points) for s in sts])
        lines.append(f"{m} {mu} {math.comb(m + 2, 2)} {(m + 1) * (m + 2)} {cov}")
    return lines


def reproduce_table1() -> List[str]:
    lines = ["m sigma(2,m) b(2,m)"]
    for m in range(1, 11):
        hb = hypersurface_bounds(2, m)
        lines.append(f"{m} {hb.sigma} {hb.b}")
    return lines


def reproduce_highmult() -> List[str]:
    f = {(1, 0, 0): 1, (1, 1, 0): -4, (1, 2, 0): 6, (1, 3, 0): -4, (1, 4, 0): 1}
    for j, c in enumerate((1, -4, 6, -4, 1)):
        key = (0, 0, j)
        f[key] = f.get(key, 0) + c
    f = {e: Fraction(c) for e, c in f.items() if c}
    mu = hypersurface_multiplicity(f, (1, 1, 1))
    config = SupportConfig(tuple(f))
    best = max_hypersurface_mult(config)
    hb = hypersurface_bounds(3, config.m)
    return [
        "f: x1*(1-x2)^4 + (1-x3)^4",
        f"n: 3 m: {config.m}",
        f"multiplicity at (1,1,1): {mu}",
        f"b(3,{config.m}): {hb.b}",
        f"sigma(3,{config.m}): {hb.sigma}",
        f"max multiplicity on support: {best.multiplicity}",
        f"bound fails: {str(mu > hb.b).lower()}",
    ]


WITNESS_GRID = ((1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2))


def reproduce_witness_grid() -> List[str]:
    lines = ["n m mu binom(n+m,n) equal"]
    for n, m, mu, expected in _map(_witness_row, list(WITNESS_GRID)):
        lines.append(f"{n} {m} {mu} {expected} {str(mu == expected).lower()}")
    return lines


REPRODUCERS = {
    "triangle": reproduce_triangle,
    "cube": reproduce_cube,
    "planar-witness": reproduce_planar_witness,
    "table1": reproduce_table1,
    "highmult": reproduce_highmult,
    "witness-grid": reproduce_witness_grid,
}


def run_reproduce(args) -> dict:
    targets = TARGETS if args.target == "all" else (args.target,)
    results = {}
    mismatches = []
    for t in targets:
        text = "\n".join(REPRODUCERS[t]()) + "\n"
        results[t] = text.rstrip("\n").split("\n")
        golden = GOLDEN_DIR / f"{t}.txt"
        if args.write_golden:
            golden.parent.mkdir(parents=True, exist_ok=True)
            golden.write_text(text)
        elif args.check and (not golden.exists() or golden.read_text() != text):
            mismatches.append(t)
    report = {"command": "reproduce", "inputs": {"target": args.target}, "results": results}
    if args.check:
        report["certificates"] = {"golden_match": not mismatches, "mismatched": mismatches}
        if mismatches:
            raise ValidationError("golden files", "mismatch for " + ", ".join(mismatches))
    return report


RUNNERS = {
    "mult": run_mult,
    "gale": run_gale,
    "hdual": run_hdual,
    "square": run_square,
    "diagram": run_diagram,
    "covolume": run_covolume,
    "bounds": run_bounds,
    "witness": run_witness,
    "cyclic": run_cyclic,
    "hyper": run_hyper,
    "reproduce": run_reproduce,
}


def run(job: JobSpec) -> dict:
    if job.command not in RUNNERS:
        raise ValidationError("command", f"unknown command {job.command!r}")
    args = argparse.Namespace(**{**_DEFAULTS, **job.options})
    if job.input is not None:
        args.file = job.input
    start = time.perf_counter()
    report = RUNNERS[job.command](args)
    if args.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 3)}
    return report


_DEFAULTS = {
    "file": None,
    "points": None,
    "coeffs": None,
    "witness": None,
    "at": "one",
    "order": None,
    "format": "table",
    "seed": None,
    "ceiling": None,
    "timings": False,
    "n": None,
    "m": None,
    "d": None,
    "target": "all",
    "check": False,
    "write_golden": False,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsemult", description="Local multiplicities of sparse polynomial systems.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help="JSON input with points, C and optional B, D")
    common.add_argument("--points", help="'0,1,2,3' (1-d) or '0,0;1,0;0,1'")
    common.add_argument("--coeffs", help="coefficient rows separated by ';'")
    common.add_argument("--witness", help="use the witness system n,m")
    common.add_argument("--at", choices=("one", "origin"), default="one")
    common.add_argument("--order", type=int)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int)
    common.add_argument("--ceiling", type=int)
    common.add_argument("--timings", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("witness", "hyper"):
            p.add_argument("--n", type=int, required=name == "witness")
            p.add_argument("--m", type=int, required=name == "witness")
        if name == "cyclic":
            p.add_argument("--d", help="distinct parameters d_0,...,d_{n+1}")
        if name == "reproduce":
            p.add_argument("target", choices=TARGETS + ("all",))
            p.add_argument("--check", action="store_true", help="compare with the golden files")
            p.add_argument("--write-golden", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    options = {k: v for k, v in vars(args).items() if k != "command"}
    try:
        report = run(JobSpec(args.command, None, options))
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except SparseMultError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
