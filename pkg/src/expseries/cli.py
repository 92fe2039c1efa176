"""``expseries`` command line: JSON in, JSON (or CSV) out.

Exit codes: 0 success, 2 invalid input, 3 result not certified, 64 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import numpy as np

from . import schemas
from .criterion import decide_solvability, necessity_check
from .errors import NotCertifiedError, ValidationError
from .exponents import Angle, ExponentSequence, thin_sequence
from .exppoly import ExpPolynomial, sector_exponent, verify_left_bound, verify_sector_bound, zero_free_radius
from .geometry import ConvexDomain, Direction, DirectionSet, contact_directions, s_convex_hull, support_value
from .interpolation import CoeffModel, HermiteData, NodeSet, abs_convergence_margin, solve_finite_section
from .product import CanonicalProduct, condensation_index, condensation_terms, eval_G

EXIT_OK, EXIT_INVALID, EXIT_UNCERTIFIED, EXIT_USAGE = 0, 2, 3, 64
COMMANDS = ("criterion", "hull", "contact", "thin", "interpolate", "gproduct", "bounds", "converge")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Uncertified(Exception):
    """Carries a result that should still be printed before exiting with 3."""

    def __init__(self, result: dict, rows: list, message: str):
        super().__init__(message)
        self.result, self.rows = result, rows


def _seed() -> int:
    raw = os.environ.get("EXPSERIES_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"EXPSERIES_SEED must be an integer, got {raw!r}") from None


def _map(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _angles(n: int) -> list[float]:
    return [-math.pi + 2 * math.pi * (k + 1) / n for k in range(n)]


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


# -- subcommands: each returns (json result, csv rows with header first) --------

def cmd_criterion(data: dict, grid: int | None, jobs: int):
    domain = ConvexDomain.from_dict(data["domain"])
    seq = ExponentSequence.from_dict(data["exponents"])
    nodes = NodeSet.from_dict(data["nodes"])
    kw = {k: data[k] for k in ("tol", "radius", "cluster_tol") if k in data}
    decision = decide_solvability(domain, seq, nodes, **kw)
    inside, _ = necessity_check(domain, seq, nodes, grid=grid or data.get("grid", 257), **kw)
    out = decision.to_dict()
    out["hull_member"] = inside
    rows = [["solvable", "witness", "hull_member", "confidence"],
            [out["solvable"], out["witness"], inside, out["confidence"]]]
    return out, rows


def cmd_hull(data: dict, grid: int | None, jobs: int):
    domain = ConvexDomain.from_dict(data["domain"])
    dirs = DirectionSet(tuple(tuple(a) for a in data["directions"]))
    hull = s_convex_hull(domain, dirs, data.get("grid", 257))
    out = {"hull": hull.to_dict()}
    rows = [["angle", "bound"]] + [[h.direction.angle, h.bound] for h in hull.finite_halfplanes]
    if grid:
        angles = _angles(grid)
        out["support"] = [[a, v] for a, v in zip(angles, _map(lambda a: support_value(hull, a), angles, jobs))]
        rows = [["angle", "support"]] + out["support"]
    return out, rows


def cmd_contact(data: dict, grid: int | None, jobs: int):
    domain = ConvexDomain.from_dict(data["domain"])
    p = complex(*data["point"])
    arcs = contact_directions(domain, p, data.get("tol", 1e-9))
    out = {"T": arcs.to_list()}
    rows = [["lo", "hi"]] + out["T"]
    if grid:
        angles = _angles(grid)
        gaps = _map(lambda a: support_value(domain, a) - (Direction(a).unit * p).real, angles, jobs)
        out["gap"] = [[a, g] for a, g in zip(angles, gaps)]
        rows = [["angle", "gap"]] + out["gap"]
    return out, rows


def cmd_thin(data: dict, grid: int | None, jobs: int):
    seq = ExponentSequence.from_dict(data["exponents"])
    a = Angle(data["angle"]["beta"], data["angle"]["alpha"])
    thinned = thin_sequence(seq, a, data.get("count"))
    mods = [abs(v) for v in thinned.values]
    separated = all(b > 2 * x for x, b in zip(mods, mods[1:]))
    rows = [["re", "im"]] + [_pair(v) for v in thinned.values]
    return {"exponents": thinned.to_dict(), "separated": separated}, rows


def cmd_interpolate(data: dict, grid: int | None, jobs: int):
    exps = [complex(*e) for e in data["exponents"]]
    nodes = NodeSet.from_dict(data["nodes"])
    hd = HermiteData.from_dict(data["data"])
    sol = solve_finite_section(exps, nodes, hd, data.get("pivot_tol", 1e-13), data.get("scale", True))
    coeffs = [_pair(c) for c in sol.expsum.coefficients]
    out = {"exponents": [_pair(e) for e in exps], "coefficients": coeffs,
           "residual": sol.residual, "condition": sol.condition}
    rows = [["exp_re", "exp_im", "coef_re", "coef_im"]] + [_pair(e) + c for e, c in zip(exps, coeffs)]
    return out, rows


def cmd_gproduct(data: dict, grid: int | None, jobs: int):
    gp = CanonicalProduct(ExponentSequence.from_dict(data["zeros"]), data["truncation"])
    values = []
    for re, im in data.get("points", []):
        g, bound = eval_G(gp, complex(re, im))
        values.append({"z": [re, im], "G": _pair(g), "tail_bound": bound})
    out = {"values": values}
    rows = [["z_re", "z_im", "G_re", "G_im", "tail_bound"]] + [v["z"] + v["G"] + [v["tail_bound"]] for v in values]
    if "upto" in data:
        out["terms"] = [float(t) for t in condensation_terms(gp, data["upto"])]
        out["condensation_index"] = condensation_index(gp, data["upto"])
        if not values:
            rows = [["n", "term"]] + [[n + 1, t] for n, t in enumerate(out["terms"])]
    return out, rows


def cmd_bounds(data: dict, grid: int | None, jobs: int):
    p = ExpPolynomial.from_dict(data["poly"])
    a = Angle(data["angle"]["beta"], data["angle"]["alpha"])
    zf = zero_free_radius(p, a, data["r_max"], data.get("r_min"))
    r = data.get("r", zf.radius)
    samples = data.get("samples", 4096)
    sharp = data.get("sharp", False)
    chk = verify_sector_bound(p, a, r, samples, sharp=sharp, seed=_seed())
    out = {
        "zero_free_radius": zf.radius,
        "certified": zf.certified,
        "r": r,
        "exponent": sector_exponent(a, sharp),
        "sector": chk._asdict(),
    }
    if "left_r" in data:
        out["left"] = verify_left_bound(p, data["left_r"], samples=samples, seed=_seed())._asdict()
    rows = [["zero_free_radius", "certified", "r", "ok", "worst_ratio"],
            [zf.radius, zf.certified, r, chk.ok, chk.worst_ratio]]
    if not zf.certified:
        raise Uncertified(out, rows, "zero-free region could not be certified below r_max")
    return out, rows


def cmd_converge(data: dict, grid: int | None, jobs: int):
    seq = ExponentSequence.from_dict(data["exponents"])
    model = CoeffModel.from_dict(data["coeffs"])

    def one(z: complex) -> dict:
        c = abs_convergence_margin(seq, model, z)
        return {"z": _pair(z), "converges": c.converges, "margin": c.margin, "borderline": c.borderline}

    points = _map(one, [complex(*z) for z in data.get("points", [])], jobs)
    out = {"points": points}
    rows = [["z_re", "z_im", "converges", "margin"]] + [p["z"] + [p["converges"], p["margin"]] for p in points]
    if grid:
        x0, x1, y0, y1 = data.get("box", [-2.0, 2.0, -2.0, 2.0])
        xs, ys = np.linspace(x0, x1, grid), np.linspace(y0, y1, grid)

        def row(y: float) -> list[int]:
            return [int(abs_convergence_margin(seq, model, complex(x, y)).converges) for x in xs]

        out["grid"] = {"box": [x0, x1, y0, y1], "n": grid, "converges": _map(row, list(ys), jobs)}
        rows = [["x", "y", "converges"]] + [
            [float(x), float(y), v] for y, line in zip(ys, out["grid"]["converges"]) for x, v in zip(xs, line)
        ]
    return out, rows


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expseries", description="Exponential series interpolation toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", required=True, help="JSON input file, or - for stdin")
        sp.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
        sp.add_argument("--grid", type=int, default=None, help="also emit N plot samples")
        sp.add_argument("--jobs", type=int, default=1, help="threads for sampling grids")
    return parser


def dumps(obj) -> str:
    return json.dumps(schemas.jsonable(obj), sort_keys=True, allow_nan=False, separators=(",", ":"))


def _csv(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in rows:
        writer.writerow([str(x).lower() if isinstance(x, bool) else repr(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _emit(command: str, result: dict, rows: list, as_csv: bool, out) -> None:
    clean = schemas.jsonable(result)
    schemas.validate_output(command, clean)
    out.write(_csv(rows) if as_csv else dumps(clean) + "\n")


def _fail(err, code: int, message: str) -> int:
    err.write(f"error: {message}\n")
    return code


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin, stdout, stderr = stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(stderr, EXIT_USAGE, f"usage: {exc}")
    if args.grid is not None and args.grid < 2:
        return _fail(stderr, EXIT_USAGE, "usage: --grid must be at least 2")
    if args.jobs < 1:
        return _fail(stderr, EXIT_USAGE, "usage: --jobs must be positive")
    try:
        if args.input == "-":
            text = stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        data = json.loads(text)
        schemas.validate_input(args.command, data)
        result, rows = HANDLERS[args.command](data, args.grid, args.jobs)
    except OSError as exc:
        return _fail(stderr, EXIT_INVALID, f"cannot read input: {exc}")
    except json.JSONDecodeError as exc:
        return _fail(stderr, EXIT_INVALID, f"malformed JSON: {exc}")
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        return _fail(stderr, EXIT_INVALID, f"schema violation at {where}: {exc.message}")
    except Uncertified as exc:
        _emit(args.command, exc.result, exc.rows, args.csv, stdout)
        return _fail(stderr, EXIT_UNCERTIFIED, str(exc))
    except NotCertifiedError as exc:
        return _fail(stderr, EXIT_UNCERTIFIED, f"{type(exc).__name__}: {exc}")
    except (ValueError, TypeError, KeyError, OverflowError) as exc:
        return _fail(stderr, EXIT_INVALID, f"{type(exc).__name__}: {exc}")
    _emit(args.command, result, rows, args.csv, stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
