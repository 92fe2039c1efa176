"""Acceptance criteria, one check per criterion.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every criterion
is a test and its PASS/FAIL line is collected into the terminal summary; run
the file directly to print the lines without pytest.
"""
from __future__ import annotations

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from expseries.criterion import decide_solvability, necessity_check  # noqa: E402
from expseries.errors import NotCertifiedError  # noqa: E402
from expseries.exponents import Angle, ExponentSequence, satisfies_separation, thin_sequence  # noqa: E402
from expseries.exppoly import ExpPolynomial, eval_p, sector_exponent, sector_samples, verify_sector_bound, zero_free_radius  # noqa: E402
from expseries.geometry import (  # noqa: E402
    ConvexDomain,
    Direction,
    DirectionSet,
    HalfPlane,
    contains_many,
    halfplane,
    rectangle,
    s_convex_hull,
    support_value,
)
from expseries.interpolation import (  # noqa: E402
    CoeffModel,
    HermiteData,
    NodeSet,
    abs_convergence_margin,
    hermite_matrix,
    solve_finite_section,
)
from expseries.product import CanonicalProduct, condensation_index, condensation_terms  # noqa: E402
import conftest  # noqa: E402
from corpus import CASES, path  # noqa: E402
from instances import instances  # noqa: E402
from oracles import brute_support, constraints, greedy_thin, hermite_solve_mp  # noqa: E402

SEED = 20240611


def _tilted_corner() -> ConvexDomain:
    sq = rectangle(-1, 0, -1, 0)
    return ConvexDomain(tuple(HalfPlane(Direction(h.direction.angle + math.pi / 8), h.bound)
                              for h in sq.halfplanes))


def criterion_1():
    start = time.perf_counter()
    harmonic = NodeSet.harmonic(8)
    corner_nodes = NodeSet(tuple(sorted((-0.5 / k, 1) for k in range(1, 9))), 0.0)
    examples = [
        decide_solvability(halfplane(0.0, 0.0), ExponentSequence.ray(0.0, 2.0, 1.0), harmonic).solvable is True,
        decide_solvability(halfplane(0.0, 0.0), ExponentSequence.ray(math.pi / 2, 2.0, 1.0), harmonic).solvable is False,
        decide_solvability(_tilted_corner(), ExponentSequence.ray(-math.pi / 4, 2.0, 1.0), corner_nodes).solvable is True,
    ]
    cases = instances(SEED, 50)
    agree = sum(decide_solvability(c.domain, c.seq, c.nodes).solvable == c.expected for c in cases)
    elapsed = time.perf_counter() - start
    ok = all(examples) and agree == len(cases) and elapsed < 1.0
    return ok, f"examples {sum(examples)}/3, random {agree}/{len(cases)}, {elapsed:.3f}s"


def criterion_2():
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    for i in range(20):
        dom, box = conftest.random_domain(rng, ("polygon", "disc", "mixed")[i % 3])
        as_json = dom.to_dict()
        for angle in rng.uniform(-math.pi, math.pi, 4):
            got = support_value(dom, float(angle))
            ref = brute_support(as_json, float(angle), box)
            worst = max(worst, abs(got - ref) / max(1.0, abs(ref)))
    elapsed = time.perf_counter() - start
    return worst <= 1e-6 and elapsed < 5.0, f"worst relative gap {worst:.2e}, {elapsed:.2f}s"


def criterion_3():
    rng = np.random.default_rng(SEED)
    grids = (129, 257, 513, 1025)
    ok, parts = True, []
    for kind in ("disc", "mixed", "polygon"):
        dom, (x0, x1, y0, y1) = conftest.random_domain(rng, kind)
        pad = 0.3 * max(x1 - x0, y1 - y0)
        zs = rng.uniform(x0 - pad, x1 + pad, 1000) + 1j * rng.uniform(y0 - pad, y1 + pad, 1000)
        slack = constraints(dom.to_dict())
        truth = slack(zs.real, zs.imag) >= 0
        errs = [int(np.sum(contains_many(s_convex_hull(dom, DirectionSet.full(), g), zs) != truth)) for g in grids]
        final = int(np.sum(contains_many(s_convex_hull(dom, DirectionSet.full(), 1024), zs) != truth))
        ok &= final <= 5 and errs == sorted(errs, reverse=True)
        parts.append(f"{kind} {errs}+{final}")
    return ok, "disagreements per 1000 at 129/257/513/1025 + 1024: " + "; ".join(parts)


def criterion_4():
    rng = np.random.default_rng(SEED)
    failures = 0
    for _ in range(200):
        n = int(rng.integers(2, 60))
        vals = tuple(complex(x, y) for x, y in rng.uniform(-50, 50, (n, 2)))
        a = Angle(float(rng.uniform(-1, 1)), float(rng.uniform(0, 0.5)))
        expected = greedy_thin(vals, a.beta, a.alpha)
        if len(expected) < 2:
            continue
        out = thin_sequence(ExponentSequence(vals), a)
        failures += not (satisfies_separation(out.values) and list(out.values) == expected)
    hundred = thin_sequence(ExponentSequence(tuple(float(k) for k in range(1, 101))), Angle(0.0, 0.1)).values
    ok = failures == 0 and hundred == (1, 3, 7, 15, 31, 63)
    return ok, f"{failures} separation/oracle failures on 200 inputs, 1..100 gives {[int(v.real) for v in hundred]}"


def criterion_5():
    start = time.perf_counter()
    ok, parts = True, []
    for ratio in (2.0, 3.0):
        gp = CanonicalProduct(ExponentSequence.ray(0.0, ratio, ratio), 25)
        delta = condensation_index(gp, 25)
        terms = np.abs(condensation_terms(gp, 25))
        # downward trend: each later third sits below the one before it
        thirds = [float(np.max(t)) for t in np.array_split(terms, 3)]
        ok &= delta <= 0.05 and thirds == sorted(thirds, reverse=True)
        parts.append(f"{int(ratio)}^n: index {delta:.4f}, third maxima {[round(t, 4) for t in thirds]}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 1.0, "; ".join(parts) + f", {elapsed:.3f}s"


def _random_exppoly(rng) -> ExpPolynomial:
    ks = sorted(rng.choice(np.arange(1, 9), int(rng.integers(2, 5)), replace=False))
    terms = []
    for k in ks:
        deg = int(rng.integers(0, 2))
        coeffs = tuple(complex(*rng.normal(size=2)) for _ in range(deg + 1))
        terms.append((-1.0 / k, coeffs))
    return ExpPolynomial(tuple(terms))


def criterion_6():
    rng = np.random.default_rng(SEED)
    passed, report = 0, []
    for i in range(10):
        p = _random_exppoly(rng)
        a = Angle(float(rng.uniform(-0.6, 0.6)), float(rng.uniform(0.05, 0.4)))
        try:
            zf = zero_free_radius(p, a, 400.0)
            if not zf.certified:
                raise NotCertifiedError(f"zero-free radius not certified below 400 (case {i})")
        except NotCertifiedError as exc:
            report.append(str(exc))
            continue
        chk = verify_sector_bound(p, a, zf.radius)
        # second route: evaluate p directly on the same samples
        z = sector_samples(a.beta, a.alpha, zf.radius, 4096, 0)
        direct = np.array([abs(eval_p(p, w)) for w in z]) * np.exp(-p.top_frequency * sector_exponent(a, False) * np.abs(z))
        agree = math.isclose(float(direct.min()), chk.constant_estimate, rel_tol=1e-8)
        if chk.ok and chk.constant_estimate > 0 and agree:
            passed += 1
        else:
            report.append(f"case {i}: ok={chk.ok} c={chk.constant_estimate:.3e} routes agree={agree}")
    detail = f"{passed}/10 certified with positive constant"
    if report:
        detail += "; " + "; ".join(report)
    return passed == 10, detail


def _random_system(rng):
    while True:
        size = int(rng.integers(1, 7))
        mults, total = [], 0
        while total < size:
            m = int(min(rng.integers(1, 3), size - total))
            mults.append(m)
            total += m
        mus = np.sort(rng.uniform(-2.0, -0.1, len(mults)))
        lams = np.sort(rng.uniform(1.0, 16.0, size))
        if (len(mults) > 1 and np.min(np.diff(mus)) < 0.05) or (size > 1 and np.min(np.diff(lams)) < 0.3):
            continue
        nodes = NodeSet(tuple((float(mu), m) for mu, m in zip(mus, mults)), 0.0)
        a = hermite_matrix(lams, nodes)
        if np.linalg.cond(a / np.abs(a).max(axis=0)) > 1e5:
            continue
        rhs = rng.normal(size=size) + 1j * rng.normal(size=size)
        return [float(x) for x in lams], nodes, rhs


def criterion_7():
    rng = np.random.default_rng(SEED)
    worst_res = worst_gap = 0.0
    for _ in range(100):
        lams, nodes, rhs = _random_system(rng)
        sol = solve_finite_section(lams, nodes, HermiteData.from_vector(nodes, rhs))
        ref = np.array(hermite_solve_mp(lams, nodes.nodes, rhs)[0])
        got = np.array(sol.expsum.coefficients)
        worst_res = max(worst_res, sol.residual)
        worst_gap = max(worst_gap, float(np.max(np.abs(got - ref)) / np.max(np.abs(ref))))
    c1, c2 = solve_finite_section([1, 2], NodeSet(((-1.0, 2),)), HermiteData(((0, 0, 0), (0, 1, 1)))).expsum.coefficients
    example = abs(c1 + math.e) <= 1e-12 * math.e and abs(c2 - math.e**2) <= 1e-12 * math.e**2
    ok = worst_res <= 1e-8 and worst_gap <= 1e-10 and example
    return ok, f"max residual {worst_res:.2e}, max oracle gap {worst_gap:.2e}, m=2 example {'ok' if example else 'off'}"


def criterion_8():
    axis = np.linspace(-2.0, 2.0, 41)
    wrong, skipped = 0, 0
    for beta in (0.0, math.pi / 6):
        seq = ExponentSequence.ray(beta, 2.0, 2.0)
        for sigma in (0.5, 1.0):
            model = CoeffModel("exp", 1.0, sigma=sigma)
            for x in axis:
                for y in axis:
                    z = complex(x, y)
                    u = (complex(math.cos(beta), math.sin(beta)) * z).real
                    if abs(u - sigma) <= 1e-9:
                        skipped += 1
                        continue
                    wrong += abs_convergence_margin(seq, model, z).converges != (u < sigma)
    return wrong == 0, f"{wrong} misclassified of {4 * 41 * 41 - skipped} ({skipped} in the boundary band)"


def criterion_9():
    violations = broken = 0
    cases = instances(SEED, 50)
    for c in cases:
        d = decide_solvability(c.domain, c.seq, c.nodes)
        if not d.solvable and not necessity_check(c.domain, c.seq, c.nodes)[0]:
            violations += 1
        variants = [decide_solvability(c.domain.translated(h), c.seq, c.nodes.shifted(h)) for h in (-0.7, 1.3)]
        mirrored = decide_solvability(c.domain.conjugated(), c.seq.conjugated(), c.nodes)
        same = all(v.solvable == d.solvable for v in variants) and mirrored.solvable == d.solvable
        if same and d.solvable:
            same = all(abs(v.witness.angle - d.witness.angle) <= 1e-9 for v in variants)
            same &= abs(Direction(-d.witness.angle).angle - mirrored.witness.angle) <= 1e-9
        broken += not same
    return violations == 0 and broken == 0, f"{violations} consistency violations, {broken} invariance failures over {len(cases)}"


def criterion_10():
    nondeterministic, wrong_code = [], []
    for name, (command, expected) in sorted(CASES.items()):
        runs = [subprocess.run([sys.executable, "-m", "expseries", command, "--input", path(name)],
                               capture_output=True, timeout=120) for _ in range(2)]
        if runs[0].stdout != runs[1].stdout or runs[0].returncode != runs[1].returncode:
            nondeterministic.append(name)
        if runs[0].returncode != expected or b"Traceback" in runs[0].stderr:
            wrong_code.append(f"{name}={runs[0].returncode}")
    for argv, stdin, expected in ((["hull", "--input", "-"], b"{", 2), (["hull", "--input", "-"], b"[]", 2),
                                  (["nosuch"], b"", 64), (["hull", "--input", "-", "--grid", "0"], b"{}", 64)):
        proc = subprocess.run([sys.executable, "-m", "expseries", *argv], input=stdin, capture_output=True, timeout=120)
        if proc.returncode != expected or b"Traceback" in proc.stderr:
            wrong_code.append(f"{argv[0]}={proc.returncode}")
    ok = not nondeterministic and not wrong_code
    return ok, f"{len(CASES)} corpus files; differing: {nondeterministic or 'none'}; bad exits: {wrong_code or 'none'}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(n: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    line = _line(n, ok, detail)
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [(n, *fn()) for n, fn in enumerate(CRITERIA, 1)]
    for n, ok, detail in results:
        print(_line(n, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
