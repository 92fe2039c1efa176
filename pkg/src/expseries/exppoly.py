"""Exponential polynomials with real frequencies.

``p(z) = sum_k a_k(z) e^{w_k z}`` with polynomial ``a_k`` and strictly
increasing real frequencies ``w_0 < ... < w_s``.  Besides evaluation this
module checks the lower bounds such polynomials satisfy far out in a sector
(right of the imaginary axis, governed by the top frequency) and far to the
left (governed by the bottom frequency), and certifies zero-free sector
regions with the argument principle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import NonNegativeTopFrequency, ValidationError
from .exponents import Angle

_MAX_CONTOUR_POINTS = 200_000


@dataclass(frozen=True)
class ExpPolynomial:
    """Terms ``(omega, coeffs)`` with ``coeffs`` in ascending degree."""

    terms: tuple[tuple[float, tuple[complex, ...]], ...]

    def __post_init__(self):
        terms = []
        for omega, coeffs in self.terms:
            cs = [complex(c) for c in coeffs]
            while len(cs) > 1 and cs[-1] == 0:
                cs.pop()
            if not cs:
                raise ValidationError("coefficient lists must be nonempty")
            terms.append((float(omega), tuple(cs)))
        if not terms:
            raise ValidationError("an exponential polynomial needs at least one term")
        omegas = [t[0] for t in terms]
        if any(b <= a for a, b in zip(omegas, omegas[1:])):
            raise ValidationError("frequencies must be strictly increasing")
        if all(c == 0 for c in terms[0][1]) or all(c == 0 for c in terms[-1][1]):
            raise ValidationError("first and last coefficient polynomials must be nonzero")
        object.__setattr__(self, "terms", tuple(terms))

    @property
    def frequencies(self) -> list[float]:
        return [t[0] for t in self.terms]

    @property
    def top_frequency(self) -> float:
        return self.terms[-1][0]

    @property
    def bottom_frequency(self) -> float:
        return self.terms[0][0]

    def degree(self, k: int) -> int:
        return len(self.terms[k][1]) - 1

    def to_dict(self) -> dict:
        return {"terms": [{"omega": w, "coeffs": [[c.real, c.imag] for c in cs]} for w, cs in self.terms]}

    @classmethod
    def from_dict(cls, data: dict) -> "ExpPolynomial":
        return cls(tuple(
            (float(t["omega"]), tuple(complex(re, im) for re, im in t["coeffs"])) for t in data["terms"]
        ))


def _poly(coeffs: Sequence[complex], z):
    acc = np.zeros_like(z, dtype=complex) if isinstance(z, np.ndarray) else 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def eval_p(p: ExpPolynomial, z):
    """Exact sum of polynomial-times-exponential terms (scalar or array ``z``)."""
    return _scaled(p, z, 0.0)


def _scaled(p: ExpPolynomial, z, ref: float):
    """``p(z) e^{-ref z}``; with ``ref`` an extreme frequency this avoids overflow."""
    z = np.asarray(z, dtype=complex) if not np.isscalar(z) else complex(z)
    acc = np.zeros_like(z) if isinstance(z, np.ndarray) else 0j
    for omega, coeffs in p.terms:
        acc = acc + _poly(coeffs, z) * np.exp((omega - ref) * z)
    return acc


def log_abs_p(p: ExpPolynomial, z, ref: float | None = None):
    """``ln|p(z)|`` computed through a frequency-shifted evaluation."""
    if ref is None:
        ref = p.top_frequency
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(_scaled(p, z, ref))) + ref * z.real


class BoundCheck(NamedTuple):
    ok: bool
    worst_ratio: float
    constant_estimate: float


def sector_exponent(angle: Angle, sharp: bool = False) -> float:
    """Multiplier ``k`` in the sector bound ``|p(z)| >= c e^{w_s k |z|}``.

    The default is ``cos(beta + alpha)``.  ``sharp=True`` gives the largest
    value of ``cos(arg z)`` over the sector, which is what the estimate
    ``w_s Re z >= w_s k |z|`` actually needs when ``w_s < 0``.
    """
    if not sharp:
        return math.cos(angle.beta + angle.alpha)
    if abs(angle.beta) <= angle.alpha:
        return 1.0
    return math.cos(abs(angle.beta) - angle.alpha)


def sector_samples(center: float, half_width: float, r: float, samples: int, seed: int = 0) -> np.ndarray:
    """Deterministic log-radial by angular lattice over ``r < |z| <= 8r``.

    Angular nodes include both edges of the sector; the radial lattice is
    offset by a seeded fraction of one step.
    """
    n = max(int(math.ceil(math.sqrt(samples))), 2)
    u = np.random.default_rng(seed).random()
    radii = r * 8.0 ** ((np.arange(n) + 1.0 - u) / n)
    thetas = np.linspace(center - half_width, center + half_width, n)
    return (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()


def verify_sector_bound(p: ExpPolynomial, angle: Angle, r: float, samples: int = 4096,
                        sharp: bool = False, seed: int = 0) -> BoundCheck:
    """Empirical check of ``|p(z)| >= c e^{w_s k |z|}`` in the sector beyond ``r``.

    ``ratio(z) = |p(z)| e^{-w_s k |z|}`` is sampled on the lattice from
    :func:`sector_samples`; the bound holds on the samples iff the minimum
    ratio is positive, and that minimum is the constant estimate.
    """
    ws = p.top_frequency
    if ws >= 0:
        raise NonNegativeTopFrequency(f"top frequency must be negative, got {ws}")
    k = sector_exponent(angle, sharp)
    z = sector_samples(angle.beta, angle.alpha, r, samples, seed)
    log_ratio = log_abs_p(p, z, ws) - ws * k * np.abs(z)
    worst = float(np.exp(np.min(log_ratio)))
    ok = bool(np.all(np.isfinite(log_ratio))) and worst > 0
    return BoundCheck(ok, worst, worst)


def sector_ratios(p: ExpPolynomial, angle: Angle, z, sharp: bool = False) -> np.ndarray:
    """Per-point ratios used by :func:`verify_sector_bound`."""
    ws = p.top_frequency
    z = np.asarray(z, dtype=complex)
    return np.exp(log_abs_p(p, z, ws) - ws * sector_exponent(angle, sharp) * np.abs(z))


def verify_left_bound(p: ExpPolynomial, r: float, half_width: float = math.pi / 4,
                      samples: int = 4096, seed: int = 0) -> BoundCheck:
    """Empirical check of ``|p(z)| >= c e^{w_0 Re z}`` far to the left.

    Samples the sector of half-width ``half_width`` around the negative real
    axis, ``r < |z| <= 8r``.
    """
    w0 = p.bottom_frequency
    z = sector_samples(math.pi, half_width, r, samples, seed)
    log_ratio = log_abs_p(p, z, w0) - w0 * z.real
    worst = float(np.exp(np.min(log_ratio)))
    ok = bool(np.all(np.isfinite(log_ratio))) and worst > 0
    return BoundCheck(ok, worst, worst)


# -- argument principle ---------------------------------------------------------

def _edge_winding(f, start: complex, end: complex, kind: str, center_angle=None,
                  threshold: float = math.pi / 4, init: int = 64):
    """Total argument change of ``f`` along one edge, or ``None`` if it cannot be resolved.

    ``kind`` is ``"line"`` (straight segment) or ``"arc"`` (circle about 0
    from ``start`` to ``end`` through signed angle ``center_angle``).
    """
    if kind == "line":
        def path(t):
            return start + (end - start) * t
    else:
        rad = abs(start)
        a0 = math.atan2(start.imag, start.real)

        def path(t):
            return rad * np.exp(1j * (a0 + center_angle * t))
    t = np.linspace(0.0, 1.0, init)
    vals = f(path(t))
    while True:
        if not np.all(np.isfinite(vals)) or np.any(vals == 0):
            return None
        d = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(d) > threshold
        if not bad.any():
            return float(d.sum())
        if len(t) > _MAX_CONTOUR_POINTS:
            return None
        idx = np.nonzero(bad)[0]
        mids = 0.5 * (t[idx] + t[idx + 1])
        if np.min(np.diff(t)[idx]) < 1e-13:
            return None
        t = np.insert(t, idx + 1, mids)
        vals = np.insert(vals, idx + 1, f(path(mids)))


def count_zeros_sector_annulus(p: ExpPolynomial, angle: Angle, r_in: float, r_out: float) -> int | None:
    """Zeros of ``p`` in ``{r_in < |z| < r_out, |arg z - beta| < alpha}``.

    The winding number of ``p`` along the region boundary is computed twice
    with different refinement thresholds; ``None`` unless both runs give the
    same integer.
    """
    ws = p.top_frequency

    def f(z):
        return _scaled(p, z, ws)

    lo, hi = angle.beta - angle.alpha, angle.beta + angle.alpha
    e_lo, e_hi = complex(math.cos(lo), math.sin(lo)), complex(math.cos(hi), math.sin(hi))
    counts = []
    for thr in (math.pi / 4, math.pi / 10):
        parts = [
            _edge_winding(f, r_in * e_lo, r_out * e_lo, "line", threshold=thr),
            _edge_winding(f, r_out * e_lo, r_out * e_hi, "arc", hi - lo, threshold=thr),
            _edge_winding(f, r_out * e_hi, r_in * e_hi, "line", threshold=thr),
            _edge_winding(f, r_in * e_hi, r_in * e_lo, "arc", lo - hi, threshold=thr),
        ]
        if any(x is None for x in parts):
            return None
        w = sum(parts) / (2 * math.pi)
        if abs(w - round(w)) > 0.05:
            return None
        counts.append(int(round(w)))
    return counts[0] if counts[0] == counts[1] else None


class ZeroFreeRadius(NamedTuple):
    radius: float
    certified: bool
    radii: tuple[float, ...]
    counts: tuple[int | None, ...]


def zero_free_radius(p: ExpPolynomial, angle: Angle, r_max: float, r_min: float | None = None,
                     step: float = 2 ** 0.25) -> ZeroFreeRadius:
    """Smallest lattice radius beyond which the sector is certified zero free up to ``r_max``.

    Radii ``r_min * step**k`` up to ``r_max`` split the sector into annuli;
    each is certified by :func:`count_zeros_sector_annulus`.  The region past
    ``r_max`` is not examined.  When the outermost annulus cannot be certified
    zero free the result is ``(r_max, certified=False)``.
    """
    if p.top_frequency >= 0:
        raise NonNegativeTopFrequency(f"top frequency must be negative, got {p.top_frequency}")
    if r_min is None:
        r_min = r_max / 256
    if not 0 < r_min < r_max:
        raise ValidationError("need 0 < r_min < r_max")
    n = int(math.ceil(math.log(r_max / r_min) / math.log(step)))
    radii = tuple(float(x) for x in np.geomspace(r_min, r_max, n + 1))
    counts = tuple(count_zeros_sector_annulus(p, angle, a, b) for a, b in zip(radii, radii[1:]))
    k = len(counts)
    while k > 0 and counts[k - 1] == 0:
        k -= 1
    if k == len(counts):
        return ZeroFreeRadius(r_max, False, radii, counts)
    return ZeroFreeRadius(radii[k], True, radii, counts)


def hermite_membership(p: ExpPolynomial, nodes, tol: float = 0.0) -> bool:
    """True iff every frequency is a node and each coefficient degree is below its multiplicity."""
    for k in range(len(p.terms)):
        omega, coeffs = p.terms[k]
        if all(c == 0 for c in coeffs):
            continue
        match = [m for mu, m in nodes.nodes if abs(mu - omega) <= tol]
        if not match or p.degree(k) >= match[0]:
            return False
    return True
