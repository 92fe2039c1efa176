"""Exponent sequences: limit directions at infinity, angles, thinning."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NoExponentsInAngle, NonPositiveRealPart, NoTail, ValidationError, ZeroArgument
from .geometry import TWO_PI, DirectionSet, normalize_angle

INF = math.inf


@dataclass(frozen=True)
class RayTail:
    """Geometric ray ``start * ratio**k * e^{i angle}``, ``k = 0, 1, ...``."""

    angle: float
    ratio: float
    start: float

    def __post_init__(self):
        if not self.ratio > 1:
            raise ValidationError(f"ray ratio must exceed 1, got {self.ratio}")
        if not self.start > 0:
            raise ValidationError(f"ray start must be positive, got {self.start}")
        object.__setattr__(self, "angle", normalize_angle(float(self.angle)))

    def term(self, k: int) -> complex:
        return self.start * self.ratio**k * complex(math.cos(self.angle), math.sin(self.angle))

    def modulus(self, k: int) -> float:
        return self.start * self.ratio**k


@dataclass(frozen=True)
class ExponentSequence:
    """A computable prefix of a discrete exponent set, optionally continued by a ray.

    The ray terms follow the prefix: term ``len(values) + k`` is ``tail.term(k)``.
    """

    values: tuple[complex, ...] = ()
    tail: RayTail | None = None

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if any(v == 0 for v in vals):
            raise ValidationError("exponents must be nonzero")
        if any(not (math.isfinite(v.real) and math.isfinite(v.imag)) for v in vals):
            raise ValidationError("exponents must be finite")
        if len(set(vals)) != len(vals):
            raise ValidationError("exponents must be pairwise distinct")
        if self.tail is not None and vals:
            # the ray must not revisit a prefix value
            big = max(abs(v) for v in vals)
            k = 0
            while self.tail.modulus(k) <= big * (1 + 1e-12):
                if any(abs(self.tail.term(k) - v) <= 1e-12 * abs(v) for v in vals):
                    raise ValidationError("ray tail repeats a prefix value")
                k += 1
        object.__setattr__(self, "values", vals)

    @classmethod
    def ray(cls, angle: float, ratio: float, start: float) -> "ExponentSequence":
        return cls((), RayTail(angle, ratio, start))

    def term(self, n: int) -> complex:
        """0-based term; raises ``IndexError`` past a finite sequence."""
        if n < len(self.values):
            return self.values[n]
        if self.tail is None:
            raise IndexError(n)
        return self.tail.term(n - len(self.values))

    def terms(self, count: int) -> list[complex]:
        return [self.term(n) for n in range(count)]

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    def __len__(self) -> int:
        if self.tail is not None:
            raise TypeError("sequence with a ray tail is infinite")
        return len(self.values)

    def scaled(self, factor: complex) -> "ExponentSequence":
        tail = None
        if self.tail is not None:
            f = complex(factor)
            tail = RayTail(self.tail.angle + math.atan2(f.imag, f.real), self.tail.ratio, self.tail.start * abs(f))
        return ExponentSequence(tuple(v * factor for v in self.values), tail)

    def conjugated(self) -> "ExponentSequence":
        tail = None
        if self.tail is not None:
            tail = RayTail(-self.tail.angle, self.tail.ratio, self.tail.start)
        return ExponentSequence(tuple(v.conjugate() for v in self.values), tail)

    def to_dict(self) -> dict:
        tail = None
        if self.tail is not None:
            tail = {"kind": "ray", "angle": self.tail.angle, "ratio": self.tail.ratio, "start": self.tail.start}
        return {"values": [[v.real, v.imag] for v in self.values], "tail": tail}

    @classmethod
    def from_dict(cls, data: dict) -> "ExponentSequence":
        vals = tuple(complex(re, im) for re, im in data.get("values", []))
        t = data.get("tail")
        tail = None
        if t is not None:
            if t.get("kind") != "ray":
                raise ValidationError(f"unsupported tail kind {t.get('kind')!r}")
            tail = RayTail(float(t["angle"]), float(t["ratio"]), float(t["start"]))
        return cls(vals, tail)


@dataclass(frozen=True)
class Angle:
    """Closed angle ``{z : |arg z - beta| <= alpha}``."""

    beta: float
    alpha: float

    def __post_init__(self):
        if not -math.pi / 2 < self.beta < math.pi / 2:
            raise ValidationError(f"beta must lie in (-pi/2, pi/2), got {self.beta}")
        if not 0 <= self.alpha < math.pi / 2 - abs(self.beta):
            raise ValidationError(f"alpha must lie in [0, pi/2 - |beta|), got {self.alpha}")


def in_angle(z: complex, angle: Angle) -> bool:
    z = complex(z)
    if z == 0:
        raise ZeroArgument("arg 0 is undefined")
    return abs(normalize_angle(math.atan2(z.imag, z.real) - angle.beta)) <= angle.alpha


def default_radius(seq: ExponentSequence) -> float:
    """Modulus at the 75th percentile of the prefix (0 for an empty prefix)."""
    if not seq.values:
        return 0.0
    return float(np.percentile([abs(v) for v in seq.values], 75))


def limit_directions(seq: ExponentSequence, radius: float | None = None, cluster_tol: float = 1e-3) -> DirectionSet:
    """Finite-data estimate of the limit directions at infinity.

    Directions ``v/|v|`` of prefix values with ``|v| > radius`` are swept
    around the circle, starting after the widest gap, and cut into closed
    arcs no wider than ``cluster_tol``.  A ray tail contributes its exact
    direction.
    """
    if radius is None:
        radius = default_radius(seq)
    angles = [math.atan2(v.imag, v.real) for v in seq.values if abs(v) > radius]
    if not angles and seq.tail is None:
        raise NoTail(f"no exponent exceeds radius {radius} and there is no tail model")
    arcs = _sweep_arcs(angles, cluster_tol) if angles else []
    if seq.tail is not None:
        arcs.append((seq.tail.angle, seq.tail.angle))
    return DirectionSet(tuple(arcs))


def _sweep_arcs(angles: Sequence[float], width: float) -> list[tuple[float, float]]:
    a = sorted(set(normalize_angle(x) for x in angles))
    if len(a) == 1:
        return [(a[0], a[0])]
    gaps = [(a[(i + 1) % len(a)] - a[i]) % TWO_PI for i in range(len(a))]
    k = int(np.argmax(gaps))
    # unwrap so the sweep starts right after the widest gap
    start = a[(k + 1) % len(a)]
    unwrapped = sorted((x - start) % TWO_PI for x in a)
    arcs = []
    lo = hi = unwrapped[0]
    for x in unwrapped[1:]:
        if x - lo <= width:
            hi = x
        else:
            arcs.append((start + lo, start + hi))
            lo = hi = x
    arcs.append((start + lo, start + hi))
    return arcs


def check_condition8(seq: ExponentSequence, threshold: float = 10.0, tail_terms: int = 64) -> tuple[bool, float]:
    """Estimate ``limsup Re v / ln|v|`` over the sequence.

    A ray tail inside the open right half-plane grows geometrically, so the
    ratio is unbounded and ``(True, inf)`` is returned.  Otherwise the
    estimate is the running supremum over the last half of the prefix; the
    condition is reported as holding when that exceeds ``threshold`` and is
    still increasing along the prefix.
    """
    vals = list(seq.values)
    if seq.tail is not None:
        vals += [seq.tail.term(k) for k in range(tail_terms)]
    if any(v.real <= 0 for v in vals):
        raise NonPositiveRealPart("every exponent must have positive real part")
    if seq.tail is not None and math.cos(seq.tail.angle) > 0:
        return True, INF
    vals = [v for v in vals if abs(v) > 1]
    if not vals:
        return False, 0.0
    vals.sort(key=abs)
    ratios = [v.real / math.log(abs(v)) for v in vals]
    tail = ratios[len(ratios) // 2:]
    head = ratios[: max(len(ratios) // 2, 1)]
    est = max(tail)
    growing = est > max(head) or len(ratios) == 1
    if est > threshold and growing:
        # unbounded along the prefix: report the exact-growth verdict
        return True, INF
    return False, est if est > 0 else 0.0


def thin_sequence(seq: ExponentSequence, angle: Angle, count: int | None = None) -> ExponentSequence:
    """Greedy subsequence inside ``angle`` with ``|next| > 2 |last|``.

    Values are scanned by increasing modulus, ties broken by closeness of the
    argument to ``angle.beta``.  A ray tail is expanded to ``count`` terms
    (default 64) before scanning; if the ray lies inside the angle with ratio
    above 2 the kept tail is returned as a ray again.
    """
    vals = list(seq.values)
    keep_ray = False
    if seq.tail is not None:
        t = seq.tail
        inside = abs(normalize_angle(t.angle - angle.beta)) <= angle.alpha
        if inside and t.ratio > 2:
            keep_ray = True
        else:
            vals += [t.term(k) for k in range(count or 64)]
    order = sorted(vals, key=lambda v: (abs(v), abs(normalize_angle(math.atan2(v.imag, v.real) - angle.beta))))
    kept: list[complex] = []
    for v in order:
        if not in_angle(v, angle):
            continue
        if not kept or abs(v) > 2 * abs(kept[-1]):
            kept.append(v)
    tail = None
    if keep_ray:
        t = seq.tail
        k = 0
        while kept and t.modulus(k) <= 2 * abs(kept[-1]):
            k += 1
        tail = RayTail(t.angle, t.ratio, t.modulus(k))
    if not kept and tail is None:
        raise NoExponentsInAngle("no exponent lies in the angle")
    if len(kept) < 2 and tail is None:
        raise NoExponentsInAngle("fewer than two exponents lie in the angle")
    return ExponentSequence(tuple(kept), tail)


def satisfies_separation(values: Iterable[complex], strict: bool = True) -> bool:
    """``|v_{n+1}| > 2 |v_n|`` (or ``>=`` when not strict) for consecutive values."""
    mods = [abs(v) for v in values]
    if strict:
        return all(b > 2 * a for a, b in zip(mods, mods[1:]))
    return all(b >= 2 * a for a, b in zip(mods, mods[1:]))
