"""Planar convex domains given as finite intersections of half-planes and discs.

Conventions follow the complex pairing ``Re(s z)`` with ``s`` on the unit
circle.  A :class:`HalfPlane` with direction ``s`` and bound ``c`` is the open
set ``{z : Re(s z) < c}``; its outward normal is ``conj(s)``.  The support
value of a domain ``D`` at ``s`` is ``d(s) = sup_{z in D} Re(s z)``, which may
be ``+inf``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import EmptyDirectionSet, InvalidDomain, PointNotOnBoundary

TWO_PI = 2.0 * math.pi
INF = math.inf

# constituent count above which polyhedral support values go through an LP
_LP_THRESHOLD = 24
# edges of the inscribed polygon used to linearize discs for the interior check
_DISC_EDGES = 256


def normalize_angle(angle: float) -> float:
    """Map an angle to ``(-pi, pi]``."""
    a = math.fmod(angle, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def angle_distance(a: float, b: float) -> float:
    """Circular distance between two angles, in ``[0, pi]``."""
    return abs(normalize_angle(a - b))


@dataclass(frozen=True)
class Direction:
    """A point ``e^{i angle}`` of the unit circle."""

    angle: float

    def __post_init__(self):
        if not math.isfinite(self.angle):
            raise ValueError(f"direction angle must be finite, got {self.angle}")
        object.__setattr__(self, "angle", normalize_angle(float(self.angle)))

    @property
    def unit(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))

    @classmethod
    def of(cls, z: complex) -> "Direction":
        if z == 0:
            raise ValueError("zero has no direction")
        return cls(math.atan2(z.imag, z.real))


@dataclass(frozen=True)
class HalfPlane:
    """Open half-plane ``{z : Re(s z) < bound}``; ``bound=inf`` is the whole plane."""

    direction: Direction
    bound: float

    def __post_init__(self):
        if not isinstance(self.direction, Direction):
            object.__setattr__(self, "direction", Direction(self.direction))
        b = float(self.bound)
        if math.isnan(b) or b == -INF:
            raise InvalidDomain(f"half-plane bound must be finite or +inf, got {self.bound}")
        object.__setattr__(self, "bound", b)

    @property
    def normal(self) -> complex:
        return self.direction.unit.conjugate()

    def slack(self, z: complex) -> float:
        return self.bound - (self.direction.unit * z).real


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        r = float(self.radius)
        if not (r > 0 and math.isfinite(r)):
            raise InvalidDomain(f"disc radius must be positive and finite, got {self.radius}")
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise InvalidDomain("disc center must be finite")
        object.__setattr__(self, "radius", r)

    def slack(self, z: complex) -> float:
        return self.radius - abs(z - self.center)


@dataclass(frozen=True)
class ConvexDomain:
    """Intersection of open half-planes and open discs.

    An empty constituent list is the whole plane.  Construction fails with
    :class:`InvalidDomain` unless the intersection has an interior point; one
    such point is kept in ``interior_point``.
    """

    halfplanes: tuple[HalfPlane, ...] = ()
    discs: tuple[Disc, ...] = ()
    interior_point: complex = field(default=0j, compare=False, repr=False)

    def __post_init__(self):
        hps = tuple(h if isinstance(h, HalfPlane) else HalfPlane(*h) for h in self.halfplanes)
        dss = tuple(d if isinstance(d, Disc) else Disc(*d) for d in self.discs)
        object.__setattr__(self, "halfplanes", hps)
        object.__setattr__(self, "discs", dss)
        object.__setattr__(self, "interior_point", _find_interior_point(self))

    @property
    def finite_halfplanes(self) -> tuple[HalfPlane, ...]:
        return tuple(h for h in self.halfplanes if h.bound < INF)

    @property
    def is_plane(self) -> bool:
        return not self.finite_halfplanes and not self.discs

    @property
    def magnitude(self) -> float:
        """Size proxy used to scale tolerances."""
        m = 0.0
        for h in self.finite_halfplanes:
            m = max(m, abs(h.bound))
        for d in self.discs:
            m = max(m, abs(d.center) + d.radius)
        return m

    def translated(self, h: complex) -> "ConvexDomain":
        """The image of the domain under ``z -> z + h``."""
        hps = [HalfPlane(p.direction, p.bound + (p.direction.unit * h).real) for p in self.halfplanes]
        dss = [Disc(d.center + h, d.radius) for d in self.discs]
        return ConvexDomain(tuple(hps), tuple(dss))

    def conjugated(self) -> "ConvexDomain":
        """The image of the domain under ``z -> conj(z)``."""
        hps = [HalfPlane(Direction(-p.direction.angle), p.bound) for p in self.halfplanes]
        dss = [Disc(d.center.conjugate(), d.radius) for d in self.discs]
        return ConvexDomain(tuple(hps), tuple(dss))

    def to_dict(self) -> dict:
        return {
            "halfplanes": [
                {"angle": h.direction.angle, "bound": h.bound if h.bound < INF else "inf"}
                for h in self.halfplanes
            ],
            "discs": [{"cx": d.center.real, "cy": d.center.imag, "r": d.radius} for d in self.discs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConvexDomain":
        hps = []
        for h in data.get("halfplanes", []):
            bound = INF if h["bound"] == "inf" else float(h["bound"])
            hps.append(HalfPlane(Direction(float(h["angle"])), bound))
        dss = [Disc(complex(d["cx"], d["cy"]), float(d["r"])) for d in data.get("discs", [])]
        return cls(tuple(hps), tuple(dss))


# -- convenience constructors -------------------------------------------------

def halfplane(angle: float, bound: float) -> ConvexDomain:
    return ConvexDomain((HalfPlane(Direction(angle), bound),))


def disc(center: complex, radius: float) -> ConvexDomain:
    return ConvexDomain(discs=(Disc(center, radius),))


def rectangle(xmin: float, xmax: float, ymin: float, ymax: float) -> ConvexDomain:
    """Open axis-aligned rectangle as four half-planes."""
    return ConvexDomain((
        HalfPlane(Direction(0.0), xmax),            # Re z < xmax
        HalfPlane(Direction(math.pi), -xmin),       # -Re z < -xmin
        HalfPlane(Direction(-math.pi / 2), ymax),   # Im z < ymax
        HalfPlane(Direction(math.pi / 2), -ymin),   # -Im z < -ymin
    ))


def polygon(vertices: Sequence[complex]) -> ConvexDomain:
    """Open convex polygon from counterclockwise vertices."""
    vs = [complex(v) for v in vertices]
    if len(vs) < 3:
        raise InvalidDomain("a polygon needs at least 3 vertices")
    hps = []
    for a, b in zip(vs, vs[1:] + vs[:1]):
        edge = b - a
        if edge == 0:
            raise InvalidDomain("repeated polygon vertex")
        n = -1j * edge / abs(edge)          # outward normal for ccw order
        s = n.conjugate()
        hps.append(HalfPlane(Direction.of(s), (s * a).real))
    return ConvexDomain(tuple(hps))



# -- interior point -------------------------------------------------------------

def _find_interior_point(domain: ConvexDomain) -> complex:
    hps = domain.finite_halfplanes
    if not hps and not domain.discs:
        return 0j
    if not hps and len(domain.discs) == 1:
        return domain.discs[0].center
    rows, rhs = [], []
    for h in hps:
        n = h.normal
        rows.append([n.real, n.imag, 1.0])
        rhs.append(h.bound)
    theta = np.linspace(0.0, TWO_PI, _DISC_EDGES, endpoint=False)
    shrink = math.cos(math.pi / _DISC_EDGES)
    for d in domain.discs:
        for c, s in zip(np.cos(theta), np.sin(theta)):
            rows.append([c, s, 1.0])
            rhs.append(c * d.center.real + s * d.center.imag + d.radius * shrink)
    scale = 1.0 + domain.magnitude
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=[(None, None), (None, None), (None, scale)],
        method="highs",
    )
    if res.status != 0 or res.x[2] <= 1e-12 * scale:
        raise InvalidDomain("intersection of constituents has empty interior")
    z = complex(res.x[0], res.x[1])
    if not all(h.slack(z) > 0 for h in hps) or not all(d.slack(z) > 0 for d in domain.discs):
        raise InvalidDomain("could not certify an interior point")
    return z


# -- support values -----------------------------------------------------------

def _dot(a: complex, b: complex) -> float:
    return a.real * b.real + a.imag * b.imag


def support_value(domain: ConvexDomain, s: Direction | float) -> float:
    """``sup_{z in D} Re(s z)`` as an extended real."""
    if not isinstance(s, Direction):
        s = Direction(s)
    w = s.unit.conjugate()          # Re(s z) == <w, z>
    hps = domain.finite_halfplanes
    dss = domain.discs
    if not hps and not dss:
        return INF
    eps = 1e-12
    if not dss:
        normals = [h.normal for h in hps]
        candidates = [w] + [1j * n for n in normals] + [-1j * n for n in normals]
        for v in candidates:
            if all(_dot(n, v) <= eps for n in normals) and _dot(w, v) > eps:
                return INF
        n0 = normals[0]
        if all(abs(_dot(1j * n0, n)) <= eps for n in normals):
            # every boundary line is parallel: the closure contains a line
            return min(h.bound for h in hps if _dot(h.normal, w) > 0)
        if len(hps) > _LP_THRESHOLD:
            return _support_lp(hps, w)
    return _support_vertices(hps, dss, w, 1.0 + domain.magnitude)


def _support_lp(hps: Sequence[HalfPlane], w: complex) -> float:
    a = np.array([[h.normal.real, h.normal.imag] for h in hps])
    b = np.array([h.bound for h in hps])
    res = linprog(c=[-w.real, -w.imag], A_ub=a, b_ub=b, bounds=[(None, None)] * 2, method="highs")
    if res.status == 3:
        return INF
    if res.status != 0:
        raise InvalidDomain(f"support LP failed: {res.message}")
    return float(-res.fun)


def _support_vertices(hps, dss, w: complex, scale: float) -> float:
    """Max of ``<w, z>`` over the closure, by enumerating extreme-point candidates.

    The closure is compact or a line-free polyhedron bounded in direction
    ``w``; its maximizer is a point where two constituent boundaries meet or
    the tangency point ``c + r w`` of a disc.
    """
    pts = []
    ns = [h.normal for h in hps]
    cs = [h.bound for h in hps]
    for i in range(len(hps)):
        for j in range(i + 1, len(hps)):
            det = ns[i].real * ns[j].imag - ns[i].imag * ns[j].real
            if abs(det) < 1e-14:
                continue
            x = (cs[i] * ns[j].imag - cs[j] * ns[i].imag) / det
            y = (ns[i].real * cs[j] - ns[j].real * cs[i]) / det
            pts.append(complex(x, y))
    for d in dss:
        pts.append(d.center + d.radius * w)
    for n, c in zip(ns, cs):
        for d in dss:
            # line <n, z> = c meets circle |z - center| = r
            dist = c - _dot(n, d.center)
            if abs(dist) > d.radius:
                continue
            foot = d.center + dist * n
            half = math.sqrt(max(d.radius**2 - dist**2, 0.0))
            pts.extend([foot + 1j * n * half, foot - 1j * n * half])
    for i in range(len(dss)):
        for j in range(i + 1, len(dss)):
            pts.extend(_circle_intersections(dss[i], dss[j]))
    feas = 1e-10 * scale
    best = -INF
    for z in pts:
        if all(_dot(n, z) - c <= feas for n, c in zip(ns, cs)) and all(
            abs(z - d.center) - d.radius <= feas for d in dss
        ):
            best = max(best, _dot(w, z))
    if best == -INF:
        raise InvalidDomain("no feasible extreme point found")
    return best


def _circle_intersections(a: Disc, b: Disc) -> list[complex]:
    delta = b.center - a.center
    dist = abs(delta)
    if dist == 0 or dist > a.radius + b.radius or dist < abs(a.radius - b.radius):
        return []
    along = (a.radius**2 - b.radius**2 + dist**2) / (2 * dist)
    h = math.sqrt(max(a.radius**2 - along**2, 0.0))
    u = delta / dist
    base = a.center + along * u
    return [base + 1j * u * h, base - 1j * u * h]


def support_values(domain: ConvexDomain, angles: Iterable[float]) -> np.ndarray:
    return np.array([support_value(domain, Direction(a)) for a in angles])


def slack(domain: ConvexDomain, z: complex) -> float:
    """Smallest constituent slack at ``z``; positive iff ``z`` is in the domain."""
    z = complex(z)
    vals = [h.slack(z) for h in domain.finite_halfplanes] + [d.slack(z) for d in domain.discs]
    return min(vals) if vals else INF


def contains(domain: ConvexDomain, z: complex) -> bool:
    return slack(domain, z) > 0


def contains_many(domain: ConvexDomain, zs) -> np.ndarray:
    """Vectorized :func:`contains` over an array of points."""
    zs = np.asarray(zs, dtype=complex)
    ok = np.ones(zs.shape, dtype=bool)
    for h in domain.finite_halfplanes:
        ok &= (h.direction.unit * zs).real < h.bound
    for d in domain.discs:
        ok &= np.abs(zs - d.center) < d.radius
    return ok


def real_section(domain: ConvexDomain) -> tuple[float, float] | None:
    """The open interval ``D ∩ R`` as ``(lo, hi)``, or ``None`` when empty."""
    lo, hi = -INF, INF
    for h in domain.finite_halfplanes:
        c = math.cos(h.direction.angle)
        if abs(c) < 1e-15:
            if h.bound <= 0:
                return None
        elif c > 0:
            hi = min(hi, h.bound / c)
        else:
            lo = max(lo, h.bound / c)
    for d in domain.discs:
        y = d.center.imag
        if abs(y) >= d.radius:
            return None
        half = math.sqrt(d.radius**2 - y**2)
        lo = max(lo, d.center.real - half)
        hi = min(hi, d.center.real + half)
    return (lo, hi) if lo < hi else None


# -- direction sets -----------------------------------------------------------

@dataclass(frozen=True)
class DirectionSet:
    """Finite union of closed arcs ``[lo, hi]`` of the unit circle.

    Arcs are stored with ``lo`` in ``[-pi, pi]`` and ``0 <= hi - lo <= 2 pi``,
    merged so that they are pairwise disjoint.  The full circle is the single
    arc ``(-pi, pi)``.
    """

    arcs: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", _merge_arcs(self.arcs))

    @classmethod
    def points(cls, angles: Iterable[float]) -> "DirectionSet":
        return cls(tuple((a, a) for a in angles))

    @classmethod
    def full(cls) -> "DirectionSet":
        return cls(((-math.pi, math.pi),))

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0][1] - self.arcs[0][0] >= TWO_PI

    def contains(self, angle: float, tol: float = 0.0) -> bool:
        return any(_arc_offset(arc, angle) <= tol for arc in self.arcs)

    def intersection_witness(self, other: "DirectionSet", tol: float = 0.0) -> float | None:
        """An angle common to both sets up to ``tol``, or ``None``.

        Closed arcs touching within ``tol`` count as meeting; the witness is
        the midpoint of the overlap, or the nearer endpoint for a tolerance
        touch.
        """
        for a in self.arcs:
            for b in other.arcs:
                w = _arc_overlap(a, b, tol)
                if w is not None:
                    return w
        return None

    def sample(self, grid: int) -> list[float]:
        """``grid`` angles per arc including both endpoints; degenerate arcs give one."""
        out: list[float] = []
        for lo, hi in self.arcs:
            if hi - lo <= 0.0:
                out.append(normalize_angle(lo))
            else:
                n = max(int(grid), 2)
                out.extend(normalize_angle(a) for a in np.linspace(lo, hi, n))
        seen, uniq = set(), []
        for a in out:
            key = round(a, 15)
            if key not in seen:
                seen.add(key)
                uniq.append(a)
        return uniq

    def to_list(self) -> list[list[float]]:
        return [[lo, hi] for lo, hi in self.arcs]


def _arc_offset(arc: tuple[float, float], angle: float) -> float:
    """Angular distance from ``angle`` to the closed arc (0 inside)."""
    lo, hi = arc
    width = hi - lo
    if width >= TWO_PI:
        return 0.0
    t = (angle - lo) % TWO_PI
    if t <= width:
        return 0.0
    return min(t - width, TWO_PI - t)


def _arc_overlap(a, b, tol: float) -> float | None:
    wa, wb = a[1] - a[0], b[1] - b[0]
    for (x, wx), (y, wy) in (((a[0], wa), (b[0], wb)), ((b[0], wb), (a[0], wa))):
        t = (y - x) % TWO_PI          # start of y measured inside x
        if t > TWO_PI - tol:
            t -= TWO_PI
        if t <= wx + tol:
            start = max(t, 0.0)
            end = min(wx, t + wy)
            mid = 0.5 * (start + end) if end >= start else min(max(t, 0.0), wx)
            return normalize_angle(x + mid)
    return None


def _merge_arcs(arcs) -> tuple[tuple[float, float], ...]:
    norm = []
    for lo, hi in arcs:
        lo, hi = float(lo), float(hi)
        width = hi - lo
        if width < 0:
            width %= TWO_PI
        if width >= TWO_PI:
            return ((-math.pi, math.pi),)
        lo = normalize_angle(lo)
        norm.append([lo, lo + width])
    if not norm:
        return ()
    norm.sort()
    merged = [norm[0]]
    for lo, hi in norm[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    # arcs running past pi may swallow arcs at the start of the range
    while len(merged) > 1 and merged[-1][1] >= merged[0][0] + TWO_PI:
        first = merged.pop(0)
        merged[-1][1] = max(merged[-1][1], first[1] + TWO_PI)
    if merged[-1][1] - merged[-1][0] >= TWO_PI:
        return ((-math.pi, math.pi),)
    return tuple((lo, hi) for lo, hi in merged)


def covering_arc(angles: Sequence[float]) -> tuple[float, float]:
    """Smallest closed arc containing all the given angles."""
    a = sorted(normalize_angle(x) for x in angles)
    if len(a) == 1:
        return (a[0], a[0])
    gaps = [(a[(i + 1) % len(a)] - a[i]) % TWO_PI for i in range(len(a))]
    k = int(np.argmax(gaps))
    lo = a[(k + 1) % len(a)]
    width = TWO_PI - gaps[k]
    return (lo, lo + width)


# -- contact directions and S-hulls ------------------------------------------

def tolerance_scale(domain: ConvexDomain, p: complex) -> float:
    return 1.0 + abs(p) + domain.magnitude


def contact_directions(domain: ConvexDomain, p: complex, tol: float = 1e-9) -> DirectionSet:
    """Directions ``s`` whose supporting line ``Re(s z) = d(s)`` passes through ``p``.

    ``p`` must lie on the boundary within ``tol * scale``.  The result is the
    normal cone at ``p``, generated by the constituents active at ``p``, and
    is a single closed arc.
    """
    p = complex(p)
    band = tol * tolerance_scale(domain, p)
    viol = [(-h.slack(p), h.direction.angle) for h in domain.finite_halfplanes]
    # a disc's outward normal at p is (p - c)/|p - c| = conj(s)
    viol += [(-d.slack(p), -Direction.of(p - d.center).angle if p != d.center else 0.0)
             for d in domain.discs]
    if not viol:
        raise PointNotOnBoundary("the whole plane has no boundary")
    worst = max(v for v, _ in viol)
    if abs(worst) > band:
        raise PointNotOnBoundary(f"point {p} is {worst:.3g} from the boundary (band {band:.3g})")
    active = [a for v, a in viol if v >= -band]
    return DirectionSet((covering_arc(active),))


def s_convex_hull(domain: ConvexDomain, directions: DirectionSet, grid: int = 257) -> ConvexDomain:
    """Intersection of the supporting half-planes ``Re(s z) < d(s)`` over sampled ``s``."""
    if directions.is_empty:
        raise EmptyDirectionSet("S-hull needs a nonempty direction set")
    hps = []
    for a in directions.sample(grid):
        d = support_value(domain, Direction(a))
        if d < INF:
            hps.append(HalfPlane(Direction(a), d))
    return ConvexDomain(tuple(hps))


def is_subset(inner: ConvexDomain, outer: ConvexDomain, grid: int = 720, tol: float = 1e-9) -> bool:
    """Support-function test for ``inner ⊆ outer`` on sampled directions."""
    angles = list(np.linspace(-math.pi, math.pi, grid, endpoint=False))
    angles += [h.direction.angle for h in inner.finite_halfplanes + outer.finite_halfplanes]
    band = tol * (1.0 + inner.magnitude + outer.magnitude)
    for a in angles:
        di = support_value(inner, Direction(a))
        do = support_value(outer, Direction(a))
        if di > do + band:
            return False
    return True


PLANE = ConvexDomain()
