"""Solvability of interpolation by exponential series at a boundary limit point.

Real nodes accumulating at a point ``p`` of the boundary can be matched by
exponential series with exponents ``L`` iff some limit direction of ``L`` at
infinity is a contact direction of the domain at ``p``.  When no such
direction exists, ``p`` lies inside the hull of the domain taken over the
limit directions, which is where every such series converges.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptyRealSection,
    LimitPointNotOnBoundary,
    NodesOutsideDomain,
    NotNested,
    PointNotOnBoundary,
)
from .exponents import ExponentSequence, limit_directions
from .geometry import (
    ConvexDomain,
    Direction,
    DirectionSet,
    contact_directions,
    contains,
    is_subset,
    real_section,
    s_convex_hull,
    slack,
    tolerance_scale,
)
from .interpolation import NodeSet


@dataclass(frozen=True)
class Decision:
    solvable: bool
    witness: Direction | None
    limit_directions: DirectionSet
    contact: DirectionSet
    confidence: str

    def to_dict(self) -> dict:
        return {
            "solvable": self.solvable,
            "witness": None if self.witness is None else self.witness.angle,
            "P": self.limit_directions.to_list(),
            "T": self.contact.to_list(),
            "confidence": self.confidence,
        }


def _check_inputs(domain: ConvexDomain, nodes: NodeSet, tol: float) -> DirectionSet:
    if real_section(domain) is None:
        raise EmptyRealSection("the domain does not meet the real axis")
    outside = [mu for mu in nodes.mus if not contains(domain, mu)]
    if outside:
        raise NodesOutsideDomain(f"nodes outside the domain: {outside[:5]}")
    try:
        return contact_directions(domain, nodes.limit_point, tol)
    except PointNotOnBoundary as exc:
        raise LimitPointNotOnBoundary(str(exc)) from exc


def decide_solvability(domain: ConvexDomain, seq: ExponentSequence, nodes: NodeSet, tol: float = 1e-9,
                       radius: float | None = None, cluster_tol: float = 1e-3) -> Decision:
    """Intersect the limit directions of ``seq`` with the contact directions at the limit point.

    Arcs touching within ``tol`` count as meeting.  Without a ray tail the
    limit directions come from the finite prefix and the decision carries
    ``confidence="prefix-estimated"``.
    """
    contact = _check_inputs(domain, nodes, tol)
    pset = limit_directions(seq, radius, cluster_tol)
    w = pset.intersection_witness(contact, tol)
    return Decision(
        solvable=w is not None,
        witness=None if w is None else Direction(w),
        limit_directions=pset,
        contact=contact,
        confidence="exact-tail" if seq.tail is not None else "prefix-estimated",
    )


def necessity_check(domain: ConvexDomain, seq: ExponentSequence, nodes: NodeSet, grid: int = 257,
                    tol: float = 1e-9, radius: float | None = None,
                    cluster_tol: float = 1e-3) -> tuple[bool, ConvexDomain]:
    """Whether the limit point is interior to the hull over the limit directions.

    Interior means a slack above ``tol * scale``, so points on the hull
    boundary (up to rounding) count as outside.
    """
    _check_inputs(domain, nodes, tol)
    pset = limit_directions(seq, radius, cluster_tol)
    hull = s_convex_hull(domain, pset, grid)
    p = complex(nodes.limit_point)
    inside = slack(hull, p) > tol * tolerance_scale(domain, p)
    return inside, hull


def domain_monotonicity_check(inner: ConvexDomain, outer: ConvexDomain, seq: ExponentSequence,
                              nodes: NodeSet, tol: float = 1e-9) -> bool:
    """Solvability on ``outer`` implies solvability on ``inner ⊆ outer`` (same nodes).

    Returns whether the implication holds on this instance.
    """
    if not is_subset(inner, outer, tol=tol):
        raise NotNested("inner domain is not contained in the outer domain")
    outer_ok = decide_solvability(outer, seq, nodes, tol).solvable
    if not outer_ok:
        return True
    return decide_solvability(inner, seq, nodes, tol).solvable
