"""Finite-section Hermite interpolation by exponential sums.

Given exponents ``l_1..l_N`` and real nodes ``mu_k`` with multiplicities
``m_k`` (``sum m_k = N``), find ``f(z) = sum c_n e^{l_n z}`` with
``f^{(j)}(mu_k) = b_k^j``.  The system matrix has entries
``l_n^j e^{l_n mu_k}``, a confluent Vandermonde matrix in the variables
``e^{l_n}``.  Its columns differ in size by factors like ``e^{l_n mu}``, so it
is rescaled before a fully pivoted elimination.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import NearSingular, SizeMismatch, UnsupportedCoeffModel, ValidationError
from .exponents import ExponentSequence


@dataclass(frozen=True)
class NodeSet:
    """Real nodes ``(mu, multiplicity)`` accumulating at ``limit_point`` from one side."""

    nodes: tuple[tuple[float, int], ...]
    limit_point: float = 0.0

    def __post_init__(self):
        nodes = tuple((float(mu), int(m)) for mu, m in self.nodes)
        if not nodes:
            raise ValidationError("a node set needs at least one node")
        mus = [mu for mu, _ in nodes]
        if any(not math.isfinite(mu) for mu in mus):
            raise ValidationError("nodes must be finite")
        if any(b <= a for a, b in zip(mus, mus[1:])):
            raise ValidationError("nodes must be strictly increasing")
        if any(m < 1 for _, m in nodes):
            raise ValidationError("multiplicities must be positive")
        lp = float(self.limit_point)
        if not (all(mu < lp for mu in mus) or all(mu > lp for mu in mus)):
            raise ValidationError("nodes must lie on one side of the limit point")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "limit_point", lp)

    @classmethod
    def harmonic(cls, count: int, limit_point: float = 0.0, multiplicity: int = 1, side: int = -1) -> "NodeSet":
        """Nodes ``limit + side/k``, ``k = 1..count``."""
        mus = sorted(limit_point + side / k for k in range(1, count + 1))
        return cls(tuple((mu, multiplicity) for mu in mus), limit_point)

    @property
    def mus(self) -> list[float]:
        return [mu for mu, _ in self.nodes]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.nodes)

    @property
    def rows(self) -> list[tuple[int, int]]:
        """Row labels ``(k, j)`` in system order (0-based node index)."""
        return [(k, j) for k, (_, m) in enumerate(self.nodes) for j in range(m)]

    def shifted(self, h: float) -> "NodeSet":
        return NodeSet(tuple((mu + h, m) for mu, m in self.nodes), self.limit_point + h)

    def to_dict(self) -> dict:
        return {"nodes": [{"mu": mu, "m": m} for mu, m in self.nodes], "limit": self.limit_point}

    @classmethod
    def from_dict(cls, data: dict) -> "NodeSet":
        return cls(tuple((float(n["mu"]), int(n["m"])) for n in data["nodes"]), float(data.get("limit", 0.0)))


@dataclass(frozen=True)
class HermiteData:
    """Entries ``(k, j, b)``: the ``j``-th derivative at node ``k`` should equal ``b``."""

    entries: tuple[tuple[int, int, complex], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((int(k), int(j), complex(b)) for k, j, b in self.entries))

    def vector(self, nodes: NodeSet) -> np.ndarray:
        """Right-hand side in the row order of ``nodes.rows``."""
        lookup = {}
        for k, j, b in self.entries:
            if (k, j) in lookup:
                raise ValidationError(f"duplicate entry for node {k}, order {j}")
            lookup[(k, j)] = b
        rows = nodes.rows
        if set(lookup) != set(rows):
            raise ValidationError("entries must give orders 0..m_k-1 exactly once for every node")
        return np.array([lookup[r] for r in rows], dtype=complex)

    @classmethod
    def from_vector(cls, nodes: NodeSet, values: Sequence[complex]) -> "HermiteData":
        return cls(tuple((k, j, b) for (k, j), b in zip(nodes.rows, values)))

    def to_dict(self) -> dict:
        return {"entries": [{"k": k, "j": j, "b": [b.real, b.imag]} for k, j, b in self.entries]}

    @classmethod
    def from_dict(cls, data: dict) -> "HermiteData":
        return cls(tuple((e["k"], e["j"], complex(*e["b"])) for e in data["entries"]))


@dataclass(frozen=True)
class ExpSum:
    exponents: tuple[complex, ...]
    coefficients: tuple[complex, ...]

    def __post_init__(self):
        ex = tuple(complex(x) for x in self.exponents)
        co = tuple(complex(x) for x in self.coefficients)
        if len(ex) != len(co):
            raise SizeMismatch("exponents and coefficients differ in length")
        if len(set(ex)) != len(ex):
            raise ValidationError("exponents must be pairwise distinct")
        object.__setattr__(self, "exponents", ex)
        object.__setattr__(self, "coefficients", co)


def _check_exponents(exponents) -> np.ndarray:
    lam = np.asarray([complex(x) for x in exponents], dtype=complex)
    if len(set(lam.tolist())) != len(lam):
        raise ValidationError("exponents must be pairwise distinct")
    return lam


def hermite_matrix(exponents: Sequence[complex], nodes: NodeSet) -> np.ndarray:
    """Square matrix with row ``(k, j)``, column ``n`` equal to ``l_n^j e^{l_n mu_k}``."""
    lam = _check_exponents(exponents)
    if len(lam) != nodes.total_multiplicity:
        raise SizeMismatch(f"{len(lam)} exponents for total multiplicity {nodes.total_multiplicity}")
    mus = nodes.mus
    return np.array([lam**j * np.exp(lam * mus[k]) for k, j in nodes.rows])


class Solution(NamedTuple):
    expsum: ExpSum
    residual: float
    condition: float


def _full_pivot_solve(a: np.ndarray, b: np.ndarray, pivot_tol: float) -> tuple[np.ndarray, float]:
    """Gaussian elimination with complete pivoting.

    Returns the solution and the pivot ratio ``max|pivot| / min|pivot|``.
    Raises :class:`NearSingular` when a pivot falls below ``pivot_tol``
    times the largest entry of the matrix.
    """
    a = a.astype(complex).copy()
    b = b.astype(complex).copy()
    n = a.shape[0]
    cols = np.arange(n)
    scale = np.abs(a).max() if n else 1.0
    pivots = []
    for i in range(n):
        sub = np.abs(a[i:, i:])
        r, c = np.unravel_index(int(np.argmax(sub)), sub.shape)
        r += i
        c += i
        piv = abs(a[r, c])
        pivots.append(piv)
        if scale == 0 or piv < pivot_tol * scale:
            cond = max(pivots) / piv if piv > 0 else math.inf
            raise NearSingular(f"pivot {piv:.3e} below {pivot_tol:.1e} x {scale:.3e}", cond)
        if r != i:
            a[[i, r]] = a[[r, i]]
            b[[i, r]] = b[[r, i]]
        if c != i:
            a[:, [i, c]] = a[:, [c, i]]
            cols[[i, c]] = cols[[c, i]]
        f = a[i + 1:, i] / a[i, i]
        a[i + 1:, i:] -= f[:, None] * a[i, i:][None, :]
        b[i + 1:] -= f * b[i]
    y = np.zeros(n, dtype=complex)
    for i in range(n - 1, -1, -1):
        y[i] = (b[i] - a[i, i + 1:] @ y[i + 1:]) / a[i, i]
    x = np.zeros(n, dtype=complex)
    x[cols] = y
    return x, (float(max(pivots) / min(pivots)) if pivots else 1.0)


def solve_finite_section(exponents: Sequence[complex], nodes: NodeSet, data: HermiteData,
                         pivot_tol: float = 1e-13, scale: bool = True) -> Solution:
    """Coefficients of the interpolating exponential sum.

    With ``scale`` set, column ``n`` is multiplied by ``e^{-l_n mu_ref}``
    (``mu_ref`` the median node) and then normalized to unit max-norm before
    elimination; the coefficients are unscaled afterwards.  ``residual`` is
    ``max|f^{(j)}(mu_k) - b_k^j|`` relative to ``max(1, max|b|)``.
    """
    lam = _check_exponents(exponents)
    a = hermite_matrix(lam, nodes)
    rhs = data.vector(nodes)
    if scale:
        mu_ref = float(np.median(nodes.mus))
        d = np.exp(-lam * mu_ref)
        scaled = a * d[None, :]
        norms = np.abs(scaled).max(axis=0)
        norms[norms == 0] = 1.0
        d = d / norms
        y, cond = _full_pivot_solve(a * d[None, :], rhs, pivot_tol)
        c = y * d
    else:
        c, cond = _full_pivot_solve(a, rhs, pivot_tol)
    res = float(np.abs(a @ c - rhs).max() / max(1.0, float(np.abs(rhs).max())))
    return Solution(ExpSum(tuple(lam.tolist()), tuple(c.tolist())), res, cond)


def eval_expsum(f: ExpSum, z: complex, order: int = 0) -> complex:
    """``sum c_n l_n^order e^{l_n z}``."""
    if order < 0:
        raise ValidationError("derivative order must be nonnegative")
    lam = np.asarray(f.exponents, dtype=complex)
    c = np.asarray(f.coefficients, dtype=complex)
    return complex(np.sum(c * lam**order * np.exp(lam * complex(z))))


# -- absolute convergence of infinite exponential series -------------------------

@dataclass(frozen=True)
class CoeffModel:
    """Coefficient modulus law.

    ``geometric``: ``|c_n| = A q**n``; ``exp``: ``A e^{-sigma |l_n|}``;
    ``sqrt``: ``A e^{-sigma sqrt|l_n|}``.  ``n`` counts from 0 along the ray.
    """

    rule: str
    A: float = 1.0
    q: float = 1.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.rule not in ("geometric", "exp", "sqrt"):
            raise UnsupportedCoeffModel(f"unsupported coefficient rule {self.rule!r}")
        if not self.A > 0:
            raise UnsupportedCoeffModel("A must be positive")
        if self.rule == "geometric" and not self.q > 0:
            raise UnsupportedCoeffModel("q must be positive")

    def to_dict(self) -> dict:
        return {"rule": self.rule, "A": self.A, "q": self.q, "sigma": self.sigma}

    @classmethod
    def from_dict(cls, data: dict) -> "CoeffModel":
        return cls(str(data["rule"]), float(data.get("A", 1.0)), float(data.get("q", 1.0)),
                   float(data.get("sigma", 0.0)))


class Convergence(NamedTuple):
    converges: bool
    margin: float
    borderline: bool


def abs_convergence_margin(seq: ExponentSequence, coeffs: CoeffModel, z: complex) -> Convergence:
    """Absolute convergence of ``sum |c_n| e^{Re(l_n z)}`` along a ray tail.

    ``margin`` is the limit of ``ln(|c_n| e^{Re(l_n z)}) / |l_n|``.  Because
    ``|l_n|`` grows geometrically, a negative margin gives terms below
    ``e^{-eps |l_n|}`` (convergent) and a positive one unbounded terms.  A
    zero margin is decided from the subleading behaviour of the law and
    flagged ``borderline``.  The finite prefix does not affect convergence.
    """
    if seq.tail is None:
        raise UnsupportedCoeffModel("convergence test needs a ray tail model")
    t = seq.tail
    u = (complex(math.cos(t.angle), math.sin(t.angle)) * complex(z)).real
    if coeffs.rule == "exp":
        margin = u - coeffs.sigma
    else:
        margin = u
    if margin != 0:
        return Convergence(margin < 0, margin, False)
    if coeffs.rule == "geometric":
        return Convergence(coeffs.q < 1, 0.0, True)
    if coeffs.rule == "exp":
        return Convergence(False, 0.0, True)
    return Convergence(coeffs.sigma > 0, 0.0, True)


def partial_sums(seq: ExponentSequence, coeffs: CoeffModel, z: complex, terms: int) -> np.ndarray:
    """Partial sums of ``|c_n| e^{Re(l_n z)}`` over the ray tail, for direct checks."""
    t = seq.tail
    if t is None:
        raise UnsupportedCoeffModel("partial sums need a ray tail model")
    out, acc = [], 0.0
    for k in range(terms):
        lam = t.term(k)
        if coeffs.rule == "geometric":
            log_c = math.log(coeffs.A) + k * math.log(coeffs.q)
        elif coeffs.rule == "exp":
            log_c = math.log(coeffs.A) - coeffs.sigma * abs(lam)
        else:
            log_c = math.log(coeffs.A) - coeffs.sigma * math.sqrt(abs(lam))
        e = log_c + (lam * complex(z)).real
        acc += math.exp(e) if e < 700 else math.inf
        out.append(acc)
    return np.array(out)
