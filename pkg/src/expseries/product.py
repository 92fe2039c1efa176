"""Genus-zero canonical product over geometrically separated zeros.

For zeros with ``|z_{n+1}| >= 2 |z_n|`` the product ``G(z) = prod (1 - z/z_n)``
converges without exponential factors.  Evaluation works with a truncation to
the first ``N`` zeros plus a rigorous bound on the logarithm of the omitted
factors.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, TruncationTooSmall, ValidationError
from .exponents import ExponentSequence, satisfies_separation


@dataclass(frozen=True)
class CanonicalProduct:
    zeros: ExponentSequence
    truncation: int

    def __post_init__(self):
        if self.truncation < 1:
            raise ValidationError("truncation must be positive")
        if self.zeros.is_finite and self.truncation > len(self.zeros.values):
            raise ValidationError(
                f"truncation {self.truncation} exceeds the {len(self.zeros.values)} available zeros"
            )
        head = self.zeros.terms(self._checked_count())
        if not satisfies_separation(head, strict=False):
            raise ValidationError("zeros must satisfy |z_{n+1}| >= 2|z_n|")
        if self.zeros.tail is not None and self.zeros.tail.ratio < 2:
            raise ValidationError("ray tail ratio must be at least 2")

    def _checked_count(self) -> int:
        if self.zeros.is_finite:
            return len(self.zeros.values)
        return max(self.truncation, len(self.zeros.values)) + 1

    @property
    def retained(self) -> list[complex]:
        return self.zeros.terms(self.truncation)

    def _remainder(self) -> list[complex]:
        """Prefix zeros beyond the truncation."""
        return list(self.zeros.values[self.truncation:])


def _log_factor_sum(zeros, z: complex) -> complex:
    """``sum log(1 - z/zero)`` with principal branches; caller excludes exact zeros."""
    acc = 0j
    for lam in zeros:
        acc += cmath.log(1 - z / lam)
    return acc


def eval_G(gp: CanonicalProduct, z: complex) -> tuple[complex, float]:
    """Truncated product at ``z`` and a bound on ``|log(omitted factors)|``.

    Uses ``|log(1 - w)| <= |w| / (1 - |w|)``.  Omitted prefix zeros are summed
    termwise; a ray tail is bounded geometrically, which needs the first ray
    modulus to exceed ``2|z|``.
    """
    z = complex(z)
    kept = gp.retained
    if any(z == lam for lam in kept):
        return 0j, 0.0
    tail_bound = 0.0
    az = abs(z)
    for lam in gp._remainder():
        if abs(lam) <= 2 * az:
            raise TruncationTooSmall(f"omitted zero {lam} is not beyond 2|z| = {2 * az}")
        tail_bound += az / (abs(lam) - az)
    t = gp.zeros.tail
    if t is not None:
        k0 = max(gp.truncation - len(gp.zeros.values), 0)
        a = t.modulus(k0)
        if a <= 2 * az:
            raise TruncationTooSmall(f"|zero_(N+1)| = {a} must exceed 2|z| = {2 * az}")
        # each omitted term <= 2|z| / |zero|, zeros grow by the ray ratio
        tail_bound += 2 * az / a * t.ratio / (t.ratio - 1)
    log_val = _log_factor_sum(kept, z)
    if log_val.real > 700:
        return complex(math.inf, 0), tail_bound
    return cmath.exp(log_val), tail_bound


def log_abs_G(gp: CanonicalProduct, z: complex) -> float:
    """``ln|G_N(z)|`` without forming the product; ``-inf`` at a retained zero."""
    z = complex(z)
    total = 0.0
    for lam in gp.retained:
        f = abs(1 - z / lam)
        if f == 0:
            return -math.inf
        total += math.log(f)
    return total


def _check_index(gp: CanonicalProduct, n: int) -> None:
    if not 1 <= n <= gp.truncation:
        raise IndexOutOfRange(f"index {n} outside 1..{gp.truncation}")


def derivative_at_zero(gp: CanonicalProduct, n: int) -> complex:
    """``G_N'(z_n) = (-1/z_n) prod_{m != n} (1 - z_n/z_m)`` (1-based ``n``)."""
    _check_index(gp, n)
    zs = gp.retained
    lam = zs[n - 1]
    acc = -1 / lam
    for m, mu in enumerate(zs, start=1):
        if m != n:
            acc *= 1 - lam / mu
    return acc


def log_abs_derivative_at_zero(gp: CanonicalProduct, n: int) -> float:
    """``ln|G_N'(z_n)|`` accumulated in log space."""
    _check_index(gp, n)
    zs = gp.retained
    lam = zs[n - 1]
    total = -math.log(abs(lam))
    for m, mu in enumerate(zs, start=1):
        if m != n:
            total += math.log(abs(1 - lam / mu))
    return total


def condensation_terms(gp: CanonicalProduct, upto: int) -> np.ndarray:
    """Per-zero values ``(1/|z_n|) ln(1/|G_N'(z_n)|)`` for ``n = 1..upto``."""
    _check_index(gp, upto)
    zs = gp.retained
    return np.array([-log_abs_derivative_at_zero(gp, n) / abs(zs[n - 1]) for n in range(1, upto + 1)])


def condensation_index(gp: CanonicalProduct, upto: int, start: int | None = None) -> float:
    """Tail estimate of the condensation index, clamped below at 0.

    The limsup is estimated by the maximum of the per-zero values over the
    window ``start..upto``; ``start`` defaults to ``ceil(upto/2)`` so early
    zeros do not dominate.  Pass ``start=1`` for the running maximum.
    """
    terms = condensation_terms(gp, upto)
    if start is None:
        start = max(1, math.ceil(upto / 2))
    if not 1 <= start <= upto:
        raise IndexOutOfRange(f"window start {start} outside 1..{upto}")
    return max(0.0, float(terms[start - 1:].max()))


def type_proxy(gp: CanonicalProduct, samples: int = 256) -> float:
    """``max_{|z|=R} ln|G_N(z)| / R`` on the circle ``R = |z_N| / 4``."""
    radius = abs(gp.retained[-1]) / 4
    theta = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    return max(log_abs_G(gp, radius * cmath.exp(1j * t)) for t in theta) / radius
