"""Equilateral, equidiagonal cross-polytopes and the equal-diagonal pentagon.

Vertices are ordered ``+e1, -e1, +e2, -e2, ...`` so that points ``2i`` and
``2i + 1`` are antipodal. Pairs of antipodal vertices are joined by a
diagonal of squared length ``b_sq``; every other pair is an edge of squared
length ``a_sq``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .distance_core import (
    ScalarLike,
    SquaredDistanceMatrix,
    cm_determinant,
    embedding_dimension,
    exact,
)


class NoSignChangeError(ValueError):
    """Raised when a bisection bracket does not straddle a root."""


@dataclass(frozen=True)
class CrossPolytopeSpec:
    n: int
    a_sq: Fraction
    b_sq: Fraction

    def __init__(self, n: int, a_sq: ScalarLike, b_sq: ScalarLike):
        a_sq, b_sq = exact(a_sq), exact(b_sq)
        if n < 2:
            raise ValueError(f"cross-polytope dimension must be at least 2, got {n}")
        if a_sq <= 0 or b_sq <= 0:
            raise ValueError("squared edge and diagonal lengths must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a_sq", a_sq)
        object.__setattr__(self, "b_sq", b_sq)

    @property
    def is_regular(self) -> bool:
        return self.b_sq == 2 * self.a_sq


def vertex_labels(n: int) -> list[str]:
    return [f"{sign}e{i}" for i in range(1, n + 1) for sign in "+-"]


def antipode(index: int) -> int:
    return index ^ 1


class Verdict(enum.Enum):
    FLAT = "flat"
    FULL_DIMENSIONAL = "full_dimensional"
    NOT_REALIZABLE = "not_realizable"


@dataclass(frozen=True)
class FlatnessVerdict:
    verdict: Verdict
    dimension: int | None
    cm_det: Fraction
    closed_form: Fraction


class Eq3Check(NamedTuple):
    cm_det: Fraction
    closed_form: Fraction
    equal: bool


def cross_distance_matrix(spec: CrossPolytopeSpec) -> SquaredDistanceMatrix:
    return SquaredDistanceMatrix.from_function(
        2 * spec.n,
        lambda i, j: spec.b_sq if j == antipode(i) else spec.a_sq)


def dn_closed_form(spec: CrossPolytopeSpec) -> Fraction:
    """Closed form ``2n · b^(2n) · (2a² - b²)^(n-1)`` of the CM determinant."""
    n = spec.n
    return 2 * n * spec.b_sq ** n * (2 * spec.a_sq - spec.b_sq) ** (n - 1)


def verify_eq3_identity(spec: CrossPolytopeSpec) -> Eq3Check:
    """Compare the generic exact determinant against the closed form."""
    det = cm_determinant(cross_distance_matrix(spec))
    closed = dn_closed_form(spec)
    return Eq3Check(det, closed, det == closed)


def classify_flatness(spec: CrossPolytopeSpec) -> FlatnessVerdict:
    """Classify a cross-polytope by the minimal dimension that realizes it.

    The verdict comes from the Gram inertia alone; it is never read off
    ``b_sq == 2 * a_sq``, so agreement between the two is a real check.
    """
    det, closed, _ = verify_eq3_identity(spec)
    dim = embedding_dimension(cross_distance_matrix(spec))
    if dim is None:
        verdict = Verdict.NOT_REALIZABLE
    elif dim == spec.n:
        verdict = Verdict.FLAT
    elif dim == 2 * spec.n - 1:
        verdict = Verdict.FULL_DIMENSIONAL
    else:
        raise ArithmeticError(
            f"cross-polytope {spec} realized in unexpected dimension {dim}")
    return FlatnessVerdict(verdict, dim, det, closed)


def pentagon_distance_matrix(a_sq: ScalarLike,
                             d_sq: ScalarLike) -> SquaredDistanceMatrix:
    """Five cyclic points: sides ``a_sq`` between neighbours, ``d_sq`` otherwise."""
    a_sq, d_sq = exact(a_sq), exact(d_sq)
    return SquaredDistanceMatrix.from_function(
        5, lambda i, j: a_sq if (j - i) % 5 in (1, 4) else d_sq)


def pentagon_cm_det(a_sq: ScalarLike, d_sq: ScalarLike) -> Fraction:
    if exact(a_sq) <= 0 or exact(d_sq) < 0:
        raise ValueError("need a_sq > 0 and d_sq >= 0")
    return cm_determinant(pentagon_distance_matrix(a_sq, d_sq))


def pentagon_is_realizable(a_sq: ScalarLike, d_sq: ScalarLike) -> bool:
    return embedding_dimension(pentagon_distance_matrix(a_sq, d_sq)) is not None


def pentagon_flat_diagonal(a_sq: ScalarLike, lo: ScalarLike, hi: ScalarLike,
                           tol: float = 1e-9) -> float:
    """Squared diagonal at which the equal-diagonal pentagon becomes planar.

    The pentagon determinant is ``-5 (x² - 3x + 1)²`` times ``a_sq⁴`` with
    ``x = d_sq / a_sq``. It only touches zero, so its sign cannot drive a
    bisection. Its zeros are exactly where the configuration stops being
    Euclidean, though, so the bisection runs on the exact realizability test
    at rational midpoints. The bracket must hold one realizable end and one
    non-realizable end; an end with an exactly vanishing determinant is
    returned as the root. Only the returned value is a float.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = exact(lo), exact(hi)
    if lo > hi:
        lo, hi = hi, lo
    for end in (lo, hi):
        if pentagon_cm_det(a_sq, end) == 0:
            return float(end)
    ok_lo = pentagon_is_realizable(a_sq, lo)
    if ok_lo == pentagon_is_realizable(a_sq, hi):
        raise NoSignChangeError(
            f"no sign change in [{lo}, {hi}]: both ends are "
            + ("realizable" if ok_lo else "not realizable"))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if pentagon_cm_det(a_sq, mid) == 0:
            return float(mid)
        if pentagon_is_realizable(a_sq, mid) == ok_lo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)
