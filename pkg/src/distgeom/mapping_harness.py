"""Finite configurations behind the two-distance-preserving mapping argument.

For a domain dimension ``n`` and preserved squared distance ``A_sq`` the
construction places a regular (n-1)-simplex of squared edge ``2 A_sq`` in a
hyperplane, and puts two apexes ``v1``, ``v2`` on either side of its
circumcenter at mutual squared distance ``c_sq = 4 A_sq / n``. Each apex is
then at squared distance exactly ``A_sq`` from every simplex vertex.

Mappings themselves are never represented; only these distance matrices
and the inequalities the argument needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cross_polytope import CrossPolytopeSpec, Verdict, classify_flatness
from .distance_core import (
    ScalarLike,
    SquaredDistanceMatrix,
    embedding_dimension,
    exact,
)


@dataclass(frozen=True)
class MappingScenario:
    n: int
    A_sq: Fraction

    def __init__(self, n: int, A_sq: ScalarLike):
        A_sq = exact(A_sq)
        if n < 2:
            raise ValueError(f"domain dimension must be at least 2, got {n}")
        if A_sq <= 0:
            raise ValueError("A_sq must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "A_sq", A_sq)

    @property
    def cable_sq(self) -> Fraction:
        return 4 * self.A_sq / self.n

    @property
    def strut_sq(self) -> Fraction:
        return 2 * self.A_sq


@dataclass(frozen=True)
class Theorem2Report:
    n: int
    c_sq: Fraction
    s_sq: Fraction
    ratio_sq: Fraction
    threshold_passed: bool
    bridge_ok: bool
    construction_dimension: int | None
    flatness: Verdict

    @property
    def construction_ok(self) -> bool:
        return self.construction_dimension == self.n

    @property
    def all_passed(self) -> bool:
        return (self.threshold_passed and self.bridge_ok
                and self.construction_ok and self.flatness is Verdict.FLAT)


def circumradius_sq(k: int, edge_sq: ScalarLike) -> Fraction:
    """Squared circumradius of a regular ``k``-simplex with squared edge ``edge_sq``."""
    if k < 1:
        raise ValueError("simplex dimension must be at least 1")
    edge_sq = exact(edge_sq)
    if edge_sq <= 0:
        raise ValueError("edge_sq must be positive")
    return edge_sq * k / (2 * (k + 1))


def construction_distance_matrix(sc: MappingScenario) -> SquaredDistanceMatrix:
    """Squared distances among ``v1, v2, v3, ..., v_{n+2}`` (indices 0..n+1)."""
    def dist_sq(i: int, j: int) -> Fraction:
        if j == 1:
            return sc.cable_sq
        if i <= 1:
            return sc.A_sq
        return 2 * sc.A_sq

    return SquaredDistanceMatrix.from_function(sc.n + 2, dist_sq)


def verify_bridge(sc: MappingScenario) -> bool:
    """Pythagoras across the hyperplane: ``(c/2)² + R² == A²``."""
    half_cable_sq = sc.cable_sq / 4
    radius_sq = circumradius_sq(sc.n - 1, 2 * sc.A_sq)
    return half_cable_sq + radius_sq == sc.A_sq


def cable_strut_passes(n: int) -> bool:
    """Exact test of ``2/n < ((√5 - 1)/2)²``.

    The right side equals ``(3 - √5)/2``, so the test is ``√5 < 3 - 4/n``,
    which holds iff ``3 - 4/n`` is positive and its square exceeds 5.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    margin = 3 - Fraction(4, n)
    return margin > 0 and margin * margin > 5


def fold_distance_sq(sc: MappingScenario, t: ScalarLike) -> Fraction:
    """Squared apex distance after folding ``v2`` about the simplex plane.

    The fold angle θ satisfies ``cos θ = (1 - t²)/(1 + t²)``; ``t = 0`` leaves the
    apexes on opposite sides (distance ``c``) and ``|t| -> ∞`` brings them
    together.
    """
    t = exact(t)
    return sc.cable_sq / (1 + t * t)


def theorem2_report(sc: MappingScenario) -> Theorem2Report:
    c_sq, s_sq = sc.cable_sq, sc.strut_sq
    flat = classify_flatness(CrossPolytopeSpec(sc.n, sc.A_sq, 2 * sc.A_sq))
    return Theorem2Report(
        n=sc.n,
        c_sq=c_sq,
        s_sq=s_sq,
        ratio_sq=c_sq / s_sq,
        threshold_passed=cable_strut_passes(sc.n),
        bridge_ok=verify_bridge(sc),
        construction_dimension=embedding_dimension(
            construction_distance_matrix(sc)),
        flatness=flat.verdict,
    )
