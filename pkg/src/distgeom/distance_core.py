"""Exact Cayley-Menger and Gram-matrix machinery.

Every input is a matrix of *squared* distances with rational entries, so
determinants, volumes and realizability decisions are exact. Only
:func:`realize_floating` leaves exact arithmetic, and it reports its own
residual.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

ExactScalar = Fraction
ScalarLike = Union[int, Fraction, str]
ExactMatrix = list[list[Fraction]]

DEFAULT_REALIZATION_TOL = 1e-9


class DistanceMatrixError(ValueError):
    """Raised for malformed squared-distance matrices."""


class NotRealizableError(ValueError):
    """Raised when a distance matrix has no Euclidean realization."""


def exact(value: ScalarLike) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction` without passing through floats.

    Floats are refused: a float squared length has already been rounded, and
    the zero tests downstream would silently lose their meaning.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


@dataclass(frozen=True)
class SquaredDistanceMatrix:
    """Symmetric matrix of squared pairwise distances over labeled points."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable[ScalarLike]]):
        entries = tuple(tuple(exact(x) for x in row) for row in rows)
        k = len(entries)
        if k < 1:
            raise DistanceMatrixError("matrix must contain at least one point")
        for i, row in enumerate(entries):
            if len(row) != k:
                raise DistanceMatrixError(
                    f"row {i} has {len(row)} entries, expected {k}")
        for i in range(k):
            if entries[i][i] != 0:
                raise DistanceMatrixError(f"diagonal entry ({i},{i}) is not zero")
            for j in range(i + 1, k):
                if entries[i][j] != entries[j][i]:
                    raise DistanceMatrixError(
                        f"entry ({i},{j}) ≠ entry ({j},{i})")
                if entries[i][j] < 0:
                    raise DistanceMatrixError(f"entry ({i},{j}) is negative")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_function(cls, size: int, dist_sq) -> "SquaredDistanceMatrix":
        """Build a matrix from ``dist_sq(i, j)`` evaluated for ``i < j``."""
        rows = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                rows[i][j] = rows[j][i] = exact(dist_sq(i, j))
        return cls(rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __len__(self) -> int:
        return self.size

    def permuted(self, perm: Sequence[int]) -> "SquaredDistanceMatrix":
        """Relabel points so that new point ``i`` is old point ``perm[i]``."""
        if sorted(perm) != list(range(self.size)):
            raise ValueError("not a permutation of the point indices")
        return SquaredDistanceMatrix(
            [[self.entries[p][q] for q in perm] for p in perm])

    def scaled(self, factor: ScalarLike) -> "SquaredDistanceMatrix":
        factor = exact(factor)
        if factor < 0:
            raise ValueError("scale factor must be nonnegative")
        return SquaredDistanceMatrix(
            [[factor * x for x in row] for row in self.entries])

    def subset(self, indices: Sequence[int]) -> "SquaredDistanceMatrix":
        return SquaredDistanceMatrix(
            [[self.entries[p][q] for q in indices] for p in indices])

    def tolist(self) -> ExactMatrix:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class InertiaSignature:
    positive: int
    negative: int
    zero: int

    @property
    def size(self) -> int:
        return self.positive + self.negative + self.zero


@dataclass(frozen=True)
class Realization:
    """Floating point coordinates reproducing a squared-distance matrix."""

    dimension: int
    coordinates: np.ndarray
    max_residual: float

    def squared_distances(self) -> np.ndarray:
        diff = self.coordinates[:, None, :] - self.coordinates[None, :, :]
        return np.einsum("ijk,ijk->ij", diff, diff)


# -- exact linear algebra ---------------------------------------------------

def determinant(matrix: Sequence[Sequence[ScalarLike]]) -> Fraction:
    """Exact determinant of a square rational matrix.

    Rows are cleared of denominators, then integer Bareiss elimination runs
    with exact divisions, so intermediate values stay bounded by minors of
    the scaled matrix.
    """
    rows = [[exact(x) for x in row] for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)

    scale = 1
    work: list[list[int]] = []
    for row in rows:
        m = lcm(*(x.denominator for x in row))
        scale *= m
        work.append([x.numerator * (m // x.denominator) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for r in range(k + 1, n):
                if work[r][k] != 0:
                    work[k], work[r] = work[r], work[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = work[k][k]
        for i in range(k + 1, n):
            wi, wk = work[i], work[k]
            lead = wi[k]
            for j in range(k + 1, n):
                wi[j] = (pivot * wi[j] - lead * wk[j]) // prev
            wi[k] = 0
        prev = pivot
    return Fraction(sign * work[n - 1][n - 1], scale)


def inertia(matrix: Sequence[Sequence[ScalarLike]]) -> InertiaSignature:
    """Signature of a symmetric rational matrix via exact LDLᵀ with pivoting.

    A nonzero diagonal entry is eliminated as a 1×1 pivot. When the remaining
    diagonal is all zero but some off-diagonal entry ``x`` is not, the block
    ``[[0, x], [x, 0]]`` is eliminated as a 2×2 pivot; its determinant is
    ``-x²`` so it contributes one positive and one negative pivot.
    """
    work = [[exact(x) for x in row] for row in matrix]
    n = len(work)
    if any(len(row) != n for row in work):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if work[i][j] != work[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")

    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if work[i][i] != 0), None)
        if p is not None:
            d = work[p][p]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(p)
            col = [work[i][p] for i in active]
            for a, i in enumerate(active):
                if col[a] == 0:
                    continue
                f = col[a] / d
                row = work[i]
                for b, j in enumerate(active):
                    row[j] -= f * col[b]
            continue

        pair = next(((i, j) for ai, i in enumerate(active)
                     for j in active[ai + 1:] if work[i][j] != 0), None)
        if pair is None:
            break
        p, q = pair
        x = work[p][q]
        pos += 1
        neg += 1
        active.remove(p)
        active.remove(q)
        # inverse of [[0, x], [x, 0]] is [[0, 1/x], [1/x, 0]]
        cp = [work[i][p] for i in active]
        cq = [work[i][q] for i in active]
        for a, i in enumerate(active):
            row = work[i]
            for b, j in enumerate(active):
                row[j] -= (cp[a] * cq[b] + cq[a] * cp[b]) / x
    return InertiaSignature(pos, neg, n - pos - neg)


# -- Cayley-Menger ------------------------------------------------------------

def cm_matrix(d: SquaredDistanceMatrix) -> ExactMatrix:
    """Bordered Cayley-Menger matrix of size ``k + 1`` for ``k`` points."""
    k = d.size
    out = [[Fraction(1)] * (k + 1)]
    out[0][0] = Fraction(0)
    for i in range(k):
        out.append([Fraction(1)] + list(d.entries[i]))
    return out


def cm_determinant(d: SquaredDistanceMatrix) -> Fraction:
    return determinant(cm_matrix(d))


def simplex_volume_sq(d: SquaredDistanceMatrix) -> Fraction:
    """Squared ``k``-volume of the simplex spanned by ``k + 1`` points.

    A negative value means the distances are not realizable; the caller
    decides what to do with it.
    """
    k = d.size - 1
    return (-1) ** (k + 1) * cm_determinant(d) / (2 ** k * factorial(k) ** 2)


def gram_matrix(d: SquaredDistanceMatrix, anchor: int = 0) -> ExactMatrix:
    """Inner products of the difference vectors from ``anchor`` to the rest."""
    if not 0 <= anchor < d.size:
        raise IndexError(f"anchor {anchor} out of range for {d.size} points")
    others = [i for i in range(d.size) if i != anchor]
    e = d.entries
    return [[(e[anchor][i] + e[anchor][j] - e[i][j]) / 2 for j in others]
            for i in others]


def embedding_dimension(d: SquaredDistanceMatrix) -> int | None:
    """Smallest Euclidean dimension realizing ``d``, or None if there is none."""
    sig = inertia(gram_matrix(d, 0))
    if sig.negative:
        return None
    return sig.positive


def realize_floating(d: SquaredDistanceMatrix,
                     tol: float = DEFAULT_REALIZATION_TOL) -> Realization:
    """Coordinates for ``d`` from an eigendecomposition of its Gram matrix.

    The anchor point (index 0) sits at the origin. Raises
    :class:`NotRealizableError` when ``d`` has no realization, or when the
    reconstruction misses the input by more than ``tol``.
    """
    dim = embedding_dimension(d)
    if dim is None:
        raise NotRealizableError("distance matrix is not Euclidean")
    k = d.size
    coords = np.zeros((k, dim))
    if dim:
        gram = np.array([[float(x) for x in row] for row in gram_matrix(d, 0)])
        vals, vecs = np.linalg.eigh(gram)
        top = np.argsort(vals)[::-1][:dim]
        coords[1:] = vecs[:, top] * np.sqrt(np.clip(vals[top], 0.0, None))
    realization = Realization(dim, coords, 0.0)
    target = np.array([[float(x) for x in row] for row in d.entries])
    residual = float(np.max(np.abs(realization.squared_distances() - target)))
    if residual > tol:
        raise NotRealizableError(
            f"floating realization residual {residual:.3e} exceeds {tol:.1e}")
    return Realization(dim, coords, residual)
