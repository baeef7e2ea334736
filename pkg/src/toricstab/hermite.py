"""Exact rank certification for Hermite interpolation constraint matrices.

A monic polynomial f = z^d + sum a_i z^i subject to f^(l)(x_j) = s for
l = 0..n-1 at k distinct nodes gives a stacked linear system in the a_i.
This module builds those matrices over the rationals, certifies their rank
by fraction-free elimination, and exposes the dimension bookkeeping of the
associated affine constraint spaces.  No floating point anywhere.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import perm

from .exactla import bareiss_rank, integer_rows, solve_affine
from .polynomials import GaussianRational, RationalPoly


def confluent_vandermonde(points, order, degree):
    """k x d matrix of the coefficients of a_0..a_{d-1} in f^(order)(x_j)."""
    pts = [Fraction(x) for x in points]
    if len(set(pts)) != len(pts):
        raise ValueError("interpolation points must be distinct")
    order = int(order)
    degree = int(degree)
    if order < 0 or degree < 1:
        raise ValueError("need order >= 0 and degree >= 1")
    rows = []
    for x in pts:
        row = []
        for i in range(degree):
            if i < order:
                row.append(Fraction(0))
            else:
                row.append(perm(i, order) * x ** (i - order))
        rows.append(row)
    return rows


def stacked_system(points, n, degree):
    """The n*k x d matrix stacking derivative orders 0..n-1."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    rows = []
    for order in range(n):
        rows.extend(confluent_vandermonde(points, order, degree))
    return rows


def exact_rank(matrix):
    """Rank over Q, certified by integer fraction-free elimination."""
    if not matrix or not matrix[0]:
        return 0
    return bareiss_rank(integer_rows(matrix))


@dataclass(frozen=True)
class RankCheck:
    rank: int
    expected: int
    in_regime: bool

    @property
    def passed(self):
        return self.rank == self.expected

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            "rank": self.rank,
            "expected": self.expected,
            "passed": self.passed,
            "in_regime": self.in_regime,
        }


def verify_rank_claim(points, n, degree):
    """Certify that the stacked constraint matrix has full row rank n*k.

    Outside the regime degree >= n*k the check is still performed and the
    result flags the regime violation (the rank is then capped by degree).
    """
    k = len(points)
    rank = exact_rank(stacked_system(points, n, degree))
    return RankCheck(rank=rank, expected=n * k, in_regime=degree >= n * k)


@dataclass(frozen=True)
class HermiteSpec:
    """Constraint data f^(l)(x_j) = targets[l][j] for a monic polynomial of
    the given degree."""

    points: tuple
    order: int
    degree: int
    targets: tuple

    def __post_init__(self):
        pts = tuple(Fraction(x) for x in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        tg = tuple(tuple(Fraction(v) for v in row) for row in self.targets)
        if len(tg) != self.order or any(len(row) != len(pts) for row in tg):
            raise ValueError("targets must be an order x k grid")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "targets", tg)


class HermiteInconsistencyError(RuntimeError):
    """Signals an impossible constraint system; cannot happen when degree >= n*k."""


def _hermite_matrix_rhs(spec):
    rows = []
    rhs = []
    for order in range(spec.order):
        block = confluent_vandermonde(spec.points, order, spec.degree)
        for j, x in enumerate(spec.points):
            rows.append(block[j])
            rhs.append(spec.targets[order][j] - perm(spec.degree, order) * x ** (spec.degree - order))
    return rows, rhs


def hermite_dimension(spec):
    """Dimension of the affine space of monic solutions (degree - n*k in regime)."""
    rows, rhs = _hermite_matrix_rhs(spec)
    solution = solve_affine(rows, rhs)
    if solution is None:
        raise HermiteInconsistencyError(
            "inconsistent Hermite system; impossible for distinct points with degree >= n*k"
        )
    return spec.degree - exact_rank(rows)


def hermite_solution(spec):
    """One exact monic solution of the constraint system."""
    rows, rhs = _hermite_matrix_rhs(spec)
    solution = solve_affine(rows, rhs)
    if solution is None:
        raise HermiteInconsistencyError("inconsistent Hermite system")
    coeffs = [GaussianRational(c) for c in solution] + [GaussianRational(1)]
    return RationalPoly(coeffs)


def bundle_rank(degrees, k, n, r):
    """Rank 2*N(D) - 2nrk + k - 1 of the band of the resolved discriminant
    over the k-point configuration stratum."""
    total = sum(int(d) for d in degrees)
    return 2 * total - 2 * n * r * k + k - 1
