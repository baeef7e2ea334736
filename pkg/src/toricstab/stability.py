"""Closed-form stability dimensions and the first-page vanishing table.

All quantities here are exact integer arithmetic in r_min (the smallest
primitive collection), the degree vector, and the multiplicity bound n.
The vanishing table reports "possibly_nonzero" rather than "nonzero": the
underlying groups are out of scope, only the vanishing ranges are certified.
"""

from dataclasses import dataclass
from itertools import combinations

from .complexes import dim_config, r_min
from .fans import degree_is_null
from .hermite import bundle_rank

ZERO = "zero"
POSSIBLY_NONZERO = "possibly_nonzero"
TAIL_UNKNOWN = "tail_unknown"

BAND_CAP = 12


class CapExceededError(ValueError):
    """Band enumeration requested beyond the supported truncation size."""


def stability_dim(degrees, fan, n):
    """(2 n r_min - 3) * floor(d_min / n) - 2, the stable comparison range for n >= 2."""
    n = int(n)
    if n < 2:
        raise ValueError("stability_dim needs n >= 2; use stability_dim_n1 for n = 1")
    rm = r_min(fan)
    d_min = min(int(d) for d in degrees)
    return (2 * n * rm - 3) * (d_min // n) - 2


def stability_dim_n1(degrees, fan):
    """The n = 1 stability dimension and the kind of equivalence it certifies.

    Homotopy range (2 r_min - 3) d_min - 2 when r_min >= 3; only a homology
    range d_min - 2 when r_min = 2.
    """
    rm = r_min(fan)
    d_min = min(int(d) for d in degrees)
    if rm >= 3:
        return (2 * rm - 3) * d_min - 2, "homotopy"
    return d_min - 2, "homology"


def stability_dim_projective(d, m, n):
    """(2mn - 3)(floor(d/n) + 1) - 1 for equal-degree tuples on projective space."""
    d, m, n = int(d), int(m), int(n)
    if (m, n) == (1, 1):
        raise ValueError("the pair (m, n) = (1, 1) is excluded")
    return (2 * m * n - 3) * (d // n + 1) - 1


def connectivity_bound(fan, n):
    """2 n r_min - 5; the space of admissible systems is this connected for n >= 2."""
    n = int(n)
    if n < 2:
        raise ValueError("connectivity bound requires n >= 2")
    return 2 * n * r_min(fan) - 5


@dataclass(frozen=True)
class StabilityReport:
    r_min: int
    d_min: int
    d_prime: int
    stability_dim: int
    connectivity: int
    degree_null: bool
    n: int
    degrees: tuple

    def to_dict(self):
        return {
            "r_min": self.r_min,
            "d_min": self.d_min,
            "d_prime": self.d_prime,
            "stability_dim": self.stability_dim,
            "connectivity": self.connectivity,
            "degree_null": self.degree_null,
            "n": self.n,
            "degrees": list(self.degrees),
        }


def stability_report(degrees, fan, n):
    degrees = tuple(int(d) for d in degrees)
    n = int(n)
    rm = r_min(fan)
    d_min = min(degrees)
    return StabilityReport(
        r_min=rm,
        d_min=d_min,
        d_prime=d_min // n,
        stability_dim=stability_dim(degrees, fan, n),
        connectivity=connectivity_bound(fan, n),
        degree_null=degree_is_null(fan, degrees),
        n=n,
        degrees=degrees,
    )


@dataclass(frozen=True)
class E1Support:
    """Vanishing statuses of the truncated first page on a (k, s) window.

    The cells dict materializes the window; status() answers for any cell.
    """

    cells: dict
    k_max: int
    s_min: int
    s_max: int
    d_prime: int
    r_min: int
    n: int
    ray_count: int

    def status(self, k, s):
        return _cell_status(k, s, self.d_prime, self.r_min, self.n, self.ray_count)

    def to_dict(self):
        return {
            "k_max": self.k_max,
            "s_min": self.s_min,
            "s_max": self.s_max,
            "d_prime": self.d_prime,
            "r_min": self.r_min,
            "n": self.n,
            "cells": [
                {"k": k, "s": s, "status": v} for (k, s), v in sorted(self.cells.items())
            ],
        }


def e1_support(degrees, fan, n, s_max=None):
    """Label every window cell zero / possibly_nonzero / tail_unknown.

    In the band 1 <= k <= d' a cell vanishes exactly when the dual degree
    2nrk - s falls outside [0, dim of the k-point configuration stratum];
    the truncation column k = d' + 1 vanishes up to the known edge and is
    unknown above it.
    """
    n = int(n)
    if n < 2:
        raise ValueError("the vanishing table requires n >= 2")
    degrees = tuple(int(d) for d in degrees)
    rm = r_min(fan)
    r = fan.ray_count
    d_min = min(degrees)
    d_prime = d_min // n
    if s_max is None:
        s_max = stability_dim(degrees, fan, n) + 2 * n * rm + 4
    s_min = 0
    cells = {}
    for k in range(0, d_prime + 2):
        for s in range(s_min, s_max + 1):
            cells[(k, s)] = _cell_status(k, s, d_prime, rm, n, r)
    return E1Support(
        cells=cells,
        k_max=d_prime + 1,
        s_min=s_min,
        s_max=s_max,
        d_prime=d_prime,
        r_min=rm,
        n=n,
        ray_count=r,
    )


def _cell_status(k, s, d_prime, rm, n, r):
    if k < 0 or k >= d_prime + 2:
        return ZERO
    if k == 0:
        return POSSIBLY_NONZERO if s == 0 else ZERO
    if k <= d_prime:
        dual = 2 * n * r * k - s
        config_dim = 2 * k * (1 + n * r - n * rm)
        if dual < 0 or dual > config_dim:
            return ZERO
        if s <= (2 * n * rm - 2) * k - 1:
            return ZERO
        return POSSIBLY_NONZERO
    # truncation column k = d_prime + 1
    if s <= (2 * n * rm - 2) * d_prime - 1:
        return ZERO
    return TAIL_UNKNOWN


@dataclass(frozen=True)
class BandResult:
    """Minimal s - k over the unknown bands, by brute force and closed form."""

    value: int
    per_t: dict
    empty: bool

    def to_dict(self):
        return {
            "value": self.value,
            "empty": self.empty,
            "per_t": {str(t): {"brute": b, "closed": c} for t, (b, c) in sorted(self.per_t.items())},
        }


def min_unknown_band(degrees, fan, n):
    """min over the comparison-failure bands of s - k, two ways.

    Brute force enumerates strictly increasing tuples (l_1 < ... < l_t) of
    positive integers with u + sum l_j = d' + 1 and reads off the minimal
    s - k; the closed form is (2 n r_min - 3) d' + t - 1 per t.  The two
    must agree, and the overall minimum must equal stability_dim + 2.
    """
    n = int(n)
    if n < 2:
        raise ValueError("band enumeration requires n >= 2")
    degrees = tuple(int(d) for d in degrees)
    rm = r_min(fan)
    d_min = min(degrees)
    d_prime = d_min // n
    if d_prime == 0:
        return BandResult(value=None, per_t={}, empty=True)
    if d_prime > BAND_CAP:
        raise CapExceededError(f"band enumeration capped at d' <= {BAND_CAP}, got {d_prime}")

    edge = (2 * n * rm - 2) * d_prime
    per_t = {}
    t = 1
    while t * (t + 1) // 2 <= d_prime + 1:
        brute = None
        for tup in combinations(range(1, d_prime + 2), t):
            total = sum(tup)
            u = d_prime + 1 - total
            if u < 0:
                continue
            v = edge - sum(l - 1 for l in tup)
            diff = v - u
            if brute is None or diff < brute:
                brute = diff
        if brute is not None:
            closed = (2 * n * rm - 3) * d_prime + t - 1
            if brute != closed:
                raise AssertionError(
                    f"band mismatch at t={t}: brute {brute} != closed {closed}"
                )
            per_t[t] = (brute, closed)
        t += 1

    value = min(b for b, _ in per_t.values())
    expected = stability_dim(degrees, fan, n) + 2
    if value != expected:
        raise AssertionError(f"band minimum {value} != stability_dim + 2 = {expected}")
    return BandResult(value=value, per_t=per_t, empty=False)


def truncation_dim(degrees, fan, n):
    """Dimension of the top truncation stratum, evaluated two ways.

    The closed form 2 N(D) + 3d' - 2 n r_min d' must match the decomposition
    bundle rank + configuration dimension + 1 at k = d'.
    """
    n = int(n)
    degrees = tuple(int(d) for d in degrees)
    rm = r_min(fan)
    r = fan.ray_count
    d_min = min(degrees)
    d_prime = d_min // n
    if d_prime < 1:
        raise ValueError("truncation dimension needs floor(d_min / n) >= 1")
    total = sum(degrees)
    closed = 2 * total + 3 * d_prime - 2 * n * rm * d_prime
    decomposed = bundle_rank(degrees, d_prime, n, r) + dim_config(fan, n, d_prime) + 1
    if closed != decomposed:
        raise AssertionError(f"truncation formulas disagree: {closed} != {decomposed}")
    return closed
