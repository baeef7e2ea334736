"""Lattice fans: construction, validation, and global predicates.

A fan is stored as primitive integer ray vectors plus a family of cones,
each cone being the frozenset of indices of the rays spanning it.  Files
carry only maximal cones; face closure is computed on load.  All geometric
decisions (strong convexity, face recognition, intersection axiom) are made
in exact rational arithmetic via small feasibility LPs.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import complexes
from .complexes import UnsupportedFanError
from .exactla import bareiss_rank, lp_feasible, nullspace_int, smith_normal_form


class FanStructureError(ValueError):
    """Structural defect (bad index, malformed shape) detected before axiom checks."""


class FanJsonError(ValueError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer
        self.message = message


def primitive_ray(v):
    """Divide an integer vector by the gcd of its entries, preserving direction."""
    vec = tuple(int(x) for x in v)
    if all(x == 0 for x in vec):
        raise ValueError("zero vector has no primitive generator")
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec)


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple
    cones: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in ray) for ray in self.rays))
        object.__setattr__(self, "cones", frozenset(frozenset(c) for c in self.cones))

    @property
    def ray_count(self):
        return len(self.rays)

    def ray_matrix(self):
        """m x r matrix whose columns are the rays."""
        return [[ray[j] for ray in self.rays] for j in range(self.dim)]

    def generators(self, cone):
        return [self.rays[k] for k in sorted(cone)]

    def maximal_cones(self):
        return [c for c in self.cones if not any(c < d for d in self.cones)]


def _check_structure(dim, rays, cones):
    if dim < 1:
        raise FanStructureError("ambient dimension must be positive")
    for i, ray in enumerate(rays):
        if len(ray) != dim:
            raise FanStructureError(f"ray {i} has length {len(ray)}, expected {dim}")
    r = len(rays)
    for cone in cones:
        for k in cone:
            if not (0 <= k < r):
                raise FanStructureError(f"cone references ray index {k} outside 0..{r - 1}")


def _cone_rank(fan, cone):
    if not cone:
        return 0
    return bareiss_rank(fan.generators(cone))


def _is_simplicial(fan, cone):
    return _cone_rank(fan, cone) == len(cone)


def _strongly_convex(gens):
    """Exact test: no non-trivial non-negative combination of generators is zero."""
    if not gens:
        return True
    m = len(gens[0])
    s = len(gens)
    rows = [[Fraction(g[j]) for g in gens] for j in range(m)]
    rows.append([Fraction(1)] * s)
    rhs = [Fraction(0)] * m + [Fraction(1)]
    return not lp_feasible(rows, rhs)


def _is_face_subset(gens, subset_positions):
    """Exact test that the given generator positions cut out a face.

    Feasibility of a functional vanishing on the subset and >= 1 on the
    remaining generators (split into positive parts plus slacks).
    """
    m = len(gens[0])
    inside = sorted(subset_positions)
    outside = [p for p in range(len(gens)) if p not in subset_positions]
    nvars = 2 * m + len(outside)
    rows = []
    rhs = []
    for p in inside:
        row = [Fraction(gens[p][j]) for j in range(m)]
        row += [-Fraction(gens[p][j]) for j in range(m)]
        row += [Fraction(0)] * len(outside)
        rows.append(row)
        rhs.append(Fraction(0))
    for slot, p in enumerate(outside):
        row = [Fraction(gens[p][j]) for j in range(m)]
        row += [-Fraction(gens[p][j]) for j in range(m)]
        slack = [Fraction(0)] * len(outside)
        slack[slot] = Fraction(-1)
        row += slack
        rows.append(row)
        rhs.append(Fraction(1))
    if not rows:
        return True
    assert all(len(r) == nvars for r in rows)
    return lp_feasible(rows, rhs)


def geometric_faces(fan, cone):
    """Index sets of the faces of a stored cone (the cone itself included)."""
    cone = frozenset(cone)
    if not cone:
        return {frozenset()}
    idx = sorted(cone)
    if _is_simplicial(fan, cone):
        out = set()
        for k in range(len(idx) + 1):
            out.update(frozenset(c) for c in combinations(idx, k))
        return out
    gens = fan.generators(cone)
    out = {frozenset()}
    for k in range(1, len(idx) + 1):
        for positions in combinations(range(len(idx)), k):
            if _is_face_subset(gens, set(positions)):
                out.add(frozenset(idx[p] for p in positions))
    out.add(cone)
    return out


def _pair_violation(fan, cone_a, cone_b):
    """Feasibility of a common point whose cone_a representation uses a ray
    outside the shared index set.  Exact when cone_a is simplicial."""
    shared = cone_a & cone_b
    outside = sorted(cone_a - shared)
    if not outside:
        return False
    a_idx = sorted(cone_a)
    b_idx = sorted(cone_b)
    m = fan.dim
    rows = []
    for j in range(m):
        row = [Fraction(fan.rays[k][j]) for k in a_idx]
        row += [-Fraction(fan.rays[k][j]) for k in b_idx]
        rows.append(row)
    marker = [Fraction(1) if k in outside else Fraction(0) for k in a_idx]
    marker += [Fraction(0)] * len(b_idx)
    rows.append(marker)
    rhs = [Fraction(0)] * m + [Fraction(1)]
    return lp_feasible(rows, rhs)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def to_dict(self):
        return {"kind": self.kind, "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, detail):
        self.violations.append(Violation(kind, detail))

    def to_dict(self):
        return {"valid": self.ok, "violations": [v.to_dict() for v in self.violations]}


def validate_fan(fan):
    """Check the fan axioms and report every violation found.

    Out-of-range ray indices raise FanStructureError before any axiom is
    considered.  An empty violation list certifies a valid fan.
    """
    _check_structure(fan.dim, fan.rays, fan.cones)
    report = ValidationReport()

    seen = {}
    for i, ray in enumerate(fan.rays):
        if all(x == 0 for x in ray):
            report.add("ray", f"ray {i} is the zero vector")
            continue
        if primitive_ray(ray) != ray:
            report.add("ray", f"ray {i} = {ray} is not primitive")
        if ray in seen:
            report.add("ray", f"ray {i} duplicates ray {seen[ray]}")
        seen.setdefault(ray, i)

    if frozenset() not in fan.cones:
        report.add("zero-cone", "the zero cone (empty index set) is missing")
    if not any(c for c in fan.cones):
        report.add("zero-cone", "fan must contain at least one nonzero cone")

    for cone in sorted(fan.cones, key=lambda c: (len(c), sorted(c))):
        if cone and not _strongly_convex(fan.generators(cone)):
            report.add("strong-convexity", f"cone {sorted(cone)} is not strongly convex")

    faces_of = {cone: geometric_faces(fan, cone) for cone in fan.cones}
    for cone in fan.cones:
        for face in faces_of[cone]:
            if face not in fan.cones:
                report.add(
                    "face-closure",
                    f"face {sorted(face)} of cone {sorted(cone)} is not stored",
                )

    cones = sorted(fan.cones, key=lambda c: (len(c), sorted(c)))
    for a, b in combinations(cones, 2):
        if a <= b or b <= a:
            small, big = (a, b) if a <= b else (b, a)
            if small not in faces_of[big]:
                report.add(
                    "intersection",
                    f"cone {sorted(small)} is contained in {sorted(big)} but is not a face of it",
                )
            continue
        shared = a & b
        # a simplicial side makes the escape LP exact: the representation of
        # a common point there is unique, so infeasibility certifies that the
        # intersection is the cone on the shared rays
        if _is_simplicial(fan, a):
            escaped = _pair_violation(fan, a, b)
        elif _is_simplicial(fan, b):
            escaped = _pair_violation(fan, b, a)
        else:
            escaped = _pair_violation(fan, a, b) and _pair_violation(fan, b, a)
        if escaped or shared not in faces_of[a] or shared not in faces_of[b]:
            report.add(
                "intersection",
                f"cones {sorted(a)} and {sorted(b)} do not meet in a common face",
            )
    return report


def fan_from_max_cones(dim, rays, max_cones):
    """Build a fan from maximal cones, closing under geometric faces."""
    rays = tuple(tuple(int(x) for x in ray) for ray in rays)
    cone_sets = [frozenset(c) for c in max_cones]
    _check_structure(dim, rays, cone_sets)
    base = Fan(dim, rays, frozenset(cone_sets) | {frozenset()})
    closed = set()
    for cone in cone_sets:
        closed |= geometric_faces(base, cone)
    closed.add(frozenset())
    return Fan(dim, rays, frozenset(closed))


def fan_from_complex(complex_, rays, dim):
    """Rebuild a fan from its underlying complex and ray list."""
    return Fan(dim, rays, frozenset(complex_.all_faces()))


def underlying_complex(fan):
    return complexes.underlying_complex(fan)


# -- completeness ------------------------------------------------------------

def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sector(fan, cone):
    """Extreme generator pair (u, v) of a 2-dimensional cone, counterclockwise."""
    gens = [primitive_ray(g) for g in fan.generators(cone)]
    for u in gens:
        for v in gens:
            if u == v or _cross(u, v) <= 0:
                continue
            if all(_cross(u, w) >= 0 and _cross(w, v) >= 0 for w in gens):
                return u, v
    return None


def is_complete(fan):
    """Whether the cones cover all of R^m.

    Exact for m <= 2 (sector sweep) and for pure full-dimensional
    simplicial fans in m >= 3 (facet pairing).  Mixed-dimensional or
    non-simplicial fans in m >= 3 return None ("unknown").
    """
    m = fan.dim
    if m == 1:
        dirs = {ray[0] > 0 for ray in fan.rays if any(ray)}
        return dirs == {True, False}
    if m == 2:
        sectors = {}
        for cone in fan.maximal_cones():
            if _cone_rank(fan, cone) != 2:
                return False
            pair = _sector(fan, cone)
            if pair is None or pair[0] in sectors:
                return False
            sectors[pair[0]] = pair[1]
        if not sectors:
            return False
        start = next(iter(sectors))
        current = start
        for _ in range(len(sectors)):
            current = sectors.get(current)
            if current is None:
                return False
        return current == start and len(sectors) >= 2

    maximal = fan.maximal_cones()
    if not maximal:
        return False
    for cone in maximal:
        if len(cone) != m or not _is_simplicial(fan, cone):
            return None
    facet_count = {}
    for cone in maximal:
        for facet in combinations(sorted(cone), m - 1):
            facet_count[frozenset(facet)] = facet_count.get(frozenset(facet), 0) + 1
    return all(c == 2 for c in facet_count.values())


def is_smooth(fan):
    """Every cone's generators extend to a Z-basis (unit invariant factors)."""
    for cone in fan.cones:
        if not cone:
            continue
        gens = fan.generators(cone)
        if bareiss_rank(gens) != len(gens):
            return False
        factors = smith_normal_form(gens)
        if any(f != 1 for f in factors):
            return False
    return True


def spans_lattice(fan):
    """Whether the rays span Z^m over Z (simple connectivity of the variety)."""
    factors = smith_normal_form(list(fan.rays))
    return len(factors) == fan.dim and all(f == 1 for f in factors)


def degree_is_null(fan, degrees):
    """Exact test of sum_k d_k * n_k = 0."""
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != fan.ray_count:
        raise ValueError(f"expected {fan.ray_count} degrees, got {len(degrees)}")
    for j in range(fan.dim):
        if sum(d * ray[j] for d, ray in zip(degrees, fan.rays)) != 0:
            return False
    return True


def find_degree_vector(fan, coord_bound=None):
    """Some strictly positive integer vector in the kernel of the ray matrix.

    Returns None when no such vector exists within the coordinate bound
    (default 10 * r).  Absence of any kernel at all also returns None.
    """
    r = fan.ray_count
    bound = coord_bound if coord_bound is not None else 10 * r
    basis = nullspace_int(fan.ray_matrix())
    if not basis:
        return None
    k = len(basis)
    for radius in range(1, bound + 1):
        for coeffs in _shell(k, radius):
            cand = [sum(c * basis[i][j] for i, c in enumerate(coeffs)) for j in range(r)]
            if all(1 <= x <= bound for x in cand):
                return tuple(cand)
    return None


def _shell(k, radius):
    """Integer vectors of max-norm exactly radius, in k coordinates."""
    from itertools import product as iproduct

    for c in iproduct(range(-radius, radius + 1), repeat=k):
        if max(abs(x) for x in c) == radius:
            yield c


def cox_group_rank(fan):
    """Rank r - m of the quotient torus acting in homogeneous coordinates."""
    if not spans_lattice(fan):
        raise UnsupportedFanError("rays do not span the lattice")
    return fan.ray_count - fan.dim


def cox_group_sample(fan, parameters):
    """An element (mu_1, ..., mu_r) of the homogeneous-coordinate torus.

    mu_k = prod_j t_j^Q[j][k] with Q an integer basis of the kernel of the
    ray matrix; the defining relations prod_k mu_k^{(n_k)_j} = 1 then hold
    identically.
    """
    if not spans_lattice(fan):
        raise UnsupportedFanError("rays do not span the lattice")
    params = [complex(t) for t in parameters]
    if any(t == 0 for t in params):
        raise ValueError("parameters must be nonzero")
    basis = nullspace_int(fan.ray_matrix())
    if len(params) != len(basis):
        raise ValueError(f"expected {len(basis)} parameters, got {len(params)}")
    out = []
    for k in range(fan.ray_count):
        mu = complex(1)
        for t, vec in zip(params, basis):
            mu *= t ** vec[k]
        out.append(mu)
    return out


def fan_power(fan, n):
    """Fan on R^(m*n) with block-placed rays and one cone per power-complex face.

    Ray (i, j) places ray i of the input into slot j; the cone family is the
    face set of the power complex, so the underlying complex of the result
    is the power complex by construction.
    """
    if n < 1:
        raise ValueError("n must be positive")
    m, r = fan.dim, fan.ray_count
    k = complexes.underlying_complex(fan)
    power = complexes.complex_power(k, n)
    rays = []
    for i in range(r):
        for j in range(n):
            vec = [0] * (m * n)
            for t in range(m):
                vec[j * m + t] = fan.rays[i][t]
            rays.append(tuple(vec))
    return Fan(m * n, tuple(rays), frozenset(power.all_faces()))


_BUILTIN_RE = re.compile(r"^\s*(cp|hirzebruch|affine)\s*\(\s*(\d+)\s*\)\s*$")


def builtin_fan(name, param=None):
    """Named standard fans: cp(m), hirzebruch(k), affine(m)."""
    if param is None:
        match = _BUILTIN_RE.match(str(name))
        if not match:
            raise ValueError(f"unknown fan name {name!r}; expected cp(m), hirzebruch(k) or affine(m)")
        kind, param = match.group(1), int(match.group(2))
    else:
        kind, param = str(name), int(param)
    if param < 1:
        raise ValueError("fan parameter must be >= 1")
    if kind == "cp":
        m = param
        rays = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
        rays.append(tuple(-1 for _ in range(m)))
        max_cones = list(combinations(range(m + 1), m))
        return fan_from_max_cones(m, rays, max_cones)
    if kind == "hirzebruch":
        k = param
        rays = [(1, 0), (0, 1), (-1, k), (0, -1)]
        max_cones = [(0, 1), (1, 2), (2, 3), (3, 0)]
        return fan_from_max_cones(2, rays, max_cones)
    if kind == "affine":
        m = param
        rays = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
        return fan_from_max_cones(m, rays, [tuple(range(m))])
    raise ValueError(f"unknown fan kind {kind!r}")


# -- JSON --------------------------------------------------------------------

def fan_to_json(fan):
    return {
        "dim": fan.dim,
        "rays": [list(ray) for ray in fan.rays],
        "max_cones": sorted(sorted(c) for c in fan.maximal_cones()),
    }


def fan_from_json(obj):
    """Load a fan from its JSON object, reporting defects with pointer paths."""
    if not isinstance(obj, dict):
        raise FanJsonError("fan document must be an object")
    for key in ("dim", "rays", "max_cones"):
        if key not in obj:
            raise FanJsonError(f"missing required key {key!r}", f"/{key}")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise FanJsonError("dim must be a positive integer", "/dim")
    rays = obj["rays"]
    if not isinstance(rays, list) or not rays:
        raise FanJsonError("rays must be a non-empty array", "/rays")
    parsed_rays = []
    for i, ray in enumerate(rays):
        if not isinstance(ray, list) or len(ray) != dim:
            raise FanJsonError(f"ray must be an array of {dim} integers", f"/rays/{i}")
        for j, x in enumerate(ray):
            if not isinstance(x, int):
                raise FanJsonError("ray entries must be integers", f"/rays/{i}/{j}")
        parsed_rays.append(tuple(ray))
    cones = obj["max_cones"]
    if not isinstance(cones, list):
        raise FanJsonError("max_cones must be an array", "/max_cones")
    parsed_cones = []
    for i, cone in enumerate(cones):
        if not isinstance(cone, list):
            raise FanJsonError("cone must be an array of ray indices", f"/max_cones/{i}")
        for j, k in enumerate(cone):
            if not isinstance(k, int) or not (0 <= k < len(parsed_rays)):
                raise FanJsonError(
                    f"ray index must be an integer in 0..{len(parsed_rays) - 1}",
                    f"/max_cones/{i}/{j}",
                )
        parsed_cones.append(frozenset(cone))
    return fan_from_max_cones(dim, parsed_rays, parsed_cones)


def load_fan(path):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return fan_from_json(obj)
