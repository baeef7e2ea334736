"""Exact linear algebra over the rationals and the integers.

Everything in this module is certified arithmetic: Fractions or
arbitrary-precision integers, never floats.  These kernels back the fan
predicates (Smith form, kernel bases, cone feasibility) and the rank
certification of the Hermite constraint matrices.
"""

from fractions import Fraction
from math import gcd


def _as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form over Q.

    Returns (matrix, pivot_columns).  The input is not modified.
    """
    m = _as_fraction_rows(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(nrows):
            if i != row and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def rank(rows):
    """Rank over Q via exact elimination."""
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    All intermediate entries stay integral; the divisions below are exact.
    """
    if not rows or not rows[0]:
        return 0
    m = [[int(x) for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rk = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        for i in range(rk + 1, nrows):
            mic = m[i][col]
            row_i = m[i]
            row_r = m[rk]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * p - mic * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rk += 1
        if rk == nrows:
            break
    return rk


def integer_rows(rows):
    """Clear denominators and common factors row by row (rank-preserving)."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        denom = 1
        for x in fr:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in fr]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def solve_affine(a_rows, b):
    """One exact solution of A x = b with free variables set to zero.

    Returns None when the system is inconsistent.
    """
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = reduced[i][ncols]
    return x


def nullspace_int(rows):
    """Primitive integer basis of the rational kernel of a matrix.

    Basis vectors are scaled to integers with content 1 and a positive
    leading entry.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if ncols == 0:
        return []
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -reduced[i][f]
        basis.append(_primitive_int_vector(v))
    return basis


def _primitive_int_vector(v):
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for val in ints:
        g = gcd(g, val)
    if g > 1:
        ints = [val // g for val in ints]
    lead = next((val for val in ints if val != 0), 0)
    if lead < 0:
        ints = [-val for val in ints]
    return ints


def smith_normal_form(rows):
    """Invariant factors of an integer matrix (non-negative, each dividing the next)."""
    if not rows or not rows[0]:
        return []
    m = [[int(x) for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    factors = []
    t = 0
    while t < min(nrows, ncols):
        piv = _smallest_nonzero(m, t)
        if piv is None:
            break
        while True:
            i0, j0 = _smallest_nonzero(m, t)
            m[t], m[i0] = m[i0], m[t]
            for row in m:
                row[t], row[j0] = row[j0], row[t]
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // p
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // p
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry; merge a bad row in
            bad = next(
                ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                 if m[i][j] % p != 0),
                None,
            )
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        factors.append(abs(m[t][t]))
        t += 1
    return factors


def _smallest_nonzero(m, t):
    best = None
    for i in range(t, len(m)):
        for j in range(t, len(m[0])):
            if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                best = (i, j)
    return best


class SimplexError(RuntimeError):
    pass


def lp_feasible(a_rows, b, max_iter=100_000):
    """Exact feasibility of {x >= 0 : A x = b} by phase-one simplex.

    Bland's rule, all arithmetic over Fraction.  Only the verdict is
    needed by callers, so no solution vector is returned.
    """
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    tableau = []
    for i in range(nrows):
        row = [Fraction(x) for x in a_rows[i]] + [Fraction(b[i])]
        if row[-1] < 0:
            row = [-x for x in row]
        tableau.append(row)
    # objective: sum of artificial variables, expressed through the rows
    obj = [Fraction(0)] * (ncols + 1)
    for row in tableau:
        obj = [a + c for a, c in zip(obj, row)]
    basis = [ncols + i for i in range(nrows)]  # artificials carry large indices

    for _ in range(max_iter):
        enter = next((j for j in range(ncols) if obj[j] > 0), None)
        if enter is None:
            return obj[-1] == 0
        # Bland ratio test: smallest ratio, ties by smallest basis index
        leave = None
        best = None
        for i in range(nrows):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise SimplexError("phase-one objective unbounded")
        pivot = tableau[leave][enter]
        tableau[leave] = [x / pivot for x in tableau[leave]]
        for i in range(nrows):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [a - f * p for a, p in zip(tableau[i], tableau[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * p for a, p in zip(obj, tableau[leave])]
        basis[leave] = enter
    raise SimplexError("simplex iteration cap exceeded")
