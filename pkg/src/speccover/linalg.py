"""Exact linear algebra over polynomial rings and their fraction fields.

Matrices are plain lists of rows; entries are `Poly` unless stated otherwise.
Everything is division-controlled: Bareiss elimination and cofactor expansion
stay inside the polynomial ring, Faddeev-LeVerrier divides only by integers
(exact over Q), and Berkowitz is fully division-free for prime characteristic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DivisionByZeroPoly
from .polyring import Poly, PolyRing, RatFunc, poly_gcd

Matrix = List[List[Poly]]


def identity(ring: PolyRing, n: int) -> Matrix:
    one, zero = ring.one(), ring.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(ring: PolyRing, rows: int, cols: int) -> Matrix:
    z = ring.zero()
    return [[z for _ in range(cols)] for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                if a[i][t].is_zero() or b[t][j].is_zero():
                    continue
                term = a[i][t] * b[t][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else a[i][0].ring.zero())
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Sequence[Poly]) -> List[Poly]:
    return [r[0] for r in mat_mul(a, [[x] for x in v])]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a: Matrix) -> Poly:
    t = a[0][0]
    for i in range(1, len(a)):
        t = t + a[i][i]
    return t


def det_cofactor(m: Matrix) -> Poly:
    """Determinant by memoized expansion over column subsets.

    Fast for the structured small matrices here (n <= 8) because zero entries
    short-circuit whole branches.
    """
    n = len(m)
    ring = m[0][0].ring
    if n == 0:
        return ring.one()
    # level k holds dets of the top-k rows against each k-subset of columns
    level = {0: ring.one()}
    for k in range(n):
        nxt: dict = {}
        row = m[k]
        for mask, val in level.items():
            if val.is_zero():
                continue
            sign = 1
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                if not row[j].is_zero():
                    term = row[j] * val
                    if sign < 0:
                        term = -term
                    key = mask | bit
                    nxt[key] = nxt.get(key, ring.zero()) + term
                # the parity flips for every free column we pass over
                sign = -sign
        level = nxt
        if not level:
            return ring.zero()
    return level.get((1 << n) - 1, ring.zero())


def det_bareiss(m: Matrix) -> Poly:
    """Fraction-free Gaussian determinant; all divisions are exact."""
    n = len(m)
    ring = m[0][0].ring
    a = [row[:] for row in m]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        piv = None
        for r in range(k, n):
            if not a[r][k].is_zero():
                piv = r
                break
        if piv is None:
            return ring.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q = num.exact_div(prev)
                assert q is not None, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = ring.zero()
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det(m: Matrix) -> Poly:
    return det_cofactor(m) if len(m) <= 6 else det_bareiss(m)


def charpoly(m: Matrix) -> List[Poly]:
    """Coefficients [1, c1, ..., cn] of det(x*I - M) = x^n + c1 x^(n-1) + ...

    Faddeev-LeVerrier in characteristic zero (integer divisions are exact
    over Q), division-free Berkowitz in characteristic p.
    """
    ring = m[0][0].ring
    if ring.char:
        return charpoly_berkowitz(m)
    n = len(m)
    coeffs = [ring.one()]
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        ck = trace(mk).scale(Fraction(-1, k))
        coeffs.append(ck)
        if k < n:
            for i in range(n):
                mk[i][i] = mk[i][i] + ck
            mk = mat_mul(m, mk)
    return coeffs


def charpoly_berkowitz(m: Matrix) -> List[Poly]:
    """Berkowitz vector iteration; works over any commutative ring."""
    ring = m[0][0].ring
    n = len(m)
    if n == 0:
        return [ring.one()]
    vec = [ring.one(), -m[0][0]]
    for size in range(2, n + 1):
        a = m[size - 1][size - 1]
        row = [m[size - 1][j] for j in range(size - 1)]
        col = [m[j][size - 1] for j in range(size - 1)]
        sub = [[m[i][j] for j in range(size - 1)] for i in range(size - 1)]
        # first column of the Toeplitz factor: 1, -a, -R C, -R M C, ...
        toep = [ring.one(), -a]
        w = col
        for _ in range(size - 1):
            dot = ring.zero()
            for x, y in zip(row, w):
                dot = dot + x * y
            toep.append(-dot)
            w = [sum((sub[i][j] * w[j] for j in range(size - 1)),
                     ring.zero()) for i in range(size - 1)]
        new = []
        for i in range(size + 1):
            acc = ring.zero()
            for j in range(len(vec)):
                k = i - j
                if 0 <= k < len(toep):
                    acc = acc + toep[k] * vec[j]
            new.append(acc)
        vec = new
    return vec


def charpoly_eval(coeffs: List[Poly], value, one):
    """Horner-evaluate a coefficient list at an element of any commutative domain."""
    acc = None
    for c in coeffs:
        acc = one * c if acc is None else acc * value + one * c
    return acc


def solve_cramer(m: Matrix, rhs: Sequence[Poly]) -> Tuple[List[Poly], Poly]:
    """Solve M x = rhs by Cramer: returns (numerators, determinant).

    The true solution is numerators[i] / det; callers certify polynomiality
    where the theory promises it.
    """
    d = det(m)
    if d.is_zero():
        raise DivisionByZeroPoly("singular system in solve_cramer")
    n = len(m)
    nums = []
    for j in range(n):
        mj = [[rhs[i] if k == j else m[i][k] for k in range(n)] for i in range(n)]
        nums.append(det(mj))
    return nums, d


def _echelon(m: Matrix):
    """Bareiss staircase form; returns (rows, pivot column list, ring)."""
    ring = m[0][0].ring
    a = [row[:] for row in m]
    nrows, ncols = len(a), len(a[0])
    pivots = []
    prev = ring.one()
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not a[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = a[r][c] * a[i][j] - a[i][c] * a[r][j]
                q = num.exact_div(prev)
                assert q is not None
                a[i][j] = q
            a[i][c] = ring.zero()
        prev = a[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots, ring


def rank(m: Matrix) -> int:
    if not m:
        return 0
    _, pivots, _ = _echelon(m)
    return len(pivots)


def primitive_vector(v: List[Poly]) -> List[Poly]:
    """Divide out the polynomial content and normalize the leading coefficient."""
    ring = v[0].ring
    g = ring.zero()
    for x in v:
        g = poly_gcd(g, x)
    if g.is_zero():
        return v
    out = [x.exact_div(g) for x in v]
    assert all(o is not None for o in out)
    lead = next(x for x in out if not x.is_zero())
    _, lc = lead.leading()
    inv = ring.coeff_inv(lc)
    return [x.scale(inv) for x in out]


def kernel(m: Matrix) -> List[List[Poly]]:
    """Basis of the right kernel, as primitive polynomial vectors."""
    if not m:
        return []
    rows, pivots, ring = _echelon(m)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x: List[RatFunc] = [RatFunc(ring.zero()) for _ in range(ncols)]
        x[fc] = RatFunc(ring.one())
        for i in reversed(range(len(rows))):
            pc = pivots[i]
            acc = RatFunc(ring.zero())
            for j in range(pc + 1, ncols):
                if not rows[i][j].is_zero() and x[j]:
                    acc = acc + RatFunc(rows[i][j]) * x[j]
            x[pc] = (-acc) / RatFunc(rows[i][pc])
        # clear denominators
        dens = [xi.normalize() for xi in x]
        common = ring.one()
        for xi in dens:
            g = poly_gcd(common, xi.den)
            extra = xi.den.exact_div(g)
            assert extra is not None
            common = common * extra
        vec = []
        for xi in dens:
            mult = common.exact_div(xi.den)
            assert mult is not None
            vec.append(xi.num * mult)
        basis.append(primitive_vector(vec))
    return basis


def solve_fraction_field(m: Matrix, rhs: Sequence[Poly]) -> Optional[List[RatFunc]]:
    """One solution of a (possibly rectangular) system over Frac(ring).

    Returns None when the system is inconsistent.  Free variables are set to
    zero, so the output is deterministic.
    """
    ring = m[0][0].ring
    aug = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    rows, pivots, _ = _echelon(aug)
    ncols = len(m[0])
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    x: List[RatFunc] = [RatFunc(ring.zero()) for _ in range(ncols)]
    for i in reversed(range(len(rows))):
        pc = pivots[i]
        acc = RatFunc(rows[i][ncols])
        for j in range(pc + 1, ncols):
            if not rows[i][j].is_zero() and x[j]:
                acc = acc - RatFunc(rows[i][j]) * x[j]
        x[pc] = acc / RatFunc(rows[i][pc])
    return x


def sylvester_resultant(f: List[Poly], g: List[Poly]) -> Poly:
    """Resultant of two univariate polynomials given as coefficient lists.

    Coefficient lists are highest power first.  Serves as the independent
    oracle against the norm-form resultant used in the companion layer.
    """
    ring = f[0].ring
    n, m = len(f) - 1, len(g) - 1
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    size = n + m
    rows = []
    for i in range(m):
        rows.append([ring.zero()] * i + f + [ring.zero()] * (size - i - n - 1))
    for i in range(n):
        rows.append([ring.zero()] * i + g + [ring.zero()] * (size - i - m - 1))
    return det_bareiss(rows) if size > 6 else det_cofactor(rows)
