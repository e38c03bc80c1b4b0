"""Finite free algebras over a graded polynomial base ring.

Two presentations cover everything in scope: monogenic quotients A[x]/(f)
on the power basis, and the rank-2n blowup presentation for the even
orthogonal spectral cover.  Multiplication tables are explicit d x d arrays
of coordinate vectors; commutativity and associativity are checked on all
basis triples at construction time for the blowup (where the structure
constants are derived, not read off a polynomial).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from . import linalg
from .errors import AssociativityFailure, NotFree, NotMonic, NotMonogenic, RingMismatch
from .polyring import Poly, PolyRing, RatFunc


class FiniteFreeAlgebra:
    """A rank-d free module over `ring` with a commutative multiplication table.

    ``table[i][j]`` holds the coordinates of basis_i * basis_j.  Basis vector 0
    is always the identity.  ``x`` is the distinguished element (the image of
    the spectral variable); ``tau`` is the involution matrix when one exists.
    """

    def __init__(self, ring: PolyRing, labels: Sequence[str],
                 table: List[List[List[Poly]]], x_coords: List[Poly],
                 tau: Optional[List[List[Poly]]] = None,
                 weights: Optional[Sequence[int]] = None,
                 monic: Optional[List[Poly]] = None):
        self.ring = ring
        self.labels = list(labels)
        self.rank = len(labels)
        self.table = table
        self._x = list(x_coords)
        self.tau_matrix = tau
        self.weights = list(weights) if weights is not None else None
        self.monic = monic  # defining monic coefficient list for monogenic algebras
        self._powers: List[List[Poly]] = []

    # -- element constructors ------------------------------------------------

    def element(self, coords: Sequence) -> "AlgebraElement":
        out = []
        for c in coords:
            if isinstance(c, Poly):
                if c.ring != self.ring:
                    raise RingMismatch("coordinate from a different base ring")
                out.append(c)
            else:
                out.append(self.ring.const(c))
        if len(out) != self.rank:
            raise ValueError("coordinate vector has wrong length")
        return AlgebraElement(self, out)

    def zero(self) -> "AlgebraElement":
        return self.element([0] * self.rank)

    def one(self) -> "AlgebraElement":
        return self.element([1] + [0] * (self.rank - 1))

    def x(self) -> "AlgebraElement":
        return AlgebraElement(self, list(self._x))

    def basis(self) -> List["AlgebraElement"]:
        return [self.element([1 if j == i else 0 for j in range(self.rank)])
                for i in range(self.rank)]

    def x_power(self, k: int) -> "AlgebraElement":
        """x^k as an element, with cached reductions."""
        if not self._powers:
            self._powers = [self.one().coords]
        while len(self._powers) <= k:
            prev = AlgebraElement(self, self._powers[-1])
            self._powers.append((prev * self.x()).coords)
        return AlgebraElement(self, list(self._powers[k]))

    def from_x_poly(self, coeffs: Sequence[Poly]) -> "AlgebraElement":
        """Evaluate a univariate polynomial (lowest degree first) at x."""
        acc = self.zero()
        for k, c in enumerate(coeffs):
            acc = acc + self.x_power(k) * c
        return acc

    # -- involution ------------------------------------------------------------

    @property
    def has_tau(self) -> bool:
        return self.tau_matrix is not None

    def tau(self, elem: "AlgebraElement") -> "AlgebraElement":
        if self.tau_matrix is None:
            raise ValueError("algebra carries no involution")
        return AlgebraElement(self, linalg.mat_vec(self.tau_matrix, elem.coords))

    # -- linear structure --------------------------------------------------------

    def mult_matrix(self, elem: "AlgebraElement") -> List[List[Poly]]:
        """Matrix of multiplication by elem (columns are images of basis vectors)."""
        cols = [(elem * b).coords for b in self.basis()]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def trace(self, elem: "AlgebraElement") -> Poly:
        m = self.mult_matrix(elem)
        return linalg.trace(m)

    def char_poly(self, elem: "AlgebraElement") -> List[Poly]:
        return linalg.charpoly(self.mult_matrix(elem))

    def norm(self, elem: "AlgebraElement") -> Poly:
        return linalg.det(self.mult_matrix(elem))

    # -- consistency checks -------------------------------------------------------

    def check_table(self) -> None:
        """Commutativity and associativity on all basis pairs/triples, exact."""
        d = self.rank
        basis = self.basis()
        for i in range(d):
            for j in range(i, d):
                if (basis[i] * basis[j]).coords != (basis[j] * basis[i]).coords:
                    raise AssociativityFailure(f"table not commutative at ({i},{j})")
        for i in range(d):
            for j in range(d):
                ij = basis[i] * basis[j]
                for k in range(d):
                    left = ij * basis[k]
                    right = basis[i] * (basis[j] * basis[k])
                    if left.coords != right.coords:
                        raise AssociativityFailure(
                            f"associativity fails at ({i},{j},{k})")

    def check_tau(self) -> bool:
        if self.tau_matrix is None:
            return True
        basis = self.basis()
        for b in basis:
            if self.tau(self.tau(b)).coords != b.coords:
                return False
        for i, bi in enumerate(basis):
            for bj in basis[i:]:
                if self.tau(bi * bj) != self.tau(bi) * self.tau(bj):
                    return False
        return self.tau(self.x()) == -self.x()

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "basis": self.labels,
            "table": [[[str(c) for c in cell] for cell in row] for row in self.table],
            "x": [str(c) for c in self._x],
            "tau": ([[str(c) for c in row] for row in self.tau_matrix]
                    if self.tau_matrix is not None else None),
        }

    def __repr__(self) -> str:
        return f"FiniteFreeAlgebra(rank={self.rank}, basis={self.labels})"


class AlgebraElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: FiniteFreeAlgebra, coords: List[Poly]):
        self.parent = parent
        self.coords = coords

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.parent,
                              [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.parent,
                              [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.parent, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent is not self.parent:
                raise RingMismatch("elements of different algebras")
            d = self.parent.rank
            table = self.parent.table
            out = [self.parent.ring.zero() for _ in range(d)]
            for i, ci in enumerate(self.coords):
                if ci.is_zero():
                    continue
                for j, cj in enumerate(other.coords):
                    if cj.is_zero():
                        continue
                    w = ci * cj
                    cell = table[i][j]
                    for k in range(d):
                        if not cell[k].is_zero():
                            out[k] = out[k] + w * cell[k]
            return AlgebraElement(self.parent, out)
        if isinstance(other, (Poly, int, Fraction)):
            if isinstance(other, Poly) and other.ring != self.parent.ring:
                raise RingMismatch("scalar from a different base ring")
            return AlgebraElement(self.parent, [c * other for c in self.coords])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "AlgebraElement":
        acc = self.parent.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement) and other.parent is self.parent
                and self.coords == other.coords)

    def __hash__(self):
        return hash(tuple(self.coords))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __repr__(self) -> str:
        terms = [f"({c})*{lbl}" for c, lbl in zip(self.coords, self.parent.labels)
                 if not c.is_zero()]
        return " + ".join(terms) if terms else "0"


def monogenic_algebra(ring: PolyRing, f: Sequence[Poly],
                      labels: Optional[Sequence[str]] = None) -> FiniteFreeAlgebra:
    """A[x]/(f) on the power basis 1, x, ..., x^(d-1).

    ``f`` is the monic coefficient list, highest power first.  The involution
    tau(x) = -x is attached automatically exactly when it is an algebra map,
    i.e. when every odd-indexed coefficient vanishes.
    """
    f = [c if isinstance(c, Poly) else ring.const(c) for c in f]
    if f[0] != ring.one():
        raise NotMonic("leading coefficient must be 1")
    d = len(f) - 1
    if d < 1:
        raise NotMonic("degree must be at least 1")
    zero, one = ring.zero(), ring.one()

    # reduction of x^k for k up to 2(d-1)
    powers: List[List[Poly]] = []
    for k in range(d):
        powers.append([one if i == k else zero for i in range(d)])
    for k in range(d, 2 * d - 1):
        prev = powers[k - 1]
        shifted = [zero] + prev[:-1]
        top = prev[d - 1]
        if not top.is_zero():
            # x^d = -(a_1 x^(d-1) + ... + a_d)
            for i in range(d):
                shifted[i] = shifted[i] - top * f[d - i]
        powers.append(shifted)

    table = [[list(powers[i + j]) for j in range(d)] for i in range(d)]
    x_coords = list(powers[1]) if d > 1 else [-f[1]]

    tau = None
    if all(f[k].is_zero() for k in range(1, d + 1, 2)):
        sign = [one if i % 2 == 0 else -one for i in range(d)]
        tau = [[sign[i] if i == j else zero for j in range(d)] for i in range(d)]

    if labels is None:
        labels = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, d)]
    weights = list(range(d))
    alg = FiniteFreeAlgebra(ring, labels, table, x_coords, tau=tau,
                            weights=weights, monic=f)
    return alg


def blowup_algebra_so_even(n: int, characteristic: int = 0) -> FiniteFreeAlgebra:
    """The rank-2n blowup cover for the even orthogonal group.

    Base ring k[a_2, ..., a_(2n-2), p_n]; basis 1, x, ..., x^(2n-2), p_(n-1)
    with relations x*p_(n-1) = p_n and p_(n-1)^2 = -(x^(2n-2) + a_2 x^(2n-4)
    + ... + a_(2n-2)).  The derived structure constants are certified
    associative on all basis triples before the algebra is returned.
    """
    if n < 2:
        raise ValueError("blowup cover needs n >= 2")
    names = [f"a{2 * i}" for i in range(1, n)] + ["pn"]
    grades = [2 * i for i in range(1, n)] + [n]
    ring = PolyRing(names, grades, characteristic, group="so-even")
    zero, one = ring.zero(), ring.one()
    pn = ring.gen("pn")
    a = {2 * i: ring.gen(f"a{2 * i}") for i in range(1, n)}
    a[0] = one

    d = 2 * n
    P = d - 1  # index of the p_(n-1) basis vector; x^i sits at index i

    def vec(pairs) -> List[Poly]:
        v = [zero] * d
        for idx, c in pairs:
            assert 0 <= idx < d
            v[idx] = v[idx] + c
        return v

    # g(x) = x^(2n-2) + a_2 x^(2n-4) + ... + a_(2n-2);  p^2 = -g(x)
    g_pairs = [(2 * (n - 1 - k), a[2 * k]) for k in range(n)]
    p_squared = vec([(i, -c) for i, c in g_pairs])

    # x^(2n-1) = -(a_2 x^(2n-3) + ... + a_(2n-2) x) - p_n * p_(n-1),
    # obtained by multiplying the p^2 relation by x and using x p = p_n
    x_top = vec([(2 * n - 1 - 2 * k, -a[2 * k]) for k in range(1, n)]
                + [(P, -pn)])

    # powers of x up to 2(2n-2)
    xpow: List[List[Poly]] = []
    for k in range(2 * n - 1):
        xpow.append(vec([(k, one)]))
    xpow.append(x_top)
    for k in range(2 * n, 2 * (2 * n - 2) + 1):
        prev = xpow[k - 1]
        cur = [zero] * d
        for i in range(2 * n - 1):
            if not prev[i].is_zero():
                if i < 2 * n - 2:
                    cur[i + 1] = cur[i + 1] + prev[i]
                else:
                    for t, c in enumerate(x_top):
                        cur[t] = cur[t] + prev[i] * c
        if not prev[P].is_zero():
            cur[0] = cur[0] + prev[P] * pn  # x * p = p_n
        xpow.append(cur)

    table: List[List[List[Poly]]] = [[None] * d for _ in range(d)]  # type: ignore
    for i in range(d - 1):
        for j in range(d - 1):
            table[i][j] = list(xpow[i + j])
    # x^i * p = p_n * x^(i-1) for i >= 1
    for i in range(d - 1):
        if i == 0:
            table[0][P] = vec([(P, one)])
        else:
            table[i][P] = [pn * c for c in xpow[i - 1]]
        table[P][i] = list(table[i][P])
    table[P][P] = list(p_squared)

    x_coords = vec([(1, one)])
    sign = [one if i % 2 == 0 else -one for i in range(d - 1)] + [-one]
    tau = [[sign[i] if i == j else zero for j in range(d)] for i in range(d)]

    labels = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, d - 1)] + ["p"]
    weights = list(range(d - 1)) + [n - 1]
    alg = FiniteFreeAlgebra(ring, labels, table, x_coords, tau=tau, weights=weights)
    alg.check_table()
    return alg


class SubcoverEmbedding:
    """An intermediate cover A' of B generated by one element.

    ``matrix`` holds the B-coordinates of the powers of the generator
    (columns w^0, ..., w^(m-1)); ``rel_min_poly`` is the monic degree-d
    polynomial of x over A', as a coefficient list of A'-elements (highest
    power first).
    """

    def __init__(self, sub: FiniteFreeAlgebra, total: FiniteFreeAlgebra,
                 matrix: List[List[Poly]], rel_degree: int,
                 rel_min_poly: List[AlgebraElement],
                 basis_inverse: List[List[Poly]]):
        self.sub = sub
        self.total = total
        self.matrix = matrix
        self.rel_degree = rel_degree
        self.rel_min_poly = rel_min_poly
        self._basis_inverse = basis_inverse  # inverse of the (x^i w^j) basis matrix

    def embed(self, a: AlgebraElement) -> AlgebraElement:
        """Image in B of an element of A'."""
        coords = [self.total.ring.zero() for _ in range(self.total.rank)]
        for j, c in enumerate(a.coords):
            if c.is_zero():
                continue
            for i in range(self.total.rank):
                coords[i] = coords[i] + self.matrix[i][j] * c
        return AlgebraElement(self.total, coords)

    def coords_over_sub(self, b: AlgebraElement) -> List[AlgebraElement]:
        """Write b in the A'-module basis 1, x, ..., x^(d-1) of B."""
        m = self.sub.rank
        raw = linalg.mat_vec(self._basis_inverse, b.coords)
        return [AlgebraElement(self.sub, raw[i * m:(i + 1) * m])
                for i in range(self.rel_degree)]

    def relative_mult_matrix(self, b: AlgebraElement) -> List[List[AlgebraElement]]:
        """Matrix over A' of multiplication by b on B."""
        d = self.rel_degree
        cols = []
        for i in range(d):
            xi = self.total.x_power(i)
            cols.append(self.coords_over_sub(b * xi))
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def relative_trace(self, b: AlgebraElement) -> AlgebraElement:
        mat = self.relative_mult_matrix(b)
        acc = self.sub.zero()
        for i in range(self.rel_degree):
            acc = acc + mat[i][i]
        return acc


def subcover(total: FiniteFreeAlgebra, w: AlgebraElement) -> SubcoverEmbedding:
    """Subalgebra generated by w, certified free of rank m with m*d = rank B.

    Raises NotFree when the powers of w fail to span a free direct summand or
    the mixed powers x^i w^j fail to form a basis of B.
    """
    n = total.rank
    ring = total.ring
    powers = [total.one().coords]
    m = None
    p1_tail: Optional[List[RatFunc]] = None
    for k in range(1, n + 1):
        powers.append((AlgebraElement(total, powers[-1]) * w).coords)
        mat = [[powers[j][i] for j in range(k)] for i in range(n)]
        sol = linalg.solve_fraction_field(mat, powers[k])
        if sol is not None:
            m = k
            p1_tail = sol
            break
    if m is None or p1_tail is None:
        raise NotFree("generator powers never become dependent")
    if n % m != 0:
        raise NotFree(f"subalgebra rank {m} does not divide {n}")
    d = n // m

    tail = []
    for s in p1_tail:
        p = s.is_polynomial()
        if p is None:
            raise NotFree("minimal polynomial of generator is not defined over A")
        tail.append(p)
    # P1(y) = y^m - tail_(m-1) y^(m-1) - ... - tail_0
    p1 = [ring.one()] + [-tail[m - 1 - i] for i in range(m)]
    sub = monogenic_algebra(ring, p1, labels=["1"] + [f"y^{k}" if k > 1 else "y"
                                                      for k in range(1, m)])

    # basis x^i w^j of B; column index i*m + j
    cols = []
    for i in range(d):
        xi = total.x_power(i)
        for j in range(m):
            cols.append((xi * AlgebraElement(total, powers[j])).coords)
    T = [[cols[c][r] for c in range(n)] for r in range(n)]
    detT = linalg.det(T)
    if not (detT.is_constant() and not detT.is_zero()):
        raise NotFree("mixed powers x^i w^j are not a free basis of B")
    inv_scale = ring.coeff_inv(detT.constant_value())
    # T^(-1) is polynomial because det T is a unit: Cramer column by column
    Tinv_cols = []
    for k in range(n):
        e = [ring.one() if i == k else ring.zero() for i in range(n)]
        nums, _ = linalg.solve_cramer(T, e)
        Tinv_cols.append([c.scale(inv_scale) for c in nums])
    Tinv = [[Tinv_cols[j][i] for j in range(n)] for i in range(n)]

    emb_matrix = [[powers[j][i] for j in range(m)] for i in range(n)]
    emb = SubcoverEmbedding(sub, total, emb_matrix, d, [], Tinv)

    # relative minimal polynomial: x^d in the x^i w^j coordinates
    xd = total.x_power(d)
    comps = emb.coords_over_sub(xd)
    rel = [sub.one()] + [-comps[d - 1 - i] for i in range(d)]
    emb.rel_min_poly = rel

    # embedding must be an algebra map and must kill P2 at x
    for j1 in range(m):
        for j2 in range(m):
            lhs = emb.embed(sub.x_power(j1) * sub.x_power(j2))
            rhs = AlgebraElement(total, powers[j1]) * AlgebraElement(total, powers[j2])
            if lhs != rhs:
                raise NotFree("power map is not an algebra homomorphism")
    acc = total.zero()
    for k, c in enumerate(rel):
        acc = acc + emb.embed(c) * total.x_power(d - k)
    if not acc.is_zero():
        raise NotFree("relative minimal polynomial fails to annihilate x")
    return emb


def trace(alg: FiniteFreeAlgebra, b: AlgebraElement) -> Poly:
    return alg.trace(b)


def char_poly(alg: FiniteFreeAlgebra, b: AlgebraElement) -> List[Poly]:
    return alg.char_poly(b)
