"""Canonical bilinear tensors on the symplectic and orthogonal spectral covers.

Every form here is constructed the same way: invert the relevant dualizing
element (f' or the different) over Frac(A), take twisted traces, and certify
each Gram entry is a polynomial.  The coefficient-extraction identity
tr(b / f') = [coefficient of x^(d-1) in b] serves as the independent oracle
in the tests, never as the construction path.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence

from . import linalg
from .algebra import AlgebraElement, FiniteFreeAlgebra, blowup_algebra_so_even, monogenic_algebra
from .errors import CertificationFailure, RingMismatch
from .polyring import Poly, PolyRing


class FormTensor:
    """An exact d-linear form on an algebra, stored on the basis.

    Arity 2 keeps the full Gram matrix; arity 3 keeps values on sorted index
    triples and completes by sign.  ``symmetry`` is "symmetric" or
    "alternating" and is enforced structurally.
    """

    def __init__(self, parent: FiniteFreeAlgebra, arity: int, symmetry: str,
                 data):
        if symmetry not in ("symmetric", "alternating"):
            raise ValueError("symmetry must be symmetric or alternating")
        self.parent = parent
        self.arity = arity
        self.symmetry = symmetry
        if arity == 2:
            self.gram: List[List[Poly]] = data
        elif arity == 3:
            # data maps sorted triples (i <= j <= k) to values
            self.triples = dict(data)
            if symmetry == "alternating":
                for (i, j, k), v in self.triples.items():
                    if len({i, j, k}) < 3 and not v.is_zero():
                        raise ValueError("alternating form with repeated index")
        else:
            raise ValueError("only arities 2 and 3 are supported")

    # -- basis values ---------------------------------------------------------

    def value(self, *idx) -> Poly:
        ring = self.parent.ring
        if self.arity == 2:
            i, j = idx
            return self.gram[i][j]
        i, j, k = idx
        if len({i, j, k}) < 3:
            if self.symmetry == "alternating":
                return ring.zero()
        order = tuple(sorted(idx))
        base = self.triples.get(order, ring.zero())
        if self.symmetry == "symmetric":
            return base
        sign = _perm_sign_of(idx)
        return base if sign > 0 else -base

    def evaluate(self, *elems: AlgebraElement) -> Poly:
        if len(elems) != self.arity:
            raise ValueError("wrong number of arguments")
        ring = self.parent.ring
        acc = ring.zero()
        d = self.parent.rank
        for idx in product(range(d), repeat=self.arity):
            coeff = None
            for slot, i in enumerate(idx):
                c = elems[slot].coords[i]
                if c.is_zero():
                    coeff = None
                    break
                coeff = c if coeff is None else coeff * c
            if coeff is None:
                continue
            v = self.value(*idx)
            if not v.is_zero():
                acc = acc + coeff * v
        return acc

    def gram_det(self) -> Poly:
        if self.arity != 2:
            raise ValueError("determinant only defined for bilinear forms")
        return linalg.det(self.gram)

    def is_unit_det(self) -> bool:
        d = self.gram_det()
        return d.is_constant() and not d.is_zero()

    def check_symmetry(self) -> bool:
        d = self.parent.rank
        if self.arity == 2:
            for i in range(d):
                for j in range(d):
                    v = self.gram[j][i]
                    want = v if self.symmetry == "symmetric" else -v
                    if self.gram[i][j] != want:
                        return False
                if self.symmetry == "alternating" and not self.gram[i][i].is_zero():
                    return False
            return True
        return True  # arity-3 storage is symmetric/alternating by completion

    def derivation_identity(self, endo_matrix: List[List[Poly]]) -> bool:
        """Sum over slots of form(..., x b_slot, ...) vanishes on all tuples."""
        d = self.parent.rank
        cols = [[endo_matrix[i][j] for i in range(d)] for j in range(d)]
        for idx in product(range(d), repeat=self.arity):
            acc = self.parent.ring.zero()
            for slot in range(self.arity):
                col = cols[idx[slot]]
                for t in range(d):
                    if col[t].is_zero():
                        continue
                    jdx = list(idx)
                    jdx[slot] = t
                    v = self.value(*jdx)
                    if not v.is_zero():
                        acc = acc + col[t] * v
            if not acc.is_zero():
                return False
        return True

    def scaled(self, c) -> "FormTensor":
        if self.arity == 2:
            return FormTensor(self.parent, 2, self.symmetry,
                              [[v * c for v in row] for row in self.gram])
        return FormTensor(self.parent, 3, self.symmetry,
                          {k: v * c for k, v in self.triples.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormTensor):
            return NotImplemented
        if self.parent is not other.parent or self.arity != other.arity:
            return False
        if self.arity == 2:
            return self.gram == other.gram
        keys = set(self.triples) | set(other.triples)
        zero = self.parent.ring.zero()
        return all(self.triples.get(k, zero) == other.triples.get(k, zero)
                   for k in keys)

    def to_json(self) -> dict:
        if self.arity == 2:
            return {"arity": 2, "symmetry": self.symmetry,
                    "gram": [[str(v) for v in row] for row in self.gram]}
        return {"arity": 3, "symmetry": self.symmetry,
                "values": {":".join(map(str, k)): str(v)
                           for k, v in sorted(self.triples.items())}}


def _perm_sign_of(idx) -> int:
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


class DifferentElement:
    """The different of the blowup cover, with its tau-invariance pinned."""

    def __init__(self, parent: FiniteFreeAlgebra, element: AlgebraElement):
        if parent.tau_matrix is None or parent.tau(element) != element:
            raise CertificationFailure("different element must be tau-fixed")
        self.parent = parent
        self.element = element


# -- cover constructors ----------------------------------------------------------


def sp_cover(n: int, characteristic: int = 0) -> FiniteFreeAlgebra:
    """B = A[x]/(x^2n + a_2 x^(2n-2) + ... + a_2n) over A = k[a_2, ..., a_2n]."""
    names = [f"a{2 * i}" for i in range(1, n + 1)]
    ring = PolyRing(names, [2 * i for i in range(1, n + 1)], characteristic,
                    group="sp")
    f = [ring.one()]
    for k in range(1, 2 * n + 1):
        f.append(ring.gen(f"a{k}") if k % 2 == 0 else ring.zero())
    return monogenic_algebra(ring, f)


def so_odd_cover(n: int, characteristic: int = 0) -> FiniteFreeAlgebra:
    """B = A[x]/(x f_0), f_0 = x^2n + a_2 x^(2n-2) + ... + a_2n, rank 2n+1."""
    names = [f"a{2 * i}" for i in range(1, n + 1)]
    ring = PolyRing(names, [2 * i for i in range(1, n + 1)], characteristic,
                    group="so-odd")
    f = [ring.one()]
    for k in range(1, 2 * n + 2):
        if k % 2 == 0 and k <= 2 * n:
            f.append(ring.gen(f"a{k}"))
        else:
            f.append(ring.zero())
    return monogenic_algebra(ring, f)


def so_even_different(alg: FiniteFreeAlgebra, n: int) -> DifferentElement:
    """The different of the blowup cover, in its fully reduced form.

    As an element of the blowup algebra this equals
    n x^(2n-2) + (n-1) a_2 x^(2n-4) + ... + a_(2n-2), which is half the
    determinant det [[-p, g'], [-x, 2p]] of the presentation Jacobian
    (g is the p-relation tail); the two are compared in the test suite.
    """
    ring = alg.ring
    coords = [ring.zero()] * alg.rank
    for k in range(n):
        a2k = ring.one() if k == 0 else ring.gen(f"a{2 * k}")
        coords[2 * (n - 1 - k)] = coords[2 * (n - 1 - k)] + a2k * (n - k)
    return DifferentElement(alg, AlgebraElement(alg, coords))


def different_matrix_expression(alg: FiniteFreeAlgebra, n: int) -> AlgebraElement:
    """det [[-p_(n-1), g'], [-x, 2 p_(n-1)]] evaluated in the blowup algebra."""
    ring = alg.ring
    p = alg.basis()[alg.rank - 1]
    x = alg.x()
    # g'(x) = (2n-2) x^(2n-3) + (2n-4) a_2 x^(2n-5) + ... + 2 a_(2n-4) x
    gprime = alg.zero()
    for k in range(n - 1):
        a2k = ring.one() if k == 0 else ring.gen(f"a{2 * k}")
        deg = 2 * (n - 1 - k) - 1
        gprime = gprime + alg.x_power(deg) * a2k * (2 * (n - 1 - k))
    return (-p) * (p * 2) - gprime * (-x)


# -- the trace-twist construction -------------------------------------------------


def dual_trace_form(alg: FiniteFreeAlgebra, g: AlgebraElement,
                    symmetry: str) -> FormTensor:
    """omega(b1, b2) = tr(g^(-1) b1 tau(b2)), certified polynomial entrywise.

    Computed over Frac(A): g is inverted by Cramer (denominator = norm of g)
    and every Gram entry must divide out exactly, else CertificationFailure.
    """
    if not alg.has_tau:
        raise CertificationFailure("cover carries no involution")
    m = alg.mult_matrix(g)
    e0 = [alg.ring.one()] + [alg.ring.zero()] * (alg.rank - 1)
    nums, den = linalg.solve_cramer(m, e0)
    inv = AlgebraElement(alg, nums)
    d = alg.rank
    basis = alg.basis()
    tau_basis = [alg.tau(b) for b in basis]
    gram: List[List[Poly]] = [[None] * d for _ in range(d)]  # type: ignore
    for i in range(d):
        for j in range(d):
            t = alg.trace(inv * basis[i] * tau_basis[j])
            q = t.exact_div(den)
            if q is None:
                raise CertificationFailure(
                    f"Gram entry ({i},{j}) fails polynomial certification")
            gram[i][j] = q
    form = FormTensor(alg, 2, symmetry, gram)
    if not form.check_symmetry():
        raise CertificationFailure(f"form is not {symmetry}")
    return form


def symplectic_form(n: int, characteristic: int = 0,
                    cover: Optional[FiniteFreeAlgebra] = None) -> FormTensor:
    """The alternating form tr(f'^(-1) b1 tau(b2)) on the rank-2n Sp cover."""
    from .companion import fprime  # local import, companion depends on forms
    alg = cover if cover is not None else sp_cover(n, characteristic)
    form = dual_trace_form(alg, fprime(alg), "alternating")
    if not form.is_unit_det():
        raise CertificationFailure("symplectic Gram determinant is not a unit")
    return form


def so_odd_form(n: int, characteristic: int = 0,
                cover: Optional[FiniteFreeAlgebra] = None) -> FormTensor:
    """The symmetric form tr(f'^(-1) b1 tau(b2)) on the rank-(2n+1) cover."""
    from .companion import fprime
    alg = cover if cover is not None else so_odd_cover(n, characteristic)
    form = dual_trace_form(alg, fprime(alg), "symmetric")
    if not form.is_unit_det():
        raise CertificationFailure("odd orthogonal Gram determinant is not a unit")
    return form


def so_even_form(n: int, characteristic: int = 0,
                 cover: Optional[FiniteFreeAlgebra] = None) -> FormTensor:
    """The symmetric form tr(D^(-1) b1 tau(b2)) on the blowup cover."""
    alg = cover if cover is not None else blowup_algebra_so_even(n, characteristic)
    dif = so_even_different(alg, n)
    form = dual_trace_form(alg, dif.element, "symmetric")
    if not form.is_unit_det():
        raise CertificationFailure("even orthogonal Gram determinant is not a unit")
    return form


def verify_anti_self_adjoint(form: FormTensor,
                             endo) -> bool:
    """Exact d-term derivation identity for a form and an endomorphism."""
    matrix = endo.matrix if hasattr(endo, "matrix") else endo
    if form.parent.rank != len(matrix):
        raise RingMismatch("form and endomorphism have different parents")
    return form.derivation_identity(matrix)


def so_even_pushdown_gram(n: int) -> List[List[Poly]]:
    """Pull the blowup form back to the non-normalized cover B.

    B has basis 1, x, ..., x^(2n-1); its image in the blowup generates a
    finite-index submodule, and along the singular locus the pulled-back
    pairing degenerates.  Returns the 2n x 2n Gram over k[a_2, ..., p_n].
    """
    alg = blowup_algebra_so_even(n)
    form = so_even_form(n, cover=alg)
    images = [alg.x_power(k) for k in range(2 * n)]
    return [[form.evaluate(bi, bj) for bj in images] for bi in images]
