"""Companion endomorphism and the dual-module structure of a monogenic cover.

For B = A[x]/(f) on the power basis this constructs the companion matrix of
multiplication by x, the trace pairing, the generator beta* = v_(d-1)* of the
dual module, and certifies mu = f' beta* two ways: by the polynomial identity
G_xi = G_beta * M(f') and by inverting f' over Frac(A) and re-deriving the
beta* Gram entrywise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from . import linalg
from .algebra import AlgebraElement, FiniteFreeAlgebra, monogenic_algebra
from .errors import CertificationFailure, NotMonogenic
from .forms import FormTensor
from .polyring import Poly, PolyRing


class EndoMatrix:
    """A base-ring linear endomorphism of an algebra in its fixed basis."""

    def __init__(self, parent: FiniteFreeAlgebra, matrix: List[List[Poly]]):
        self.parent = parent
        self.matrix = matrix

    def apply(self, elem: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.parent, linalg.mat_vec(self.matrix, elem.coords))

    def __getitem__(self, ij):
        return self.matrix[ij[0]][ij[1]]

    def to_json(self) -> dict:
        return {"rank": self.parent.rank,
                "matrix": [[str(c) for c in row] for row in self.matrix]}


class DualElement:
    """Element of B* stored by its coordinates in the dual basis v_0*, ..., v_(d-1)*."""

    def __init__(self, parent: FiniteFreeAlgebra, coords: List[Poly]):
        if len(coords) != parent.rank:
            raise ValueError("dual coordinate vector has wrong length")
        self.parent = parent
        self.coords = coords

    def __call__(self, elem: AlgebraElement) -> Poly:
        acc = self.parent.ring.zero()
        for c, v in zip(self.coords, elem.coords):
            acc = acc + c * v
        return acc


def _require_monogenic(alg: FiniteFreeAlgebra) -> None:
    if alg.monic is None:
        raise NotMonogenic("operation needs a monogenic presentation")


def companion_matrix(alg: FiniteFreeAlgebra) -> EndoMatrix:
    """Multiplication by x: subdiagonal of ones, last column -a_d ... -a_1."""
    _require_monogenic(alg)
    return EndoMatrix(alg, alg.mult_matrix(alg.x()))


def fprime(alg: FiniteFreeAlgebra) -> AlgebraElement:
    """Image in B of the derivative of the defining monic polynomial."""
    _require_monogenic(alg)
    f = alg.monic
    d = len(f) - 1
    coeffs = [f[d - 1 - k] * (k + 1) for k in range(d)]  # lowest degree first
    return alg.from_x_poly(coeffs)


def discriminant(alg: FiniteFreeAlgebra) -> Poly:
    """Resultant of f and f', computed as the norm of f' (f is monic)."""
    return alg.norm(fprime(alg))


def trace_pairing(alg: FiniteFreeAlgebra) -> FormTensor:
    """The symmetric pairing xi(b1, b2) = tr(b1 b2) as a Gram matrix."""
    d = alg.rank
    basis = alg.basis()
    gram = [[alg.trace(basis[i] * basis[j]) for j in range(d)] for i in range(d)]
    return FormTensor(alg, 2, "symmetric", gram)


def beta_generator(alg: FiniteFreeAlgebra) -> DualElement:
    _require_monogenic(alg)
    ring = alg.ring
    coords = [ring.zero()] * (alg.rank - 1) + [ring.one()]
    return DualElement(alg, coords)


def gram_beta(alg: FiniteFreeAlgebra) -> List[List[Poly]]:
    """Gram matrix of (b1, b2) -> beta*(b1 b2); unit determinant by shape."""
    _require_monogenic(alg)
    d = alg.rank
    return [[alg.x_power(i + j).coords[d - 1] for j in range(d)] for i in range(d)]


def inverse_element(alg: FiniteFreeAlgebra, g: AlgebraElement
                    ) -> Tuple[List[Poly], Poly]:
    """Coordinates of g^(-1) in B over Frac(A), as (numerators, denominator).

    The denominator is the norm of g; callers divide or certify as needed.
    """
    m = alg.mult_matrix(g)
    e0 = [alg.ring.one()] + [alg.ring.zero()] * (alg.rank - 1)
    return linalg.solve_cramer(m, e0)


def euler_traces(alg: FiniteFreeAlgebra) -> List[Poly]:
    """tr(x^k / f') for k < d, by exact fraction-field computation.

    The Euler formula says the answer is 0 for k < d-1 and 1 for k = d-1;
    this does not assume it, it certifies each trace is the stated constant.
    """
    nums, den = inverse_element(alg, fprime(alg))
    inv = AlgebraElement(alg, nums)
    out = []
    for k in range(alg.rank):
        t = alg.trace(inv * alg.x_power(k))
        q = t.exact_div(den)
        if q is None:
            raise CertificationFailure(f"tr(x^{k}/f') is not polynomial")
        out.append(q)
    return out


def mu_decomposition(alg: FiniteFreeAlgebra
                     ) -> Tuple[AlgebraElement, DualElement]:
    """Return (f', beta*) and certify mu = f' beta* along two routes.

    Route one is the polynomial identity G_xi = G_beta . M(f').  Route two
    inverts f' over the fraction field and checks tr(f'^(-1) b1 b2) recovers
    the beta* Gram exactly, entry by entry.
    """
    _require_monogenic(alg)
    d = alg.rank
    fp = fprime(alg)
    beta = beta_generator(alg)
    g_xi = trace_pairing(alg).gram
    g_beta = gram_beta(alg)
    lhs = linalg.mat_mul(g_beta, alg.mult_matrix(fp))
    if lhs != g_xi:
        raise CertificationFailure("G_xi != G_beta * M(f')")
    nums, den = inverse_element(alg, fp)
    inv = AlgebraElement(alg, nums)
    basis = alg.basis()
    for i in range(d):
        for j in range(i, d):
            t = alg.trace(inv * basis[i] * basis[j])
            q = t.exact_div(den)
            if q is None or q != g_beta[i][j]:
                raise CertificationFailure(
                    f"fraction-field beta* Gram disagrees at ({i},{j})")
    return fp, beta


def mu_triangular_coefficients(alg: FiniteFreeAlgebra) -> List[List[Poly]]:
    """The a'_(i,j) with mu(v_i) = f'(v*_(d-1-i) + sum_(j<i) a'_(i,j) v*_(d-1-j)).

    These are exposed as computed values: a'_(i,j) is the beta* Gram entry
    G_beta[i][d-1-j].  The unit diagonal G_beta[i][d-1-i] = 1 is asserted.
    """
    d = alg.rank
    g_beta = gram_beta(alg)
    one = alg.ring.one()
    out = []
    for i in range(d):
        assert g_beta[i][d - 1 - i] == one
        out.append([g_beta[i][d - 1 - j] for j in range(i)])
    return out


def sl_specialize_traceless(n: int) -> bool:
    """Companion matrix over k[a_2, ..., a_n] (a_1 = 0) has trace zero."""
    ring = PolyRing([f"a{i}" for i in range(2, n + 1)], list(range(2, n + 1)))
    f = [ring.one(), ring.zero()] + [ring.gen(f"a{i}") for i in range(2, n + 1)]
    alg = monogenic_algebra(ring, f)
    return linalg.trace(companion_matrix(alg).matrix).is_zero()


def check_grading_identity(n: int) -> bool:
    """The Gm-equivariance identity after the isogeny t -> t^2.

    Checked in the cleared form t^2 D X = X(t^2 a_1, t^4 a_2, ...) D with
    D = diag(t^(2(n-1)), t^(2(n-2)), ..., 1), which avoids negative powers
    of t while being equivalent to conjugation by diag(t^(n-1), ..., t^(1-n)).
    """
    if n < 2:
        raise ValueError("grading identity needs n >= 2")
    names = [f"a{i}" for i in range(1, n + 1)] + ["t"]
    ring = PolyRing(names, list(range(1, n + 1)) + [1])
    t = ring.gen("t")
    a = [ring.gen(f"a{i}") for i in range(1, n + 1)]
    f = [ring.one()] + a
    alg = monogenic_algebra(ring, f)
    X = companion_matrix(alg).matrix
    subst = {f"a{i}": t ** (2 * i) * a[i - 1] for i in range(1, n + 1)}
    subst["t"] = t
    Xs = [[c.evaluate(subst, one=ring.one()) for c in row] for row in X]
    D = [[t ** (2 * (n - 1 - i)) if i == j else ring.zero()
          for j in range(n)] for i in range(n)]
    lhs = linalg.mat_mul(D, X)
    lhs = [[t * t * c for c in row] for row in lhs]
    rhs = linalg.mat_mul(Xs, D)
    return lhs == rhs
