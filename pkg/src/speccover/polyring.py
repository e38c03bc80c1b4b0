"""Exact multivariate polynomial arithmetic over Q or a prime field.

The coefficient world for every construction in this library: invariant rings
like k[a_2, ..., a_2n] and k[e, q] are `PolyRing` instances, their elements are
`Poly` values (sparse exponent-vector -> coefficient maps, always in canonical
form), and localizations are handled through `RatFunc` with lazy normalization.

Polynomials are immutable; all operations return fresh values, so everything
here is safe to share between threads.

Example
-------
>>> R = PolyRing(("e", "q"), (2, 6))
>>> e, q = R.gens()
>>> (e * e - 4 * q).weighted_degree()
6
>>> str(R.parse("3/4*e^2 + q") - q)
'3/4*e^2'
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import (
    BadCharacteristic,
    DivisionByZeroPoly,
    DuplicateGenerator,
    RingMismatch,
)

CoeffLike = Union[int, Fraction]

# groups whose base rings carry a characteristic restriction
_CHAR_RULES = {
    "gl": (),
    "sl": (),
    "sp": (2,),
    "so-odd": (2,),
    "so-even": (2,),
    "g2": (2, 3),
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PolyRing:
    """Descriptor of a graded polynomial ring k[g_1, ..., g_n].

    Each generator carries a positive integer weight; the induced grading is
    what makes homogeneity checks on companion data free.  ``characteristic``
    is 0 (coefficients are Fractions) or a prime p (coefficients are ints in
    [0, p)).
    """

    __slots__ = ("names", "gradings", "char", "_index")

    def __init__(self, names: Sequence[str], gradings: Sequence[int],
                 characteristic: int = 0, group: Optional[str] = None):
        names = tuple(names)
        gradings = tuple(int(g) for g in gradings)
        if len(set(names)) != len(names):
            raise DuplicateGenerator(f"duplicate generator in {names}")
        if len(gradings) != len(names):
            raise ValueError("one grading per generator required")
        if any(g <= 0 for g in gradings):
            raise ValueError("gradings must be positive")
        if characteristic != 0 and not _is_prime(characteristic):
            raise BadCharacteristic(f"{characteristic} is not 0 or prime")
        if group is not None:
            if group not in _CHAR_RULES:
                raise ValueError(f"unknown group tag {group!r}")
            if characteristic in _CHAR_RULES[group]:
                raise BadCharacteristic(
                    f"characteristic {characteristic} not allowed for {group}")
        self.names = names
        self.gradings = gradings
        self.char = characteristic
        self._index = {n: i for i, n in enumerate(names)}

    # -- coefficient arithmetic -------------------------------------------

    def coeff(self, value: CoeffLike) -> CoeffLike:
        """Normalize a raw number into this ring's coefficient domain."""
        if self.char:
            if isinstance(value, Fraction):
                num = value.numerator % self.char
                den = value.denominator % self.char
                if den == 0:
                    raise DivisionByZeroPoly(
                        f"denominator divisible by {self.char}")
                return (num * pow(den, -1, self.char)) % self.char
            return int(value) % self.char
        return Fraction(value)

    def coeff_inv(self, value):
        if self.char:
            return pow(value, -1, self.char)
        return 1 / Fraction(value)

    # -- element constructors ---------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, value: CoeffLike) -> "Poly":
        c = self.coeff(value)
        if not c:
            return Poly(self, {})
        return Poly(self, {(0,) * len(self.names): c})

    def gen(self, name: str) -> "Poly":
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return Poly(self, {exps: self.coeff(1)})

    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: Sequence[int], coeff: CoeffLike = 1) -> "Poly":
        c = self.coeff(coeff)
        if not c:
            return self.zero()
        return Poly(self, {tuple(int(e) for e in exps): c})

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.gradings == other.gradings and self.char == other.char)

    def __hash__(self) -> int:
        return hash((self.names, self.gradings, self.char))

    def __repr__(self) -> str:
        k = "QQ" if self.char == 0 else f"GF({self.char})"
        return f"{k}[{', '.join(self.names)}]"

    def weighted_degree(self, exps: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(exps, self.gradings))

    def extend(self, names: Sequence[str], gradings: Sequence[int]) -> "PolyRing":
        """Ring with extra generators appended (used for the Gm variable t)."""
        return PolyRing(self.names + tuple(names),
                        self.gradings + tuple(gradings), self.char)

    # -- parsing ------------------------------------------------------------

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()


def _term_key(ring: PolyRing, exps: tuple) -> tuple:
    return (ring.weighted_degree(exps), exps)


class Poly:
    """Element of a `PolyRing` in canonical sparse form.

    Invariants: no zero coefficients are stored and exponent vectors always
    have one entry per ring generator, so two equal polynomials are
    structurally identical (same dict).  Term order everywhere is graded lex
    with the declared weights.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, CoeffLike]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    # -- basic protocol -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot coerce {other!r}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if self.ring.char:
                s %= self.ring.char
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        if self.ring.char:
            p = self.ring.char
            return Poly(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        char = self.ring.char
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                prod = c1 * c2
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + prod
                if char:
                    s %= char
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers live in RatFunc")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: CoeffLike) -> "Poly":
        c = self.ring.coeff(c)
        if not c:
            return self.ring.zero()
        char = self.ring.char
        if char:
            return Poly(self.ring, {e: (v * c) % char for e, v in self.terms.items()})
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    # -- structure queries ----------------------------------------------------

    def weighted_degree(self) -> Optional[int]:
        """Top weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.weighted_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.weighted_degree(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> CoeffLike:
        zero_exp = (0,) * len(self.ring.names)
        return self.terms.get(zero_exp, self.ring.coeff(0) if not self.ring.char else 0)

    def leading(self) -> tuple:
        """(exponent vector, coefficient) of the graded-lex leading term."""
        exps = max(self.terms, key=lambda e: _term_key(self.ring, e))
        return exps, self.terms[exps]

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def coefficient_in(self, index: int, power: int) -> "Poly":
        """Coefficient of gen_index^power, viewed as univariate in that generator."""
        terms = {}
        for e, c in self.terms.items():
            if e[index] == power:
                e0 = tuple(0 if i == index else v for i, v in enumerate(e))
                terms[e0] = terms.get(e0, 0) + c
        return Poly(self.ring, {e: c for e, c in terms.items() if c})

    def evaluate(self, env: Mapping[str, object], one=None):
        """Substitute values for generators.

        ``env`` maps every generator name to something a commutative Python
        value supporting ``+`` and ``*`` (a `Poly` of another ring, a
        Fraction, a Laurent scalar, ...).  ``one`` is the multiplicative
        identity of the target domain; it defaults to the coefficient itself
        acting by scalar multiplication.
        """
        missing = [n for n in self.ring.names if n not in env]
        if missing:
            raise KeyError(f"no value for generators {missing}")
        total = None
        for exps, c in sorted(self.terms.items()):
            term = one
            for name, e in zip(self.ring.names, exps):
                if e:
                    p = env[name] ** e
                    term = p if term is None else term * p
            if term is None:
                term = one * c if one is not None else c
            else:
                term = term * c
            total = term if total is None else total + term
        if total is None:
            return one * 0 if one is not None else 0
        return total

    def map_coefficients(self, ring: PolyRing) -> "Poly":
        """Reinterpret in another ring with the same generator names.

        Used for char-p reduction; coefficients are renormalized.
        """
        terms = {}
        for e, c in self.terms.items():
            v = ring.coeff(c)
            if v:
                terms[e] = v
        return Poly(ring, terms)

    # -- division and gcd ------------------------------------------------------

    def exact_div(self, divisor: "Poly") -> Optional["Poly"]:
        """Return self / divisor when the division is exact, else None.

        Single-divisor reduction in graded lex order: for one divisor the
        remainder vanishes iff the divisor divides exactly, so this doubles
        as a divisibility certificate.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise DivisionByZeroPoly("division by zero polynomial")
        ring = self.ring
        rem = dict(self.terms)
        lt_e, lt_c = divisor.leading()
        lt_c_inv = ring.coeff_inv(lt_c)
        quot: dict = {}
        char = ring.char
        while rem:
            e = max(rem, key=lambda t: _term_key(ring, t))
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lt_e))
            if any(v < 0 for v in qe):
                return None
            qc = c * lt_c_inv
            if char:
                qc %= char
            quot[qe] = qc
            for de, dc in divisor.terms.items():
                ke = tuple(a + b for a, b in zip(qe, de))
                s = rem.get(ke, 0) - qc * dc
                if char:
                    s %= char
                if s:
                    rem[ke] = s
                else:
                    rem.pop(ke, None)
        return Poly(ring, quot)

    def divides(self, other: "Poly") -> bool:
        return other.exact_div(self) is not None

    def derivative(self, name: str) -> "Poly":
        i = self.ring._index[name]
        char = self.ring.char
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                v = c * e[i]
                if char:
                    v %= char
                if v:
                    de = tuple(x - 1 if j == i else x for j, x in enumerate(e))
                    terms[de] = terms.get(de, 0) + v
        return Poly(self.ring, {e: c for e, c in terms.items() if c})

    # -- rendering ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: _term_key(self.ring, t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}"
                for n, e in zip(self.ring.names, exps) if e)
            if self.ring.char == 0:
                neg = c < 0
                mag = -c if neg else c
            else:
                neg, mag = False, c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("- " if neg else "+ ") + body if parts else
                         ("-" if neg else "") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_json(self) -> dict:
        terms = []
        for exps, c in self.sorted_terms():
            if self.ring.char == 0:
                terms.append({"exps": list(exps), "num": c.numerator,
                              "den": c.denominator})
            else:
                terms.append({"exps": list(exps), "num": int(c), "den": 1})
        return {"ring": {"generators": list(self.ring.names),
                         "gradings": list(self.ring.gradings),
                         "characteristic": self.ring.char},
                "terms": terms}

    @staticmethod
    def from_json(data: dict) -> "Poly":
        rd = data["ring"]
        ring = PolyRing(rd["generators"], rd["gradings"], rd["characteristic"])
        out = ring.zero()
        for t in data["terms"]:
            out = out + ring.monomial(t["exps"], Fraction(t["num"], t["den"]))
        return out


# -- gcd machinery (content / primitive-part recursion) ------------------------


def _content(coeffs: Iterable[Poly], ring: PolyRing) -> Poly:
    g = ring.zero()
    for c in coeffs:
        g = poly_gcd(g, c)
    return g


def _as_univariate(p: Poly, i: int) -> dict:
    out: dict = {}
    for e, c in p.terms.items():
        k = e[i]
        e0 = tuple(0 if j == i else v for j, v in enumerate(e))
        coeff = out.setdefault(k, {})
        coeff[e0] = coeff.get(e0, 0) + c
    return {k: Poly(p.ring, {e: c for e, c in d.items() if c})
            for k, d in out.items() if any(d.values())}


def _from_univariate(coeffs: dict, i: int, ring: PolyRing) -> Poly:
    out = ring.zero()
    xi = ring.gen(ring.names[i])
    for k, c in coeffs.items():
        out = out + c * xi ** k
    return out


def _pseudo_rem(f: Poly, g: Poly, i: int) -> Poly:
    """Pseudo remainder of f by g as univariates in generator i."""
    ring = f.ring
    fu = _as_univariate(f, i)
    gu = _as_univariate(g, i)
    dg = max(gu)
    lc_g = gu[dg]
    while fu and max(fu) >= dg:
        df = max(fu)
        lc_f = fu[df]
        # lc_g * f - lc_f * x^(df-dg) * g
        new: dict = {}
        for k, c in fu.items():
            new[k] = c * lc_g
        for k, c in gu.items():
            kk = k + df - dg
            new[kk] = new.get(kk, ring.zero()) - c * lc_f
        fu = {k: c for k, c in new.items() if not c.is_zero()}
    return _from_univariate(fu, i, ring)


def _normalize_gcd(p: Poly) -> Poly:
    if p.is_zero():
        return p
    _, lc = p.leading()
    return p.scale(p.ring.coeff_inv(lc))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """gcd over the coefficient field, normalized to leading coefficient 1.

    Primitive PRS recursion over the last generator present in either input;
    exactness comes from `exact_div`, so no rational blowup beyond the
    content computations.
    """
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    ring = a.ring
    var = None
    for i in reversed(range(len(ring.names))):
        if a.degree_in(i) > 0 or b.degree_in(i) > 0:
            var = i
            break
    if var is None:
        return ring.one()
    au, bu = _as_univariate(a, var), _as_univariate(b, var)
    ca = _content(au.values(), ring)
    cb = _content(bu.values(), ring)
    f = a.exact_div(ca)
    g = b.exact_div(cb)
    assert f is not None and g is not None
    while True:
        if g.degree_in(var) < 0 or g.is_zero():
            break
        if f.degree_in(var) < g.degree_in(var):
            f, g = g, f
            continue
        r = _pseudo_rem(f, g, var)
        if r.is_zero():
            f = g
            g = ring.zero()
            break
        cr = _content(_as_univariate(r, var).values(), ring)
        r = r.exact_div(cr)
        assert r is not None
        f, g = g, r
        if g.degree_in(var) == 0:
            # the PRS bottomed out in the coefficient ring: primitive gcd is 1
            f = ring.one()
            g = ring.zero()
            break
    cf = _content(_as_univariate(f, var).values(), ring) if f.degree_in(var) > 0 else f
    pp = f.exact_div(cf) if f.degree_in(var) > 0 else ring.one()
    assert pp is not None
    return _normalize_gcd(pp * poly_gcd(ca, cb))


class RatFunc:
    """Fraction-field element num/den with lazy normalization.

    The reduced-form invariant is enforced at observation points (equality,
    `is_polynomial`, `normalize`); intermediate arithmetic keeps whatever
    representation falls out, which matters for the Euler-formula
    computations where normalizing every step is far too expensive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise DivisionByZeroPoly("zero denominator")
        if num.ring != den.ring:
            raise RingMismatch("numerator and denominator in different rings")
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise RingMismatch("mixed rings")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.ring.const(other))
        raise TypeError(f"cannot coerce {other!r}")

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o.num.is_zero():
            raise DivisionByZeroPoly("division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) / self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        # cross multiplication is exact in a domain; no gcd needed
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        n = self.normalize()
        return hash((n.num, n.den))

    def normalize(self) -> "RatFunc":
        """Reduced representative with monic denominator."""
        if self.num.is_zero():
            return RatFunc(self.ring.zero(), self.ring.one())
        q = self.num.exact_div(self.den)
        if q is not None:
            return RatFunc(q, self.ring.one())
        g = poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
            assert num is not None and den is not None
        _, lc = den.leading()
        inv = self.ring.coeff_inv(lc)
        return RatFunc(num.scale(inv), den.scale(inv))

    def is_polynomial(self) -> Optional[Poly]:
        """The underlying polynomial when den | num exactly, else None."""
        if self.num.is_zero():
            return self.ring.zero()
        return self.num.exact_div(self.den)

    def __str__(self) -> str:
        n = self.normalize()
        if n.den == self.ring.one():
            return str(n.num)
        return f"({n.num})/({n.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# -- exposed constructors matching the operation surface -----------------------


def ring_new(names: Sequence[str], gradings: Sequence[int],
             characteristic: int = 0, group: Optional[str] = None) -> PolyRing:
    """Mint a graded polynomial ring, enforcing group characteristic rules."""
    return PolyRing(names, gradings, characteristic, group=group)


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def ratfunc_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown op {op!r}")


def is_polynomial(f: RatFunc) -> Optional[Poly]:
    return f.is_polynomial()


# -- tiny recursive-descent parser ---------------------------------------------


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text: str) -> list:
        tokens = []
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("int", int(text[i:j])))
                i = j
            elif c.isalpha() or c == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("name", text[i:j]))
                i = j
            elif text[i:i + 2] == "**":
                tokens.append(("^", None))
                i += 2
            elif c in "+-*/^()":
                tokens.append((c, None))
                i += 1
            else:
                raise ValueError(f"bad character {c!r} in polynomial")
        return tokens

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        p = self._expr()
        if self._peek()[0] is not None:
            raise ValueError("trailing garbage in polynomial")
        return p

    def _expr(self) -> Poly:
        sign = 1
        kind, _ = self._peek()
        if kind in ("+", "-"):
            self._next()
            sign = -1 if kind == "-" else 1
        p = self._term()
        if sign < 0:
            p = -p
        while True:
            kind, _ = self._peek()
            if kind == "+":
                self._next()
                p = p + self._term()
            elif kind == "-":
                self._next()
                p = p - self._term()
            else:
                return p

    def _term(self) -> Poly:
        p = self._factor()
        while True:
            kind, _ = self._peek()
            if kind == "*":
                self._next()
                p = p * self._factor()
            elif kind == "/":
                self._next()
                kind2, val = self._next()
                if kind2 != "int":
                    raise ValueError("only rational division supported in text form")
                p = p.scale(Fraction(1, val))
            else:
                return p

    def _factor(self) -> Poly:
        base = self._atom()
        kind, _ = self._peek()
        if kind == "^":
            self._next()
            kind2, val = self._next()
            if kind2 != "int":
                raise ValueError("exponent must be an integer literal")
            return base ** val
        return base

    def _atom(self) -> Poly:
        kind, val = self._next()
        if kind == "int":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ValueError(f"unknown generator {val!r}")
            return self.ring.gen(val)
        if kind == "(":
            p = self._expr()
            kind2, _ = self._next()
            if kind2 != ")":
                raise ValueError("unbalanced parenthesis")
            return p
        if kind == "-":
            return -self._factor()
        raise ValueError(f"unexpected token {kind!r}")
