"""Exact polynomial and rational-function arithmetic in the variables q, a, t.

Three value types live here:

* :class:`Poly` -- sparse integer polynomial in ``q, a, t``.
* :class:`RationalQAT` -- a :class:`Poly` over a power of ``(1 - q)``.
* :class:`RatFunc` -- a general quotient of two :class:`Poly` values.

All of them are immutable.  Exponent triples are always ordered ``(q, a, t)``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Mapping

from sympy import ZZ
from sympy.polys.rings import ring

__all__ = [
    "Poly",
    "RationalQAT",
    "RatFunc",
    "Q",
    "A",
    "T",
    "ONE",
    "ZERO",
    "ONE_MINUS_Q",
    "poly_add",
    "poly_mul",
    "rat_normalize",
    "q_series",
    "ratfunc_eq",
    "parse_poly",
]

Exp = tuple[int, int, int]
VARS = ("q", "a", "t")


def _term_key(e: Exp):
    # graded-lex: total degree ascending, then q > a > t
    return (sum(e), -e[0], -e[1], -e[2])


class Poly:
    """Sparse polynomial with integer coefficients in ``q, a, t``.

    ``terms`` maps exponent triples ``(eq, ea, et)`` to nonzero ints.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | None = None):
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # caller guarantees there are no zero coefficients
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls._raw({(0, 0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, eq: int = 0, ea: int = 0, et: int = 0, c: int = 1) -> "Poly":
        if min(eq, ea, et) < 0:
            raise ValueError("exponents must be nonnegative")
        return cls._raw({(eq, ea, et): int(c)} if c else {})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Poly")

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0, 0): 1}

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0, 0)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get((0, 0, 0), 0)

    def degree(self, var: int | None = None) -> int:
        """Total degree, or degree in one variable (0=q, 1=a, 2=t); -1 for zero."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def leading(self) -> tuple[Exp, int]:
        """Lex-leading term (q first)."""
        e = max(self.terms)
        return e, self.terms[e]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return Poly._raw({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for (x0, x1, x2), c in b.items():
            for (y0, y1, y2), d in a.items():
                e = (x0 + y0, x1 + y1, x2 + y2)
                out[e] = get(e, 0) + c * d
        return Poly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def divexact(self, d: "Poly") -> "Poly":
        """Exact quotient ``self / d``; raises ArithmeticError if not exact."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if d.is_constant():
            c = d.constant_term()
            if any(x % c for x in self.terms.values()):
                raise ArithmeticError("inexact division by constant")
            return Poly._raw({e: x // c for e, x in self.terms.items()})
        (l0, l1, l2), lc = d.leading()
        rem = dict(self.terms)
        quo: dict = {}
        dterms = list(d.terms.items())
        while rem:
            e = max(rem)
            c = rem[e]
            s = (e[0] - l0, e[1] - l1, e[2] - l2)
            if min(s) < 0 or c % lc:
                raise ArithmeticError("inexact polynomial division")
            k = c // lc
            quo[s] = k
            for (f0, f1, f2), x in dterms:
                g = (f0 + s[0], f1 + s[1], f2 + s[2])
                v = rem.get(g, 0) - k * x
                if v:
                    rem[g] = v
                else:
                    del rem[g]
        return Poly._raw(quo)

    def divides(self, other: "Poly") -> bool:
        try:
            other.divexact(self)
        except ArithmeticError:
            return False
        return True

    def at_q_one(self) -> "Poly":
        out: dict = {}
        for (_, ea, et), c in self.terms.items():
            out[(0, ea, et)] = out.get((0, ea, et), 0) + c
        return Poly(out)

    def truncate_q(self, order: int) -> "Poly":
        return Poly._raw({e: c for e, c in self.terms.items() if e[0] <= order})

    def coeff_a(self, j: int) -> "Poly":
        """Coefficient of ``a**j`` as a polynomial in q, t."""
        return Poly._raw({(e[0], 0, e[2]): c for e, c in self.terms.items() if e[1] == j})

    def coeff(self, eq: int, ea: int, et: int) -> int:
        return self.terms.get((eq, ea, et), 0)

    def substitute(self, q=None, a=None, t=None) -> "Poly":
        """Substitute polynomials for variables (None keeps the variable)."""
        gens = [q, a, t]
        pows: list[dict[int, Poly]] = [{}, {}, {}]

        def power(i, k):
            if k not in pows[i]:
                pows[i][k] = gens[i] ** k
            return pows[i][k]

        out = ZERO
        for e, c in self.terms.items():
            keep = [0, 0, 0]
            term = Poly.const(c)
            for i in range(3):
                if gens[i] is None:
                    keep[i] = e[i]
                elif e[i]:
                    term = term * power(i, e[i])
            out = out + term * Poly.monomial(*keep)
        return out

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


ZERO = Poly._raw({})
ONE = Poly._raw({(0, 0, 0): 1})
Q = Poly._raw({(1, 0, 0): 1})
A = Poly._raw({(0, 1, 0): 1})
T = Poly._raw({(0, 0, 1): 1})
ONE_MINUS_Q = Poly._raw({(0, 0, 0): 1, (1, 0, 0): -1})


def poly_add(p: Poly, r: Poly) -> Poly:
    return p + r


def poly_mul(p: Poly, r: Poly) -> Poly:
    return p * r


@lru_cache(maxsize=None)
def one_minus_q_pow(k: int) -> Poly:
    return ONE_MINUS_Q ** k


# -- RationalQAT -----------------------------------------------------------


class RationalQAT:
    """``num / (1 - q)**dpow``, kept normalized.

    Normalized means ``(1 - q)`` does not divide ``num`` unless ``dpow == 0``,
    which makes the representation canonical.
    """

    __slots__ = ("num", "dpow")

    def __init__(self, num: Poly | int, dpow: int = 0, *, normalize: bool = True):
        if dpow < 0:
            raise ValueError("dpow must be nonnegative")
        num = Poly.coerce(num)
        if normalize:
            num, dpow = _strip_one_minus_q(num, dpow)
        self.num = num
        self.dpow = dpow

    def __add__(self, other):
        other = _as_rqat(other)
        if other is None:
            return NotImplemented
        d = max(self.dpow, other.dpow)
        n = self.num * one_minus_q_pow(d - self.dpow) + other.num * one_minus_q_pow(d - other.dpow)
        return RationalQAT(n, d)

    __radd__ = __add__

    def __neg__(self):
        return RationalQAT(-self.num, self.dpow, normalize=False)

    def __sub__(self, other):
        other = _as_rqat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rqat(other)
        if other is None:
            return NotImplemented
        return RationalQAT(self.num * other.num, self.dpow + other.dpow)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _as_rqat(other)
        if other is None:
            return NotImplemented
        # both sides are normalized, so the representation is canonical
        return self.dpow == other.dpow and self.num == other.num

    def __hash__(self):
        return hash((self.num, self.dpow))

    def is_polynomial(self) -> bool:
        return self.dpow == 0

    def coeff_a(self, j: int) -> "RationalQAT":
        return RationalQAT(self.num.coeff_a(j), self.dpow)

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc(self.num, one_minus_q_pow(self.dpow), reduce=False)

    def __repr__(self):
        return f"RationalQAT({format_rqat(self)!r})"

    def __str__(self):
        return format_rqat(self)


def _as_rqat(x):
    if isinstance(x, RationalQAT):
        return x
    if isinstance(x, (Poly, int)):
        return RationalQAT(x, 0, normalize=False)
    return None


def _strip_one_minus_q(num: Poly, dpow: int) -> tuple[Poly, int]:
    while dpow > 0 and num.terms and num.at_q_one().is_zero():
        num = num.divexact(ONE_MINUS_Q)
        dpow -= 1
    if num.is_zero():
        dpow = 0
    return num, dpow


def rat_normalize(x: RationalQAT) -> RationalQAT:
    num, dpow = _strip_one_minus_q(x.num, x.dpow)
    return RationalQAT(num, dpow, normalize=False)


def q_series(x: RationalQAT | Poly, order: int) -> Poly:
    """Power series of ``x`` in q, truncated to q-degree ``<= order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if isinstance(x, Poly):
        return x.truncate_q(order)
    if x.dpow == 0:
        return x.num.truncate_q(order)
    d = x.dpow
    # 1/(1-q)^d = sum_k C(k+d-1, d-1) q^k
    out: dict = {}
    for (eq, ea, et), c in x.num.terms.items():
        for k in range(order - eq + 1):
            e = (eq + k, ea, et)
            out[e] = out.get(e, 0) + c * comb(k + d - 1, d - 1)
    return Poly(out)


# -- RatFunc ----------------------------------------------------------------

_R, _rq, _ra, _rt = ring("q,a,t", ZZ)


def _to_sympy(p: Poly):
    return _R.from_dict(p.terms) if p.terms else _R.zero


def _from_sympy(e) -> Poly:
    return Poly._raw({tuple(m): int(c) for m, c in e.items() if c})


def _poly_cofactors(n: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Divide ``n`` and ``d`` by their gcd."""
    if d.is_constant() or n.is_constant():
        g = gcd(n.content(), d.content())
        if g > 1:
            return n.divexact(Poly.const(g)), d.divexact(Poly.const(g))
        return n, d
    _, cn, cd = _to_sympy(n).cofactors(_to_sympy(d))
    return _from_sympy(cn), _from_sympy(cd)


def _den_sign(d: Poly) -> int:
    c = d.constant_term()
    if c:
        return 1 if c > 0 else -1
    return 1 if d.leading()[1] > 0 else -1


class RatFunc:
    """Quotient ``num / den`` of integer polynomials (used with q, t only).

    The constructor cancels common factors (via a multivariate gcd) and makes
    the denominator's constant term, or failing that its leading coefficient,
    positive.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | int, den: Poly | int = 1, *, reduce: bool = True):
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif reduce and not den.is_one():
            num, den = _poly_cofactors(num, den)
        if _den_sign(den) < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, f: Fraction | int) -> "RatFunc":
        f = Fraction(f)
        return cls(Poly.const(f.numerator), Poly.const(f.denominator), reduce=False)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x, ONE, reduce=False)
        if isinstance(x, (int, Fraction)):
            return cls.from_fraction(x)
        if isinstance(x, RationalQAT):
            return x.to_ratfunc()
        raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant() and self.den.constant_term() == 1

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Fraction):
            return RatFunc(self.num * other.numerator, self.den * other.denominator)
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc(ZERO)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, ONE, reduce=False)
        # cancel crosswise first to keep intermediate sizes down
        n1, d2 = _poly_cofactors(self.num, other.den)
        n2, d1 = _poly_cofactors(other.num, self.den)
        return RatFunc(n1 * n2, d1 * d2, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return ratfunc_eq(self, other)

    def __hash__(self):
        # constructor output is reduced and sign-normalized, hence canonical
        return hash((self.num, self.den))

    def substitute(self, q=None, a=None, t=None) -> "RatFunc":
        return RatFunc(self.num.substitute(q, a, t), self.den.substitute(q, a, t))

    def to_rational_qat(self) -> RationalQAT:
        """Rewrite over a power of ``(1 - q)``; ValueError if impossible."""
        k = self.den.degree()
        if self.den.degree(0) != k:
            raise ValueError(f"denominator {self.den} is not a power of (1 - q)")
        try:
            cof = one_minus_q_pow(k).divexact(self.den)
            return RationalQAT(self.num * cof, k)
        except ArithmeticError:
            raise ValueError(f"denominator {self.den} is not a power of (1 - q)") from None

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


def ratfunc_eq(x: RatFunc, y: RatFunc) -> bool:
    return x.num * y.den == y.num * x.den


# -- emitters ----------------------------------------------------------------


def _monomial_str(e: Exp, sep: str = "*", latex: bool = False) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{{{k}}}" if latex else f"{name}^{k}")
    return sep.join(parts)


def format_poly(p: Poly, latex: bool = False) -> str:
    if p.is_zero():
        return "0"
    sep = " " if latex else "*"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(e, "" if latex else "*", latex)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{sep}{mono}" if not latex else f"{mag}{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def _paren(s: str, latex: bool = False) -> str:
    if re.fullmatch(r"-?[\w^{}]+", s) and not s.startswith("-"):
        return s
    return rf"\left({s}\right)" if latex else f"({s})"


def _den_str(den: Poly, latex: bool) -> str:
    k = den.degree()
    if k > 0 and den == one_minus_q_pow(k):
        if k == 1:
            return "(1 - q)"
        return f"(1 - q)^{{{k}}}" if latex else f"(1 - q)^{k}"
    return _paren(format_poly(den, latex), latex)


def format_rqat(x: RationalQAT, latex: bool = False) -> str:
    if x.dpow == 0:
        return format_poly(x.num, latex)
    num = format_poly(x.num, latex)
    if latex:
        return rf"\frac{{{num}}}{{{_den_str(one_minus_q_pow(x.dpow), True)}}}"
    return f"{_paren(num)}/{_den_str(one_minus_q_pow(x.dpow), False)}"


def format_ratfunc(x: RatFunc, latex: bool = False) -> str:
    if x.den.is_one():
        return format_poly(x.num, latex)
    num = format_poly(x.num, latex)
    if latex:
        return rf"\frac{{{num}}}{{{format_poly(x.den, True)}}}"
    return f"{_paren(num)}/{_den_str(x.den, False)}"


def poly_to_json(p: Poly) -> list[dict]:
    return [
        {"q": e[0], "a": e[1], "t": e[2], "c": str(c)} for e, c in p.sorted_terms()
    ]


def poly_from_json(terms: Iterable[Mapping]) -> Poly:
    out: dict = {}
    for term in terms:
        e = (int(term["q"]), int(term["a"]), int(term["t"]))
        out[e] = out.get(e, 0) + int(term["c"])
    return Poly(out)


def rqat_to_json(x: RationalQAT | Poly) -> dict:
    if isinstance(x, Poly):
        x = RationalQAT(x)
    return {"terms": poly_to_json(x.num), "dpow": x.dpow}


def rqat_from_json(obj: Mapping) -> RationalQAT:
    return RationalQAT(poly_from_json(obj["terms"]), int(obj["dpow"]))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# -- parsing -----------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(s: str) -> Poly:
    """Parse the plain-text form emitted by :func:`format_poly`.

    Accepts sums of terms like ``3*q^2*a*t``; no parentheses.
    """
    s = s.strip()
    if not s:
        raise ValueError("empty polynomial string")
    out: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or not m.group(2).strip():
            raise ValueError(f"cannot parse polynomial {s!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        exps = [0, 0, 0]
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in VARS:
                raise ValueError(f"unknown factor {factor!r} in {s!r}")
            exps[VARS.index(name)] += int(power.strip("{}")) if power else 1
        e = tuple(exps)
        out[e] = out.get(e, 0) + coeff
        pos = m.end()
    return Poly(out)
