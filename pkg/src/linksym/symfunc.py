"""Symmetric functions over Q(q, t), stored in the monomial basis.

Also home of the link symmetric functions ``L_v`` and their normalized
versions, which are computed from barred Fubini words.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Mapping, Sequence

from sympy.utilities.iterables import multiset_permutations

from .linalg import rational_inverse
from .qt_arith import (
    ONE,
    Poly,
    RatFunc,
    T,
    ZERO,
    format_ratfunc,
    one_minus_q_pow,
    parse_poly,
    q_series,
)
from .words import Word, enumerate_barred_fubini, weight

Partition = tuple[int, ...]


# -- partitions --------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of ``n`` in reverse lexicographic order: (n), (n-1, 1), ..."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rest: int, cap: int) -> Iterable[Partition]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def parse_partition(s: str) -> Partition:
    s = s.strip().strip("()[]")
    if not s:
        return ()
    parts = tuple(int(x) for x in s.replace(" ", "").split(","))
    if not is_partition(parts):
        raise ValueError(f"not a partition: {s!r}")
    return parts


def conjugate(la: Partition) -> Partition:
    if not la:
        return ()
    return tuple(sum(1 for p in la if p > i) for i in range(la[0]))


def z_lambda(la: Partition) -> int:
    return prod(i ** m * factorial(m) for i, m in Counter(la).items())


def partition_str(la: Partition) -> str:
    return ",".join(map(str, la)) if la else "∅"


# -- coefficient helpers -----------------------------------------------------


def ratsum(values: Iterable[RatFunc]) -> RatFunc:
    """Sum RatFuncs, adding numerators over shared denominators first."""
    groups: dict[Poly, Poly] = {}
    for x in values:
        if x.num.is_zero():
            continue
        groups[x.den] = groups.get(x.den, ZERO) + x.num
    total = RatFunc(ZERO)
    for den, num in groups.items():
        if not num.is_zero():
            total = total + RatFunc(num, den)
    return total


# -- the SymFunc type --------------------------------------------------------


class SymFunc:
    """Homogeneous symmetric function ``sum_la c_la m_la`` with RatFunc ``c_la``."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping[Partition, object] | None = None):
        self.degree = degree
        out: dict[Partition, RatFunc] = {}
        for la, c in (coeffs or {}).items():
            la = tuple(la)
            if sum(la) != degree or not is_partition(la):
                raise ValueError(f"{la} is not a partition of {degree}")
            c = RatFunc.coerce(c)
            if not c.is_zero():
                out[la] = c
        self.coeffs = out

    @classmethod
    def zero(cls, degree: int) -> "SymFunc":
        return cls(degree)

    @classmethod
    def one(cls) -> "SymFunc":
        return cls(0, {(): 1})

    def coefficient(self, la: Partition) -> RatFunc:
        return self.coeffs.get(tuple(la), RatFunc(ZERO))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_degree(self, other: "SymFunc"):
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        self._check_degree(other)
        keys = set(self.coeffs) | set(other.coeffs)
        degree = self.degree if self.coeffs else other.degree
        return SymFunc(degree, {la: ratsum([self.coefficient(la), other.coefficient(la)]) for la in keys})

    def __neg__(self):
        return SymFunc(self.degree, {la: -c for la, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = c if isinstance(c, Fraction) else RatFunc.coerce(c)
        return SymFunc(self.degree, {la: x * c for la, x in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return sf_multiply(self, other)
        if isinstance(other, (int, Fraction, Poly, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(la) == other.coefficient(la) for la in keys)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def map_coeffs(self, fn: Callable[[RatFunc], object]) -> "SymFunc":
        return SymFunc(self.degree, {la: fn(c) for la, c in self.coeffs.items()})

    def substitute(self, q=None, t=None) -> "SymFunc":
        return self.map_coeffs(lambda c: c.substitute(q=q, t=t))

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.coeffs.values())

    def sorted_items(self) -> list[tuple[Partition, RatFunc]]:
        order = {la: i for i, la in enumerate(partitions(self.degree))}
        return sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])

    def __str__(self):
        return format_expansion(self.sorted_items(), "m")

    def __repr__(self):
        return f"SymFunc({self})"

    def to_json(self, basis: str = "m") -> dict:
        return expansion_to_json(self.degree, self.sorted_items(), basis)

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymFunc":
        if obj.get("basis", "m") != "m":
            raise ValueError("expected a monomial-basis expansion")
        return cls(int(obj["degree"]), expansion_from_json(obj))


def format_expansion(items, symbol: str, latex: bool = False) -> str:
    """Render ``[(partition, coeff), ...]`` as ``c * symbol[partition]`` terms."""
    if not items:
        return "0"
    out = []
    for la, c in items:
        if latex:
            name = rf"\widetilde{{H}}" if symbol == "Ht" else symbol
            basis = f"{name}_{{{','.join(map(str, la)) or '0'}}}"
        else:
            basis = f"{symbol}[{','.join(map(str, la))}]"
        text = format_ratfunc(c, latex)
        if text == "1":
            term = basis
        elif text == "-1":
            term = f"-{basis}"
        elif c.is_polynomial() and len(c.num.terms) == 1:
            term = f"{text} {basis}" if latex else f"{text}*{basis}"
        else:
            paren = rf"\left({text}\right)" if latex else f"({text})"
            term = f"{paren} {basis}" if latex else f"{paren}*{basis}"
        out.append(term)
    text = " + ".join(out)
    return text.replace("+ -", "- ")


def expansion_to_json(degree: int, items, basis: str) -> dict:
    return {
        "degree": degree,
        "basis": basis,
        "coeffs": [
            {"partition": list(la), "num": str(c.num), "den": str(c.den)} for la, c in items
        ],
    }


def expansion_from_json(obj: Mapping) -> dict[Partition, RatFunc]:
    return {
        tuple(entry["partition"]): RatFunc(parse_poly(entry["num"]), parse_poly(entry["den"]))
        for entry in obj["coeffs"]
    }


# -- products ----------------------------------------------------------------


@lru_cache(maxsize=None)
def m_product(la: Partition, mu: Partition) -> dict[Partition, int]:
    """Integer structure constants of ``m_la * m_mu`` in the m-basis.

    Counts pairs of rearrangements (zero padded to the combined length) whose
    entrywise sum is a partition, i.e. the coefficient of ``x^nu``.
    """
    L = len(la) + len(mu)
    out: dict[Partition, int] = defaultdict(int)
    a_perms = list(multiset_permutations(list(la) + [0] * (L - len(la))))
    b_perms = list(multiset_permutations(list(mu) + [0] * (L - len(mu))))
    for a in a_perms:
        for b in b_perms:
            s = [x + y for x, y in zip(a, b)]
            if all(s[i] >= s[i + 1] for i in range(L - 1)):
                out[tuple(x for x in s if x)] += 1
    return dict(out)


def sf_multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    terms: dict[Partition, list[RatFunc]] = defaultdict(list)
    for la, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            ab = a * b
            for nu, c in m_product(la, mu).items():
                terms[nu].append(ab * c)
    return SymFunc(f.degree + g.degree, {nu: ratsum(v) for nu, v in terms.items()})


# -- classical bases ---------------------------------------------------------


def basis_m(la: Partition) -> SymFunc:
    return SymFunc(sum(la), {tuple(la): 1})


def _e_single(k: int) -> SymFunc:
    return SymFunc(k, {(1,) * k: 1})


def _h_single(k: int) -> SymFunc:
    return SymFunc(k, {mu: 1 for mu in partitions(k)})


def _p_single(k: int) -> SymFunc:
    return SymFunc(k, {(k,): 1} if k else {(): 1})


def _product_basis(single, la: Partition) -> SymFunc:
    out = SymFunc.one()
    for part in la:
        out = sf_multiply(out, single(part))
    return out


@lru_cache(maxsize=None)
def basis_e(la: Partition) -> SymFunc:
    return _product_basis(_e_single, tuple(la))


@lru_cache(maxsize=None)
def basis_h(la: Partition) -> SymFunc:
    return _product_basis(_h_single, tuple(la))


@lru_cache(maxsize=None)
def basis_p(la: Partition) -> SymFunc:
    return _product_basis(_p_single, tuple(la))


def e_h_product(k: int, d: int) -> SymFunc:
    """``e_k * h_d``."""
    return sf_multiply(basis_e((k,) if k else ()), basis_h((d,) if d else ()))


def _int_coeff(c: RatFunc) -> int:
    return c.num.constant_term()


@lru_cache(maxsize=None)
def _transition_inverse(kind: str, n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of the matrix whose row ``la`` holds the m-coefficients of
    ``basis(la)``; rows/columns indexed by ``partitions(n)``."""
    basis = {"p": basis_p, "e": basis_e, "h": basis_h}[kind]
    parts = partitions(n)
    mat = [[_int_coeff(basis(la).coefficient(mu)) for mu in parts] for la in parts]
    return tuple(tuple(row) for row in rational_inverse(mat))


def _expand_in(kind: str, f: SymFunc) -> dict[Partition, RatFunc]:
    # f = sum_la a_la b_la  =>  m-row f = a . M  =>  a = f . M^{-1}
    parts = partitions(f.degree)
    inv = _transition_inverse(kind, f.degree)
    out = {}
    for j, la in enumerate(parts):
        a = ratsum(
            f.coeffs[mu] * inv[i][j] for i, mu in enumerate(parts)
            if mu in f.coeffs and inv[i][j]
        )
        if not a.is_zero():
            out[la] = a
    return out


def p_expand(f: SymFunc) -> dict[Partition, RatFunc]:
    return _expand_in("p", f)


def e_expand(f: SymFunc) -> dict[Partition, RatFunc]:
    return _expand_in("e", f)


def from_basis(kind: str, coords: Mapping[Partition, object], degree: int) -> SymFunc:
    basis = {"p": basis_p, "e": basis_e, "h": basis_h, "m": basis_m}[kind]
    out = SymFunc.zero(degree)
    for la, c in coords.items():
        out = out + basis(la).scale(c)
    return out


def hall_inner(f: SymFunc, g: SymFunc) -> RatFunc:
    if f.is_zero() or g.is_zero():
        return RatFunc(ZERO)
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    a, b = p_expand(f), p_expand(g)
    return ratsum(a[la] * b[la] * z_lambda(la) for la in a if la in b)


# -- link symmetric functions ------------------------------------------------


@lru_cache(maxsize=None)
def _label_words(content: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    letters = [i + 1 for i, k in enumerate(content) for _ in range(k)]
    return tuple(tuple(w) for w in multiset_permutations(letters))


def _dinv_distribution(levels: Word, bars, labels_list) -> Counter:
    n = len(levels)
    same, step = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if levels[i] == levels[j]:
                same.append((i, j))
            elif levels[i] + 1 == levels[j] and not bars[j]:
                step.append((i, j))
    dist: Counter = Counter()
    for pi in labels_list:
        d = 0
        for i, j in same:
            if pi[i] > pi[j]:
                d += 1
        for i, j in step:
            if pi[i] < pi[j]:
                d += 1
        dist[d] += 1
    return dist


def _t_poly(dist: Counter) -> Poly:
    return Poly({(0, 0, d): c for d, c in dist.items()})


def link_sym_coefficient(v: Sequence[int], content: Sequence[int]) -> RatFunc:
    """Coefficient of ``x_1^content[0] x_2^content[1] ...`` in ``L_v``."""
    v = tuple(v)
    n = len(v)
    content = tuple(content)
    if sum(content) != n:
        raise ValueError("content must have total size len(v)")
    if n == 0:
        return RatFunc(ONE)
    labels = _label_words(content)
    chi = 0 if any(v) else 1
    by_dpow: dict[int, Poly] = defaultdict(lambda: ZERO)
    for bw in enumerate_barred_fubini(v):
        dist = _dinv_distribution(bw.levels, bw.bars, labels)
        b = bw.bar_count
        by_dpow[b + chi] = by_dpow[b + chi] + Poly.monomial(bw.area + b) * _t_poly(dist)
    top = max(by_dpow)
    num = ZERO
    for d, p in by_dpow.items():
        num = num + p * one_minus_q_pow(top - d)
    return RatFunc(num, one_minus_q_pow(top))


@lru_cache(maxsize=None)
def _link_sym(v: Word) -> SymFunc:
    n = len(v)
    if n == 0:
        return SymFunc.one()
    return SymFunc(n, {la: link_sym_coefficient(v, la) for la in partitions(n)})


def link_sym(v: Sequence[int]) -> SymFunc:
    """``L_v`` in the monomial basis, from the finite barred-Fubini formula."""
    return _link_sym(tuple(v))


class DenominatorError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _link_sym_normalized(v: Word) -> SymFunc:
    L = _link_sym(v)
    factor = one_minus_q_pow(len(v) - weight(v))
    out = L.scale(factor)
    for la, c in out.coeffs.items():
        if not c.is_polynomial():
            raise DenominatorError(f"coefficient of m[{partition_str(la)}] in normalized L_{v} is not a polynomial: {c}")
    return out


def link_sym_normalized(v: Sequence[int]) -> SymFunc:
    """``(1 - q)^(zeros of v) * L_v``; every coefficient is a polynomial."""
    return _link_sym_normalized(tuple(v))


# -- e-positivity ------------------------------------------------------------


def e_positivity_witness(f: SymFunc, q_order: int):
    """First negative coefficient of ``f(q, 1 + t)`` in the e-basis.

    Each e-coefficient is expanded as a power series in q up to ``q_order``.
    Returns ``None`` if all coefficients are nonnegative, else a tuple
    ``(partition, (i, j), coefficient)`` for the term ``q^i t^j``.
    """
    shifted = f.substitute(t=ONE + T)
    coords = e_expand(shifted)
    for la in partitions(f.degree):
        if la not in coords:
            continue
        series = q_series(coords[la].to_rational_qat(), q_order)
        for (eq, _, et), c in series.sorted_terms():
            if c < 0:
                return la, (eq, et), c
    return None


def e_positivity_check(v: Sequence[int], q_order: int) -> bool:
    return e_positivity_witness(link_sym(v), q_order) is None


__all__ = [
    "Partition",
    "SymFunc",
    "partitions",
    "conjugate",
    "z_lambda",
    "sf_multiply",
    "basis_m",
    "basis_e",
    "basis_h",
    "basis_p",
    "p_expand",
    "e_expand",
    "hall_inner",
    "link_sym",
    "link_sym_coefficient",
    "link_sym_normalized",
    "e_positivity_check",
    "DenominatorError",
]
