"""Poincare series f_v(q, a, t), computed by independent routes.

* ``recurrence`` -- the sum over auxiliary words w, memoized on v;
* ``barred_fubini`` -- the finite sum over barred Fubini words;
* ``truncated_infinite`` -- the sum over all level words, cut off by area;
* ``inner_product`` -- pairing L_v with ``e_{n-d} h_d`` for each a-degree d.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from sympy.utilities.iterables import multiset_permutations

from .qt_arith import A, ONE, Poly, RationalQAT, ZERO, q_series
from .symfunc import e_h_product, hall_inner, link_sym
from .words import (
    Word,
    build_u_word,
    dinv,
    dinv_i,
    enumerate_barred_fubini,
    weight,
)


class Method(str, enum.Enum):
    RECURRENCE = "recurrence"
    BARRED_FUBINI = "barred_fubini"
    TRUNCATED_INFINITE = "truncated_infinite"
    INNER_PRODUCT = "inner_product"


@dataclass(frozen=True)
class PoincareSeries:
    value: RationalQAT | Poly
    v: Word
    method: Method

    def __post_init__(self):
        if self.method in (Method.RECURRENCE, Method.BARRED_FUBINI):
            n = len(self.v)
            bound = n - weight(self.v) + (1 if n and not any(self.v) else 0)
            if self.value.dpow > bound:
                raise ValueError(f"denominator power {self.value.dpow} exceeds {bound}")


def _t_pow(k: int) -> Poly:
    return Poly.monomial(0, 0, k)


def pvw_product(v: Sequence[int], w: Sequence[int]) -> Poly:
    u = build_u_word(v, w)
    n = len(u)
    out = ONE
    for i in range(n):
        if v[i] == 1:
            k = sum(1 for j in range(i) if u[j] == 1) + sum(1 for j in range(i + 1, n) if u[j] == 2)
            out = out * (_t_pow(k) + A)
    return out


def _binary_words(m: int) -> Iterator[Word]:
    return product((0, 1), repeat=m)


@lru_cache(maxsize=None)
def _f_rec(v: Word) -> RationalQAT:
    n = len(v)
    if n == 0:
        return RationalQAT(ONE)
    if not any(v):
        return _f_rec((1,) + (0,) * (n - 1)) * RationalQAT(ONE, 1)
    m = n - weight(v)
    total = RationalQAT(ZERO)
    for w in _binary_words(m):
        coeff = Poly.monomial(m - weight(w)) * pvw_product(v, w)
        total = total + _f_rec(w) * coeff
    return total


def f_recurrence(v: Sequence[int]) -> RationalQAT:
    return _f_rec(tuple(v))


def _fubini_term(levels, bars, chi: int) -> RationalQAT:
    out = Poly.monomial(sum(levels) - sum(1 for g in levels if g) + sum(bars))
    for i in range(1, len(levels) + 1):
        out = out * (A + _t_pow(dinv_i(levels, i, bars)))
    return RationalQAT(out, sum(bars) + chi, normalize=False)


@lru_cache(maxsize=None)
def _f_fub(v: Word) -> RationalQAT:
    if not v:
        return RationalQAT(ONE)
    chi = 0 if any(v) else 1
    by_dpow: dict[int, Poly] = {}
    for bw in enumerate_barred_fubini(v):
        term = _fubini_term(bw.levels, bw.bars, chi)
        by_dpow[term.dpow] = by_dpow.get(term.dpow, ZERO) + term.num
    total = RationalQAT(ZERO)
    for d, num in by_dpow.items():
        total = total + RationalQAT(num, d)
    return total


def f_barred_fubini(v: Sequence[int]) -> RationalQAT:
    return _f_fub(tuple(v))


def _level_words(v: Word, order: int) -> Iterator[tuple[int, ...]]:
    """Level words with zeros exactly where v has ones and area <= order."""
    free = [i for i, b in enumerate(v) if b == 0]
    m = len(free)

    def excess(idx: int, budget: int) -> Iterator[list[int]]:
        if idx == m:
            yield []
            return
        for k in range(budget + 1):
            for rest in excess(idx + 1, budget - k):
                yield [k] + rest

    for ex in excess(0, order):
        levels = [0] * len(v)
        for i, k in zip(free, ex):
            levels[i] = k + 1
        yield tuple(levels)


def f_truncated_infinite(v: Sequence[int], order: int) -> Poly:
    """Sum over all level words with area ``<= order`` (no compression)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    v = tuple(v)
    total = ZERO
    for levels in _level_words(v, order):
        term = Poly.monomial(sum(levels) - sum(1 for g in levels if g))
        for i in range(1, len(v) + 1):
            term = term * (A + _t_pow(dinv_i(levels, i)))
        total = total + term
    return q_series(total, order)


def f_via_inner_product(v: Sequence[int]) -> RationalQAT:
    v = tuple(v)
    n = len(v)
    if n == 0:
        return RationalQAT(ONE)
    L = link_sym(v)
    total = RationalQAT(ZERO)
    for d in range(n + 1):
        c = hall_inner(L, e_h_product(n - d, d))
        if not c.is_zero():
            total = total + c.to_rational_qat() * Poly.monomial(0, d, 0)
    return total


def f_super_alphabet(v: Sequence[int]) -> RationalQAT:
    """Barred Fubini sum with every label word over {0-underline, 1}.

    Each 1 contributes a factor a; the super-letter is encoded as label 0.
    """
    v = tuple(v)
    n = len(v)
    if n == 0:
        return RationalQAT(ONE)
    chi = 0 if any(v) else 1
    label_words = [tuple(w) for d in range(n + 1)
                   for w in multiset_permutations([0] * (n - d) + [1] * d)]
    total = RationalQAT(ZERO)
    for bw in enumerate_barred_fubini(v):
        s = ZERO
        for pi in label_words:
            s = s + Poly.monomial(0, sum(pi), dinv(bw.levels, pi, bw.bars))
        total = total + RationalQAT(s * Poly.monomial(bw.area + bw.bar_count),
                                    bw.bar_count + chi)
    return total


def poincare(v: Sequence[int], method: Method | str = Method.BARRED_FUBINI, order: int = 8) -> PoincareSeries:
    method = Method(method)
    v = tuple(v)
    if method is Method.RECURRENCE:
        value = f_recurrence(v)
    elif method is Method.BARRED_FUBINI:
        value = f_barred_fubini(v)
    elif method is Method.TRUNCATED_INFINITE:
        value = f_truncated_infinite(v, order)
    else:
        value = f_via_inner_product(v)
    return PoincareSeries(value, v, method)


__all__ = [
    "Method",
    "PoincareSeries",
    "pvw_product",
    "f_recurrence",
    "f_barred_fubini",
    "f_truncated_infinite",
    "f_via_inner_product",
    "f_super_alphabet",
    "poincare",
]
