"""Modified Macdonald polynomials and the eigenoperators built on them.

``htilde`` uses the inv/maj filling formula of Haglund-Haiman-Loehr with
French diagrams: row ``r`` (bottom row is 0) has ``mu[r]`` cells, and the
cell in column ``c`` of row ``r`` carries the monomial ``q^c t^r``.  This is
the convention under which ``H~_{1^n}`` has t-graded coefficients and
``H~_(n)`` has q-graded ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from sympy.utilities.iterables import multiset_permutations

from .linalg import SingularMatrixError, bareiss_solve
from .qt_arith import ONE, Poly, RatFunc, ZERO
from .symfunc import (
    Partition,
    SymFunc,
    basis_e,
    basis_p,
    expansion_to_json,
    format_expansion,
    partitions,
    ratsum,
    sf_multiply,
)

Cell = tuple[int, int]  # (row, column)


def cells(mu: Partition) -> list[Cell]:
    return [(r, c) for r, length in enumerate(mu) for c in range(length)]


@dataclass(frozen=True)
class CellAlphabet:
    """Multiset of monomials ``q^i t^j``, stored as ``(i, j)`` pairs."""

    monomials: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.monomials)

    def polys(self) -> list[Poly]:
        return [Poly.monomial(i, 0, j) for i, j in self.monomials]

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.polys()) + "}"


def b_mu(mu: Sequence[int]) -> CellAlphabet:
    return CellAlphabet(tuple((c, r) for r, c in cells(tuple(mu))))


@lru_cache(maxsize=None)
def t_mu(mu: Partition) -> Poly:
    """Product of the cell monomials, i.e. ``e_n[B_mu]``."""
    i = sum(c for _, c in cells(mu))
    j = sum(r for r, _ in cells(mu))
    return Poly.monomial(i, 0, j)


def _monomial_sum(la: Partition, alphabet: CellAlphabet) -> Poly:
    """``m_la`` evaluated at the alphabet."""
    k = len(alphabet)
    if len(la) > k:
        return ZERO
    mons = alphabet.monomials
    out: dict = {}
    for alpha in multiset_permutations(list(la) + [0] * (k - len(la))):
        e = (sum(a * m[0] for a, m in zip(alpha, mons)), 0,
             sum(a * m[1] for a, m in zip(alpha, mons)))
        out[e] = out.get(e, 0) + 1
    return Poly(out)


def pleth_eval(f: SymFunc, alphabet: CellAlphabet) -> RatFunc:
    """``f`` with ``x_i`` set to the i-th monomial and all other variables 0."""
    return ratsum(c * _monomial_sum(la, alphabet) for la, c in f.coeffs.items())


# -- H~_mu via fillings ------------------------------------------------------


@lru_cache(maxsize=None)
def _filling_statistics(mu: Partition):
    cs = cells(mu)
    index = {cell: k for k, cell in enumerate(cs)}

    def arm(cell):
        r, c = cell
        return mu[r] - c - 1

    def leg(cell):
        r, c = cell
        return sum(1 for rr in range(r + 1, len(mu)) if mu[rr] > c)

    # (upper cell, cell below, leg + 1, arm)
    descents = [
        (index[(r, c)], index[(r - 1, c)], leg((r, c)) + 1, arm((r, c)))
        for r, c in cs if r > 0
    ]
    # attacking pairs (u, v) with u before v in reading order
    # (rows read top to bottom, each row left to right)
    attacks = []
    for r, c in cs:
        for c2 in range(c + 1, mu[r]):
            attacks.append((index[(r, c)], index[(r, c2)]))
        if r > 0:
            for c2 in range(min(c, mu[r - 1])):
                attacks.append((index[(r, c)], index[(r - 1, c2)]))
    return len(cs), descents, attacks


def hhl_weight(mu: Partition, filling: Sequence[int]) -> tuple[int, int]:
    """``(inv, maj)`` of a filling listed in :func:`cells` order."""
    _, descents, attacks = _filling_statistics(tuple(mu))
    inversions = sum(1 for u, v in attacks if filling[u] > filling[v])
    maj = 0
    arm_total = 0
    for u, v, legp1, arm in descents:
        if filling[u] > filling[v]:
            maj += legp1
            arm_total += arm
    return inversions - arm_total, maj


@lru_cache(maxsize=None)
def _htilde(mu: Partition) -> SymFunc:
    n = sum(mu)
    if n == 0:
        return SymFunc.one()
    _, descents, attacks = _filling_statistics(mu)
    coeffs = {}
    for la in partitions(n):
        letters = [i + 1 for i, k in enumerate(la) for _ in range(k)]
        terms: dict = {}
        for sigma in multiset_permutations(letters):
            inversions = 0
            for u, v in attacks:
                if sigma[u] > sigma[v]:
                    inversions += 1
            maj = 0
            for u, v, legp1, arm in descents:
                if sigma[u] > sigma[v]:
                    maj += legp1
                    inversions -= arm
            e = (inversions, 0, maj)
            terms[e] = terms.get(e, 0) + 1
        coeffs[la] = Poly(terms)
    return SymFunc(n, coeffs)


def htilde(mu: Sequence[int]) -> SymFunc:
    """Modified Macdonald polynomial ``H~_mu(x; q, t)`` in the m-basis."""
    return _htilde(tuple(mu))


# -- expansion in the H~ basis ----------------------------------------------


@dataclass
class MacExpansion:
    degree: int
    coords: dict[Partition, RatFunc] = field(default_factory=dict)

    def __post_init__(self):
        self.coords = {tuple(mu): RatFunc.coerce(c) for mu, c in self.coords.items()
                       if not RatFunc.coerce(c).is_zero()}

    def coefficient(self, mu: Partition) -> RatFunc:
        return self.coords.get(tuple(mu), RatFunc(ZERO))

    def sorted_items(self):
        order = {mu: i for i, mu in enumerate(partitions(self.degree))}
        return sorted(self.coords.items(), key=lambda kv: order[kv[0]])

    def assemble(self) -> SymFunc:
        return assemble(self)

    def __add__(self, other: "MacExpansion") -> "MacExpansion":
        keys = set(self.coords) | set(other.coords)
        return MacExpansion(self.degree, {
            mu: ratsum([self.coefficient(mu), other.coefficient(mu)]) for mu in keys})

    def __eq__(self, other):
        if not isinstance(other, MacExpansion):
            return NotImplemented
        keys = set(self.coords) | set(other.coords)
        return all(self.coefficient(mu) == other.coefficient(mu) for mu in keys)

    def __str__(self):
        return format_expansion(self.sorted_items(), "Ht")

    def to_json(self) -> dict:
        return expansion_to_json(self.degree, self.sorted_items(), "Htilde")


@lru_cache(maxsize=None)
def _htilde_system(n: int):
    """m-coefficient matrix of the H~ basis and its inverse as ``Y / det``."""
    parts = partitions(n)
    hs = [htilde(mu) for mu in parts]
    # row la, column mu; all entries are integer polynomials
    matrix = [[h.coefficient(la).num for h in hs] for la in parts]
    identity = [[Poly.const(int(i == j)) for j in range(len(parts))] for i in range(len(parts))]
    try:
        det, inv_num = bareiss_solve(matrix, identity)
    except SingularMatrixError:
        raise SingularMatrixError(f"H~ polynomials of degree {n} are not independent") from None
    return parts, matrix, det, inv_num


def mac_expand(f: SymFunc) -> MacExpansion:
    """Coordinates of ``f`` in the ``H~_mu`` basis."""
    parts, _, det, inv_num = _htilde_system(f.degree)
    coords = {}
    for i, mu in enumerate(parts):
        num = ratsum(f.coeffs[la] * inv_num[i][j] for j, la in enumerate(parts)
                     if la in f.coeffs and not inv_num[i][j].is_zero())
        coords[mu] = num / det if not num.is_zero() else num
    return MacExpansion(f.degree, coords)


def assemble(expansion: MacExpansion | Mapping[Partition, object], degree: int | None = None) -> SymFunc:
    if isinstance(expansion, MacExpansion):
        degree, coords = expansion.degree, expansion.coords
    else:
        coords = {tuple(mu): RatFunc.coerce(c) for mu, c in expansion.items()}
    parts, matrix, _, _ = _htilde_system(degree)
    out = {}
    for i, la in enumerate(parts):
        out[la] = ratsum(coords[mu] * matrix[i][j] for j, mu in enumerate(parts)
                         if mu in coords and not matrix[i][j].is_zero())
    return SymFunc(degree, out)


def _diagonal(f: SymFunc, eigen) -> SymFunc:
    exp = mac_expand(f)
    return assemble(MacExpansion(f.degree, {mu: c * eigen(mu) for mu, c in exp.coords.items()}))


def delta(f_op: SymFunc, g: SymFunc) -> SymFunc:
    """``Delta_{f_op} g``: scales the H~_mu coordinate of g by ``f_op[B_mu]``."""
    return _diagonal(g, lambda mu: pleth_eval(f_op, b_mu(mu)))


def nabla(g: SymFunc) -> SymFunc:
    return _diagonal(g, lambda mu: RatFunc(t_mu(mu)))


def nabla_inv(g: SymFunc) -> SymFunc:
    return _diagonal(g, lambda mu: RatFunc(ONE, t_mu(mu), reduce=False))


def covers(mu: Partition, nu: Partition) -> bool:
    """Whether ``mu`` is ``nu`` plus one cell."""
    if sum(mu) != sum(nu) + 1 or len(mu) < len(nu):
        return False
    padded = list(nu) + [0] * (len(mu) - len(nu))
    diffs = [a - b for a, b in zip(mu, padded)]
    return all(d >= 0 for d in diffs) and sum(diffs) == 1


def pieri_expansion(nu: Sequence[int]) -> MacExpansion:
    """``p_1 * H~_nu`` in the H~ basis."""
    return mac_expand(sf_multiply(basis_p((1,)), htilde(nu)))


def pieri_d(mu: Sequence[int], nu: Sequence[int]) -> RatFunc:
    mu, nu = tuple(mu), tuple(nu)
    if not covers(mu, nu):
        raise ValueError(f"{mu} does not cover {nu}")
    return pieri_expansion(nu).coefficient(mu)


def delta_e(k: int, g: SymFunc) -> SymFunc:
    return delta(basis_e((k,) if k else ()), g)
