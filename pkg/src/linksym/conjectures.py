"""Exact checks of the Macdonald-operator conjectures for link symmetric functions.

Every check returns a :class:`ConjectureReport`.  A failed report is a
finding to adjudicate, not an exception: the witness pins down the first
coefficient where the two sides differ.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .macdonald import delta_e, htilde, nabla, nabla_inv
from .poincare import f_barred_fubini, f_recurrence, f_truncated_infinite, f_via_inner_product
from .qt_arith import ONE, ONE_MINUS_Q, Poly, RatFunc, RationalQAT, T, format_poly, q_series
from .symfunc import (
    SymFunc,
    basis_p,
    e_positivity_witness,
    link_sym,
    link_sym_normalized,
    partitions,
    sf_multiply,
)
from .words import all_binary_words, word_str


@dataclass
class ConjectureReport:
    id: str
    parameters: dict
    verdict: str
    witness: dict | None = None
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def summary(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"{self.id:<14} {params:<28} {self.verdict.upper()}"
        if self.witness:
            line += f"  witness: {self.witness}"
        if self.note:
            line += f"  [{self.note}]"
        return line


def _report(cid: str, params: dict, witness: dict | None, note: str | None = None) -> ConjectureReport:
    return ConjectureReport(cid, params, "pass" if witness is None else "fail", witness, note)


def _first_difference(expected: Poly, actual: Poly):
    diff = expected - actual
    if diff.is_zero():
        return None
    e, _ = diff.sorted_terms()[0]
    return e, expected.terms.get(e, 0), actual.terms.get(e, 0)


def _monomial(e) -> str:
    return format_poly(Poly.monomial(*e))


def ratfunc_witness(expected: RatFunc, actual: RatFunc) -> dict | None:
    """First monomial where the numerators differ over a common denominator."""
    if expected.den == actual.den:
        den = expected.den
        ne, na = expected.num, actual.num
    else:
        den = expected.den * actual.den
        ne, na = expected.num * actual.den, actual.num * expected.den
    hit = _first_difference(ne, na)
    if hit is None:
        return None
    e, ce, ca = hit
    return {
        "monomial": _monomial(e),
        "expected": str(ce),
        "actual": str(ca),
        "denominator": str(den),
        "expected_coefficient": str(expected),
        "actual_coefficient": str(actual),
    }


def compare_symfuncs(expected: SymFunc, actual: SymFunc) -> dict | None:
    """Witness for the first partition (in reverse-lex order) where they differ."""
    if expected.is_zero() and actual.is_zero():
        return None
    if expected.degree != actual.degree and not (expected.is_zero() or actual.is_zero()):
        return {"degree": [expected.degree, actual.degree]}
    degree = actual.degree if expected.is_zero() else expected.degree
    for la in partitions(degree):
        w = ratfunc_witness(expected.coefficient(la), actual.coefficient(la))
        if w is not None:
            return {"partition": list(la), **w}
    return None


def _rqat_witness(expected: RationalQAT, actual: RationalQAT) -> dict | None:
    return ratfunc_witness(expected.to_ratfunc(), actual.to_ratfunc())


# -- Conjecture on nabla p_{1^n} --------------------------------------------


def check_nabla_p1n(n: int, normalized: SymFunc | None = None) -> ConjectureReport:
    """``nabla p_{1^n}`` against the normalized ``L_{0^n}``.

    ``normalized`` overrides the right-hand side (used to test the harness).
    """
    rhs = link_sym_normalized((0,) * n) if normalized is None else normalized
    lhs = nabla(basis_p((1,) * n))
    return _report("nabla-p1n", {"n": n}, compare_symfuncs(lhs, rhs))


def check_delta_en1(n: int) -> ConjectureReport:
    lhs = delta_e(n - 1, basis_p((1,) * n))
    rhs = SymFunc.zero(n)
    for k in range(n):
        v = tuple(int(i == k) for i in range(n))
        rhs = rhs + link_sym_normalized(v)
    return _report("delta-en1", {"n": n}, compare_symfuncs(lhs, rhs))


def append_zero_operator(f: SymFunc) -> SymFunc:
    """``nabla p_1 nabla^{-1}`` applied to ``f``."""
    return nabla(sf_multiply(basis_p((1,)), nabla_inv(f)))


def check_append_zero(v: Sequence[int]) -> ConjectureReport:
    v = tuple(v)
    lhs = link_sym_normalized(v + (0,))
    rhs = append_zero_operator(link_sym_normalized(v))
    return _report("append-zero", {"v": word_str(v)}, compare_symfuncs(rhs, lhs))


# -- Bergeron's identities ---------------------------------------------------


def _q_pow(k: int) -> Poly:
    return Poly.monomial(k)


def _b1(v: Sequence[int]):
    v = tuple(v)
    lhs = link_sym(v + (0,))
    rhs = link_sym((1,) + v) + link_sym((0,) + v).scale(Poly.monomial(1))
    return {"v": word_str(v)}, compare_symfuncs(lhs, rhs), None


def _b2(n: int, k: int):
    if not 1 <= k <= n:
        raise ValueError("B2 needs 1 <= k <= n")
    lhs = link_sym((0,) * n)
    rhs = SymFunc.zero(n)
    for v in all_binary_words(k):
        # exponent = number of zeros of v, the iterate of B1
        rhs = rhs + link_sym(v + (0,) * (n - k)).scale(_q_pow(k - sum(v)))
    note = "k = n: the left-hand word also appears on the right" if k == n else None
    return {"n": n, "k": k}, compare_symfuncs(lhs, rhs), note


def _b3(u: Sequence[int], v: Sequence[int]):
    u, v = tuple(u), tuple(v)
    l011 = link_sym(u + (0, 1, 1) + v)
    l101 = link_sym(u + (1, 0, 1) + v)
    l110 = link_sym(u + (1, 1, 0) + v)
    lhs = (l011 - l101).scale(T)
    rhs = l101 - l110
    return {"u": word_str(u), "v": word_str(v)}, compare_symfuncs(lhs, rhs), None


def _b4(a: int, b: int, c: int):
    word = (0,) * a + (1,) * b + (0,) * c
    f = nabla(basis_p((1,) * a))
    f = sf_multiply(htilde((1,) * b), f)
    f = nabla(sf_multiply(basis_p((1,) * c), nabla_inv(f)))
    return {"a": a, "b": b, "c": c}, compare_symfuncs(f, link_sym_normalized(word)), None


def _b5_rhs(a: int, b: int) -> SymFunc:
    if a + b == 0:
        raise ValueError("B5 needs a + b >= 1")
    h = htilde((1,) * (a + b))
    p1 = basis_p((1,))
    # [X, mult by h] applied to 1, with X = nabla p_1 nabla^{-1} and X(1) = p_1
    bracket = append_zero_operator(h) - sf_multiply(h, append_zero_operator(SymFunc.one()))
    coeff = RatFunc(T ** a - ONE, T ** (a + b) - ONE)
    return bracket.scale(coeff) + sf_multiply(h, p1)


def _b5(a: int, b: int):
    word = (1,) * a + (0,) + (1,) * b
    return {"a": a, "b": b}, compare_symfuncs(_b5_rhs(a, b), link_sym(word)), None


def _b5_normalized(a: int, b: int):
    word = (1,) * a + (0,) + (1,) * b
    return ({"a": a, "b": b}, compare_symfuncs(_b5_rhs(a, b), link_sym_normalized(word)),
            "left side read as the normalized function (1 - q) L")


BERGERON = {
    "B1": _b1,
    "B2": _b2,
    "B3": _b3,
    "B4": _b4,
    "B5": _b5,
    "B5-normalized": _b5_normalized,
}


def check_bergeron(cid: str, *args, **kwargs) -> ConjectureReport:
    try:
        fn = BERGERON[cid]
    except KeyError:
        raise ValueError(f"unknown identity {cid!r}; choose from {sorted(BERGERON)}") from None
    params, witness, note = fn(*args, **kwargs)
    return _report(cid, params, witness, note)


def check_epositivity(v: Sequence[int], q_order: int) -> ConjectureReport:
    v = tuple(v)
    hit = e_positivity_witness(link_sym(v), q_order)
    witness = None
    if hit is not None:
        la, (i, j), c = hit
        witness = {"partition": list(la), "monomial": _monomial((i, 0, j)), "coefficient": str(c)}
    return _report("e-positivity", {"v": word_str(v), "order": q_order}, witness)


# -- cross-route and lemma checks -------------------------------------------


def check_routes(v: Sequence[int], order: int = 8, inner_max: int = 5,
                 truncated_max: int = 4) -> ConjectureReport:
    v = tuple(v)
    n = len(v)
    ref = f_barred_fubini(v)
    witness = _rqat_witness(ref, f_recurrence(v))
    used = ["recurrence"]
    if witness is None and n <= inner_max:
        used.append("inner_product")
        witness = _rqat_witness(ref, f_via_inner_product(v))
    if witness is None and n <= truncated_max:
        used.append("truncated_infinite")
        hit = _first_difference(q_series(ref, order), f_truncated_infinite(v, order))
        if hit is not None:
            e, ce, ca = hit
            witness = {"monomial": _monomial(e), "expected": str(ce), "actual": str(ca)}
    if witness is not None:
        witness = {"route": used[-1], **witness}
    return _report("routes", {"v": word_str(v)}, witness, "barred_fubini vs " + ", ".join(used))


def check_lemma23(n: int) -> ConjectureReport:
    lhs = link_sym((0,) * n).scale(ONE_MINUS_Q)
    rhs = link_sym((1,) + (0,) * (n - 1))
    return _report("lemma23", {"n": n}, compare_symfuncs(lhs, rhs))


# -- suites ------------------------------------------------------------------

Task = tuple[Callable[..., ConjectureReport], tuple]


def _words_upto(max_n: int, min_n: int = 1) -> Iterable[tuple[int, ...]]:
    for n in range(min_n, max_n + 1):
        yield from all_binary_words(n)


def suite_tasks(scope: str, max_n: int, order: int = 10) -> list[Task]:
    """The checks making up a named suite, as ``(function, args)`` pairs."""
    mac_max = min(max_n, 4)
    tasks: list[Task] = []
    if scope in ("routes", "all"):
        tasks += [(check_routes, (v, 8)) for v in _words_upto(max_n)]
    if scope in ("lemma23", "all"):
        tasks += [(check_lemma23, (n,)) for n in range(1, min(max_n, 5) + 1)]
    if scope in ("conj43", "all"):
        tasks += [(check_nabla_p1n, (n,)) for n in range(1, mac_max + 1)]
        tasks += [(check_delta_en1, (n,)) for n in range(1, mac_max + 1)]
        tasks += [(check_append_zero, (v,)) for v in _words_upto(mac_max - 1, 0)]
    if scope in ("bergeron", "all"):
        tasks += [(check_bergeron, ("B1", v)) for v in _words_upto(max_n - 1, 0)]
        tasks += [(check_bergeron, ("B2", n, k)) for n in range(1, max_n + 1) for k in range(1, n + 1)]
        for rest in range(0, max_n - 2):
            for i in range(rest + 1):
                for u in all_binary_words(i):
                    for v in all_binary_words(rest - i):
                        tasks.append((check_bergeron, ("B3", u, v)))
        tasks += [(check_bergeron, ("B4", a, b, c))
                  for total in range(1, mac_max + 1)
                  for a in range(total + 1) for b in range(total - a + 1)
                  for c in [total - a - b]]
        for cid in ("B5", "B5-normalized"):
            tasks += [(check_bergeron, (cid, a, s - a))
                      for s in range(1, mac_max) for a in range(s + 1)]
    if scope in ("epos", "all"):
        tasks += [(check_epositivity, (v, order)) for v in _words_upto(max_n)]
    if not tasks and scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    return tasks


SCOPES = ("routes", "lemma23", "conj43", "bergeron", "epos", "all")


def _run(task: Task) -> ConjectureReport:
    fn, args = task
    return fn(*args)


def run_suite(scope: str, max_n: int, order: int = 10, workers: int = 1) -> list[ConjectureReport]:
    """Run a suite; results come back in task order whatever ``workers`` is."""
    tasks = suite_tasks(scope, max_n, order)
    if workers <= 1:
        return [_run(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, tasks, chunksize=4))


__all__ = [
    "ConjectureReport",
    "check_nabla_p1n",
    "check_delta_en1",
    "check_append_zero",
    "check_bergeron",
    "check_epositivity",
    "check_routes",
    "check_lemma23",
    "compare_symfuncs",
    "run_suite",
    "suite_tasks",
    "SCOPES",
]
