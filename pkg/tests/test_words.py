import itertools

import pytest
from hypothesis import given, settings, strategies as st

from linksym.qt_arith import Poly, T
from linksym.words import (
    BarredWord,
    all_binary_words,
    area,
    bar_eligible,
    build_u_word,
    dinv,
    dinv_barred,
    dinv_i,
    dinv_pairs,
    enumerate_barred_fubini,
    gamma_to_uw,
    is_associated,
    is_fubini,
    parse_binary,
)

W = parse_binary


def levels(s):
    return tuple(int(c) for c in s)


# -- area and dinv -------------------------------------------------------------


def test_area_examples():
    assert area(levels("20141022")) == 6
    assert area((0,) * 5) == 0
    assert area(levels("013021")) == 3


def test_dinv_eight_letter_example():
    g, p = levels("20141022"), levels("41322231")
    assert dinv(g, p) == 7
    assert dinv_pairs(g, p) == [(1, 7), (1, 8), (2, 3), (2, 5), (3, 5), (5, 7), (7, 8)]


def test_dinv_flat_increasing_labels():
    assert dinv((0,) * 4, (1, 2, 3, 4)) == 0


def test_dinv_super_alphabet():
    # 0 encodes the underlined zero, which counts as smaller than itself
    assert dinv((1, 1, 1, 1), (0, 1, 0, 1)) == 2
    assert dinv_pairs((1, 1, 1, 1), (0, 1, 0, 1)) == [(1, 3), (2, 3)]


def test_dinv_length_mismatch():
    with pytest.raises(ValueError):
        dinv((0, 1), (1,))


def test_dinv_barred_examples():
    assert dinv_barred(BarredWord.plain((0, 1)), (1, 2)) == 1
    assert dinv_barred(BarredWord.parse("01'"), (1, 2)) == 0
    assert dinv_barred(BarredWord.parse("01'"), (2, 1)) == 0


def test_dinv_i_examples():
    assert [dinv_i((1, 1, 1, 1), i) for i in range(1, 5)] == [0, 1, 2, 3]
    assert dinv_i((0, 1, 1), 1) == 2
    bw = BarredWord.parse("01'2")
    assert bw.dinv_i(1) == 0
    with pytest.raises(IndexError):
        dinv_i((0, 1), 3)


@settings(max_examples=80)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=6).flatmap(
    lambda g: st.tuples(st.just(tuple(g)), st.permutations(range(1, len(g) + 1)))))
def test_dinv_invariant_under_order_preserving_relabel(data):
    g, perm = data
    labels = tuple(perm)
    relabelled = tuple(3 * x + 7 for x in labels)
    assert dinv(g, labels) == dinv(g, relabelled)


def test_super_alphabet_gives_elementary_symmetric_value():
    # sum over placements of two underlined zeros in a flat word of length 4
    total = Poly()
    for pos in itertools.combinations(range(4), 2):
        labels = tuple(0 if i in pos else 1 for i in range(4))
        total = total + T ** dinv((1, 1, 1, 1), labels)
    # e_2(1, t, t^2, t^3), expanded by brute force over pairs of exponents
    e2 = Poly()
    for i, j in itertools.combinations(range(4), 2):
        e2 = e2 + T ** (i + j)
    assert total == e2 == T + T ** 2 + 2 * T ** 3 + T ** 4 + T ** 5


# -- Fubini words ------------------------------------------------------------------

SIZE_THREE = {
    "111": ["000"],
    "011": ["100", "1'00"],
    "101": ["010", "01'0"],
    "110": ["001", "001'"],
    "001": ["110", "120", "12'0", "1'20", "1'2'0", "210", "2'10"],
    "010": ["101", "102", "102'", "1'02", "1'02'", "201", "2'01"],
    "100": ["011", "012", "01'2", "012'", "01'2'", "021", "02'1"],
    "000": ["011", "012", "01'2", "012'", "01'2'", "021", "02'1"],
}


@pytest.mark.parametrize("v", sorted(SIZE_THREE))
def test_enumeration_matches_table(v):
    got = {str(bw) for bw in enumerate_barred_fubini(W(v))}
    assert got == set(SIZE_THREE[v])


def test_enumeration_small_cases():
    assert [str(b) for b in enumerate_barred_fubini(W("0"))] == ["0"]
    assert {str(b) for b in enumerate_barred_fubini(W("00"))} == {"01", "01'"}


def test_count_sequence():
    assert [len(enumerate_barred_fubini((0,) * n)) for n in range(1, 6)] == [1, 2, 7, 35, 226]


def _brute_barred_fubini(v):
    """Independent oracle: filter all words with entries <= n, then all bar sets."""
    n = len(v)
    out = set()
    for g in itertools.product(range(n + 1), repeat=n):
        if not is_associated(g, v):
            continue
        for bars in itertools.product((False, True), repeat=n):
            if all(not b or bar_eligible(g, j + 1) for j, b in enumerate(bars)):
                out.add(BarredWord(g, bars))
    return out


@pytest.mark.parametrize("v", [w for n in range(1, 5) for w in all_binary_words(n)])
def test_enumeration_against_brute_force(v):
    got = enumerate_barred_fubini(v)
    assert got == sorted(got)
    assert set(got) == _brute_barred_fubini(v)
    for bw in got:
        assert is_fubini(bw.levels) and bw.is_valid()


def test_barred_word_parse_and_render():
    bw = BarredWord.parse("01'2")
    assert bw.levels == (0, 1, 2) and bw.bars == (False, True, False)
    assert str(bw) == "01'2"
    assert BarredWord.from_json(bw.to_json()) == bw


# -- auxiliary words ---------------------------------------------------------------


def test_build_u_word():
    assert build_u_word(W("10110100"), W("0110")) == levels("10112120")
    assert build_u_word(W("11"), ()) == (1, 1)
    assert build_u_word(W("00"), W("10")) == (2, 0)
    with pytest.raises(ValueError):
        build_u_word(W("00"), W("1"))


def test_gamma_to_uw():
    assert gamma_to_uw(levels("013021")) == (levels("120102"), levels("1001"))
    assert gamma_to_uw((0, 0, 0)) == ((1, 1, 1), ())
    assert gamma_to_uw((2, 2)) == ((0, 0), (0, 0))


def test_parse_binary():
    assert parse_binary("") == ()
    assert parse_binary("0110") == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        parse_binary("012")
