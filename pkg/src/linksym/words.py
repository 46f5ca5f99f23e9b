"""Binary words, level words and their area/dinv statistics; barred Fubini words.

Conventions
-----------
* Positions are 1-based wherever an API takes a position.
* Label words are tuples of ints.  Ordinary labels are positive; the label
  ``0`` stands for the super-letter 0-underline, which is smaller than ``1``
  and is treated as smaller than itself (two such labels at a qualifying
  pair count in both dinv clauses).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

SUPER_ZERO = 0

Word = tuple[int, ...]


def parse_binary(s: str) -> Word:
    s = s.strip()
    if s in ("", "-", "e", "empty", "∅"):
        return ()
    if set(s) - {"0", "1"}:
        raise ValueError(f"not a binary word: {s!r}")
    return tuple(int(c) for c in s)


def word_str(w: Sequence[int]) -> str:
    return "".join(map(str, w)) if len(w) else "∅"


def weight(v: Sequence[int]) -> int:
    return sum(v)


def area(levels: Sequence[int]) -> int:
    return sum(levels) - sum(1 for g in levels if g > 0)


def _check_lengths(levels, labels):
    if len(levels) != len(labels):
        raise ValueError(f"length mismatch: {len(levels)} levels vs {len(labels)} labels")


def _gt(x: int, y: int) -> bool:
    return x > y or (x == y == SUPER_ZERO)


def _lt(x: int, y: int) -> bool:
    return x < y or (x == y == SUPER_ZERO)


def dinv(levels: Sequence[int], labels: Sequence[int], bars: Sequence[bool] | None = None) -> int:
    """Diagonal inversions of a labelled level word.

    With ``bars`` given, the level-plus-one clause skips pairs whose right
    entry is barred.
    """
    _check_lengths(levels, labels)
    n = len(levels)
    count = 0
    for i in range(n):
        gi, pi = levels[i], labels[i]
        for j in range(i + 1, n):
            gj = levels[j]
            if gi == gj:
                if _gt(pi, labels[j]):
                    count += 1
            elif gi + 1 == gj and _lt(pi, labels[j]) and not (bars and bars[j]):
                count += 1
    return count


def dinv_pairs(levels: Sequence[int], labels: Sequence[int], bars=None) -> list[tuple[int, int]]:
    """The 1-based pairs counted by :func:`dinv`, in lexicographic order."""
    _check_lengths(levels, labels)
    n = len(levels)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if levels[i] == levels[j] and _gt(labels[i], labels[j]):
                out.append((i + 1, j + 1))
            elif (levels[i] + 1 == levels[j] and _lt(labels[i], labels[j])
                  and not (bars and bars[j])):
                out.append((i + 1, j + 1))
    return out


def dinv_i(levels: Sequence[int], i: int, bars: Sequence[bool] | None = None) -> int:
    """Equal entries to the left of position ``i`` plus unbarred entries to
    its right that sit exactly one level higher."""
    n = len(levels)
    if not 1 <= i <= n:
        raise IndexError(f"position {i} out of range 1..{n}")
    g = levels[i - 1]
    left = sum(1 for j in range(i - 1) if levels[j] == g)
    right = sum(1 for j in range(i, n) if levels[j] == g + 1 and not (bars and bars[j]))
    return left + right


@dataclass(frozen=True, order=True)
class BarredWord:
    levels: Word
    bars: tuple[bool, ...]

    def __post_init__(self):
        if len(self.levels) != len(self.bars):
            raise ValueError("levels and bars differ in length")

    @classmethod
    def plain(cls, levels: Sequence[int]) -> "BarredWord":
        return cls(tuple(levels), (False,) * len(levels))

    @classmethod
    def parse(cls, s: str) -> "BarredWord":
        """Parse ``"01'2"``-style strings (apostrophe marks a bar)."""
        levels, bars = [], []
        for ch in s.strip():
            if ch == "'":
                if not bars:
                    raise ValueError(f"bar with nothing to attach to in {s!r}")
                bars[-1] = True
            elif ch.isdigit():
                levels.append(int(ch))
                bars.append(False)
            else:
                raise ValueError(f"unexpected character {ch!r} in {s!r}")
        return cls(tuple(levels), tuple(bars))

    def __len__(self):
        return len(self.levels)

    def __str__(self):
        return "".join(f"{g}'" if b else str(g) for g, b in zip(self.levels, self.bars))

    @property
    def bar_count(self) -> int:
        return sum(self.bars)

    @property
    def area(self) -> int:
        return area(self.levels)

    def dinv(self, labels: Sequence[int]) -> int:
        return dinv(self.levels, labels, self.bars)

    def dinv_i(self, i: int) -> int:
        return dinv_i(self.levels, i, self.bars)

    def dinv_vector(self) -> tuple[int, ...]:
        return tuple(self.dinv_i(i) for i in range(1, len(self) + 1))

    def is_valid(self) -> bool:
        return all(not b or bar_eligible(self.levels, j + 1) for j, b in enumerate(self.bars))

    def to_json(self) -> dict:
        return {"levels": list(self.levels), "bars": list(self.bars)}

    @classmethod
    def from_json(cls, obj) -> "BarredWord":
        return cls(tuple(obj["levels"]), tuple(bool(b) for b in obj["bars"]))


def dinv_barred(word: BarredWord, labels: Sequence[int]) -> int:
    return dinv(word.levels, labels, word.bars)


def bar_eligible(levels: Sequence[int], j: int) -> bool:
    """Whether the entry at 1-based position ``j`` may carry a bar."""
    g = levels[j - 1]
    return (g > 0
            and levels.count(g) == 1
            and all(levels[i] < g for i in range(j - 1)))


def is_fubini(levels: Sequence[int]) -> bool:
    if not levels:
        return True
    return set(levels) == set(range(max(levels) + 1))


def is_associated(levels: Sequence[int], v: Sequence[int]) -> bool:
    if len(levels) != len(v):
        return False
    if not is_fubini(levels):
        return False
    if v and not any(v):
        return levels[0] == 0 and all(g > 0 for g in levels[1:])
    return all((g == 0) == (b == 1) for g, b in zip(levels, v))


def _fubini_for_zero_set(zero_at: Sequence[bool]) -> Iterator[Word]:
    """Fubini words with zeros exactly at the flagged positions."""
    n = len(zero_at)
    free = [i for i in range(n) if not zero_at[i]]
    m = len(free)
    if m == 0:
        yield (0,) * n
        return
    if m == n:
        # at least one zero is needed for a Fubini word
        return
    word = [0] * n

    def fill(idx: int, used: list[int], top: int) -> Iterator[Word]:
        # used[k] = multiplicity of value k among the filled free positions
        if idx == m:
            if all(used[k] for k in range(1, top + 1)):
                yield tuple(word)
            return
        remaining = m - idx
        missing = sum(1 for k in range(1, top + 1) if not used[k])
        for val in range(1, m + 1):
            new_top = max(top, val)
            new_missing = missing - (1 if val <= top and not used[val] else 0)
            if val > top:
                new_missing += val - top - 1
            if new_missing > remaining - 1:
                continue
            word[free[idx]] = val
            used[val] += 1
            yield from fill(idx + 1, used, new_top)
            used[val] -= 1
        word[free[idx]] = 0

    yield from fill(0, [0] * (m + 2), 0)


def enumerate_fubini(v: Sequence[int]) -> list[Word]:
    """Unbarred Fubini words associated with ``v``, sorted."""
    v = tuple(v)
    n = len(v)
    if n == 0:
        return [()]
    if not any(v):
        v = (1,) + (0,) * (n - 1)
    return sorted(_fubini_for_zero_set([b == 1 for b in v]))


def bar_variants(levels: Word) -> Iterator[BarredWord]:
    eligible = [j for j in range(len(levels)) if bar_eligible(levels, j + 1)]
    for mask in range(1 << len(eligible)):
        bars = [False] * len(levels)
        for k, j in enumerate(eligible):
            if mask >> k & 1:
                bars[j] = True
        yield BarredWord(levels, tuple(bars))


@lru_cache(maxsize=None)
def _barred_fubini(v: Word) -> tuple[BarredWord, ...]:
    return tuple(sorted(bw for g in enumerate_fubini(v) for bw in bar_variants(g)))


def enumerate_barred_fubini(v: Sequence[int]) -> list[BarredWord]:
    """All barred Fubini words associated with ``v``, lexicographically sorted."""
    return list(_barred_fubini(tuple(v)))


def build_u_word(v: Sequence[int], w: Sequence[int]) -> Word:
    zeros = len(v) - weight(v)
    if len(w) != zeros:
        raise ValueError(f"w has length {len(w)}, expected {zeros}")
    it = iter(w)
    return tuple(1 if b == 1 else 2 * next(it) for b in v)


def gamma_to_uw(levels: Sequence[int]) -> tuple[Word, Word]:
    u = tuple(1 if g == 0 else 2 if g == 1 else 0 for g in levels)
    w = tuple(1 if x == 2 else 0 for x in u if x != 1)
    return u, w


def all_binary_words(n: int) -> Iterator[Word]:
    for k in range(1 << n):
        yield tuple((k >> (n - 1 - i)) & 1 for i in range(n))
