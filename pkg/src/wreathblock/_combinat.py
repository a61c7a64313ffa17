"""Exact integer combinatorics shared by the other modules.

Every binomial and multinomial here is a Python ``int``; out-of-range
arguments give 0 instead of raising.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterator, Sequence


def binom(n: int, k: int) -> int:
    """C(n, k), taken to be 0 when n < 0, k < 0 or k > n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / prod(parts!); 0 if any argument is negative or the parts do not sum to n."""
    if n < 0 or any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = 1
    left = n
    for p in parts:
        out *= math.comb(left, p)
        left -= p
    return out


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(total + parts - 1 - prev - 1)
        out.append(tuple(comp))
    # colexicographic: compare from the last part backwards
    out.sort(key=lambda c: c[::-1])
    return tuple(out)


def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All weak compositions of ``total`` into ``parts`` nonnegative parts, colex order."""
    if total < 0 or parts < 0:
        return ()
    return _compositions(total, parts)


def subsets_of_size(ground: Sequence[int], size: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations(ground, size)
