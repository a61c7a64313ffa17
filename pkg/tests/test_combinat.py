import itertools
import math

from hypothesis import given, strategies as st

from wreathblock._combinat import binom, compositions, multinomial


def test_binom_convention():
    assert binom(-1, 0) == 0
    assert binom(3, -1) == 0
    assert binom(2, 3) == 0
    assert binom(5, 2) == 10


def test_multinomial_zero_cases():
    assert multinomial(3, (1, 2)) == 3
    assert multinomial(3, (1, 1)) == 0
    assert multinomial(3, (4, -1)) == 0
    assert multinomial(0, ()) == 1


@given(st.integers(0, 7), st.integers(1, 4))
def test_compositions_match_brute_force(total, parts):
    brute = sorted(c for c in itertools.product(range(total + 1), repeat=parts) if sum(c) == total)
    got = compositions(total, parts)
    assert sorted(got) == brute
    assert len(got) == math.comb(total + parts - 1, parts - 1)
    # colexicographic order
    assert list(got) == sorted(got, key=lambda c: c[::-1])


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_multinomial_counts_words(parts):
    n = sum(parts)
    if n > 8:
        return
    letters = [i for i, p in enumerate(parts) for _ in range(p)]
    assert multinomial(n, parts) == len(set(itertools.permutations(letters)))
