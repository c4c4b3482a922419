import pytest
from hypothesis import given, settings, strategies as st

from conftest import coordinate_window
from zforms.embeddings import totally_positive_window
from zforms.lattice import ZForm, parse_form, sum_of_squares_form
from zforms.squares import (
    NotClassical,
    NotTotallyNonnegative,
    RankTooLarge,
    gram_sos_decomposition,
    pythagoras_scan,
    sos_length,
    sos_representation,
    squares_in_window,
)


def _brute_lengths(K, T, window):
    sq = {}
    for x in coordinate_window(K, window):
        s = x * x
        if x and s.trace() <= T:
            sq[tuple(s.num)] = s.trace()
    length = {tuple([0] * K.degree): 0}
    frontier = dict(length)
    k = 0
    while frontier:
        k += 1
        nxt = {}
        for a in frontier:
            ta = sum(c * K.basis(i).trace() for i, c in enumerate(a))
            for s, ts in sq.items():
                b = tuple(p + q for p, q in zip(a, s))
                if ta + ts <= T and b not in length and b not in nxt:
                    nxt[b] = True
        for b in nxt:
            length[b] = k
        frontier = nxt
    return length


@pytest.mark.parametrize("name", ["q2", "q5"])
def test_sos_length_brute(field, name):
    K = field(name)
    brute = _brute_lengths(K, 14, 4)
    for alpha in totally_positive_window(K, 14):
        assert sos_length(alpha, 6) == brute.get(tuple(alpha.num))


def test_squares_window_brute(field):
    K = field("cubic49")
    got = set(squares_in_window(K, 20))
    brute = {tuple((x * x).num) for x in coordinate_window(K, 4) if x and (x * x).trace() <= 20}
    assert got == brute


def test_representation_sound(field):
    K = field("q5")
    for alpha in totally_positive_window(K, 16):
        rep = sos_representation(alpha, 5)
        if rep is not None:
            total = K.zero
            for x in rep:
                total = total + x * x
            assert total == alpha


def test_quartic_non_sos(field):
    K = field("quartic725")
    assert sos_representation(K.parse("2*omega+4"), 8) is None


def test_errors(field):
    K = field("q5")
    with pytest.raises(NotTotallyNonnegative):
        sos_length(K.omega, 3)
    assert sos_representation(K.zero, 3) == []


def test_pythagoras_small(field):
    rep = pythagoras_scan(field("q5"), 30)
    assert rep.observed_max == 3 and rep.upper_bound == 5
    assert sum(rep.histogram.values()) > 0


def test_gram_sos():
    m = ZForm.from_gram([[2, 1], [1, 2]])
    x = gram_sos_decomposition(m, 4)
    assert len(x) == 3
    assert [[sum(x[k][i] * x[k][j] for k in range(3)) for j in range(2)] for i in range(2)] == [[2, 1], [1, 2]]
    assert len(gram_sos_decomposition(sum_of_squares_form(3), 5)) == 3
    with pytest.raises(NotClassical):
        gram_sos_decomposition(parse_form("a2"), 3)
    with pytest.raises(RankTooLarge):
        gram_sos_decomposition(sum_of_squares_form(6), 6)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=4))
def test_gram_sos_recovers(rows):
    g = [[sum(r[i] * r[j] for r in rows) for j in range(3)] for i in range(3)]
    from zforms.intmat import det

    if det(g) == 0:
        return
    x = gram_sos_decomposition(ZForm.from_gram(g), len(rows))
    assert x is not None and len(x) <= len(rows)
    assert [[sum(r[i] * r[j] for r in x) for j in range(3)] for i in range(3)] == g
