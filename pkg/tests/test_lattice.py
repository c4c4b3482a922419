import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from zforms.lattice import (
    BothNonClassical,
    NotPositiveDefinite,
    ZForm,
    are_equivalent,
    check_min_one_bound,
    check_tensor_minima,
    minima,
    orthogonal_constituents,
    orthogonal_sum,
    parse_form,
    radical_quotient,
    short_vectors,
    split_factor,
    sum_of_squares_form,
    tensor,
)
from zforms.selftest import brute_minimum, random_pd_form


def test_doubled_representation():
    a2 = parse_form("a2")
    assert a2.doubled == ((2, 1), (1, 2))
    assert not a2.classical
    assert a2.value([1, -1]) == 1
    assert ZForm.from_coefficients(2, {(0, 0): 1, (0, 1): 1, (1, 1): 1}) == a2
    assert parse_form(a2.serialize()) == a2
    with pytest.raises(ValueError):
        ZForm([[1, 0], [0, 2]])


def test_sum_squares_and_orthogonal_sum():
    i3 = sum_of_squares_form(3)
    assert i3.classical and minima(i3).count == 6
    s = orthogonal_sum(parse_form("a2"), i3)
    assert s.rank == 5 and minima(s).count == 12


def test_deutsch_preset():
    q = parse_form("deutsch4")
    assert q.value([1, 1, 0, 0]) == 3
    assert q.value([0, 0, 0, 1]) == 1


@pytest.mark.parametrize("seed", range(4))
def test_minima_brute(seed):
    rng = random.Random(seed)
    for _ in range(15):
        q = random_pd_form(rng, rng.randint(1, 3), 10)
        m = minima(q)
        assert (m.min, m.count) == brute_minimum(q, 12)


def test_minima_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        minima(ZForm([[2, 3], [3, 2]]))


def test_short_vectors_brute():
    q = ZForm([[4, 1, 0], [1, 6, 2], [0, 2, 8]])
    got = {tuple(v) for v, _ in short_vectors(q, 9)}
    brute = set()
    for x in itertools.product(range(-4, 5), repeat=3):
        if any(x) and q.value(x) <= 9:
            first = next(c for c in x if c)
            if first > 0:
                brute.add(x)
    assert got == brute


def test_tensor_minimum_and_split():
    i2 = sum_of_squares_form(2)
    a2 = parse_form("a2")
    t = tensor(i2, a2)
    m = check_tensor_minima(i2, a2, t)
    assert m.min == 1
    for v in m.vectors:
        assert split_factor(v, 2, 2) is not None
    with pytest.raises(BothNonClassical):
        tensor(a2, a2)


def test_split_factor_rejects_rank_two():
    # [[1,0],[0,1]] as a 2x2 coefficient matrix has rank 2
    assert split_factor([1, 0, 0, 1], 2, 2) is None
    beta, w = split_factor([2, 4, 3, 6], 2, 2)
    assert [b * x for b in beta for x in w] == [2, 4, 3, 6]


def test_min_one_bound_sharp():
    # sum of squares attains 2r
    assert check_min_one_bound(sum_of_squares_form(4)).count == 8


@pytest.mark.parametrize("seed", range(3))
def test_radical_quotient_values(seed):
    rng = random.Random(100 + seed)
    for _ in range(8):
        k, n = rng.randint(1, 3), rng.randint(2, 4)
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        g = [[sum(r[i] * r[j] for r in rows) for j in range(n)] for i in range(n)]
        form, proj = radical_quotient(g)
        for x in itertools.product(range(-2, 3), repeat=n):
            val = sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))
            px = [sum(c * xi for c, xi in zip(row, x)) for row in proj]
            assert (form.value(px) if form.rank else 0) == val


def test_constituents():
    q = orthogonal_sum(sum_of_squares_form(2), parse_form("a2"))
    perm = [[0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1], [1, 1, 0, 0]]
    forms, _ = orthogonal_constituents(q.transform(perm))
    assert sorted(f.rank for f in forms) == [1, 1, 2]


def test_equivalence():
    a2 = parse_form("a2")
    assert are_equivalent(a2, a2.transform([[1, 1], [0, 1]]))
    assert not are_equivalent(a2, sum_of_squares_form(2))


def _rank_form(draw, rank):
    return draw(st.lists(st.integers(-3, 3), min_size=rank * rank, max_size=rank * rank))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.data())
def test_min_one_count_bounded(rank, data):
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=rank * rank, max_size=rank * rank))
    b = [coeffs[i * rank:(i + 1) * rank] for i in range(rank)]
    if all(v == 0 for v in coeffs):
        return
    g = [[2 * sum(b[k][i] * b[k][j] for k in range(rank)) for j in range(rank)] for i in range(rank)]
    q = ZForm(g)
    try:
        m = check_min_one_bound(q)
    except NotPositiveDefinite:
        return
    assert m.min > 1 or m.count <= 2 * q.rank


def test_min_one_bound_skips_nonclassical():
    # a2 has 6 > 2r minimal vectors, allowed because it is not classical
    assert check_min_one_bound(parse_form("a2")) is None
