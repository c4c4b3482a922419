import pytest

from conftest import coordinate_window
from zforms.embeddings import is_totally_positive, totally_positive_window
from zforms.indecomposables import (
    NotIntegral,
    NotTotallyPositive,
    indecomposable_classes,
    is_indecomposable,
    norm_superadditivity_check,
    orbit_representatives,
)


def _brute_decomposable(alpha, pool):
    emb = alpha.embed()
    for b, be in pool:
        if all(0 < x < y for x, y in zip(be, emb)):
            return True
    return False


def test_indecomposable_brute_cubic(field):
    K = field("cubic49")
    pool = [(b, b.embed()) for b in coordinate_window(K, 5) if b]
    for alpha in totally_positive_window(K, 9):
        ok, wit = is_indecomposable(alpha, fast_path=False)
        assert ok == (not _brute_decomposable(alpha, pool))
        if wit is not None:
            b, c = wit
            assert b + c == alpha and is_totally_positive(b) and is_totally_positive(c)


def test_fast_path_agrees(field):
    K = field("q5")
    for alpha in totally_positive_window(K, 12):
        assert is_indecomposable(alpha)[0] == is_indecomposable(alpha, fast_path=False)[0]


def test_classes(field):
    cubic = indecomposable_classes(field("cubic49"), 16, 30)
    assert [c.norm for c in cubic] == [1, 7]
    assert cubic[1].representative == field("cubic49").parse("omega^2-omega+1")
    assert [c.norm for c in indecomposable_classes(field("q5"), 16, 30)] == [1]
    assert [c.norm for c in indecomposable_classes(field("q2"), 16, 30)] == [1, 2]


def test_orbit_representatives_merge_unit_squares(field):
    K = field("q5")
    u = K.units[0]
    reps = orbit_representatives([K.one, u * u, u ** 4, K.from_int(2)])
    assert len(reps) == 2


def test_errors(field):
    K = field("q5")
    with pytest.raises(NotTotallyPositive):
        is_indecomposable(K.omega)
    with pytest.raises(NotIntegral):
        is_indecomposable(K.element([1, 0], 2))


def test_norm_superadditivity(field):
    K = field("cubic49")
    xs = totally_positive_window(K, 8)
    for a in xs[:6]:
        for b in xs[:6]:
            assert norm_superadditivity_check(a, b)
    assert norm_superadditivity_check(K.one, K.from_int(3))
