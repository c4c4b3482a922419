import random

import pytest

from conftest import coordinate_window
from zforms.embeddings import is_totally_positive
from zforms.lattice import minima, tensor
from zforms.selftest import QUINTIC_GRAM, random_pd_form
from zforms.traceforms import (
    NoTotallyPositiveGenerator,
    NotInCodifferent,
    NotTotallyPositive,
    codifferent_generator,
    derivative_at_omega,
    tensor_from_vector,
    trace_form,
    trace_gram,
    trace_one_codifferent_elements,
    twisted_gram,
    twisted_tensor_min,
    vector_from_tensor,
)


def test_quintic_gram(field):
    K = field("quintic14641")
    beta = K.parse("omega+2")
    assert beta.norm() == 11
    tf = trace_form(K, beta.inverse())
    assert tf.gram == QUINTIC_GRAM
    assert minima(tf.form).min == 5


def test_codifferent_generators(field):
    K = field("q5")
    data = codifferent_generator(K)
    assert data.delta == K.element([2, 1], 5)
    assert data.different_norm == 5
    C = field("cubic49")
    assert codifferent_generator(C).delta == C.element([1, -1, 1], 7)
    for name in ("q5", "cubic49", "quartic725", "quintic14641", "q2"):
        F = field(name)
        g = codifferent_generator(F)
        assert is_totally_positive(g.delta)
        ratio = g.delta * derivative_at_omega(F)
        assert abs(ratio.norm()) == 1 and ratio.is_integral


@pytest.mark.parametrize("name", ["q3", "q6", "q7"])
def test_no_positive_generator(field, name):
    with pytest.raises(NoTotallyPositiveGenerator):
        codifferent_generator(field(name))


def test_trace_form_errors(field):
    K = field("q5")
    with pytest.raises(NotTotallyPositive):
        trace_form(K, K.omega)
    with pytest.raises(NotInCodifferent):
        trace_form(K, K.element([1, 0], 7))


def test_trace_one_brute(field):
    expected = {"q2": 3, "q5": 2, "cubic49": 3}
    for name, count in expected.items():
        K = field(name)
        d0 = derivative_at_omega(K).inverse()
        brute = set()
        for b in coordinate_window(K, 8):
            a = d0 * b
            if a.trace() == 1 and is_totally_positive(a):
                brute.add(tuple(a.num) + (a.den,))
        got = {tuple(a.num) + (a.den,) for a in trace_one_codifferent_elements(K)}
        assert got == brute and len(got) == count


def test_trace_one_any_generator(field):
    K = field("q5")
    a = trace_one_codifferent_elements(K)
    b = trace_one_codifferent_elements(K, derivative_at_omega(K).inverse())
    assert a == b


def test_tensor_vector_round_trip(field):
    K = field("cubic49")
    u = list(range(1, 7))
    v = vector_from_tensor(K, u, 2)
    assert tensor_from_vector(v, 2) == u


@pytest.mark.parametrize("name", ["q5", "cubic49", "quartic725"])
def test_twisted_gram_is_kronecker(field, name):
    K = field(name)
    rng = random.Random(hash(name) & 0xFFFF)
    delta = codifferent_generator(K).delta
    for _ in range(4):
        q = random_pd_form(rng, rng.randint(1, 3), 6)
        eps = K.units[rng.randrange(len(K.units))]
        dl = delta * eps * eps
        assert twisted_gram(K, dl, q) == [list(r) for r in tensor(trace_form(K, dl).form, q).doubled]


def test_twisted_tensor_min_splits(field):
    from zforms.lattice import parse_form

    K = field("cubic49")
    rep = twisted_tensor_min(K, codifferent_generator(K).delta, parse_form("a2"))
    assert rep.min == 1
    for u, beta, w in rep.split:
        assert len(w) == 2


def test_trace_gram_symmetric(field):
    K = field("quartic725")
    g = trace_gram(K, K.one)
    assert g[0][0] == 4
    assert all(g[i][j] == g[j][i] for i in range(4) for j in range(4))
