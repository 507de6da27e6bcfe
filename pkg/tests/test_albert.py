"""Octonion arithmetic and the Hermitian 3x3 witness model."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freealg import albert27
from freealg.albert27 import (AlbertElement, Octonion, albert_star, associator,
                              evaluate, oct_mul, random_element, sample_report)

E = [Octonion.basis(i) for i in range(8)]


def doubling_mul(x, y, level=3):
    """Oracle: the doubling formula evaluated directly on coordinate halves."""
    if level == 0:
        return (x[0] * y[0],)
    h = 1 << (level - 1)
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    def conj(z, lv):
        return z if lv == 0 else (z[0],) + tuple(-q for q in z[1:])
    ac = doubling_mul(a, c, level - 1)
    db = doubling_mul(conj(d, level - 1), b, level - 1)
    da = doubling_mul(d, a, level - 1)
    bc = doubling_mul(b, conj(c, level - 1), level - 1)
    return tuple(p - q for p, q in zip(ac, db)) + tuple(p + q for p, q in zip(da, bc))


def rnd_oct(rng, bound=4):
    return Octonion(tuple(rng.randint(-bound, bound) for _ in range(8)))


def test_unit_and_squares():
    for x in E:
        assert oct_mul(E[0], x) == x
        assert oct_mul(x, E[0]) == x
    for i in range(1, 8):
        assert oct_mul(E[i], E[i]) == -E[0]


def test_full_table_matches_doubling_oracle():
    for i in range(8):
        for j in range(8):
            got = oct_mul(E[i], E[j]).co
            want = doubling_mul(E[i].co, E[j].co)
            assert tuple(got) == tuple(want)


def test_alternativity_and_nonassociativity():
    rng = random.Random(31)
    for _ in range(30):
        x, y = rnd_oct(rng), rnd_oct(rng)
        assert associator(x, x, y).is_zero()
        assert associator(y, x, x).is_zero()
    assert any(not associator(E[i], E[j], E[k]).is_zero()
               for i in range(1, 8) for j in range(1, 8) for k in range(1, 8))


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_norm_multiplicative_and_conjugation(seed):
    rng = random.Random(seed)
    x, y = rnd_oct(rng), rnd_oct(rng)
    assert (x * y).norm() == x.norm() * y.norm()
    two_re = x + x.conjugate()
    assert two_re == Octonion((2 * x.re(),) + (0,) * 7)


def test_albert_star_against_entrywise_oracle():
    rng = random.Random(7)
    a, b = random_element(rng), random_element(rng)
    ma, mb = a.matrix(), b.matrix()
    # independent full 3x3 multiply
    def mm(p, q):
        return tuple(tuple(sum((p[i][k] * q[k][j] for k in range(3)), Octonion.zero())
                           for j in range(3)) for i in range(3))
    s = mm(ma, mb)
    t = mm(mb, ma)
    want = tuple(tuple(s[i][j] + t[i][j] for j in range(3)) for i in range(3))
    got = albert_star(a, b).matrix()
    assert got == want


def test_identity_and_commutativity():
    rng = random.Random(11)
    a, b = random_element(rng), random_element(rng)
    eye = AlbertElement.identity()
    assert (albert_star(eye, a) - a.scale(2)).is_zero()
    assert (albert_star(a, b) - albert_star(b, a)).is_zero()


def test_jordan_and_lie_triple_evaluate_to_zero():
    rep = sample_report("jor(t1,t2)", seed=5, samples=25)
    assert rep["zero_count"] == 25 and rep["witness"] is None
    rep = sample_report("lietriple(t1,t2,t3)", seed=5, samples=25)
    assert rep["zero_count"] == 25


def test_glennie_has_a_witness():
    rep = sample_report("glen(t1,t2,t3)", seed=5, samples=5)
    assert rep["nonzero_count"] >= 1
    w = rep["witness"]
    assert w is not None and len(w["value"]) == 27
    # serialized report is valid JSON with full coordinates
    data = json.loads(albert27.witness_json(rep))
    assert data["witness"]["sample_index"] == w["sample_index"]


def test_reports_are_deterministic():
    a = sample_report("glen(t1,t2,t3)", seed=42, samples=4)
    b = sample_report("glen(t1,t2,t3)", seed=42, samples=4)
    assert a == b
    c = sample_report("glen(t1,t2,t3)", seed=43, samples=4)
    assert a != c


def test_evaluation_multilinear_in_each_slot():
    rng = random.Random(3)
    a, b, b2, c = (random_element(rng) for _ in range(4))
    lt = "lietriple(t1,t2,t3)"
    v1 = evaluate(lt, {1: a, 2: b, 3: c})
    # linear in the first slot
    a2 = random_element(rng)
    lhs = evaluate(lt, {1: a + a2, 2: b, 3: c})
    rhs = v1 + evaluate(lt, {1: a2, 2: b, 3: c})
    assert (lhs - rhs).is_zero()


def test_wjor_vanishes_on_the_jordan_model():
    # wjor is half the polarization of jor, hence an identity of every
    # characteristic-zero Jordan algebra, this one included
    rep = sample_report("wjor(t1,t2,t3,t4)", seed=9, samples=20)
    assert rep["zero_count"] == 20


def test_bracket_rejected():
    rng = random.Random(1)
    a, b = random_element(rng), random_element(rng)
    with pytest.warns(UserWarning):
        val = evaluate("[t1,t2]", {1: a, 2: b})
    assert val.is_zero()
