"""Truncated series arithmetic and the composition residual."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freealg import series
from freealg.series import TruncatedSeries, compose, from_dims


def brute_compose(g, h, order):
    """Oracle: substitute h into g as plain coefficient lists."""
    # polynomial coefficients indexed from power 1
    out = [Fraction(0)] * order
    hp = [Fraction(0)] * order
    hp[0] = Fraction(0)
    power = list(h.coeffs[:order])
    for k in range(1, order + 1):
        c = g.coeffs[k - 1]
        for n in range(order):
            out[n] += c * power[n]
        nxt = [Fraction(0)] * order
        for i in range(order):
            if power[i] == 0:
                continue
            for j in range(order):
                if i + j + 2 > order:
                    break
                nxt[i + j + 1] += power[i] * h.coeffs[j]
        power = nxt
    return TruncatedSeries(order, tuple(out))


def test_from_dims_examples():
    g = from_dims([1, 2, 7, 29, 136])
    assert g.coeffs == (Fraction(-1), Fraction(1), Fraction(-7, 6),
                        Fraction(29, 24), Fraction(-17, 15))
    assert from_dims([1]).coeffs == (Fraction(-1),)
    gd = from_dims([1, 2, 5, 9, 9])
    assert gd.coeffs == (Fraction(-1), Fraction(1), Fraction(-5, 6),
                         Fraction(3, 8), Fraction(-3, 40))


def test_compose_identity_neutral():
    x = TruncatedSeries.identity(5)
    h = from_dims([1, 2, 5, 9, 9])
    assert compose(x, h) == h
    assert compose(h, x) == h
    minus = TruncatedSeries.from_coeffs([-1, 0, 0, 0, 0])
    assert compose(minus, minus) == TruncatedSeries.identity(5)


def test_composition_residual_is_the_obstruction():
    g = from_dims([1, 2, 7, 29, 136])
    h = from_dims([1, 2, 5, 9, 9])
    resid = compose(g, h, 5) - TruncatedSeries.identity(5)
    assert resid == TruncatedSeries.from_coeffs([0, 0, 0, 0, Fraction(3, 8)])
    # order 4: no obstruction yet
    resid4 = compose(g.truncate(4), h.truncate(4), 4) - TruncatedSeries.identity(4)
    assert resid4.is_zero()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_compose_matches_brute_oracle(seed):
    rng = random.Random(seed)
    def rnd_series(order=6):
        return TruncatedSeries.from_coeffs(
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order)])
    g, h = rnd_series(), rnd_series()
    assert compose(g, h, 6) == brute_compose(g, h, 6)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_compose_associative_to_truncation(seed):
    rng = random.Random(seed)
    def rnd_series(order=5):
        return TruncatedSeries.from_coeffs(
            [Fraction(rng.randint(-3, 3)) for _ in range(order)])
    f, g, h = rnd_series(), rnd_series(), rnd_series()
    assert compose(compose(f, g, 5), h, 5) == compose(f, compose(g, h, 5), 5)


def test_order_deficiency_rejected():
    g = from_dims([1, 2, 7])
    h = from_dims([1, 2])
    with pytest.raises(ValueError):
        compose(g, h, 5)


def test_printing():
    resid = TruncatedSeries.from_coeffs([0, 0, 0, 0, Fraction(3, 8)])
    assert str(resid) == "3/8 x^5 + O(x^6)"
    assert str(TruncatedSeries.from_coeffs([0, 0])) == "0 + O(x^3)"
