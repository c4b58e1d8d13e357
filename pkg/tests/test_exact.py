import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtype.exact import (
    ExactComplex,
    HermSeries,
    KindMismatchError,
    SeriesDomainError,
    TruncSeries,
    UnsupportedExponentError,
    ZeroUpTo,
    analytic_apply,
    format_complex,
    modulus_power,
    parse_complex,
    series_arith,
    vanishing_order,
)

T = 10


def ts(*cs, trunc=T):
    return TruncSeries(cs, trunc)


def test_difference_of_squares():
    assert series_arith(ts(1, 1), ts(1, -1), "mul") == ts(1, 0, -1)


def test_herm_sub_keeps_symmetry():
    a = HermSeries({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}, T)
    b = HermSeries({(0, 0): 1}, T)
    d = series_arith(a, b, "sub")
    assert d.is_hermitian()
    assert d == HermSeries({(1, 0): 1, (0, 1): 1, (1, 1): 1}, T)


def test_power_past_truncation_is_zero():
    s = series_arith(ts(0, 1, trunc=3), 4, "int_pow")
    assert vanishing_order(s) == ZeroUpTo(3)


def test_kind_mismatch():
    with pytest.raises(KindMismatchError):
        series_arith(ts(1), HermSeries({(0, 0): 1}, T), "add")


def test_non_hermitian_rejected():
    with pytest.raises(ValueError):
        HermSeries({(1, 0): 1}, T)


def test_exp_series():
    a = Fraction(3, 2)
    e = analytic_apply("exp", ts(0, a))
    fact = 1
    for k in range(T + 1):
        assert e[k] == ExactComplex(a**k / fact)
        fact *= k + 1


def test_log1p_series():
    s = analytic_apply("log1p", ts(0, 1))
    assert [s[k] for k in range(1, 5)] == [ExactComplex(x) for x in (1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4))]


def test_log1p_inverts_exp():
    s = analytic_apply("log1p", analytic_apply("exp", ts(0, 2, trunc=6)) - ts(1, trunc=6))
    assert s == ts(0, 2, trunc=6)


def test_domain_errors():
    with pytest.raises(SeriesDomainError):
        analytic_apply("log1p", ts(1, 1))
    with pytest.raises(SeriesDomainError):
        analytic_apply("reciprocal", ts(0, 1))


def test_reciprocal():
    r = analytic_apply("reciprocal", ts(1, -1))
    assert all(r[k] == ExactComplex(1) for k in range(T + 1))


def test_modulus_power_examples():
    assert modulus_power(ts(0, 1), 1) == HermSeries({(1, 1): 1}, T)
    assert modulus_power(ts(1, 1), 1) == HermSeries({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}, T)
    assert vanishing_order(modulus_power(ts(0, 0, 1), 2)) == 8


def test_modulus_power_rejects_fractional():
    with pytest.raises(UnsupportedExponentError):
        modulus_power(ts(0, 1), Fraction(1, 2))


def test_vanishing_order_examples():
    assert vanishing_order(ts(0, 0, 0, 1, 0, 1)) == 3
    h = HermSeries({(1, 1): 1, (3, 0): 1, (0, 3): 1}, T)
    assert vanishing_order(h) == 2
    assert vanishing_order(TruncSeries([], 10)) == ZeroUpTo(10)


def test_parse_and_format_complex():
    for text in ("0", "3/4", "-1/2i", "1+2i", "i"):
        assert parse_complex(format_complex(parse_complex(text))) == parse_complex(text)
    assert parse_complex("1/2i") == ExactComplex(0, Fraction(1, 2))


def test_exact_complex_field_ops():
    a = ExactComplex(Fraction(1, 3), 2)
    b = ExactComplex(-1, Fraction(1, 5))
    assert (a * b) / b == a
    assert (a * a.conj()).is_real()
    assert a.abs2() == Fraction(1, 9) + 4


# --- properties ---------------------------------------------------------------

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=4)
gauss = st.builds(ExactComplex, small_q, small_q)


@st.composite
def series(draw, trunc=8, zero_const=False):
    cs = draw(st.lists(gauss, min_size=1, max_size=trunc + 1))
    if zero_const:
        cs[0] = ExactComplex(0)
    return TruncSeries(cs, trunc)


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_order_of_product_adds(f, g):
    vf, vg = vanishing_order(f), vanishing_order(g)
    if isinstance(vf, ZeroUpTo) or isinstance(vg, ZeroUpTo) or vf + vg > f.trunc:
        return
    assert vanishing_order(f * g) == vf + vg


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_order_of_sum(f, g):
    vf, vg = vanishing_order(f), vanishing_order(g)
    if isinstance(vf, ZeroUpTo) or isinstance(vg, ZeroUpTo):
        return
    vs = vanishing_order(f + g)
    assert isinstance(vs, ZeroUpTo) or vs >= min(vf, vg)
    if vf != vg:
        assert vs == min(vf, vg)


@settings(max_examples=40, deadline=None)
@given(series(), st.integers(1, 3))
def test_modulus_power_order(f, a):
    v = vanishing_order(f)
    h = modulus_power(f, a)
    if isinstance(v, ZeroUpTo) or 2 * a * v > h.trunc:
        return
    assert vanishing_order(h) == 2 * a * v


@settings(max_examples=30, deadline=None)
@given(series(trunc=6), series(trunc=6), st.integers(0, 2**32))
def test_hermitian_output_is_real(f, g, seed):
    h = modulus_power(f, 1) + modulus_power(g, 2) * modulus_power(f, 1)
    assert h.is_hermitian()
    rng = random.Random(seed)
    for _ in range(20):
        z = cmath.rect(rng.uniform(0, 0.5), rng.uniform(0, 2 * cmath.pi))
        assert abs(complex(h(z)).imag) < 1e-12


@settings(max_examples=40, deadline=None)
@given(series(trunc=6, zero_const=True))
def test_exp_log_round_trip(s):
    one = TruncSeries.constant(1, s.trunc)
    assert analytic_apply("log1p", analytic_apply("exp", s) - one) == s
    assert analytic_apply("exp", analytic_apply("log1p", s)) - one == s
