import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtype.discs import INF, ChartError, Disc, compose_order
from rtype.engine import (
    InconsistencyError,
    NotApplicableError,
    OracleConfig,
    ReductionError,
    TypeValue,
    line_type,
    newton_order,
    reduce_disc,
    regular_type,
    variety_type,
)
from rtype.exact import ExactComplex
from rtype.geometry import DomainSpec, boundary_point, local_germ_at
from rtype.germ import Germ, parse_germ

LOG51 = "log|z1| + log|z2| + (log|z1| - log|z2|)^4"
MOD52 = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
SPHERE = "|z1|^2 + |z2|^2 - 1"


@pytest.fixture(scope="module")
def log51():
    return parse_germ(LOG51, 2, ("1", "1"))


@pytest.fixture(scope="module")
def mod52():
    return parse_germ(MOD52, 3, ("1", "0", "0"))


def local(text, n, p):
    d = DomainSpec(n, parse_germ(text, n))
    return local_germ_at(d, boundary_point(d, p))


def test_compose_order_examples(log51):
    phi = Disc.exponential(("1", "1"), (1, -1), 12)
    assert compose_order(log51, phi) == 4
    h = local(SPHERE, 2, ("1", "0"))
    assert compose_order(h, Disc.from_polys(h.base_point, [[], [1]], 12)) == 2
    tang = parse_germ("|z2|^6 + |z3|^6 + |z2*z3|^2", 3)
    assert compose_order(tang, Disc.from_polys((0, 0, 0), [[], [1], [1]], 12)) == 4


def test_chart_error(log51):
    phi = Disc.from_polys(("1", "0"), [[], [1]], 8)
    with pytest.raises(ChartError):
        compose_order(log51, phi)


def test_newton_order_examples():
    sup = {(3, 0): 1, (0, 3): 1, (1, 1): 1}
    assert newton_order(sup, (1, INF)) == 6
    assert newton_order(sup, (1, 1)) == 4
    assert newton_order({(0, 2): 1}, (1, INF)) == INF
    with pytest.raises(NotApplicableError):
        newton_order({(1, 0): 1, (0, 1): -1}, (1, 1))


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(lambda e: 0 < sum(e) <= 6),
        st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4),
        min_size=1,
        max_size=4,
    ),
    st.lists(st.one_of(st.integers(1, 5), st.just(INF)), min_size=3, max_size=3),
)
def test_newton_matches_composition(support, beta):
    if all(b == INF for b in beta):
        beta[0] = 1
    g = Germ(("t",) * 3, support)
    coeffs = [[] if b == INF else [0] * (b - 1) + [1] for b in beta]
    expected = newton_order(support, beta)
    top = 2 * 6 * 5 + 2
    v = compose_order(g, Disc.from_polys((0, 0, 0), coeffs, top), top)
    assert v == expected or (expected == INF and not isinstance(v, int))


def test_regular_type_log51(log51):
    r = regular_type(log51, ("1", "1"))
    assert r.kind == "exact" and r.value == 4
    assert r.witness.coefficient_lists()[1][:3] == ["1", "-1", "1/2"]


def test_regular_type_mod52(mod52):
    r = regular_type(mod52, ("1", "0", "0"))
    assert r.value == 6
    assert r.witness.coefficient_lists() == [["1"], ["0", "1"], ["0"]]


def test_regular_type_infinite():
    g = parse_germ("|z1|^2 + |z2|^2 - 1", 3)
    r = regular_type(g, ("1", "0", "0"))
    assert r.kind == "infinite"
    assert r.witness.coefficient_lists() == [["1"], ["0"], ["0", "1"]]


def test_line_types(log51, mod52):
    lt = line_type(log51, ("1", "1"))
    assert lt.kind == "exact" and lt.value == 2
    assert line_type(mod52, ("1", "0", "0")).value == 6
    assert line_type(parse_germ(SPHERE, 2), ("1", "0")).value == 2


def test_variety_types(log51, mod52):
    assert variety_type(log51, ("1", "1")).value == 4
    assert variety_type(mod52, ("1", "0", "0")).value == 6
    assert variety_type(parse_germ(SPHERE, 2), ("1", "0")).value == 2


def test_inconsistency_is_reported(monkeypatch, mod52):
    import rtype.engine as engine

    monkeypatch.setattr(engine, "regular_type", lambda *a, **k: TypeValue.exact(2))
    with pytest.raises(InconsistencyError) as exc:
        variety_type(mod52, ("1", "0", "0"), oracle_cfg=OracleConfig(max_deg=1, lattice="binary"))
    assert exc.value.computed.value == 2
    assert exc.value.oracle.value.lower == 6


def test_type_value_str():
    assert str(TypeValue.exact(4)) == "4"
    assert TypeValue.bounds(3, 3).kind == "exact"
    b = TypeValue.bounds(3, None)
    assert b.lower == 3 and b.upper == INF


def test_reduce_sphere():
    h = local(SPHERE, 2, ("1", "0"))
    phi = Disc.from_polys(h.base_point, [[0, 1], [1]], 20)
    psi = reduce_disc(h, phi)
    assert psi.coefficient_lists() == [["1"], ["0", "1"]]
    assert phi.order() == psi.order() == 1
    assert compose_order(h, phi) == compose_order(h, psi) == 2
    assert reduce_disc(h, psi) == psi


def test_reduce_mod52():
    h = local(MOD52, 3, ("1", "0", "0"))
    phi = Disc.from_polys(h.base_point, [[0, 0, 1], [1], []], 20)
    psi = reduce_disc(h, phi)
    assert psi.coefficient_lists() == [["1"], ["0", "1"], ["0"]]
    assert compose_order(h, phi) == 3
    assert compose_order(h, psi) == 6


def test_reduce_precondition():
    h = local(SPHERE, 2, ("1", "0"))
    with pytest.raises(ReductionError):
        reduce_disc(h, Disc.from_polys(h.base_point, [[1], []], 20))


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 4), st.fractions(min_value=-2, max_value=2, max_denominator=3))
def test_reduced_disc_sub_mean_value(k, c):
    h = local(SPHERE, 2, ("1", "0"))
    phi = Disc.from_polys(h.base_point, [[0] * (k - 1) + [c], [1]], 20)
    psi = reduce_disc(h, phi)
    assert psi.coefficient_lists()[0] == ["1"]

    def r_psi(z):
        w = complex(psi.components[1](z))
        return float(h.evaluate([0, Fraction(abs(w) ** 2)]))

    for radius in (0.1, 0.3):
        mean = sum(r_psi(cmath.rect(radius, 2 * cmath.pi * m / 64)) for m in range(64)) / 64
        assert mean >= r_psi(0) - 1e-12


def test_disc_dimension_mismatch():
    with pytest.raises(ValueError):
        Disc.from_polys((ExactComplex(1),), [[1], [1]], 4)
