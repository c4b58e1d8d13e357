"""Cross-invariant properties over the bundled corpus."""

import cmath
import random
from fractions import Fraction
from pathlib import Path

import pytest

from rtype.discs import INF, Disc
from rtype.domainfile import read_domain
from rtype.engine import line_type, regular_type, variety_type
from rtype.geometry import boundary_point, local_germ_at
from rtype.invariants import multitype, q_types

CORPUS = Path(__file__).resolve().parents[1] / "src" / "rtype" / "corpus"
FILES = sorted(CORPUS.glob("*.dom"))


def ids(p):
    return p.stem


@pytest.fixture(scope="module", params=FILES, ids=ids)
def case(request):
    return read_domain(request.param)


def test_ordering_chain(case):
    lt = line_type(case.germ, case.point)
    reg = regular_type(case.germ, case.point)
    var = variety_type(case.germ, case.point)
    assert lt.lower <= reg.upper
    if reg.kind == "exact":
        assert var.value == reg.value
    if lt.kind == reg.kind == "exact":
        assert lt.value <= reg.value


def test_multitype_below_qtypes(case):
    if "qtypes" not in case.expect or "multitype" not in case.expect:
        pytest.skip("no q-type annotation")
    qt = q_types(case.germ, case.point, seed=case.seed).values
    mt = tuple(multitype(case.germ, case.point))
    n = case.n
    assert qt[0].value == 1
    for q in range(1, n + 1):
        # m_{n-q+1} <= Delta_q, with Delta_q stored at position n - q
        assert mt[n - q] <= qt[n - q].upper


def test_strict_somewhere_on_qtype_gap():
    df = read_domain(CORPUS / "qtype_gap3.dom")
    qt = [v.value for v in q_types(df.germ, df.point, seed=df.seed).values]
    mt = tuple(multitype(df.germ, df.point))
    assert any(m < q for m, q in zip(mt, qt))


def test_sub_mean_value(case):
    """Circle means of the local germ along random discs dominate the centre value."""
    d = case.domain()
    local = local_germ_at(d, boundary_point(d, case.point))
    rng = random.Random(case.name)
    base = local.base_point
    delta = 1 / 8
    for _ in range(10):
        # stay where the truncated local germ is accurate
        coeffs = [[Fraction(rng.randint(-4, 4), 4) for _ in range(3)] for _ in base]
        phi = Disc.from_polys(base, coeffs, 8)

        def value(z):
            w = [complex(c(z)) for c in phi.components]
            pt = []
            for kind, wi, p in zip(local.kinds, w, base):
                if kind == "t":
                    pt.append(Fraction(abs(wi) ** 2))
                else:
                    pt.append(Fraction(cmath.log(abs(wi) / abs(complex(p))).real))
            return float(local.evaluate(pt))

        mean = sum(value(cmath.rect(delta, 2 * cmath.pi * k / 128)) for k in range(128)) / 128
        assert mean >= value(0) - 1e-9


def test_normal_qtype_is_one(case):
    if "qtypes" not in case.expect:
        pytest.skip("no q-type annotation")
    assert q_types(case.germ, case.point, seed=case.seed).values[0].value == 1


def test_infinite_is_reported_not_looped():
    df = read_domain(CORPUS / "infinite3.dom")
    assert regular_type(df.germ, df.point).upper == INF
