import pytest

import rtype.invariants as inv
from rtype.discs import INF
from rtype.germ import parse_germ
from rtype.invariants import GenericityError, OutOfScopeError, multitype, q_types

MOD52 = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
DECOUPLED = "|z1|^2 + |z2|^8 + |z3|^12 - 1"


def test_qtypes_mod52():
    assert q_types(parse_germ(MOD52, 3), ("1", "0", "0"), seed=11).as_list() == [1, 4, 6]


def test_qtypes_sphere():
    assert q_types(parse_germ("|z1|^2 + |z2|^2 - 1", 2), ("1", "0")).as_list() == [1, 2]


def test_qtypes_decoupled():
    assert q_types(parse_germ(DECOUPLED, 3), ("1", "0", "0")).as_list() == [1, 8, 12]


def test_qtypes_seed_independent():
    g = parse_germ(MOD52, 3)
    assert {tuple(q_types(g, ("1", "0", "0"), seed=s).as_list()) for s in range(4)} == {(1, 4, 6)}


def test_genericity_failure(monkeypatch):
    calls = iter(range(1000))

    def fake(ctx, tangent, rng):
        return next(calls), None

    monkeypatch.setattr(inv, "_draw_order", fake)
    with pytest.raises(GenericityError):
        q_types(parse_germ(MOD52, 3), ("1", "0", "0"))


def test_multitype_examples():
    assert tuple(multitype(parse_germ(MOD52, 3), ("1", "0", "0"))) == (1, 4, 4)
    assert tuple(multitype(parse_germ("|z1|^2 + |z2|^2 - 1", 2), ("1", "0"))) == (1, 2)
    assert tuple(multitype(parse_germ(DECOUPLED, 3), ("1", "0", "0"))) == (1, 8, 12)


def test_multitype_mixed_monomials():
    def mt(text):
        return tuple(multitype(parse_germ(text, 3), ("1", "0", "0")))

    assert mt("|z1|^2 + |z2|^4 - 1") == (1, 4, INF)
    assert mt("|z1|^2 + |z2|^2*|z3|^2 + |z2|^6 + |z3|^10 - 1") == (1, 4, 4)
    # equal weights 6 beat (4, inf) lexicographically
    assert mt("|z1|^2 + |z2|^4*|z3|^2 + |z2|^6 - 1") == (1, 6, 6)
    assert mt("|z1|^2 + |z2|^4*|z3|^2 + |z3|^4 + |z2|^10 - 1") == (1, 4, 8)


def test_multitype_out_of_scope():
    with pytest.raises(OutOfScopeError):
        multitype(parse_germ("|z1|^2 + |z2|^4 - |z2|^6 - 1", 2), ("1", "0"))
    with pytest.raises(OutOfScopeError):
        multitype(parse_germ("|z1|^2 + |z2|^2 + |z3|^2 - 2", 3), ("1", "1", "0"))
