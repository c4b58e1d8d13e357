import pytest

from rtype.germ import parse_germ
from rtype.oracle import LATTICES, jet_oracle

MOD52 = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
LOG51 = "log|z1| + log|z2| + (log|z1| - log|z2|)^4"


def test_mod52_degree_one():
    r = jet_oracle(parse_germ(MOD52, 3), ("1", "0", "0"), 1, LATTICES["binary"])
    assert r.ratio == 6
    assert r.witness.coefficient_lists() == [["1"], ["0", "1"], ["0"]]
    assert not r.truncated


def test_sphere():
    for lattice in ("binary", "small"):
        r = jet_oracle(parse_germ("|z1|^2 + |z2|^2 - 1", 2), ("1", "0"), 2, LATTICES[lattice])
        assert r.ratio == 2


def test_log51_quadratic_discs():
    g = parse_germ(LOG51, 2, ("1", "1"))
    r = jet_oracle(g, ("1", "1"), 2, LATTICES["small"])
    assert r.ratio == 4
    assert r.witness.coefficient_lists() == [["1", "1", "1/2"], ["1", "-1", "1/2"]]
    assert r.value.lower == 4


def test_budget_marks_truncation():
    g = parse_germ(LOG51, 2, ("1", "1"))
    r = jet_oracle(g, ("1", "1"), 2, LATTICES["small"], budget=10)
    assert r.truncated and r.explored == 10
    assert "search truncated" in r.value.notes


def test_identically_zero_is_infinite():
    r = jet_oracle(parse_germ("|z1|^2 + |z2|^2 - 1", 3), ("1", "0", "0"), 1, LATTICES["binary"])
    assert r.value.kind == "infinite"


def test_bad_arguments():
    g = parse_germ("|z1|^2 - 1", 1)
    with pytest.raises(ValueError):
        jet_oracle(g, ("1",), 0)
    with pytest.raises(ValueError):
        jet_oracle(g, ("1",), 1, ())
