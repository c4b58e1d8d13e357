from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtype.germ import (
    GermError,
    LogAtom,
    MixedModelError,
    ModAtom,
    NonReinhardtError,
    OddModulusPowerError,
    ParseError,
    Pow,
    UnknownCoordinateError,
    eval_ast,
    germ_derivatives,
    parse_expr,
    parse_germ,
    to_germ,
)

MOD52 = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
LOG51 = "log|z1| + log|z2| + (log|z1| - log|z2|)^4"


def test_mod_ast_atoms():
    ast = parse_expr(MOD52, 3)
    mods = [a for a in ast.atoms() if isinstance(a, ModAtom)]
    assert len(mods) == 4
    g = to_germ(ast)
    assert g.support == {(1, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (0, 1, 1): 1}
    assert g.constant == -1
    assert g.model == "MOD"


def test_log_ast_and_expansion():
    ast = parse_expr(LOG51, 2)
    assert sum(isinstance(a, LogAtom) for a in ast.atoms()) >= 2

    def has_pow4(node):
        if isinstance(node, Pow) and node.exponent == 4:
            return True
        return any(has_pow4(getattr(node, f)) for f in ("left", "right", "operand", "base") if hasattr(node, f))

    assert has_pow4(ast.root)
    g = to_germ(ast)
    assert g.model == "LOG"
    quartic = {e: c for e, c in g.support.items() if sum(e) == 4}
    assert quartic == {(4, 0): 1, (3, 1): -4, (2, 2): 6, (1, 3): -4, (0, 4): 1}
    assert g.support[(1, 0)] == g.support[(0, 1)] == 1


def test_sphere_germ():
    g = parse_germ("|z1|^2 - 1", 3, ("1", "0", "0"))
    assert g.support == {(1, 0, 0): 1} and g.constant == -1
    assert g.value_at_base() == 0


def test_errors():
    with pytest.raises(NonReinhardtError):
        parse_expr("z1 + |z2|^2", 2)
    with pytest.raises(UnknownCoordinateError):
        parse_expr("|z4|^2", 3)
    with pytest.raises(MixedModelError):
        parse_germ("|z1|^2 + log|z2|", 2)
    with pytest.raises(OddModulusPowerError):
        parse_germ("|z1|^3 - 1", 1)
    with pytest.raises(GermError):
        parse_germ(LOG51, 2, ("2", "1"))


def test_syntax_error_position():
    with pytest.raises(ParseError) as exc:
        parse_expr("|z1|^2 +\n  * 3", 1)
    assert exc.value.line == 2


def test_derivatives():
    g = parse_germ("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2)
    assert germ_derivatives(g, (0, 0)) == [1, 1]
    assert germ_derivatives(g, (1, -1), "hessian") == [[48, -48], [-48, 48]]
    h = parse_germ("|z2|^6 + |z3|^6 + |z2*z3|^2", 3)
    assert germ_derivatives(h, (0, 0, 0))[1:] == [0, 0]
    with pytest.raises(GermError):
        germ_derivatives(g, (0, 0, 0))


# --- properties ---------------------------------------------------------------

coef = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)


@st.composite
def mod_text(draw, n=3):
    terms = []
    for _ in range(draw(st.integers(1, 4))):
        c = draw(coef)
        exps = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n).filter(any))
        body = "*".join(f"|z{i + 1}|^{2 * k}" for i, k in enumerate(exps) if k)
        terms.append(f"({c})*{body}")
    return " + ".join(terms)


@settings(max_examples=50, deadline=None)
@given(mod_text())
def test_round_trip(text):
    g = parse_germ(text, 3)
    assert parse_germ(g.to_text(), 3) == g


@settings(max_examples=50, deadline=None)
@given(mod_text(), mod_text())
def test_linear(a, b):
    ga, gb, gs = parse_germ(a, 3), parse_germ(b, 3), parse_germ(f"{a} + {b}", 3)
    merged = dict(ga.support)
    for e, c in gb.support.items():
        merged[e] = merged.get(e, 0) + c
    assert gs.support == {e: c for e, c in merged.items() if c}
    assert gs.constant == ga.constant + gb.constant


@settings(max_examples=30, deadline=None)
@given(mod_text(), st.lists(st.fractions(min_value=0, max_value=2, max_denominator=5), min_size=3, max_size=3))
def test_expansion_matches_ast(text, r):
    ast = parse_expr(text, 3)
    g = to_germ(ast)
    assert eval_ast(ast, r) == g.evaluate([x * x for x in r])


@settings(max_examples=30, deadline=None)
@given(mod_text(), st.lists(st.fractions(min_value=0, max_value=2, max_denominator=5), min_size=3, max_size=3))
def test_gradient_matches_finite_differences(text, pt):
    g = parse_germ(text, 3)
    grad = germ_derivatives(g, pt)
    h = 1e-4
    for i in range(3):
        up = list(map(float, pt))
        dn = list(up)
        up[i] += h
        dn[i] -= h
        fd = (float(g.evaluate([Fraction(x) for x in up])) - float(g.evaluate([Fraction(x) for x in dn]))) / (2 * h)
        assert abs(fd - float(grad[i])) < 1e-6 * max(1.0, abs(float(grad[i])))
