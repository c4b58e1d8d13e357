"""Exact maximisation of vanishing order over one-parameter disc families.

For a family ``s -> phi_s`` whose pulled-back coefficients ``c_{j,k}(s)`` are
polynomials in the real parameter ``s`` of degree at most ``j + k`` (lines and
exponential discs with directions affine in ``s`` qualify), the order at
``s`` is the first total degree with a coefficient not vanishing at ``s``.
The family maximum is therefore the first degree ``M`` at which the gcd of
all coefficient polynomials of degree ``<= M`` has no real root in the
parameter domain.  Coefficient polynomials are recovered by exact
interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

import sympy

from .discs import Disc, compose_order, compose_series
from .exact import ZeroUpTo
from .germ import Germ

_S = sympy.Symbol("s")


@dataclass(frozen=True)
class FamilyMax:
    kind: str  # exact | infinite | bounds
    value: Optional[int] = None
    lo: Optional[int] = None
    witness: Optional[Disc] = None
    parameter: Optional[Fraction] = None
    note: str = ""


def _interpolate(xs: List[Fraction], ys: List[Fraction]) -> sympy.Poly:
    # Newton divided differences, then expand
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (s - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for k in range(len(poly)):
            shifted[k] -= poly[k] * xs[i]
        shifted[0] += coef[i]
        poly = shifted
    terms = {(k,): sympy.Rational(c.numerator, c.denominator) for k, c in enumerate(poly) if c}
    return sympy.Poly.from_dict(terms or {(0,): 0}, _S, domain=sympy.QQ)


def _has_root(p: sympy.Poly, domain: str) -> bool:
    if p.is_zero:
        return True
    if p.degree() == 0:
        return False
    if domain == "nonneg":
        return p.count_roots(inf=0) > 0
    return p.count_roots() > 0


def _rational_roots(p: sympy.Poly, domain: str) -> List[Fraction]:
    roots = []
    for fac, _ in p.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -b / a
            roots.append(Fraction(int(sympy.numer(r)), int(sympy.denom(r))))
    roots = sorted(set(roots), key=lambda r: (abs(r), r))
    if domain == "nonneg":
        roots = [r for r in roots if r >= 0]
    return roots


def family_max_order(
    g: Germ,
    build: Callable[[Fraction, int], Disc],
    domain: str,
    max_order: int,
    infinite_trunc: Optional[int] = None,
) -> FamilyMax:
    """Exact maximum of ``v(g o build(s, trunc))`` over ``s`` in ``domain`` (``real`` or ``nonneg``)."""
    N = max_order
    xs = [Fraction(i) for i in range(N + 2)]
    series = [compose_series(g, build(x, N), N) for x in xs]
    reliable = min(s.trunc for s in series)
    N = min(N, reliable)

    common: Optional[sympy.Poly] = None  # None: gcd of nothing, i.e. the zero polynomial
    history: List[Optional[sympy.Poly]] = []
    for m in range(1, N + 1):
        for j in range(m // 2 + 1):
            vals_re = [Fraction(s[(j, m - j)].re) for s in series]
            vals_im = [Fraction(s[(j, m - j)].im) for s in series]
            for vals in (vals_re, vals_im):
                if not any(vals):
                    continue
                p = _interpolate(xs[:-1], vals[:-1])
                check = p.eval(sympy.Rational(xs[-1].numerator, xs[-1].denominator))
                if Fraction(int(sympy.numer(check)), int(sympy.denom(check))) != vals[-1]:
                    raise ArithmeticError("family coefficient exceeded its degree bound")
                common = p if common is None else sympy.gcd(common, p)
        history.append(common)
        if common is not None and not _has_root(common, domain):
            return _witness(g, build, domain, m, history[-2] if len(history) > 1 else None, max_order)
    # survived every level: look for an exact zero witness
    cands = _rational_roots(common, domain) if common is not None else [Fraction(0)]
    for r in cands:
        big = infinite_trunc or 2 * max_order + 2
        phi = build(r, big)
        order = compose_order(g, phi, big)
        if isinstance(order, ZeroUpTo):
            return FamilyMax("infinite", witness=phi, parameter=r)
        return FamilyMax("bounds", lo=order, witness=phi, parameter=r, note="order exceeds max_order")
    return FamilyMax("bounds", lo=N + 1, note="order exceeds max_order at an irrational parameter")


def _witness(g, build, domain, m, prev, max_order) -> FamilyMax:
    if prev is None:
        for i in range(64):
            r = Fraction(i)
            phi = build(r, max_order)
            if compose_order(g, phi, max_order) == m:
                return FamilyMax("exact", value=m, witness=phi, parameter=r)
        return FamilyMax("exact", value=m, note="witness not found among sample parameters")
    for r in _rational_roots(prev, domain):
        phi = build(r, max_order)
        if compose_order(g, phi, max_order) == m:
            return FamilyMax("exact", value=m, witness=phi, parameter=r)
    return FamilyMax("exact", value=m, note="maximum attained at an irrational parameter")
