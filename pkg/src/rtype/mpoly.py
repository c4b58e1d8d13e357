"""Sparse multivariate polynomials over Q, optionally truncated by total degree.

A polynomial is a plain ``dict`` mapping exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Optional, Sequence, Tuple

Exps = Tuple[int, ...]
Poly = Dict[Exps, Fraction]


def zero_exps(n: int) -> Exps:
    return (0,) * n


def const(c, n: int) -> Poly:
    c = Fraction(c)
    return {zero_exps(n): c} if c else {}


def var(i: int, n: int, coeff=1) -> Poly:
    e = [0] * n
    e[i] = 1
    return {tuple(e): Fraction(coeff)}


def degree(p: Poly) -> int:
    return max((sum(e) for e in p), default=0)


def truncate(p: Poly, trunc: Optional[int]) -> Poly:
    if trunc is None:
        return p
    return {e: c for e, c in p.items() if sum(e) <= trunc}


def add(a: Poly, b: Poly, scale=1) -> Poly:
    out = dict(a)
    scale = Fraction(scale)
    for e, c in b.items():
        s = out.get(e, 0) + c * scale
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def mul(a: Poly, b: Poly, trunc: Optional[int] = None) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if trunc is not None and da + sum(eb) > trunc:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def power(p: Poly, k: int, n: int, trunc: Optional[int] = None) -> Poly:
    if k < 0:
        raise ValueError("negative power")
    result = const(1, n)
    base = p
    while k:
        if k & 1:
            result = mul(result, base, trunc)
        k >>= 1
        if k:
            base = mul(base, base, trunc)
    return result


def evaluate(p: Poly, point: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for x, k in zip(point, e):
            if k:
                term *= x**k
        total += term
    return total


def diff(p: Poly, i: int) -> Poly:
    out: Poly = {}
    for e, c in p.items():
        k = e[i]
        if k:
            e2 = list(e)
            e2[i] = k - 1
            out[tuple(e2)] = c * k
    return out


def exp_series(p: Poly, n: int, trunc: int) -> Poly:
    """``exp(p)`` truncated at total degree ``trunc``; ``p`` must vanish at 0."""
    if p.get(zero_exps(n)):
        raise ValueError("exp_series needs a polynomial without constant term")
    result = const(1, n)
    term = const(1, n)
    for m in range(1, trunc + 1):
        term = scale(mul(term, p, trunc), Fraction(1, m))
        if not term:
            break
        result = add(result, term)
    return result


def compose(p: Poly, subs: Sequence[Poly], n_out: int, trunc: Optional[int] = None) -> Poly:
    """Substitute ``subs[i]`` for variable ``i`` of ``p``."""
    out: Poly = {}
    cache: Dict[Tuple[int, int], Poly] = {}
    for e, c in p.items():
        term = const(c, n_out)
        for i, k in enumerate(e):
            if not k:
                continue
            key = (i, k)
            if key not in cache:
                cache[key] = power(subs[i], k, n_out, trunc)
            term = mul(term, cache[key], trunc)
            if not term:
                break
        out = add(out, term)
    return out


def homogeneous_part(p: Poly, m: int) -> Poly:
    return {e: c for e, c in p.items() if sum(e) == m}


def multinomial(k: int, parts: Iterable[int]) -> int:
    r = factorial(k)
    for q in parts:
        r //= factorial(q)
    return r
