"""Analytic discs and exact composition of germs with discs.

Composition uses the fact that every monomial of a germ, pulled back along a
disc, is a finite sum of terms ``X(zeta) * conj(Y(zeta))`` with holomorphic
``X`` and ``Y``:

* ``t_i^a`` becomes ``phi_i^a * conj(phi_i^a)``;
* ``u_i = Re L_i`` with ``L_i = log(phi_i / p_i)`` gives
  ``u_i^a = 2^-a sum_r C(a, r) L_i^r conj(L_i^(a - r))``.

Coefficients of ``rho o phi`` can then be produced one total degree at a time,
which makes orders of vanishing cheap to read off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import (
    ONE,
    ZERO,
    ExactComplex,
    HermSeries,
    TruncSeries,
    ZeroUpTo,
    analytic_apply,
    as_complex,
    format_complex,
)
from .germ import Germ, GermError

INF = math.inf

__all__ = [
    "INF",
    "Disc",
    "ChartError",
    "compose_series",
    "compose_order",
    "disc_order",
]


class ChartError(GermError):
    """A log variable was composed with a component vanishing at the centre."""


@dataclass(frozen=True, eq=False)
class Disc:
    """Truncated analytic disc ``phi`` with ``phi(0) = base``."""

    base: Tuple[ExactComplex, ...]
    components: Tuple[TruncSeries, ...]
    zero_flags: Tuple[bool, ...]

    def __post_init__(self):
        if not (len(self.base) == len(self.components) == len(self.zero_flags)):
            raise ValueError("disc base, components and flags differ in length")
        for p, c, z in zip(self.base, self.components, self.zero_flags):
            if z and (p or c.order_or(-1) != -1):
                raise ValueError("a component flagged identically zero must be zero")
            if c[0] != p:
                raise ValueError("disc component does not start at the base point")

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def trunc(self) -> int:
        return min(c.trunc for c in self.components)

    @property
    def beta(self) -> Tuple[float, ...]:
        """Vanishing order of ``phi_j - p_j``; ``INF`` for constant or flagged components."""
        out = []
        for p, c, z in zip(self.base, self.components, self.zero_flags):
            if z:
                out.append(INF)
                continue
            k = (c - TruncSeries.constant(p, c.trunc)).order_or(-1)
            out.append(INF if k < 0 else k)
        return tuple(out)

    def order(self) -> float:
        return min(self.beta, default=INF)

    def is_regular(self) -> bool:
        return self.order() == 1

    @classmethod
    def from_polys(cls, base: Sequence, coeffs: Sequence[Sequence], trunc: int) -> "Disc":
        """Polynomial disc: component ``j`` is ``base[j] + sum_d coeffs[j][d-1] zeta^d``."""
        base_c = tuple(as_complex(b) for b in base)
        if len(coeffs) != len(base_c):
            raise ValueError("one coefficient list per coordinate is required")
        comps = []
        flags = []
        for p, cs in zip(base_c, coeffs):
            comps.append(TruncSeries([p, *cs], trunc))
            flags.append(not p and not any(as_complex(c) for c in cs))
        return cls(base_c, tuple(comps), tuple(flags))

    @classmethod
    def line(cls, base: Sequence, direction: Sequence, trunc: int) -> "Disc":
        return cls.from_polys(base, [[d] for d in direction], trunc)

    @classmethod
    def exponential(cls, base: Sequence, rates: Sequence, trunc: int) -> "Disc":
        """``(p_1 e^{a_1 zeta}, ..., p_n e^{a_n zeta})``; zero coordinates stay zero."""
        base_c = tuple(as_complex(b) for b in base)
        comps = []
        flags = []
        for p, a in zip(base_c, rates):
            e = analytic_apply("exp", TruncSeries([0, a], trunc))
            comps.append(e * p)
            flags.append(not p)
        return cls(base_c, tuple(comps), tuple(flags))

    @classmethod
    def mixed(cls, base: Sequence, exp_rates: Dict[int, object], line_dirs: Dict[int, object], trunc: int) -> "Disc":
        """Exponential in ``exp_rates`` coordinates, linear in ``line_dirs``, constant elsewhere."""
        base_c = tuple(as_complex(b) for b in base)
        comps = []
        flags = []
        for j, p in enumerate(base_c):
            if j in exp_rates:
                comps.append(analytic_apply("exp", TruncSeries([0, exp_rates[j]], trunc)) * p)
            elif j in line_dirs:
                comps.append(TruncSeries([p, line_dirs[j]], trunc))
            else:
                comps.append(TruncSeries([p], trunc))
            flags.append(not p and comps[-1].order_or(-1) == -1)
        return cls(base_c, tuple(comps), tuple(flags))

    def replace_component(self, j: int, series: TruncSeries, zero: bool = False) -> "Disc":
        comps = list(self.components)
        flags = list(self.zero_flags)
        comps[j] = series
        flags[j] = zero
        return Disc(self.base, tuple(comps), tuple(flags))

    def truncate(self, trunc: int) -> "Disc":
        return Disc(self.base, tuple(c.truncate(trunc) for c in self.components), self.zero_flags)

    def coefficient_lists(self) -> List[List[str]]:
        """Witness encoding: each component as trailing-zero-stripped coefficient strings."""
        out = []
        for c in self.components:
            cs = list(c.coeffs)
            while len(cs) > 1 and not cs[-1]:
                cs.pop()
            out.append([format_complex(x) for x in cs])
        return out

    def __eq__(self, other):
        if not isinstance(other, Disc):
            return NotImplemented
        return self.base == other.base and self.components == other.components and self.zero_flags == other.zero_flags

    def __repr__(self):
        return f"Disc({self.coefficient_lists()})"


def disc_order(phi: Disc) -> float:
    return phi.order()


# ---------------------------------------------------------------------------


Dyad = Tuple[Fraction, TruncSeries, TruncSeries]


def _effective_trunc(g: Germ, phi: Disc, trunc: Optional[int]) -> int:
    n = phi.trunc if trunc is None else min(trunc, phi.trunc)
    if g.trunc is not None:
        n = min(n, g.trunc)
    return n


def _dyads(g: Germ, phi: Disc, trunc: int) -> List[Dyad]:
    if phi.n != g.n:
        raise GermError(f"disc has {phi.n} components, germ has {g.n} variables")
    comps = [c.truncate(trunc) for c in phi.components]
    one = TruncSeries.constant(1, trunc)

    logs: Dict[int, TruncSeries] = {}
    for i, kind in enumerate(g.kinds):
        if kind != "u" or not any(e[i] for e in g.support):
            continue
        p = phi.base[i]
        if not p or phi.zero_flags[i]:
            raise ChartError(
                f"log|z{i + 1}| composed with a component vanishing at 0; the log chart lives off the axes"
            )
        # log|phi_i / base_i| uses the germ's base, which may differ from phi(0) by a unit
        gb = g.base_point[i] if g.base_point else p
        ratio = comps[i] * (ONE / p)
        shift = p / gb
        if shift.abs2() != 1:
            raise ChartError(f"|phi_{i + 1}(0)| differs from the germ's base modulus")
        logs[i] = analytic_apply("log1p", ratio - one)

    pow_cache: Dict[Tuple[str, int, int], TruncSeries] = {}

    def pw(tag: str, i: int, a: int) -> TruncSeries:
        key = (tag, i, a)
        if key not in pow_cache:
            src = comps[i] if tag == "t" else logs[i]
            if a == 0:
                pow_cache[key] = one
            elif a == 1:
                pow_cache[key] = src
            else:
                pow_cache[key] = pw(tag, i, a - 1) * src
        return pow_cache[key]

    prod_cache: Dict[Tuple[Tuple[str, int, int], ...], TruncSeries] = {(): one}

    def prod(key: Tuple[Tuple[str, int, int], ...]) -> TruncSeries:
        # products of powers recur across monomials and across the u-expansion
        if key not in prod_cache:
            prod_cache[key] = prod(key[:-1]) * pw(*key[-1])
        return prod_cache[key]

    dyads: List[Dyad] = []
    if g.constant:
        dyads.append((g.constant, one, one))
    for e, c in g.support.items():
        t_key = tuple(("t", i, a) for i, a in enumerate(e) if a and g.kinds[i] == "t")
        u_parts = [(i, a) for i, a in enumerate(e) if a and g.kinds[i] != "t"]
        if not u_parts:
            F = prod(t_key)
            dyads.append((c, F, F))
            continue
        choices = [range(a + 1) for _, a in u_parts]
        denom = 2 ** sum(a for _, a in u_parts)
        for rs in product(*choices):
            coef = Fraction(c, denom)
            ka = list(t_key)
            kb = list(t_key)
            for (i, a), r in zip(u_parts, rs):
                coef *= comb(a, r)
                if r:
                    ka.append(("u", i, r))
                if a - r:
                    kb.append(("u", i, a - r))
            dyads.append((coef, prod(tuple(ka)), prod(tuple(kb))))
    return dyads


def _coefficient(dyads: List[Dyad], j: int, k: int) -> ExactComplex:
    acc = ZERO
    for c, X, Y in dyads:
        x = X.coeffs[j]
        if not x:
            continue
        y = Y.coeffs[k]
        if y:
            acc = acc + x * y.conj() * c
    return acc


def compose_series(g: Germ, phi: Disc, trunc: Optional[int] = None) -> HermSeries:
    """``g o phi`` as a Hermitian series."""
    n = _effective_trunc(g, phi, trunc)
    dyads = _dyads(g, phi, n)
    out: Dict[Tuple[int, int], ExactComplex] = {}
    for m in range(n + 1):
        for j in range(m + 1):
            c = _coefficient(dyads, j, m - j)
            if c:
                out[(j, m - j)] = c
    return HermSeries._raw(out, n)


def compose_order(g: Germ, phi: Disc, trunc: Optional[int] = None):
    """Order of vanishing of ``g o phi`` (or :class:`ZeroUpTo`)."""
    n = _effective_trunc(g, phi, trunc)
    dyads = _dyads(g, phi, n)
    lows = [(X.order_or(n + 1), Y.order_or(n + 1)) for _, X, Y in dyads]
    start = min((a + b for a, b in lows), default=n + 1)
    for m in range(start, n + 1):
        active = [d for d, (a, b) in zip(dyads, lows) if a + b <= m]
        # Hermitian symmetry: c_{k,j} = conj(c_{j,k}), so half the row suffices
        for j in range(m // 2 + 1):
            if _coefficient(active, j, m - j):
                return m
    return ZeroUpTo(n)


def compose_coefficients(g: Germ, phi: Disc, m: int, trunc: Optional[int] = None) -> List[ExactComplex]:
    """The row ``c_{j, m-j}`` for ``j = 0..m`` of ``g o phi``."""
    n = _effective_trunc(g, phi, trunc)
    if m > n:
        raise ValueError(f"order {m} exceeds the available truncation {n}")
    dyads = _dyads(g, phi, n)
    return [_coefficient(dyads, j, m - j) for j in range(m + 1)]
