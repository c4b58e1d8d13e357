"""Generic-slice q-types and monomial multitype."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .discs import INF, Disc, compose_order
from .engine import (
    DEFAULT_MAX_ORDER,
    DEFAULT_TRUNC,
    OracleConfig,
    TypeValue,
    _zero_section,
    prepare,
    variety_type,
)
from .exact import ExactComplex, ZeroUpTo
from .germ import Germ, GermError

__all__ = [
    "GenericityError",
    "OutOfScopeError",
    "QTypeTuple",
    "Multitype",
    "q_types",
    "multitype",
    "generic_line_order",
]

DRAWS = 3
REDRAWS = 4


class GenericityError(GermError):
    """Random slices kept disagreeing."""


class OutOfScopeError(GermError):
    pass


@dataclass(frozen=True)
class QTypeTuple:
    values: Tuple[TypeValue, ...]  # (Delta_n, ..., Delta_1)
    seed: int

    def as_list(self):
        return [v.value if v.kind == "exact" else v for v in self.values]


@dataclass(frozen=True)
class Multitype:
    entries: Tuple[object, ...]  # Fraction or INF

    def __iter__(self):
        return iter(self.entries)


def _rand_gauss(rng: random.Random) -> ExactComplex:
    def q():
        return Fraction(rng.randint(-7, 7), rng.randint(1, 7))

    return ExactComplex(q(), q())


def _line(ctx, w, trunc):
    return Disc.line(ctx.bp.p, w, trunc)


def _draw_order(ctx, tangent: bool, rng: random.Random):
    """Order along ``p + zeta w`` for a random ``w``, tangent to the boundary or not."""
    n = ctx.g.n
    w = [ExactComplex(0)] * n
    if tangent:
        for v in ctx.kernel:
            c = _rand_gauss(rng)
            for m, i in enumerate(ctx.N):
                w[i] = w[i] + ctx.bp.p[i] * v[m] * c
        for i in ctx.Z:
            w[i] = _rand_gauss(rng)
    else:
        w = [_rand_gauss(rng) for _ in range(n)]
    if not any(w):
        return None, None
    phi = _line(ctx, w, ctx.max_order)
    v = compose_order(ctx.g, phi, ctx.max_order)
    if isinstance(v, ZeroUpTo):
        phi = _line(ctx, w, ctx.trunc)
        v = compose_order(ctx.g, phi, ctx.trunc)
        if isinstance(v, ZeroUpTo):
            v = INF
    return v, phi


def generic_line_order(ctx, tangent: bool, seed: int) -> TypeValue:
    """Generic value of the order along random lines; redraws on disagreement."""
    for attempt in range(REDRAWS):
        rng = random.Random(seed + attempt)
        draws = [_draw_order(ctx, tangent, rng) for _ in range(DRAWS)]
        draws = [d for d in draws if d[0] is not None]
        if not draws:
            continue
        vals = {v for v, _ in draws}
        if len(vals) == 1:
            v, phi = min(draws, key=lambda d: d[0])
            if v == INF:
                return TypeValue.infinite(phi, notes=(f"seed {seed + attempt}",))
            return TypeValue.exact(v, phi, notes=(f"seed {seed + attempt}",))
    raise GenericityError(f"random slices disagree after {REDRAWS} attempts starting at seed {seed}")


def q_types(
    g: Germ,
    p,
    max_order: int = DEFAULT_MAX_ORDER,
    seed: int = 0,
    oracle_cfg: Optional[OracleConfig] = OracleConfig(),
) -> QTypeTuple:
    """``(Delta_n, ..., Delta_1)`` from generic slices through ``p``.

    ``Delta_n`` is the order along a generic line, ``Delta_{n-1}`` the order
    along a generic tangent line and ``Delta_1`` the variety type.  Slices of
    intermediate dimension (``n >= 4``) are only bracketed by their neighbours.
    """
    ctx = prepare(g, p, max_order, DEFAULT_TRUNC)
    n = g.n
    normal = generic_line_order(ctx, tangent=False, seed=seed)
    if n == 1:
        return QTypeTuple((normal,), seed)
    top = variety_type(g, ctx.bp, max_order, oracle_cfg)
    if n == 2:
        return QTypeTuple((normal, top), seed)
    tangent = generic_line_order(ctx, tangent=True, seed=seed + 1000)
    middle = [
        TypeValue.bounds(tangent.lower, None if top.upper == INF else top.upper, notes=("bracketed",))
        for _ in range(n - 3)
    ]
    return QTypeTuple((normal, tangent, *middle, top), seed)


# --- multitype -------------------------------------------------------------------


def _solve(A: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    n = len(A)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def _lp_min(obj: Sequence[Fraction], rows: List[Tuple[List[Fraction], Fraction]]) -> Tuple[Fraction, List[Fraction]]:
    """Minimise ``obj . x`` over ``{x : a . x >= b}`` by vertex enumeration (bounded, pointed)."""
    dim = len(obj)
    best = None
    for idx in combinations(range(len(rows)), dim):
        x = _solve([rows[i][0] for i in idx], [rows[i][1] for i in idx])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(row, x)) >= rhs for row, rhs in rows):
            val = sum(o * v for o, v in zip(obj, x))
            if best is None or val < best[0]:
                best = (val, x)
    if best is None:
        raise ArithmeticError("weight program is infeasible")
    return best


def multitype(g: Germ, p) -> Multitype:
    """Lexicographically largest nondecreasing weights ``lambda`` with
    ``sum_j 2 alpha_j / lambda_j >= 1`` on every tangential monomial.

    Implemented for boundary points with one nonzero coordinate and positive
    coefficients; entries untouched by any monomial are infinite.
    """
    ctx = prepare(g, p)
    if len(ctx.N) != 1:
        raise OutOfScopeError("multitype is implemented only at points with exactly one nonzero coordinate")
    Q = _zero_section(ctx)
    if not all(c > 0 for c in Q.values()):
        raise OutOfScopeError("multitype needs positive coefficients in the tangential variables")
    Z = list(ctx.Z)
    m = len(Z)
    # variables: w_j = 1/lambda_j (j in Z), then W
    mono_rows = [([Fraction(2 * e[i]) for i in Z] + [Fraction(0)], Fraction(1)) for e in Q]
    pos_rows = [([Fraction(int(k == j)) for k in range(m)] + [Fraction(0)], Fraction(0)) for j in range(m)]
    fixed = {}
    while len(fixed) < m:
        free = [j for j in range(m) if j not in fixed]
        rows = list(mono_rows) + list(pos_rows)
        for j, val in fixed.items():
            e = [Fraction(int(k == j)) for k in range(m)] + [Fraction(0)]
            rows.append((e, val))
            rows.append(([-x for x in e], -val))
        cap = []
        for j in free:
            # W - w_j >= 0
            cap.append(([Fraction(-int(k == j)) for k in range(m)] + [Fraction(1)], Fraction(0)))
        obj = [Fraction(0)] * m + [Fraction(1)]
        W, _ = _lp_min(obj, rows + cap)
        if W == 0:
            for j in free:
                fixed[j] = Fraction(0)
            break
        # coordinates that cannot drop below W while the others stay at most W
        pinned = []
        for j in free:
            obj_j = [Fraction(int(k == j)) for k in range(m)] + [Fraction(0)]
            wrows = rows + cap + [([Fraction(0)] * m + [Fraction(-1)], -W)]
            v, _ = _lp_min(obj_j, wrows)
            if v == W:
                pinned.append(j)
        if not pinned:
            pinned = [free[0]]
        for j in pinned:
            fixed[j] = W
    lam = sorted((INF if w == 0 else 1 / w) for w in fixed.values())
    return Multitype((Fraction(1), *lam))
