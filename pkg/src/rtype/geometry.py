"""Reinhardt-domain geometry near a boundary point.

Covers log-convexity and axis-contraction checks, the monomial change of
coordinates that puts the normal direction on one coordinate, the local germ
``log|z_j| + h`` obtained by solving the defining equation for the normal
variable, and the radial-monotonicity (star-like) test for tangential germs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from . import mpoly
from .exact import ExactComplex, as_complex
from .germ import Germ, GermError, germ_derivatives
from .mpoly import Poly

__all__ = [
    "DomainSpec",
    "BoundaryPoint",
    "OriginError",
    "NotOnBoundaryError",
    "DegenerateBoundaryError",
    "MonomialMap",
    "ConvexityResult",
    "AxisResult",
    "StarlikeResult",
    "boundary_point",
    "log_gradient",
    "select_normal_index",
    "check_log_convex",
    "check_axis_monotone",
    "normalize_coords",
    "local_germ_at",
    "check_starlike",
    "halton_points",
    "principal_minors",
]

DEFAULT_LOCAL_TRUNC = 8


class OriginError(GermError):
    pass


class NotOnBoundaryError(GermError):
    pass


class DegenerateBoundaryError(GermError):
    pass


ORIGIN_MESSAGE = (
    "the origin cannot be a boundary point: a smooth Reinhardt boundary never passes through 0"
)


@dataclass(frozen=True)
class DomainSpec:
    n: int
    rho: Germ
    region_hint: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if self.rho.n != self.n:
            raise GermError("germ dimension does not match the domain")
        if not self.rho.support:
            raise GermError("defining function has empty support")
        if not self.region_hint:
            lo, hi = (Fraction(0), Fraction(2)) if self.rho.model == "MOD" else (Fraction(-1, 2), Fraction(1, 2))
            object.__setattr__(self, "region_hint", ((lo, hi),) * self.n)
        else:
            object.__setattr__(
                self, "region_hint", tuple((Fraction(a), Fraction(b)) for a, b in self.region_hint)
            )


@dataclass(frozen=True)
class BoundaryPoint:
    p: Tuple[ExactComplex, ...]
    zero_set: Tuple[int, ...]
    k: int

    @property
    def nonzero(self) -> Tuple[int, ...]:
        return tuple(i for i in range(len(self.p)) if i not in self.zero_set)


def boundary_point(d_or_germ, p: Sequence) -> BoundaryPoint:
    """Validate ``p`` (not the origin, ``rho(p) = 0``) and record its zero pattern."""
    g = d_or_germ.rho if isinstance(d_or_germ, DomainSpec) else d_or_germ
    pts = tuple(as_complex(x) for x in p)
    if len(pts) != g.n:
        raise GermError(f"point has {len(pts)} coordinates, domain has {g.n}")
    if not any(pts):
        raise OriginError(ORIGIN_MESSAGE)
    gb = g.with_(base_point=pts) if not g.base_point else g
    for i, kind in enumerate(g.kinds):
        if kind == "u" and pts[i].abs2() != (gb.base_point[i].abs2() if gb.base_point else 1):
            raise GermError(f"coordinate {i + 1} leaves the log chart of the germ")
    val = gb.value_at_base() if gb.base_point == pts else g.with_(base_point=pts).value_at_base()
    if val:
        raise NotOnBoundaryError(f"rho(p) = {val} != 0")
    zeros = tuple(i for i, x in enumerate(pts) if not x)
    return BoundaryPoint(pts, zeros, len(pts) - len(zeros))


def log_gradient(g: Germ, p: Sequence) -> List[Fraction]:
    """``d rho / d log|z_i|`` at ``p`` (zero on the coordinate axes)."""
    pts = [as_complex(x) for x in p]
    gb = g.with_(base_point=pts)
    grad = germ_derivatives(g, gb.base_variables(), "gradient")
    out = []
    for i, kind in enumerate(g.kinds):
        if not pts[i]:
            out.append(Fraction(0))
        elif kind == "u":
            out.append(grad[i])
        else:
            out.append(2 * pts[i].abs2() * grad[i])
    return out


def select_normal_index(g: Germ, bp: BoundaryPoint) -> int:
    """Largest ``|d rho / d log|z_j||`` over nonzero coordinates; smallest index on ties."""
    grad = log_gradient(g, bp.p)
    best = None
    for i in bp.nonzero:
        if grad[i] and (best is None or abs(grad[i]) > abs(grad[best])):
            best = i
    if best is None:
        raise DegenerateBoundaryError("all normal derivatives vanish at p: the boundary is not smooth there")
    return best


# --- sampling & linear algebra ------------------------------------------------

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _radical_inverse(i: int, b: int) -> Fraction:
    f = Fraction(1, b)
    r = Fraction(0)
    while i:
        r += f * (i % b)
        i //= b
        f /= b
    return r


def halton_points(box: Sequence[Tuple[Fraction, Fraction]], count: int, seed: int = 0) -> List[Tuple[Fraction, ...]]:
    """Exact rational Halton points strictly inside ``box``; ``seed`` shifts the sequence."""
    pts = []
    for idx in range(1 + seed, 1 + seed + count):
        pts.append(
            tuple(lo + (hi - lo) * _radical_inverse(idx, _PRIMES[d]) for d, (lo, hi) in enumerate(box))
        )
    return pts


def _det(m: List[List[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def principal_minors(h: List[List[Fraction]]):
    """All principal minors, smallest index sets first."""
    n = len(h)
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            yield idx, _det([[h[i][j] for j in idx] for i in idx])


def _negative_minor(h):
    for idx, val in principal_minors(h):
        if val < 0:
            return idx, val
    return None


@dataclass(frozen=True)
class ConvexityResult:
    status: str  # convex_certified_quadratic | convex_sampled | not_convex
    witness: Optional[Tuple[Fraction, ...]] = None
    minor_indices: Optional[Tuple[int, ...]] = None
    minor_value: Optional[Fraction] = None
    samples: int = 0

    @property
    def convex(self) -> bool:
        return self.status != "not_convex"


def log_hessian(g: Germ, point: Sequence) -> List[List[Fraction]]:
    """Hessian in log coordinates; ``point`` is in the germ's own variables."""
    pt = [Fraction(x) for x in point]
    H = germ_derivatives(g, pt, "hessian")
    grad = germ_derivatives(g, pt, "gradient")
    n = g.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # d/du = 2 t d/dt on t-variables
            si = 2 * pt[i] if g.kinds[i] == "t" else 1
            sj = 2 * pt[j] if g.kinds[j] == "t" else 1
            v = si * sj * H[i][j]
            if i == j and g.kinds[i] == "t":
                v += 4 * pt[i] * grad[i]
            out[i][j] = v
    return out


def check_log_convex(d: DomainSpec, samples: int = 200, seed: int = 0) -> ConvexityResult:
    """Convexity of the defining function in logarithmic coordinates."""
    g = d.rho
    box = d.region_hint
    if any(hi <= lo for lo, hi in box):
        raise ValueError("empty region")
    if g.model == "LOG" and g.degree() <= 2:
        centre = tuple((lo + hi) / 2 for lo, hi in box)
        neg = _negative_minor(log_hessian(g, centre))
        if neg:
            return ConvexityResult("not_convex", centre, neg[0], neg[1], 1)
        return ConvexityResult("convex_certified_quadratic", samples=1)
    if g.model == "MIXED":
        raise GermError("convexity check expects a LOG or MOD germ")
    if g.model == "MOD":
        box = tuple((max(lo, Fraction(0)), hi) for lo, hi in box)
    for pt in halton_points(box, samples, seed):
        neg = _negative_minor(log_hessian(g, pt))
        if neg:
            return ConvexityResult("not_convex", pt, neg[0], neg[1], samples)
    return ConvexityResult("convex_sampled", samples=samples)


@dataclass(frozen=True)
class AxisResult:
    status: str  # monotone | violated
    witness: Optional[Tuple[Fraction, ...]] = None
    derivative: Optional[Fraction] = None


def check_axis_monotone(d: DomainSpec, j: int, samples: int = 64, seed: int = 0) -> AxisResult:
    """``d rho / d t_j >= 0`` on the region's corners and sampled interior points."""
    g = d.rho
    if g.model != "MOD":
        raise GermError("axis monotonicity needs the modulus model (axes are outside the log chart)")
    if not 0 <= j < g.n:
        raise IndexError(f"coordinate index {j} out of range")
    box = tuple((max(lo, Fraction(0)), hi) for lo, hi in d.region_hint)
    deriv = mpoly.diff(g.poly(), j)
    pts = list(product(*box)) + halton_points(box, samples, seed)
    for pt in pts:
        v = mpoly.evaluate(deriv, pt)
        if v < 0:
            return AxisResult("violated", tuple(pt), v)
    return AxisResult("monotone")


# --- normalization and local germs ------------------------------------------


@dataclass(frozen=True)
class MonomialMap:
    """``z'_j = prod_i z_i^{alpha_i}`` on the normal coordinate, identity elsewhere."""

    n: int
    normal_index: int
    exponents: Tuple[Tuple[int, int], ...]  # (coordinate, integer exponent)

    def apply(self, z: Sequence) -> Tuple[ExactComplex, ...]:
        zc = [as_complex(x) for x in z]
        w = ExactComplex(1)
        for i, a in self.exponents:
            w = w * (zc[i] ** a)
        out = list(zc)
        out[self.normal_index] = w
        return tuple(out)

    def describe(self) -> str:
        j = self.normal_index + 1
        rhs = "*".join(f"z{i + 1}" + (f"^{a}" if a != 1 else "") for i, a in self.exponents if a)
        return f"z{j}' = {rhs}"


def _integer_direction(vals: Sequence[Fraction]) -> List[int]:
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g else ints


def _log_chart_poly(g: Germ, bp: BoundaryPoint, trunc: Optional[int]) -> Poly:
    """Rewrite ``rho`` in shifted log variables on nonzero coordinates."""
    n = g.n
    exact = all(not (g.kinds[i] == "t" and i in bp.nonzero) for i in range(n))
    out: Poly = {}
    for e, c in g.poly().items():
        coef = Fraction(c)
        rest = [0] * n
        lin: Poly = {}
        for i, a in enumerate(e):
            if not a:
                continue
            if g.kinds[i] == "t" and i in bp.nonzero:
                coef *= bp.p[i].abs2() ** a
                lin = mpoly.add(lin, mpoly.var(i, n, 2 * a))
            else:
                rest[i] = a
        term: Poly = {tuple(rest): coef}
        if lin:
            if trunc is None:
                raise ValueError("a truncation order is needed to expand exponentials")
            term = mpoly.mul(term, mpoly.exp_series(lin, n, trunc), trunc)
        out = mpoly.add(out, term)
    return mpoly.truncate(out, None if exact else trunc)


def normalize_coords(d: DomainSpec, p: BoundaryPoint, trunc: Optional[int] = DEFAULT_LOCAL_TRUNC):
    """Monomial coordinate change making the normal a single log coordinate.

    Returns ``(MonomialMap, Germ)``.  The germ uses shifted log variables on
    the nonzero coordinates of ``p`` and ``|z|^2`` on the others; its linear
    log part is a multiple of the normal variable only.
    """
    g = d.rho
    if not p.nonzero:
        raise OriginError(ORIGIN_MESSAGE)
    j = select_normal_index(g, p)
    grad = log_gradient(g, p.p)
    alpha = _integer_direction([grad[i] for i in p.nonzero])
    alpha_map = dict(zip(p.nonzero, alpha))
    if not alpha_map.get(j):
        raise DegenerateBoundaryError("degenerate normal direction")
    if (alpha_map[j] > 0) != (grad[j] > 0):
        alpha_map = {i: -a for i, a in alpha_map.items()}
    phi = MonomialMap(g.n, j, tuple(sorted(alpha_map.items())))

    poly = _log_chart_poly(g, p, trunc)
    n = g.n
    # u_j = (u'_j - sum_{i != j} alpha_i u_i) / alpha_j
    subs: List[Poly] = [mpoly.var(i, n) for i in range(n)]
    aj = Fraction(alpha_map[j])
    sub_j = mpoly.var(j, n, 1 / aj)
    for i, a in alpha_map.items():
        if i != j and a:
            sub_j = mpoly.add(sub_j, mpoly.var(i, n, -Fraction(a) / aj))
    subs[j] = sub_j
    exact = trunc is None or all(not (g.kinds[i] == "t" and i in p.nonzero) for i in range(n))
    new_poly = mpoly.compose(poly, subs, n, None if exact else trunc)
    kinds = tuple("u" if i in p.nonzero else "t" for i in range(n))
    zero = mpoly.zero_exps(n)
    germ = Germ(
        kinds=kinds,
        support={e: c for e, c in new_poly.items() if e != zero},
        constant=new_poly.get(zero, Fraction(0)),
        base_point=phi.apply(p.p),
        normal_index=j,
        trunc=None if exact else trunc,
    )
    return phi, germ


def _split_by_power(poly: Poly, j: int) -> Dict[int, Poly]:
    out: Dict[int, Poly] = {}
    for e, c in poly.items():
        k = e[j]
        e2 = list(e)
        e2[j] = 0
        out.setdefault(k, {})[tuple(e2)] = c
    return out


def local_germ_at(d: DomainSpec, p: BoundaryPoint, trunc: int = DEFAULT_LOCAL_TRUNC) -> Germ:
    """Local germ ``u_j + h(other variables)`` at ``p`` with ``h(0) = 0``, ``dh(0) = 0``.

    ``u_j`` is the normal log variable after :func:`normalize_coords`; ``h``
    is exact up to total degree ``trunc``.
    """
    if not any(p.p):
        raise OriginError(ORIGIN_MESSAGE)
    phi, g = normalize_coords(d, p, trunc)
    j = g.normal_index
    n = g.n
    parts = _split_by_power(g.poly(), j)
    c1 = parts.get(1, {}).get(mpoly.zero_exps(n), Fraction(0))
    if not c1:
        raise DegenerateBoundaryError("normal derivative vanishes after normalization")
    # fixed point x = -(F(x) - c1 x) / c1, gaining one degree per pass
    x: Poly = {}
    top = max(parts)
    for step in range(1, trunc + 1):
        acc: Poly = {}
        for k in range(top, -1, -1):
            acc = mpoly.mul(acc, x, step) if acc else {}
            coeff_k = parts.get(k, {})
            if k == 1:
                coeff_k = mpoly.add(coeff_k, mpoly.const(c1, n), -1)
            acc = mpoly.add(acc, mpoly.truncate(coeff_k, step))
        new_x = mpoly.scale(acc, -1 / c1)
        x = new_x
    h = mpoly.scale(x, -1)
    zero = mpoly.zero_exps(n)
    support = {e: c for e, c in h.items() if e != zero}
    support[tuple(1 if i == j else 0 for i in range(n))] = Fraction(1)
    flags = {
        "h_vanishes_at_base": not h.get(zero),
        "dh_vanishes_at_base": all(
            not h.get(tuple(1 if m == i else 0 for m in range(n))) for i in range(n) if g.kinds[i] == "u"
        ),
        "rotation_invariant": True,
    }
    return Germ(
        kinds=g.kinds,
        support=support,
        constant=h.get(zero, Fraction(0)),
        base_point=g.base_point,
        normal_index=j,
        trunc=trunc,
        flags=flags,
    )


def tangential_part(local: Germ) -> Germ:
    """``h`` of a local germ ``u_j + h``, as a germ with the normal variable unused."""
    j = local.normal_index
    if j is None:
        raise GermError("germ has no normal index")
    unit = tuple(1 if i == j else 0 for i in range(local.n))
    support = {e: c for e, c in local.support.items() if e != unit}
    if any(e[j] for e in support):
        raise GermError("tangential part still depends on the normal variable")
    return local.with_(support=support)


# --- star-likeness -----------------------------------------------------------


@dataclass(frozen=True)
class StarlikeResult:
    status: str  # starlike | not_starlike
    witness_direction: Optional[Tuple[Fraction, ...]] = None
    witness_t: Optional[Fraction] = None
    limit_test: bool = True
    directions: int = 0


_T = sympy.Symbol("t")


def _radial_poly(h: Germ, a: Sequence[Fraction]) -> sympy.Poly:
    coeffs: Dict[int, Fraction] = {}
    for e, c in h.support.items():
        deg = 0
        val = Fraction(c)
        for i, k in enumerate(e):
            if k:
                val *= Fraction(a[i]) ** (2 * k)
                deg += 2 * k
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + val
    terms = {(d,): sympy.Rational(c.numerator, c.denominator) for d, c in coeffs.items() if c}
    return sympy.Poly.from_dict(terms or {(0,): 0}, _T, domain=sympy.QQ)


def _test_points(poly: sympy.Poly, lo: Fraction, hi: Fraction) -> List[Fraction]:
    """Rational points of ``[lo, hi]`` meeting every sign interval of ``poly``."""
    pts = {lo, hi}
    if poly.is_zero or poly.degree() <= 0:
        return sorted(pts)
    eps = Fraction(1, 4)
    while True:
        ivs = poly.intervals(inf=_qq(lo), sup=_qq(hi), eps=_qq(eps))
        spans = sorted((_fr(a), _fr(b)) for (a, b), _ in ivs)
        disjoint = all(b1 < a2 for (_, b1), (a2, _) in zip(spans, spans[1:]))
        clean = all(
            a == b or (poly.eval(_qq(a)) != 0 and poly.eval(_qq(b)) != 0) for a, b in spans
        )
        if disjoint and clean:
            break
        eps /= 16
    ends = sorted({x for span in spans for x in span} | pts)
    pts = set(ends)
    for x, y in zip(ends, ends[1:]):
        pts.add((x + y) / 2)
    return sorted(p for p in pts if lo <= p <= hi)


def _fr(x) -> Fraction:
    return Fraction(int(sympy.numer(x)), int(sympy.denom(x)))


def _qq(x: Fraction):
    return sympy.Rational(x.numerator, x.denominator)


def check_starlike(h: Germ, directions: int = 64, delta=Fraction(1, 2), seed: int = 0) -> StarlikeResult:
    """Is ``t -> h(t a)`` nondecreasing on ``[0, delta]`` for sampled directions ``a``?

    ``h`` is a tangential germ in ``|z|^2`` variables.  Directions have
    nonzero rational entries scaled to sup-norm one.  ``k_a'`` is sign-checked
    exactly at points separating its isolated roots.
    """
    if any(k != "t" for i, k in enumerate(h.kinds) if any(e[i] for e in h.support)):
        raise GermError("star-like test expects a tangential germ in |z|^2 variables")
    if h.constant:
        raise GermError("h is not based at 0 (nonzero constant term)")
    delta = Fraction(delta)
    rng = random.Random(seed)
    used = [i for i in range(h.n) if any(e[i] for e in h.support)]
    limit_ok = True
    for _ in range(directions):
        raw = {i: Fraction(rng.randint(1, 7), rng.randint(1, 7)) for i in used}
        top = max(raw.values(), default=Fraction(1))
        a = tuple(raw.get(i, Fraction(1)) / top for i in range(h.n))
        k = _radial_poly(h, a)
        dk = k.diff(_T)
        # limit test for the log-variable form: g~'(s) = t k'(t) -> 0 as t -> 0
        low = k.as_dict()
        if any(deg[0] < 2 and c for deg, c in low.items()):
            limit_ok = False
        for t in _test_points(dk, Fraction(0), delta):
            v = dk.eval(_qq(t))
            if v < 0:
                return StarlikeResult("not_starlike", a, t, limit_ok, directions)
    return StarlikeResult("starlike", limit_test=limit_ok, directions=directions)
