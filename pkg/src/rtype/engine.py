"""Line, regular and variety type at a boundary point of a Reinhardt domain.

Regular type is computed from two disc families:

* exponential discs ``p_j e^{x_j zeta}`` on the nonzero coordinates of ``p``
  with the remaining coordinates identically zero, ``x`` a real tangent
  direction of the log image;
* discs keeping the nonzero coordinates fixed and moving the zero ones
  linearly, ``(p_N, b zeta)`` with ``b >= 0``.

The answer is the larger of the two family maxima.  One-parameter families are
maximised exactly (see :mod:`rtype.elimination`); bigger families fall back to
sampling and report bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .discs import INF, Disc, compose_order
from .elimination import FamilyMax, family_max_order
from .exact import ExactComplex, TruncSeries, ZeroUpTo, as_complex, order_le
from .geometry import (
    BoundaryPoint,
    DegenerateBoundaryError,
    boundary_point,
    log_gradient,
)
from .germ import Germ, GermError

__all__ = [
    "TypeValue",
    "InconsistencyError",
    "NotApplicableError",
    "ReductionError",
    "DEFAULT_MAX_ORDER",
    "DEFAULT_TRUNC",
    "newton_order",
    "line_type",
    "regular_type",
    "variety_type",
    "reduce_disc",
    "prepare",
]

DEFAULT_MAX_ORDER = 12
DEFAULT_TRUNC = 26
SAMPLE_VALUES = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(0), Fraction(-1), Fraction(3))

Number = Union[int, Fraction]


class NotApplicableError(GermError):
    """A fast path was asked for outside its no-cancellation regime."""


class ReductionError(GermError):
    pass


class InconsistencyError(RuntimeError):
    """The search oracle beat the computed type: a bug or a violated hypothesis."""

    def __init__(self, message: str, computed: "TypeValue", oracle):
        super().__init__(message)
        self.computed = computed
        self.oracle = oracle


@dataclass(frozen=True)
class TypeValue:
    kind: str  # exact | bounds | infinite
    value: Optional[Fraction] = None
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    witness: Optional[Disc] = None
    method: str = "series_composition"
    notes: Tuple[str, ...] = ()

    @classmethod
    def exact(cls, v: Number, witness=None, method="series_composition", notes=()) -> "TypeValue":
        v = Fraction(v)
        return cls("exact", v, v, v, witness, method, tuple(notes))

    @classmethod
    def bounds(cls, lo: Number, hi: Optional[Number], witness=None, method="series_composition", notes=()):
        lo = Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        if hi is not None and lo == hi:
            return cls.exact(lo, witness, method, notes)
        return cls("bounds", None, lo, hi, witness, method, tuple(notes))

    @classmethod
    def infinite(cls, witness=None, method="series_composition", notes=()) -> "TypeValue":
        return cls("infinite", None, None, None, witness, method, tuple(notes))

    @property
    def lower(self) -> float:
        if self.kind == "infinite":
            return INF
        return self.lo

    @property
    def upper(self) -> float:
        if self.kind == "infinite" or self.hi is None:
            return INF
        return self.hi

    def with_notes(self, *notes: str) -> "TypeValue":
        return TypeValue(self.kind, self.value, self.lo, self.hi, self.witness, self.method, self.notes + notes)

    def __str__(self):
        if self.kind == "exact":
            return str(self.value)
        if self.kind == "infinite":
            return "inf"
        return f"[{self.lo}, {'inf' if self.hi is None else self.hi}]"


def _combine(parts: Iterable[TypeValue]) -> TypeValue:
    """Maximum of several family values; the first attaining part keeps the witness."""
    best: Optional[TypeValue] = None
    his: List[float] = []
    for tv in parts:
        his.append(tv.upper)
        if best is None or tv.lower > best.lower:
            best = tv
    if best is None:
        raise ValueError("no family was evaluated")
    if best.kind == "infinite":
        return best
    hi = max(his)
    if best.kind == "exact" and hi == best.lower:
        return best
    return TypeValue.bounds(best.lower, None if hi == INF else hi, best.witness, best.method, best.notes)


# --- no-cancellation fast path --------------------------------------------------


def newton_order(support, beta: Sequence, model: str = "MOD") -> float:
    """Weighted minimum over the support: ``2<alpha, beta>`` (MOD) or ``<alpha, beta>`` (LOG-positive).

    ``support`` is an iterable of exponent tuples or a mapping to coefficients;
    with coefficients, any nonpositive one raises :class:`NotApplicableError`.
    Returns ``INF`` when every monomial meets an infinite ``beta`` entry.
    """
    if isinstance(support, Mapping):
        bad = [e for e, c in support.items() if c <= 0]
        if bad:
            raise NotApplicableError(f"coefficient of {bad[0]} is not positive; compose the series instead")
        exps = list(support)
    else:
        exps = list(support)
    if model not in ("MOD", "LOG", "LOG-positive"):
        raise ValueError(f"unknown model {model!r}")
    scale = 2 if model == "MOD" else 1
    best = INF
    for e in exps:
        if len(e) != len(beta):
            raise GermError("exponent and beta lengths differ")
        w = 0
        for a, b in zip(e, beta):
            if a:
                w = INF if b == INF else w + a * b
        if w == 0:
            raise GermError("constant monomial in newton_order support")
        best = min(best, scale * w)
    return best if best == INF else int(best)


# --- setup ----------------------------------------------------------------------


@dataclass
class _Ctx:
    g: Germ
    bp: BoundaryPoint
    grad: List[Fraction]
    N: Tuple[int, ...]
    Z: Tuple[int, ...]
    max_order: int
    trunc: int
    kernel: List[List[Fraction]] = field(default_factory=list)


def prepare(g: Germ, p, max_order: int = DEFAULT_MAX_ORDER, trunc: int = DEFAULT_TRUNC) -> _Ctx:
    bp = p if isinstance(p, BoundaryPoint) else boundary_point(g, p)
    if not g.base_point:
        g = g.with_(base_point=bp.p)
    grad = log_gradient(g, bp.p)
    N = bp.nonzero
    if not any(grad[i] for i in N):
        raise DegenerateBoundaryError("all normal derivatives vanish at p: the boundary is not smooth there")
    ctx = _Ctx(g, bp, grad, N, tuple(bp.zero_set), max_order, trunc)
    ctx.kernel = _kernel([grad[i] for i in N])
    return ctx


def _kernel(row: Sequence[Fraction]) -> List[List[Fraction]]:
    """Integer basis of ``{x : <row, x> = 0}``, pivoting on the last nonzero entry."""
    piv = max(i for i, r in enumerate(row) if r)
    basis = []
    for i in range(len(row)):
        if i == piv:
            continue
        v = [Fraction(0)] * len(row)
        v[i] = Fraction(1)
        v[piv] = -row[i] / row[piv]
        den = math.lcm(*(x.denominator for x in v))
        v = [x * den for x in v]
        g = math.gcd(*(x.numerator for x in v))
        basis.append([x / g for x in v])
    return basis


def _fixed(ctx: _Ctx, build, label: str) -> TypeValue:
    """Order along one disc; larger truncation decides infinite type."""
    phi = build(ctx.max_order)
    v = compose_order(ctx.g, phi, ctx.max_order)
    if isinstance(v, ZeroUpTo):
        phi = build(ctx.trunc)
        v = compose_order(ctx.g, phi, ctx.trunc)
        if isinstance(v, ZeroUpTo):
            return TypeValue.infinite(phi, notes=(f"{label}: zero up to order {v.trunc}",))
    return TypeValue.exact(v, phi, notes=(label,))


def _family(ctx: _Ctx, build, domain: str, label: str) -> TypeValue:
    res: FamilyMax = family_max_order(ctx.g, build, domain, ctx.max_order, ctx.trunc)
    notes = (label,) + ((res.note,) if res.note else ())
    if res.kind == "exact":
        return TypeValue.exact(res.value, res.witness, "elimination", notes)
    if res.kind == "infinite":
        return TypeValue.infinite(res.witness, "elimination", notes)
    return TypeValue.bounds(res.lo, None, res.witness, "elimination", notes)


def _sampled(ctx: _Ctx, builds, label: str, hi=None) -> TypeValue:
    best: Optional[TypeValue] = None
    for build in builds:
        tv = _fixed(ctx, build, label)
        if tv.kind == "infinite":
            return tv
        if best is None or tv.lower > best.lower:
            best = tv
    if best is None:
        raise ValueError("empty sample")
    return TypeValue.bounds(best.lower, hi, best.witness, notes=(label + " (sampled)",))


# --- the two families -------------------------------------------------------------


def _exp_builder(ctx: _Ctx, x: Sequence[Fraction]):
    rates = {i: x[m] for m, i in enumerate(ctx.N) if x[m]}

    def build(trunc):
        return Disc.mixed(ctx.bp.p, rates, {}, trunc)

    return build


def _exp_family(ctx: _Ctx) -> TypeValue:
    """Exponential discs on the nonzero coordinates, zero coordinates identically zero."""
    B = ctx.kernel
    label = "exponential discs on the nonzero coordinates"
    if len(B) == 1:
        return _fixed(ctx, _exp_builder(ctx, B[0]), label)
    if len(B) == 2:
        fixed = _fixed(ctx, _exp_builder(ctx, B[0]), label)

        def build(s, trunc):
            x = [s * a + b for a, b in zip(B[0], B[1])]
            return _exp_builder(ctx, x)(trunc)

        return _combine([fixed, _family(ctx, build, "real", label)])
    builds = []
    for cs in product(SAMPLE_VALUES, repeat=len(B)):
        if any(cs):
            x = [sum(c * v[m] for c, v in zip(cs, B)) for m in range(len(ctx.N))]
            if any(x):
                builds.append(_exp_builder(ctx, x))
    return _sampled(ctx, builds, label)


def _zero_section(ctx: _Ctx) -> Dict[Tuple[int, ...], Fraction]:
    """``rho`` with the nonzero coordinates frozen at ``p``, as a polynomial in the zero ones."""
    base = ctx.g.base_variables()
    out: Dict[Tuple[int, ...], Fraction] = {}
    for e, c in ctx.g.poly().items():
        val = c
        for i in ctx.N:
            if e[i]:
                val *= base[i] ** e[i]
        if not val:
            continue
        key = tuple(0 if i in ctx.N else a for i, a in enumerate(e))
        out[key] = out.get(key, 0) + val
    return {e: c for e, c in out.items() if c}


def _axis_builder(ctx: _Ctx, b: Mapping[int, Fraction], extra: Optional[Mapping[int, ExactComplex]] = None):
    dirs = {i: v for i, v in b.items() if v}
    if extra:
        dirs.update(extra)

    def build(trunc):
        return Disc.mixed(ctx.bp.p, {}, dirs, trunc)

    return build


def _patterns(Z: Sequence[int]):
    for r in range(1, len(Z) + 1):
        yield from combinations(Z, r)


def _axis_family(ctx: _Ctx) -> TypeValue:
    """Discs fixing the nonzero coordinates and moving the zero ones linearly."""
    label = "linear discs in the zero coordinates"
    Q = _zero_section(ctx)
    if Q and all(c > 0 for c in Q.values()):
        best = None
        for S in _patterns(ctx.Z):
            beta = [1 if i in S else INF for i in range(ctx.g.n)]
            v = newton_order(Q, beta, "MOD")
            if best is None or v > best[0]:
                best = (v, S)
        v, S = best
        build = _axis_builder(ctx, {i: Fraction(1) for i in S})
        if v == INF:
            return TypeValue.infinite(build(ctx.trunc), "newton_fast_path", (label,))
        return TypeValue.exact(v, build(ctx.max_order), "newton_fast_path", (label,))
    Z = ctx.Z
    if len(Z) == 1:
        return _fixed(ctx, _axis_builder(ctx, {Z[0]: Fraction(1)}), label)
    if len(Z) == 2:
        fixed = _fixed(ctx, _axis_builder(ctx, {Z[0]: Fraction(1)}), label)

        def build(s, trunc):
            return _axis_builder(ctx, {Z[0]: s, Z[1]: Fraction(1)})(trunc)

        return _combine([fixed, _family(ctx, build, "nonneg", label)])
    builds = [
        _axis_builder(ctx, dict(zip(Z, cs)))
        for cs in product([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(0)], repeat=len(Z))
        if any(cs)
    ]
    return _sampled(ctx, builds, label)


# --- public type computations -----------------------------------------------------


def regular_type(g: Germ, p, max_order: int = DEFAULT_MAX_ORDER, trunc: int = DEFAULT_TRUNC) -> TypeValue:
    """Maximal order of contact of regular discs through ``p``."""
    ctx = prepare(g, p, max_order, trunc)
    parts = []
    if len(ctx.N) >= 2:
        parts.append(_exp_family(ctx))
    if ctx.Z:
        parts.append(_axis_family(ctx))
    return _combine(parts)


def line_type(g: Germ, p, max_order: int = DEFAULT_MAX_ORDER, trunc: int = DEFAULT_TRUNC) -> TypeValue:
    """Maximal order of contact of complex lines through ``p``."""
    ctx = prepare(g, p, max_order, trunc)
    parts = []
    if ctx.Z:
        parts.append(_axis_family(ctx))
    B = ctx.kernel
    label = "tangent lines moving the nonzero coordinates"
    if len(B) == 1:
        w = {i: ctx.bp.p[i] * B[0][m] for m, i in enumerate(ctx.N)}
        if not ctx.Z:
            parts.append(_fixed(ctx, _axis_builder(ctx, {}, w), label))
        elif len(ctx.Z) == 1:
            z = ctx.Z[0]

            def build(s, trunc):
                return _axis_builder(ctx, {z: s}, w)(trunc)

            parts.append(_family(ctx, build, "nonneg", label))
        else:
            builds = [
                _axis_builder(ctx, dict(zip(ctx.Z, cs)), w)
                for cs in product([Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)], repeat=len(ctx.Z))
            ]
            parts.append(_sampled(ctx, builds, label))
    elif len(B) >= 2:
        reg = regular_type(g, ctx.bp, max_order, trunc)
        lattice = [as_complex(x) for x in (1, -1, 2, "1/2", "i", "-i", "1+i", "1-i", 0)]
        builds = []
        for cs in product(lattice, repeat=len(B) - 1):
            w = {
                i: ctx.bp.p[i] * (B[0][m] + sum((c * B[r + 1][m] for r, c in enumerate(cs)), as_complex(0)))
                for m, i in enumerate(ctx.N)
            }
            for zs in product([Fraction(0), Fraction(1)], repeat=len(ctx.Z)):
                builds.append(_axis_builder(ctx, dict(zip(ctx.Z, zs)), w))
        parts.append(_sampled(ctx, builds, label, hi=None if reg.kind != "exact" else reg.value))
    return _combine(parts)


@dataclass(frozen=True)
class OracleConfig:
    max_deg: int = 2
    lattice: str = "small"
    budget: int = 1500


def variety_type(
    g: Germ,
    p,
    max_order: int = DEFAULT_MAX_ORDER,
    oracle_cfg: Optional[OracleConfig] = OracleConfig(),
    trunc: int = DEFAULT_TRUNC,
) -> TypeValue:
    """Regular type, cross-checked against a brute-force disc search.

    Raises :class:`InconsistencyError` if the search finds a larger ratio.
    """
    reg = regular_type(g, p, max_order, trunc)
    if oracle_cfg is None:
        return reg
    from .oracle import LATTICES, jet_oracle

    orc = jet_oracle(g, p, oracle_cfg.max_deg, LATTICES[oracle_cfg.lattice], oracle_cfg.budget)
    if orc.value.lower > reg.upper:
        raise InconsistencyError(
            f"disc search found ratio {orc.value.lower} above the regular type {reg}", reg, orc
        )
    return reg.with_notes(f"search lower bound {orc.value.lower}")


# --- disc reduction -----------------------------------------------------------------


def _gt(a, b) -> bool:
    return not order_le(a, b)


def reduce_disc(g: Germ, phi: Disc, trunc: Optional[int] = None) -> Disc:
    """Freeze the normal component of ``phi`` at its base value.

    ``g`` must carry a normal index (a germ ``log|z_j| + h``).  The result
    keeps the disc order and does not lower the order of ``g`` along it;
    both facts are checked exactly.
    """
    j = g.normal_index
    if j is None:
        raise ReductionError("germ has no normal index")
    n = phi.trunc if trunc is None else min(trunc, phi.trunc)
    if g.trunc is not None:
        n = min(n, g.trunc)
    v_phi = phi.order()
    v_rphi = compose_order(g, phi, n)
    if not _gt(v_rphi, v_phi):
        raise ReductionError(f"precondition fails: v(r o phi) = {v_rphi} is not above v(phi) = {v_phi}")
    psi = phi.replace_component(j, TruncSeries.constant(phi.base[j], phi.trunc), zero=not phi.base[j])
    v_psi = psi.order()
    v_rpsi = compose_order(g, psi, n)
    if v_psi != v_phi or not order_le(v_rphi, v_rpsi):
        raise ReductionError(
            f"reduction check failed: v(phi) = {v_phi}, v(psi) = {v_psi}, "
            f"v(r o phi) = {v_rphi}, v(r o psi) = {v_rpsi}"
        )
    return psi
