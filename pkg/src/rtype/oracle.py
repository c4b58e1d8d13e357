"""Brute-force search over polynomial discs with lattice coefficients.

The best ratio ``v(rho o phi) / v(phi)`` found is a certified lower bound for
the variety type.  Discs are visited by increasing degree, then in
lexicographic order of their coefficient indices with the first component most
significant; the first disc reaching a value keeps it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .discs import INF, Disc, compose_order
from .engine import DEFAULT_TRUNC, TypeValue
from .exact import ExactComplex, ZeroUpTo, as_complex
from .geometry import BoundaryPoint, boundary_point
from .germ import Germ

__all__ = ["LATTICES", "OracleResult", "jet_oracle"]

LATTICES = {
    "default": tuple(as_complex(x) for x in ("0", "1", "-1", "2", "-2", "1/2", "-1/2", "i", "-i", "1/2i", "-1/2i")),
    "small": tuple(as_complex(x) for x in ("0", "1", "-1", "1/2", "-1/2")),
    "binary": tuple(as_complex(x) for x in ("0", "1")),
}

_ZERO_FLAG = None


@dataclass(frozen=True)
class OracleResult:
    value: TypeValue
    ratio: Fraction
    witness: Optional[Disc]
    truncated: bool
    explored: int


def _options(p: ExactComplex, deg: int, lattice: Sequence[ExactComplex]) -> List[Optional[Tuple[ExactComplex, ...]]]:
    """Coefficient tuples ``(c_1..c_deg)`` for one component, in search order."""
    out: List[Optional[Tuple[ExactComplex, ...]]] = []
    for cs in product(lattice, repeat=deg):
        if not p:
            lead = next((c for c in cs if c), None)
            # rotating a component through 0 changes nothing, so fix the leading phase
            if lead is None or not (lead.is_real() and lead.re > 0):
                continue
        out.append(cs)
    if not p:
        out.append(_ZERO_FLAG)
    return out


def _degree(cs) -> int:
    if cs is None:
        return 0
    return max((k + 1 for k, c in enumerate(cs) if c), default=0)


def _stride(choice) -> int:
    from math import gcd

    g = 0
    for cs in choice:
        if cs is None:
            continue
        for k, c in enumerate(cs):
            if c:
                g = gcd(g, k + 1)
    return g


def jet_oracle(
    g: Germ,
    p,
    max_deg: int = 3,
    lattice: Sequence = LATTICES["default"],
    budget: int = 2_000_000,
    trunc: int = DEFAULT_TRUNC,
) -> OracleResult:
    """Best ratio over polynomial discs of degree ``<= max_deg`` with lattice coefficients."""
    if max_deg < 1:
        raise ValueError("max_deg must be at least 1")
    lattice = tuple(as_complex(c) for c in lattice)
    if not lattice:
        raise ValueError("empty lattice")
    bp = p if isinstance(p, BoundaryPoint) else boundary_point(g, p)
    if not g.base_point:
        g = g.with_(base_point=bp.p)
    best = Fraction(0)
    witness: Optional[Disc] = None
    explored = 0
    truncated = False
    for D in range(1, max_deg + 1):
        opts = [_options(pj, D, lattice) for pj in bp.p]
        for choice in product(*opts):
            degs = [_degree(cs) for cs in choice]
            if max(degs) != D or _stride(choice) != 1:
                continue  # seen at a lower degree, or a reparametrisation of one
            if explored >= budget:
                truncated = True
                break
            explored += 1
            coeffs = [list(cs) if cs is not None else [] for cs in choice]
            phi = Disc.from_polys(bp.p, coeffs, trunc)
            v = phi.order()
            if v == INF:
                continue
            # only orders above best * v can improve, so probe that far first
            probe = min(trunc, max(int(best * v) + 1, 4))
            order = compose_order(g, phi.truncate(probe), probe)
            while isinstance(order, ZeroUpTo) and probe < trunc:
                probe = min(trunc, 2 * probe)
                order = compose_order(g, phi.truncate(probe), probe)
            if isinstance(order, ZeroUpTo):
                bound = _certify_zero(g, phi, D)
                if bound is None:
                    return OracleResult(
                        TypeValue.infinite(phi, "jet_oracle"), Fraction(-1), phi, truncated, explored
                    )
                order = bound
            ratio = Fraction(order, int(v))
            if ratio > best:
                best, witness = ratio, phi
        if truncated:
            break
    value = TypeValue.bounds(best, None, witness, "jet_oracle", ("search truncated",) if truncated else ())
    return OracleResult(value, best, witness, truncated, explored)


def _certify_zero(g: Germ, phi: Disc, deg: int):
    """``None`` when ``rho o phi`` is identically zero, else a lower bound on its order."""
    if g.model == "MOD" and g.trunc is None:
        top = 2 * g.degree() * deg
        full = Disc.from_polys(phi.base, [c.coeffs[1:] for c in phi.components], top)
        order = compose_order(g, full, top)
        if isinstance(order, ZeroUpTo):
            return None
        return order
    return phi.trunc + 1
