"""Seeded random pseudoconvex test domains.

Every germ is ``a |z1|^2 + b |z1|^4 + (positive monomials touching z2..zn) - (a + b)``
at ``p = (1, 0, .., 0)``.  Positive coefficients make ``rho`` increasing in
each ``|z_j|^2`` and log-convex, so the domains are pseudoconvex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from .germ import Germ, parse_germ

__all__ = ["GeneratedCase", "positive_mod_cases"]


@dataclass(frozen=True)
class GeneratedCase:
    name: str
    n: int
    rho: str
    point: Tuple[str, ...]

    def germ(self) -> Germ:
        return parse_germ(self.rho, self.n, self.point)

    def dom_text(self) -> str:
        pts = ", ".join(f'"{x}"' for x in self.point)
        return (
            f"[domain]\nn = {self.n}\nmodel = modulus\nrho = \"{self.rho}\"\n"
            f"[point]\np = ({pts})\n"
        )


def _coef(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 5), rng.randint(1, 3))


def _term(c: Fraction, e: Tuple[int, ...]) -> str:
    factors = []
    for i, k in enumerate(e):
        if k:
            factors.append(f"|z{i + 1}|^{2 * k}")
    body = "*".join(factors)
    return body if c == 1 else f"{c}*{body}"


def positive_mod_cases(count: int = 24, seed: int = 2024, max_degree: int = 8) -> List[GeneratedCase]:
    """``count`` distinct cases with ``n`` in {2, 3} and total degree in ``z`` at most ``max_degree``."""
    rng = random.Random(seed)
    top = max_degree // 2  # degree in the |z|^2 variables
    seen = set()
    out: List[GeneratedCase] = []
    while len(out) < count:
        n = rng.choice((2, 3))
        exps = [e for e in product(range(top + 1), repeat=n) if 0 < sum(e) <= top and any(e[1:])]
        k = rng.randint(1, min(4, len(exps)))
        chosen = sorted(rng.sample(exps, k))
        # every zero coordinate gets at least one pure power so the type stays finite
        for j in range(1, n):
            if not any(e[j] and not any(e[i] for i in range(n) if i != j) for e in chosen):
                pure = tuple(rng.randint(1, top) if i == j else 0 for i in range(n))
                chosen.append(pure)
        chosen = sorted(set(chosen))
        a = _coef(rng)
        b = Fraction(rng.randint(0, 1), rng.randint(1, 2))
        terms: Dict[Tuple[int, ...], Fraction] = {tuple(1 if i == 0 else 0 for i in range(n)): a}
        if b:
            terms[tuple(2 if i == 0 else 0 for i in range(n))] = b
        for e in chosen:
            terms[e] = terms.get(e, 0) + _coef(rng)
        rho = " + ".join(_term(c, e) for e, c in sorted(terms.items())) + f" - {a + b}"
        key = (n, rho)
        if key in seen:
            continue
        seen.add(key)
        point = ("1",) + ("0",) * (n - 1)
        out.append(GeneratedCase(f"gen{len(out):02d}", n, rho, point))
    return out
