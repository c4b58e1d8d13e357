"""Exact scalars, Gaussian rationals and truncated series in one complex variable.

Two series kinds are provided:

* :class:`TruncSeries` -- holomorphic series ``sum a_j zeta^j`` kept up to a
  fixed truncation order.
* :class:`HermSeries` -- real-valued series ``sum c_{j,k} zeta^j conj(zeta)^k``
  with ``c_{j,k} = conj(c_{k,j})``, again kept up to total degree ``trunc``.

All coefficients are exact.  Orders of vanishing are discrete invariants, so
nothing in here ever touches a float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq
from typing import Dict, Iterable, Iterator, List, Tuple, Union

ExactScalar = Fraction
_MPQ = type(mpq())
_MPQ_ZERO = mpq(0)


def _to_mpq(x):
    if type(x) is _MPQ:
        return x
    if isinstance(x, Fraction):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def _to_frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))

__all__ = [
    "ExactScalar",
    "ExactComplex",
    "TruncSeries",
    "HermSeries",
    "ZeroUpTo",
    "KindMismatchError",
    "SeriesDomainError",
    "UnsupportedExponentError",
    "as_complex",
    "parse_complex",
    "series_arith",
    "analytic_apply",
    "modulus_power",
    "vanishing_order",
]


class KindMismatchError(TypeError):
    """Raised when holomorphic and Hermitian series are mixed."""


class SeriesDomainError(ValueError):
    """Raised when an analytic function is applied outside its domain."""


class UnsupportedExponentError(ValueError):
    pass


class ExactComplex:
    """Gaussian rational ``re + im*i``.

    Parts are stored as ``gmpy2.mpq``, which compares and hashes like
    :class:`fractions.Fraction` but is an order of magnitude faster.
    """

    __slots__ = ("_r", "_i")

    def __init__(self, re=0, im=0):
        self._r = re if type(re) is _MPQ else _to_mpq(re)
        self._i = im if type(im) is _MPQ else _to_mpq(im)

    @classmethod
    def _raw(cls, re, im) -> "ExactComplex":
        obj = object.__new__(cls)
        obj._r = re
        obj._i = im
        return obj

    def __add__(self, other):
        other = as_complex(other)
        return ExactComplex._raw(self._r + other._r, self._i + other._i)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_complex(other)
        return ExactComplex._raw(self._r - other._r, self._i - other._i)

    def __rsub__(self, other):
        return as_complex(other) - self

    def __neg__(self):
        return ExactComplex._raw(-self._r, -self._i)

    def __mul__(self, other):
        if type(other) is ExactComplex:
            a, b, c, d = self._r, self._i, other._r, other._i
            if not b and not d:
                return ExactComplex._raw(a * c, b)
            return ExactComplex._raw(a * c - b * d, a * d + b * c)
        other = _to_mpq(other)
        return ExactComplex._raw(self._r * other, self._i * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_complex(other)
        den = other._r * other._r + other._i * other._i
        if not den:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conj()
        return ExactComplex._raw(num._r / den, num._i / den)

    def __rtruediv__(self, other):
        return as_complex(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return ExactComplex(1) / (self ** (-e))
        result = ExactComplex(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "ExactComplex":
        return ExactComplex._raw(self._r, -self._i)

    @property
    def re(self) -> Fraction:
        return _to_frac(self._r)

    @property
    def im(self) -> Fraction:
        return _to_frac(self._i)

    def abs2(self) -> Fraction:
        return _to_frac(self._r * self._r + self._i * self._i)

    def is_real(self) -> bool:
        return not self._i

    def __bool__(self):
        return bool(self._r) or bool(self._i)

    def __eq__(self, other):
        try:
            other = as_complex(other)
        except TypeError:
            return NotImplemented
        return self._r == other._r and self._i == other._i

    def __hash__(self):
        if not self._i:
            return hash(self._r)
        return hash((self._r, self._i))

    def __complex__(self):
        return complex(float(self._r), float(self._i))

    def __repr__(self):
        return f"ExactComplex({self})"

    def __str__(self):
        return format_complex(self)


def as_complex(x) -> ExactComplex:
    if type(x) is ExactComplex:
        return x
    if isinstance(x, (int, Fraction, _MPQ)):
        return ExactComplex._raw(_to_mpq(x), _MPQ_ZERO)
    if isinstance(x, str):
        return parse_complex(x)
    raise TypeError(f"cannot convert {x!r} to an exact complex number")


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?P<im>[+-](?:\d+(?:/\d+)?)?)i|(?P<only_re>{_RAT})|(?P<only_im>[+-]?(?:\d+(?:/\d+)?)?)i)$"
)


def _rat_or_unit(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def parse_complex(text: str) -> ExactComplex:
    """Parse literals like ``"1/2"``, ``"-i"``, ``"1/2+3/4i"``."""
    s = text.strip().replace(" ", "").replace("−", "-")
    m = _COMPLEX_RE.match(s)
    if not m:
        raise ValueError(f"not an exact complex literal: {text!r}")
    if m.group("only_re") is not None:
        return ExactComplex(Fraction(m.group("only_re")))
    if m.group("only_im") is not None:
        return ExactComplex(0, _rat_or_unit(m.group("only_im")))
    return ExactComplex(Fraction(m.group("re")), _rat_or_unit(m.group("im")))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_complex(z: ExactComplex) -> str:
    if not z.im:
        return format_rational(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = format_rational(z.im) + "i"
    if not z.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"{format_rational(z.re)}{sign}{im}"


ZERO = ExactComplex(0)
ONE = ExactComplex(1)


@dataclass(frozen=True)
class ZeroUpTo:
    """Sentinel: every stored coefficient vanishes up to ``trunc``."""

    trunc: int

    def __str__(self):
        return f"zero_up_to_truncation({self.trunc})"


Order = Union[int, ZeroUpTo]


class TruncSeries:
    """Holomorphic series in zeta, exact up to ``trunc`` (inclusive)."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: Iterable, trunc: int | None = None):
        cs = [as_complex(c) for c in coeffs]
        if trunc is None:
            trunc = max(len(cs) - 1, 0)
        if trunc < 0:
            raise ValueError("truncation order must be non-negative")
        cs = cs[: trunc + 1]
        cs.extend([ZERO] * (trunc + 1 - len(cs)))
        self.coeffs: Tuple[ExactComplex, ...] = tuple(cs)
        self.trunc = trunc

    @classmethod
    def _from_list(cls, cs: List[ExactComplex], trunc: int) -> "TruncSeries":
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.trunc = trunc
        return obj

    @classmethod
    def constant(cls, c, trunc: int) -> "TruncSeries":
        return cls([c], trunc)

    @classmethod
    def monomial(cls, c, power: int, trunc: int) -> "TruncSeries":
        cs = [ZERO] * (trunc + 1)
        if power <= trunc:
            cs[power] = as_complex(c)
        return cls._from_list(cs, trunc)

    def __getitem__(self, j: int) -> ExactComplex:
        return self.coeffs[j] if 0 <= j <= self.trunc else ZERO

    def __len__(self):
        return self.trunc + 1

    def __iter__(self) -> Iterator[ExactComplex]:
        return iter(self.coeffs)

    def truncate(self, trunc: int) -> "TruncSeries":
        if trunc >= self.trunc:
            return self
        return TruncSeries._from_list(list(self.coeffs[: trunc + 1]), trunc)

    def _check(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, HermSeries):
            raise KindMismatchError("cannot combine TruncSeries with HermSeries")
        return TruncSeries.constant(other, self.trunc)

    def __add__(self, other):
        other = self._check(other)
        n = min(self.trunc, other.trunc)
        return TruncSeries._from_list([self.coeffs[j] + other.coeffs[j] for j in range(n + 1)], n)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        n = min(self.trunc, other.trunc)
        return TruncSeries._from_list([self.coeffs[j] - other.coeffs[j] for j in range(n + 1)], n)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return TruncSeries._from_list([-c for c in self.coeffs], self.trunc)

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, HermSeries)):
            c = as_complex(other)
            return TruncSeries._from_list([a * c for a in self.coeffs], self.trunc)
        other = self._check(other)
        n = min(self.trunc, other.trunc)
        a = self.coeffs
        b = other.coeffs
        lo_a = self.order_or(n + 1)
        lo_b = other.order_or(n + 1)
        out = [ZERO] * (n + 1)
        for j in range(lo_a, n + 1 - lo_b):
            aj = a[j]
            if not aj:
                continue
            for k in range(lo_b, n + 1 - j):
                bk = b[k]
                if bk:
                    out[j + k] = out[j + k] + aj * bk
        return TruncSeries._from_list(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("int_pow exponent must be non-negative")
        result = TruncSeries.constant(1, self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self) -> "TruncSeries":
        """Coefficientwise conjugate (the series of conj(f(conj zeta)))."""
        return TruncSeries._from_list([c.conj() for c in self.coeffs], self.trunc)

    def order_or(self, default: int) -> int:
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return default

    def derivative(self) -> "TruncSeries":
        if self.trunc == 0:
            return TruncSeries([0], 0)
        return TruncSeries._from_list(
            [self.coeffs[j] * j for j in range(1, self.trunc + 1)], self.trunc - 1
        )

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.trunc))

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def __repr__(self):
        terms = [f"({c})*z^{j}" for j, c in enumerate(self.coeffs) if c]
        return f"TruncSeries({' + '.join(terms) or '0'}; O(z^{self.trunc + 1}))"


class HermSeries:
    """Real-valued series in (zeta, conj zeta), exact for total degree <= trunc.

    ``coeffs`` maps ``(j, k)`` to the coefficient of ``zeta^j conj(zeta)^k``;
    zero coefficients are not stored.
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: Dict[Tuple[int, int], object] | None = None, trunc: int = 0, check: bool = True):
        cs: Dict[Tuple[int, int], ExactComplex] = {}
        for (j, k), c in (coeffs or {}).items():
            if j < 0 or k < 0:
                raise ValueError("negative exponent in HermSeries")
            if j + k <= trunc:
                c = as_complex(c)
                if c:
                    cs[(j, k)] = c
        if check:
            for (j, k), c in cs.items():
                if cs.get((k, j), ZERO) != c.conj():
                    raise ValueError(f"Hermitian symmetry violated at {(j, k)}")
        self.coeffs = cs
        self.trunc = trunc

    @classmethod
    def _raw(cls, cs: Dict[Tuple[int, int], ExactComplex], trunc: int) -> "HermSeries":
        obj = object.__new__(cls)
        obj.coeffs = cs
        obj.trunc = trunc
        return obj

    @classmethod
    def constant(cls, c, trunc: int) -> "HermSeries":
        c = Fraction(c)
        return cls._raw({(0, 0): ExactComplex(c)} if c else {}, trunc)

    @classmethod
    def from_product(cls, f: TruncSeries, g: TruncSeries, trunc: int | None = None, scale=1) -> "HermSeries":
        """``scale * (f g~ + g f~) / 2`` where ``g~`` is the antiholomorphic conjugate."""
        n = min(f.trunc, g.trunc) if trunc is None else trunc
        scale = Fraction(scale) / 2
        out: Dict[Tuple[int, int], ExactComplex] = {}
        for j in range(n + 1):
            fj, gj = f[j], g[j]
            if not fj and not gj:
                continue
            for k in range(n + 1 - j):
                c = fj * g[k].conj() + gj * f[k].conj()
                if c:
                    out[(j, k)] = out.get((j, k), ZERO) + c * scale
        return cls._raw({key: v for key, v in out.items() if v}, n)

    def __getitem__(self, jk: Tuple[int, int]) -> ExactComplex:
        return self.coeffs.get(jk, ZERO)

    def _check(self, other) -> "HermSeries":
        if isinstance(other, HermSeries):
            return other
        if isinstance(other, TruncSeries):
            raise KindMismatchError("cannot combine HermSeries with TruncSeries")
        return HermSeries.constant(other, self.trunc)

    def _combine(self, other, sign: int) -> "HermSeries":
        other = self._check(other)
        n = min(self.trunc, other.trunc)
        out = {k: v for k, v in self.coeffs.items() if sum(k) <= n}
        for key, v in other.coeffs.items():
            if sum(key) > n:
                continue
            s = out.get(key, ZERO) + (v if sign > 0 else -v)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return HermSeries._raw(out, n)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return HermSeries._raw({k: -v for k, v in self.coeffs.items()}, self.trunc)

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, HermSeries)):
            c = Fraction(other)
            return HermSeries._raw({k: v * c for k, v in self.coeffs.items()} if c else {}, self.trunc)
        other = self._check(other)
        n = min(self.trunc, other.trunc)
        out: Dict[Tuple[int, int], ExactComplex] = {}
        for (j1, k1), a in self.coeffs.items():
            if j1 + k1 > n:
                continue
            for (j2, k2), b in other.coeffs.items():
                j, k = j1 + j2, k1 + k2
                if j + k <= n:
                    out[(j, k)] = out.get((j, k), ZERO) + a * b
        return HermSeries._raw({k: v for k, v in out.items() if v}, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("int_pow exponent must be non-negative")
        result = HermSeries.constant(1, self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_hermitian(self) -> bool:
        return all(self.coeffs.get((k, j), ZERO) == c.conj() for (j, k), c in self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, HermSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __call__(self, z: complex) -> complex:
        zb = z.conjugate()
        return sum(complex(c) * z**j * zb**k for (j, k), c in self.coeffs.items())

    def __repr__(self):
        terms = [f"({c})*z^{j}*zb^{k}" for (j, k), c in sorted(self.coeffs.items())]
        return f"HermSeries({' + '.join(terms) or '0'}; trunc={self.trunc})"


AnySeries = Union[TruncSeries, HermSeries]


def series_arith(a: AnySeries, b, op: str) -> AnySeries:
    """Dispatch ``add``/``sub``/``mul``/``int_pow`` on two series of the same kind."""
    if op == "int_pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError("int_pow exponent must be a non-negative integer")
        return a**b
    if type(a) is not type(b):
        raise KindMismatchError(f"cannot {op} {type(a).__name__} and {type(b).__name__}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def _exp_series(s: TruncSeries) -> TruncSeries:
    # e' = s' e, solved coefficientwise
    n = s.trunc
    a = s.coeffs
    e = [ZERO] * (n + 1)
    e[0] = ONE
    for m in range(1, n + 1):
        acc = ZERO
        for j in range(1, m + 1):
            if a[j]:
                acc = acc + a[j] * e[m - j] * j
        e[m] = acc * Fraction(1, m)
    return TruncSeries._from_list(e, n)


def _log1p_series(s: TruncSeries) -> TruncSeries:
    # L' = s' / (1 + s)
    n = s.trunc
    a = s.coeffs
    L = [ZERO] * (n + 1)
    for m in range(1, n + 1):
        acc = a[m] * m
        for j in range(1, m):
            if a[m - j] and L[j]:
                acc = acc - L[j] * a[m - j] * j
        L[m] = acc * Fraction(1, m)
    return TruncSeries._from_list(L, n)


def _reciprocal_series(s: TruncSeries) -> TruncSeries:
    n = s.trunc
    a = s.coeffs
    inv0 = ONE / a[0]
    r = [ZERO] * (n + 1)
    r[0] = inv0
    for m in range(1, n + 1):
        acc = ZERO
        for j in range(1, m + 1):
            if a[j] and r[m - j]:
                acc = acc + a[j] * r[m - j]
        r[m] = -acc * inv0
    return TruncSeries._from_list(r, n)


def analytic_apply(f: str, s: TruncSeries) -> TruncSeries:
    """Compose ``exp``, ``log1p`` or the reciprocal (``int_pow_inverse``) with ``s``.

    ``exp`` needs a zero constant term: ``e^c`` is irrational for rational
    ``c != 0``, so it cannot be represented.
    """
    if not isinstance(s, TruncSeries):
        raise KindMismatchError("analytic_apply expects a TruncSeries")
    if f == "exp":
        if s[0]:
            raise SeriesDomainError("exp of a series with nonzero constant term is not exact")
        return _exp_series(s)
    if f == "log1p":
        if s[0]:
            raise SeriesDomainError("log1p needs a series with zero constant term")
        return _log1p_series(s)
    if f in ("int_pow_inverse", "reciprocal"):
        if not s[0]:
            raise SeriesDomainError("reciprocal of a series with zero constant term")
        return _reciprocal_series(s)
    raise ValueError(f"unknown analytic function {f!r}")


def modulus_power(phi: TruncSeries, a) -> HermSeries:
    """``|phi|^(2a)`` as a Hermitian series; ``a`` must be a positive integer."""
    a_frac = Fraction(a)
    if a_frac.denominator != 1 or a_frac <= 0:
        raise UnsupportedExponentError(f"modulus_power needs a positive integer exponent, got {a}")
    f = phi ** int(a_frac)
    return hermitian_square(f)


def hermitian_square(f: TruncSeries, trunc: int | None = None) -> HermSeries:
    """``f(zeta) * conj(f(zeta))``."""
    n = f.trunc if trunc is None else min(trunc, f.trunc)
    cs = f.coeffs
    nz = [(j, c) for j, c in enumerate(cs[: n + 1]) if c]
    out: Dict[Tuple[int, int], ExactComplex] = {}
    for j, a in nz:
        for k, b in nz:
            if j + k > n:
                break
            out[(j, k)] = a * b.conj()
    return HermSeries._raw(out, n)


def vanishing_order(s: AnySeries) -> Order:
    """Lowest degree (total degree for Hermitian series) of a nonzero term."""
    if isinstance(s, TruncSeries):
        for j, c in enumerate(s.coeffs):
            if c:
                return j
        return ZeroUpTo(s.trunc)
    if isinstance(s, HermSeries):
        if not s.coeffs:
            return ZeroUpTo(s.trunc)
        return min(j + k for (j, k) in s.coeffs)
    raise TypeError(f"not a series: {type(s).__name__}")


def order_le(a: Order, b: Order) -> bool:
    """Compare orders with the sentinel treated as larger than its truncation."""
    av = a.trunc + 0.5 if isinstance(a, ZeroUpTo) else a
    bv = b.trunc + 0.5 if isinstance(b, ZeroUpTo) else b
    return av <= bv
