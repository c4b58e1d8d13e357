"""Reader for ``.dom`` domain description files.

Example::

    [domain]
    n = 3
    model = modulus            # or: log
    rho = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
    seed = 7                   # optional
    [point]
    p = ("1", "0", "0")
    [expect]                   # optional
    regular = 6
    qtypes = (1, 4, 6)
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from .exact import ExactComplex, parse_complex
from .geometry import DomainSpec
from .germ import Germ, GermError, parse_germ

__all__ = ["DomainFile", "DomainFileError", "read_domain", "parse_domain_text", "EXPECT_KEYS"]

EXPECT_KEYS = ("check", "line", "regular", "variety", "qtypes", "multitype")
MODELS = {"modulus": "MOD", "log": "LOG"}

Expected = Union[str, Fraction, Tuple[Union[str, Fraction], ...]]


class DomainFileError(GermError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


@dataclass
class DomainFile:
    path: str
    n: int
    model: str
    rho_text: str
    point: Tuple[ExactComplex, ...]
    germ: Germ
    seed: int = 0
    expect: Dict[str, Expected] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return Path(self.path).stem

    def domain(self) -> DomainSpec:
        return DomainSpec(self.n, self.germ)


def _unquote(s: str) -> str:
    s = s.strip()
    if len(s) >= 2 and s[0] == s[-1] and s[0] in "\"'":
        return s[1:-1]
    return s


def _tuple(s: str) -> Tuple[str, ...]:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return tuple(_unquote(x) for x in s.split(",") if x.strip())


def _expect_value(s: str) -> Expected:
    s = s.strip()
    if s.startswith("("):
        return tuple(_scalar(x) for x in _tuple(s))
    return _scalar(s)


def _scalar(s: str):
    s = _unquote(s).strip()
    if s in ("inf", "infinite", "pseudoconvex", "not_pseudoconvex"):
        return s
    return Fraction(s)


def _line_of(text: str, key: str) -> Optional[int]:
    for i, line in enumerate(text.splitlines(), 1):
        if re.match(rf"\s*{key}\s*=", line):
            return i
    return None


def parse_domain_text(text: str, path: str = "<string>") -> DomainFile:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",), comment_prefixes=("#",))
    try:
        cp.read_string(text, source=path)
    except configparser.Error as exc:
        raise DomainFileError(f"malformed domain file: {exc}") from exc
    for sec in ("domain", "point"):
        if not cp.has_section(sec):
            raise DomainFileError(f"missing [{sec}] section")
    dom = cp["domain"]
    try:
        n = int(dom["n"])
    except (KeyError, ValueError) as exc:
        raise DomainFileError("[domain] needs an integer n", _line_of(text, "n")) from exc
    model_name = _unquote(dom.get("model", "modulus")).lower()
    if model_name not in MODELS:
        raise DomainFileError(f"unknown model {model_name!r}", _line_of(text, "model"))
    if "rho" not in dom:
        raise DomainFileError("[domain] needs rho", None)
    rho = _unquote(dom["rho"])
    if "p" not in cp["point"]:
        raise DomainFileError("[point] needs p")
    try:
        point = tuple(parse_complex(x) for x in _tuple(cp["point"]["p"]))
    except ValueError as exc:
        raise DomainFileError(str(exc), _line_of(text, "p")) from exc
    if len(point) != n:
        raise DomainFileError(f"point has {len(point)} entries but n = {n}", _line_of(text, "p"))
    rho_line = _line_of(text, "rho")
    try:
        germ = parse_germ(rho, n, point)
    except GermError as exc:
        raise DomainFileError(f"rho: {exc}", rho_line) from exc
    if germ.model != MODELS[model_name]:
        raise DomainFileError(f"rho is not a {model_name} expression", rho_line)
    seed = int(dom.get("seed", "0"))
    expect: Dict[str, Expected] = {}
    if cp.has_section("expect"):
        for k, v in cp["expect"].items():
            if k not in EXPECT_KEYS:
                raise DomainFileError(f"unknown expectation {k!r}", _line_of(text, k))
            expect[k] = _expect_value(v)
    return DomainFile(path, n, MODELS[model_name], rho, point, germ, seed, expect)


def read_domain(path) -> DomainFile:
    text = Path(path).read_text(encoding="utf-8")
    return parse_domain_text(text, str(path))
