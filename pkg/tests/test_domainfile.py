import pytest

from rtype.domainfile import DomainFileError, parse_domain_text

GOOD = """# comment line
[domain]
n = 3
model = modulus            # or: log
rho = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
seed = 7
[point]
p = ("1", "0", "0")
[expect]
regular = 6
qtypes = (1, 4, 6)
line = inf
"""


def test_parse_good():
    df = parse_domain_text(GOOD, "x.dom")
    assert df.n == 3 and df.model == "MOD" and df.seed == 7
    assert df.expect["qtypes"] == (1, 4, 6)
    assert df.expect["line"] == "inf"
    assert df.name == "x"


@pytest.mark.parametrize(
    "old, new, line",
    [
        ('rho = "|z1|^2', 'rho = "z1 + |z1|^2', 5),
        ("model = modulus", "model = log", 5),
        ("model = modulus", "model = cubic", 4),
        ('p = ("1", "0", "0")', 'p = ("1", "0")', 8),
        ("regular = 6", "bogus = 6", 10),
    ],
)
def test_errors_carry_lines(old, new, line):
    with pytest.raises(DomainFileError) as exc:
        parse_domain_text(GOOD.replace(old, new))
    assert exc.value.line == line


def test_missing_sections():
    with pytest.raises(DomainFileError):
        parse_domain_text("[domain]\nn = 1\nrho = \"|z1|^2 - 1\"\n")
    with pytest.raises(DomainFileError):
        parse_domain_text("[domain]\nn = x\n[point]\np = (1)\n")
