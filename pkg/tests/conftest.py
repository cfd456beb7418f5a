import pytest
import sympy

from zzpa.exact import Poly

T = sympy.Symbol("t")


def to_sympy(p: Poly) -> sympy.Poly:
    return sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in p.coeffs])) or [0], T, domain="QQ")


def from_sympy(p: sympy.Poly) -> Poly:
    from fractions import Fraction
    return Poly([Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())])


@pytest.fixture(scope="session")
def markov1():
    """Positive bimodal zig-zag with lambda = (3 + sqrt 5)/2."""
    from zzpa.zigzag import require_periodic, zigzag_from_polynomial
    f = zigzag_from_polynomial(2, 1, Poly([1, -3, 1]))
    return f, require_periodic(f)


@pytest.fixture(scope="session")
def tent():
    from zzpa.zigzag import require_periodic, zigzag_from_polynomial
    f = zigzag_from_polynomial(1, 1, Poly([-1, -1, 1]))
    return f, require_periodic(f)


@pytest.fixture(scope="session")
def gpa():
    """Positive bimodal map with lambda = 1 + sqrt 2, not of pseudo-Anosov type."""
    from zzpa.zigzag import require_periodic, zigzag_from_polynomial
    f = zigzag_from_polynomial(2, 1, Poly([-1, -2, 1]))
    return f, require_periodic(f)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
