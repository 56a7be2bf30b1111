import cmath
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hopfkit.scalars import Cyclotomic, PrimeField, Rationals, Scalar

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")


def to_complex(s: Scalar) -> complex:
    """Numerical embedding zeta_n -> exp(2 pi i / n); independent of the exact arithmetic."""
    f = s.field
    if f.kind == "Q":
        return complex(float(s.coeffs()[0]))
    n = f.n
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / n) for k, c in enumerate(s.coeffs()))


def close(a: complex, b: complex, tol: float = 1e-8) -> bool:
    return abs(a - b) <= tol * (1 + abs(a) + abs(b))


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyclo_scalars(draw, n=None):
    n = n or draw(st.sampled_from([3, 4, 5, 8, 12]))
    F = Cyclotomic(n)
    coeffs = draw(st.lists(fracs, min_size=1, max_size=n))
    return Scalar.from_coeffs(F, coeffs)


@st.composite
def gf_scalars(draw, p=None):
    p = p or draw(st.sampled_from([2, 3, 5, 7, 101]))
    return PrimeField(p)(draw(st.integers(0, p - 1)))


@pytest.fixture
def Q():
    return Rationals()


@pytest.fixture
def half():
    return Fraction(1, 2)


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""
    store = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(n: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
        store[n] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(ACCEPTANCE, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for n in sorted(store):
            terminalreporter.write_line(store[n])
