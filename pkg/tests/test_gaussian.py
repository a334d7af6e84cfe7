from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from monogen.gaussian import GaussianRational as G, as_gaussian, format_scalar, imag_part, real_part

fracs = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
gauss = st.builds(G, fracs, fracs)


@given(gauss, gauss)
def test_arithmetic_matches_complex(x, y):
    # complex() is the oracle up to rounding
    for exact, approx in [(x + y, complex(x) + complex(y)), (x - y, complex(x) - complex(y)),
                          (x * y, complex(x) * complex(y))]:
        assert abs(complex(exact) - approx) <= 1e-9 * (1 + abs(approx))


@given(gauss)
def test_reciprocal_is_exact_inverse(x):
    if x:
        assert x * x.reciprocal() == 1
        assert x / x == 1
    else:
        with pytest.raises(ZeroDivisionError):
            x.reciprocal()


@given(gauss, st.integers(0, 6))
def test_power_is_repeated_product(x, k):
    acc = G(1)
    for _ in range(k):
        acc = acc * x
    assert x ** k == acc


def test_mixed_carriers():
    x = G(1, 2)
    assert isinstance(x + 1, G) and isinstance(x * Fraction(1, 3), G)
    assert isinstance(x + 0.5, complex)
    assert x * 1j == complex(-2, 1)
    assert G(3) == 3 and hash(G(3)) == hash(3)


def test_quads_roundtrip():
    x = G(Fraction(-3, 4), Fraction(5, 6))
    assert G.from_quad(x.to_quad()) == x
    assert as_gaussian([1, 2, 0, 1]) == G(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        G.from_quad([1, 0, 0, 1])


def test_immutable():
    with pytest.raises(AttributeError):
        G(1).re = 2


@pytest.mark.parametrize("value, text", [
    (G(2), "2"), (G(0, 1), "i"), (G(0, -1), "-i"), (G(0, 2), "2i"), (G(2, 2), "(2+2i)"),
    (G(1, -1), "(1-i)"), (G(Fraction(1, 2)), "1/2"), (2 + 2.0000000000001j, "(2+2i)"), (-0.0 + 0j, "0"),
])
def test_format_scalar(value, text):
    assert format_scalar(value) == text


def test_parts_stay_exact():
    assert real_part(G(Fraction(1, 3), 2)) == Fraction(1, 3)
    assert imag_part(5) == 0
    assert imag_part(1 + 2j) == 2.0
