"""F_q[y] arithmetic, irreducibility, and enumeration."""

import pytest

from skewsf import fqpoly
from skewsf.errors import ParseError
from skewsf.fqpoly import CentralPoly


def test_enumeration_known_values():
    assert [f.coeffs for f in fqpoly.irreducibles(2, 2)] == [(1, 1, 1)]
    got = [f.pretty() for f in fqpoly.irreducibles(3, 2)]
    assert got == ["y^2 + 1", "y^2 + y + 2", "y^2 + 2*y + 2"]
    assert len(fqpoly.irreducibles(4, 2)) == 6


@pytest.mark.parametrize(
    "q,d,expected",
    [(2, 2, 1), (3, 2, 3), (2, 1, 2), (5, 1, 5), (3, 3, 8), (2, 6, 9), (4, 3, 20)],
)
def test_count_matches_enumeration(q, d, expected):
    assert fqpoly.count_irreducible(q, d) == expected
    assert len(fqpoly.irreducibles(q, d)) == expected


def test_sieve_agrees_with_trial_division():
    # force both paths on the same input
    direct = tuple(
        f
        for m in range(5**5)
        if (f := CentralPoly.from_index(5, 5, m)).is_irreducible()
    )
    assert fqpoly._sieve_irreducibles(5, 5) == direct


def test_theta_cross_check():
    for q in (2, 3, 4, 9):
        for d in range(1, 7):
            assert fqpoly.subfield_element_count(q, d) == q**d - d * fqpoly.count_irreducible(q, d)


def test_divmod_and_gcd():
    a = CentralPoly(3, (2, 1, 1))
    b = CentralPoly(3, (1, 1))
    q, r = divmod(a, b)
    assert (q * b + r) == a and r.degree < b.degree
    assert a.gcd(a * b) == a.monic()
    g = CentralPoly(3, (1, 0, 1))
    assert a.lcm(g) == (a * g).monic()


def test_parse_and_render():
    f = CentralPoly.parse(2, "y^2 + y + 1")
    assert f.coeffs == (1, 1, 1)
    assert f.grammar() == "1 + 1*y + 1*y^2"
    assert f.pretty() == "y^2 + y + 1"
    g = CentralPoly.parse(3, "1 + 2*y + 1*y^2")
    assert g.coeffs == (1, 2, 1)
    assert CentralPoly.parse(3, "[1, 2, 1]") == g
    with pytest.raises(ParseError):
        CentralPoly.parse(2, "y + y")
    with pytest.raises(ParseError):
        CentralPoly.parse(2, "z^2")


def test_index_roundtrip():
    for m in range(27):
        f = CentralPoly.from_index(3, 3, m)
        assert f.index() == m


def test_pfrob_on_coefficients():
    f = CentralPoly(4, (2, 1, 1))
    g = f.pfrob(1)  # squares each coefficient in F_4
    assert g.coeffs == (3, 1, 1)
    assert f.pfrob(0) == f
