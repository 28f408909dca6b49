# Purpose: Tests for core/local2d.py.
# Covers: intersection multiplicity against the truncated local length,
#         infinite and empty intersections, factored entry validation,
#         residues at primes through the origin, mult_index, and the
#         reciprocity sum on k[x,y] at the origin.

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k2slot.core.bivariate import BivariatePoly
from k2slot.core.gf import ConstantPolynomial, field_make
from k2slot.core.local2d import (
    FactoredBivariate,
    InfiniteIntersection,
    LocalSymbol,
    NotCoprime,
    NotSquarefree,
    NotThroughOrigin,
    SharedComponent,
    intersection_multiplicity,
    local_residue,
    mult_index,
    prime_valuation,
    reciprocity_2d,
    truncated_local_length,
)

F3 = field_make(3, m=2)
F5 = field_make(5, m=4)

X = BivariatePoly.x(F5)
Y = BivariatePoly.y(F5)
ONE = BivariatePoly.constant(F5, 1)


def fb(fld, unit, *factors):
    return FactoredBivariate(fld, unit, tuple(factors))


# ---------------------------------------------------------------------------
# Intersection multiplicity
# ---------------------------------------------------------------------------


CURVE_PAIRS = [
    (Y, Y - X ** 2, 2),
    (Y ** 2 - X ** 3, Y, 3),
    (Y ** 2 - X ** 3, X, 2),
    (Y ** 2 - X ** 3, Y ** 2 + X ** 3, 6),
    (Y - X ** 2, Y + X ** 2, 2),  # tacnode
    (Y - X ** 2, Y - X ** 2 - X ** 3, 3),
    (X * Y, X + Y, 2),
    (X * (Y - X), Y - X ** 3, 2),
    (Y ** 2 - X ** 3, Y - X ** 2, 3),
]


@pytest.mark.parametrize("f,g,expected", CURVE_PAIRS)
def test_intersection_multiplicity_matches_local_length(f, g, expected):
    assert intersection_multiplicity(f, g) == expected
    assert intersection_multiplicity(g, f) == expected
    assert truncated_local_length(f, g) == expected


def test_multiplicity_is_zero_off_the_origin():
    assert intersection_multiplicity(Y + ONE, X) == 0
    assert truncated_local_length(Y + ONE, X) == 0


def test_shared_component_gives_infinity():
    assert intersection_multiplicity(Y, X * Y) == math.inf
    assert intersection_multiplicity(Y - X, (Y - X) * (Y + ONE)) == math.inf


def test_truncated_length_gives_up_at_max_degree():
    assert truncated_local_length(Y, X * Y, max_degree=4) == math.inf


# ---------------------------------------------------------------------------
# Factored entries
# ---------------------------------------------------------------------------


def test_validate_accepts_coprime_squarefree_factors():
    u = fb(F5, 2, (X, 1), (Y - X ** 2, 3))
    assert u.validate() is u


def test_validate_rejects_bad_factors():
    with pytest.raises(NotSquarefree):
        fb(F5, 1, (Y ** 2, 1)).validate()
    with pytest.raises(NotCoprime):
        fb(F5, 1, (X, 1), (X * (Y + ONE), 1)).validate()
    with pytest.raises(ConstantPolynomial):
        fb(F5, 1, (ONE.scale(3), 1)).validate()


def test_render():
    assert fb(F5, 1, (X, 1), (Y - X, 2)).render() == "x*(y+4*x)^2"
    assert fb(F5, 3).render() == "3"
    assert fb(F5, 2, (Y, -1)).render() == "2*y^-1"


# ---------------------------------------------------------------------------
# Residues and multiplicities
# ---------------------------------------------------------------------------


def test_prime_valuation_counts_associates():
    u = fb(F5, 1, (Y - X, 2), (X, 1))
    assert prime_valuation((X - Y).scale(2), u) == 2
    with pytest.raises(NotThroughOrigin):
        prime_valuation(Y + ONE, u)


def test_local_residue_of_x_y():
    """{x, y} at x is y; at y it is x^-1."""
    s = LocalSymbol(fb(F5, 1, (X, 1)), fb(F5, 1, (Y, 1)))
    assert local_residue(s, X) == fb(F5, 1, (Y, 1))
    assert local_residue(s, Y) == fb(F5, 1, (X, -1))


def test_local_residue_sign_and_scalars():
    """{3x, 2x} at x: (-1)^1 * (3x)^-1 * (2x) = -2/3."""
    s = LocalSymbol(fb(F5, 3, (X, 1)), fb(F5, 2, (X, 1)))
    res = local_residue(s, X)
    assert res.factors == ()
    assert res.unit == F5.neg(F5.div(2, 3))


def test_mult_index():
    assert mult_index(Y, fb(F5, 1, (Y - X ** 2, 1)), F5) == 2
    assert mult_index(Y, fb(F5, 1, (X, 1), (Y - X, 2)), F5) == 3
    assert mult_index(Y, fb(F5, 4, (Y + ONE, 3)), F5) == 0
    assert mult_index(Y, fb(F5, 1, (X, 5)), F5) == 1


def test_mult_index_errors():
    with pytest.raises(SharedComponent):
        mult_index(Y, fb(F5, 1, (Y.scale(2), 1)), F5)
    with pytest.raises(NotThroughOrigin):
        mult_index(Y + ONE, fb(F5, 1, (X, 1)), F5)
    with pytest.raises(NotSquarefree):
        mult_index(X ** 2, fb(F5, 1, (Y, 1)), F5)
    with pytest.raises(NotSquarefree):
        prime_valuation((Y - X) ** 3, fb(F5, 1, (Y, 1)))


# ---------------------------------------------------------------------------
# Reciprocity
# ---------------------------------------------------------------------------


def test_reciprocity_for_x_y_over_f3():
    x, y = BivariatePoly.x(F3), BivariatePoly.y(F3)
    s = LocalSymbol(fb(F3, 1, (x, 1)), fb(F3, 1, (y, 1)))
    holds, total, breakdown = reciprocity_2d([s])
    assert (holds, total) == (True, 0)
    assert [(c.prime.render(), c.residue.render(), c.index) for c in breakdown] == [
        ("x", "y", 1),
        ("y", "x^-1", 1),
    ]


def test_reciprocity_of_empty_list():
    assert reciprocity_2d([]) == (True, 0, [])


PRIMES = [X, Y, Y - X, Y - X ** 2, X + Y ** 2, Y + ONE]


@st.composite
def factored(draw):
    picks = draw(st.dictionaries(st.integers(0, len(PRIMES) - 1), st.integers(1, 3), min_size=1, max_size=3))
    unit = draw(st.integers(1, 4))
    return fb(F5, unit, *((PRIMES[i], e) for i, e in sorted(picks.items())))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(factored(), factored(), st.integers(1, 3)), min_size=1, max_size=3))
def test_reciprocity_holds_for_random_symbols(entries):
    symbols = [LocalSymbol(a, b, c) for a, b, c in entries]
    holds, total, breakdown = reciprocity_2d(symbols)
    assert holds and total == 0
    assert all(c.prime.vanishes_at_origin() for c in breakdown)


def test_infinite_intersection_is_reported():
    with pytest.raises(InfiniteIntersection):
        mult_index(Y - X, fb(F5, 1, ((Y - X) * (X + ONE), 1)), F5)
