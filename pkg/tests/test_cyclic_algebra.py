# Purpose: Tests for core/cyclic_algebra.py.
# Covers: structure constants and the x^m = a, y^m = b, yx = omega xy
#         relations, associativity and center dimension, split witnesses
#         (exhaustive over small fields), input errors, residue field bases.

import pytest

from k2slot.core.cyclic_algebra import (
    BudgetExhausted,
    NonConstantEntries,
    ZeroParameter,
    build_algebra,
    center_dimension,
    multiply,
    reduced_norm_vanishes,
    split_witness,
    symbol_to_algebra,
)
from k2slot.core.funcfield import Place, RationalFunction
from k2slot.core.gf import Poly, field_make
from k2slot.core.k2 import Symbol2

F3 = field_make(3, m=2)
F5 = field_make(5, m=2)
F7_2 = field_make(7, m=2)
F7_3 = field_make(7, m=3)
F9 = field_make(3, 2, (1, 0, 1), 2)
F9_4 = field_make(3, 2, (1, 0, 1), 4)

SMALL = [F3, F5, F7_2, F7_3, F9]


def _power_vector(A, r, n):
    out = A.unit_vector(0)
    for _ in range(n):
        out = multiply(A, out, A.unit_vector(r))
    return out


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def test_defining_relations():
    """x^3 = a, y^3 = b and yx = omega xy in (3, 5) over F_7."""
    A = build_algebra(3, 5, F7_3)
    x, y = A.m, 1
    K = A.base
    assert _power_vector(A, x, 3) == [3] + [0] * 8
    assert _power_vector(A, y, 3) == [5] + [0] * 8
    xy = multiply(A, A.unit_vector(x), A.unit_vector(y))
    yx = multiply(A, A.unit_vector(y), A.unit_vector(x))
    assert yx == [K.mul(A.omega, c) for c in xy]
    assert A.omega == F7_3.zeta == 2


def test_basis_labels_and_table_shape():
    A = build_algebra(2, 3, F5)
    assert [A.basis_label(r) for r in range(4)] == ["1", "y", "x", "x*y"]
    table = A.coordinate_table()
    assert len(table) == 4 and all(len(row) == 4 and all(len(v) == 4 for v in row) for row in table)
    assert table[2][2] == [2, 0, 0, 0]


@pytest.mark.parametrize("fld", SMALL + [F9_4])
def test_center_is_one_dimensional(fld):
    for a in range(1, fld.q):
        A = build_algebra(a, fld.generator, fld)
        assert center_dimension(A) == 1


def test_symbol_to_algebra_uses_coefficient_power():
    """2*{3, 5} over F_7 with m = 3 is (3^2, 5) = (2, 5)."""
    s = Symbol2(RationalFunction.constant(F7_3, 3), RationalFunction.constant(F7_3, 5), 2)
    A = symbol_to_algebra(s, F7_3)
    assert (A.a, A.b) == (2, 5)


def test_symbol_to_algebra_rejects_non_constant_entries():
    t = RationalFunction.from_poly(Poly(F5, (0, 1)))
    with pytest.raises(NonConstantEntries):
        symbol_to_algebra(Symbol2(t, RationalFunction.constant(F5, 2)), F5)


def test_zero_parameter_is_rejected():
    with pytest.raises(ZeroParameter) as info:
        build_algebra(0, 3, F5)
    assert info.value.exit_code == 2


def test_algebra_over_residue_field():
    """(2, t) over kappa = F_5[t]/(t^2+2) is central of dimension 4."""
    kappa = Place.finite(Poly(F5, (2, 0, 1))).residue_field()
    t = Poly(F5, (0, 1))
    A = build_algebra(kappa.embed(2), t, F5, kappa)
    assert A.omega == kappa.embed(4)
    assert center_dimension(A) == 1


# ---------------------------------------------------------------------------
# Split witnesses
# ---------------------------------------------------------------------------


def test_quaternion_witness():
    """(2, 3) over F_5: 2*1 + 3*1 = 0 = 0^2."""
    assert split_witness(build_algebra(2, 3, F5)) == (1, 1, 0)


@pytest.mark.parametrize("fld", SMALL)
def test_every_algebra_over_a_finite_field_splits(fld):
    """Exhaustive over q <= 9 and m in {2, 3}: a witness exists and checks out."""
    K = fld
    for a in range(1, fld.q):
        for b in range(1, fld.q):
            A = build_algebra(a, b, fld)
            w = split_witness(A)
            if fld.m == 2:
                x0, y0, z0 = w
                assert any((x0, y0, z0))
                lhs = K.add(K.mul(a, K.mul(x0, x0)), K.mul(b, K.mul(y0, y0)))
                assert lhs == K.mul(z0, z0)
            else:
                assert any(w)
                assert reduced_norm_vanishes(A, w)


def test_unit_is_not_a_zero_divisor():
    A = build_algebra(3, 5, F7_3)
    assert not reduced_norm_vanishes(A, A.unit_vector(0))
    assert not reduced_norm_vanishes(A, A.unit_vector(A.m))


def test_witness_budget_exhaustion():
    with pytest.raises(BudgetExhausted) as info:
        split_witness(build_algebra(2, 3, F5), budget=1)
    assert info.value.exit_code == 1
