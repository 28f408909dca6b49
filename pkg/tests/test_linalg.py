# Purpose: Tests for core/linalg.py.
# Covers: numpy rank over prime fields against the generic echelon form,
#         kernel dimension, determinant sign under row swaps.

from hypothesis import given, settings
from hypothesis import strategies as st

from k2slot.core.funcfield import Place
from k2slot.core.gf import Poly, field_make
from k2slot.core.linalg import determinant, form_echelon, kernel_dimension, rank

F7 = field_make(7, m=3)
F9 = field_make(3, 2, (1, 0, 1), 2)


def _generic_rank(rows, fld):
    work = [list(r) for r in rows]
    free, _ = form_echelon(work, fld)
    return len(rows[0]) - len(free)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=5))
def test_numpy_rank_matches_echelon(rows):
    """The numpy path and the generic elimination must agree over F_7."""
    assert rank(rows, F7) == _generic_rank(rows, F7)


def test_rank_of_dependent_rows():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows, F7) == 2
    assert kernel_dimension(rows, 3, F7) == 1


def test_rank_over_tower_field():
    """Over F_9 the rows (1, u) and (u, -1) are proportional since u*u = -1."""
    u = F9.generator_element()
    rows = [[1, u], [u, F9.neg(1)]]
    assert rank(rows, F9) == 1


def test_kernel_dimension_of_empty_system():
    assert kernel_dimension([], 5, F7) == 5


def test_determinant_tracks_row_swaps():
    """det [[0,1],[1,0]] = -1."""
    assert determinant([[0, 1], [1, 0]], F7) == 6
    assert determinant([[2, 0], [0, 3]], F7) == 6
    assert determinant([[1, 2], [2, 4]], F7) == 0


def test_rank_over_residue_field():
    """Elimination runs over a residue field F_7[t]/(t^2+t+3) through its field operations."""
    kappa = Place.finite(Poly(F7, (3, 1, 1))).residue_field()
    t = Poly(F7, (0, 1))
    one = kappa.one
    rows = [[one, t], [t, kappa.mul(t, t)]]
    assert rank(rows, kappa) == 1
