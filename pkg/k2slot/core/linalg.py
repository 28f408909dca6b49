# Purpose: Exact Gaussian elimination over the finite fields of gf.py and
#          funcfield.py: echelon form, rank, kernel dimension, determinant.
# Relationships: Used by cyclic_algebra.py (center, zero divisors) and
#               local2d.py (truncated local algebra oracle).
#
# Matrices are lists of rows. Elimination works through the FieldOps
# protocol so the same code serves F_q (int elements) and F_q[t]/(P)
# (Poly elements). Prime fields take a numpy path for rank, since the
# local-algebra oracle builds matrices with a few hundred rows.

from typing import Any, Protocol, Sequence

import numpy as np

from .gf import FieldSpec


class FieldOps(Protocol):
    zero: Any
    one: Any

    def add(self, a: Any, b: Any) -> Any: ...

    def sub(self, a: Any, b: Any) -> Any: ...

    def mul(self, a: Any, b: Any) -> Any: ...

    def neg(self, a: Any) -> Any: ...

    def inv(self, a: Any) -> Any: ...


def form_echelon(rows: list[list[Any]], fld: FieldOps) -> tuple[list[int], int]:
    """
    Reduce `rows` in place to row echelon form.

    Returns (free column indices, number of row swaps).
    """
    free_vars: list[int] = []
    swaps = 0
    n_rows = len(rows)
    if n_rows == 0:
        return free_vars, swaps
    n_cols = len(rows[0])
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            free_vars.append(piv_c)
            continue
        for i_row in range(piv_r, n_rows):
            if rows[i_row][piv_c]:
                break
        else:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            rows[piv_r], rows[i_row] = rows[i_row], rows[piv_r]
            swaps += 1
        inv_p = fld.inv(rows[piv_r][piv_c])
        pivot_row = rows[piv_r]
        for r in range(piv_r + 1, n_rows):
            fr = rows[r][piv_c]
            if not fr:
                continue
            frp = fld.mul(fr, inv_p)
            row = rows[r]
            for c in range(piv_c, n_cols):
                if pivot_row[c]:
                    row[c] = fld.sub(row[c], fld.mul(pivot_row[c], frp))
        piv_r += 1
    return free_vars, swaps


def _rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = np.array(rows, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, c]), -1, p)) % p
        below = a[rank + 1:, c].copy()
        mask = below != 0
        if mask.any():
            a[rank + 1:][mask] = (a[rank + 1:][mask] - np.outer(below[mask], a[rank])) % p
        rank += 1
    return rank


def rank(rows: Sequence[Sequence[Any]], fld: FieldOps) -> int:
    if not rows or not rows[0]:
        return 0
    if isinstance(fld, FieldSpec) and fld.e == 1:
        return _rank_mod_p(rows, fld.p)
    work = [list(r) for r in rows]
    free_vars, _ = form_echelon(work, fld)
    return len(work[0]) - len(free_vars)


def kernel_dimension(rows: Sequence[Sequence[Any]], n_cols: int, fld: FieldOps) -> int:
    """Dimension of {v : rows . v = 0} in a space with n_cols coordinates."""
    if not rows:
        return n_cols
    return n_cols - rank(rows, fld)


def determinant(rows: Sequence[Sequence[Any]], fld: FieldOps) -> Any:
    n = len(rows)
    work = [list(r) for r in rows]
    free_vars, swaps = form_echelon(work, fld)
    if free_vars:
        return fld.zero
    det = fld.one
    for i in range(n):
        det = fld.mul(det, work[i][i])
    return fld.neg(det) if swaps % 2 else det
