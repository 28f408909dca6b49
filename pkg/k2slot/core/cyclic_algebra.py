# Purpose: Symbol algebras (a, b)_omega over finite fields: structure
#          constants, associativity and center checks, split witnesses.
# Relationships: Uses linalg.py for kernels and determinants; base fields
#               are FieldSpec (F_q) or funcfield.ResidueField (kappa_v).
#
# Basis x^i y^j is indexed by i*m + j. Products of basis elements are a
# scalar times a basis element, so the table stores (scalar, index) pairs;
# coordinate_table() expands it to nested coordinate vectors for output.

import itertools
import logging
from dataclasses import dataclass
from typing import Any

from .config import config
from .errors import InputError, MathError
from .gf import FieldSpec
from .k2 import Symbol2
from .linalg import FieldOps, kernel_dimension, rank

logger = logging.getLogger("cyclic_algebra")


class ZeroParameter(InputError):
    """Symbol algebra parameters must be nonzero."""


class NonConstantEntries(InputError):
    """Only symbols of constants define a finite-dimensional algebra here."""


class BudgetExhausted(MathError):
    """The witness search hit its enumeration cap. Not a proof of anything."""


class AssociativityFailure(MathError):
    """The structure constants are not associative. Always an arithmetic bug."""


@dataclass(frozen=True)
class SymbolAlgebra:
    spec: FieldSpec
    base: FieldOps
    a: Any
    b: Any
    omega: Any
    table: tuple[tuple[tuple[Any, int], ...], ...]

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def dimension(self) -> int:
        return self.m * self.m

    def basis_label(self, r: int) -> str:
        i, j = divmod(r, self.m)
        parts = []
        if i:
            parts.append("x" if i == 1 else f"x^{i}")
        if j:
            parts.append("y" if j == 1 else f"y^{j}")
        return "*".join(parts) or "1"

    def unit_vector(self, r: int) -> list[Any]:
        v = [self.base.zero] * self.dimension
        v[r] = self.base.one
        return v

    def coordinate_table(self) -> list[list[list[Any]]]:
        out = []
        for row in self.table:
            out_row = []
            for c, k in row:
                v = [self.base.zero] * self.dimension
                v[k] = c
                out_row.append(v)
            out.append(out_row)
        return out


def _omega(spec: FieldSpec, base: FieldOps) -> Any:
    return spec.zeta if isinstance(base, FieldSpec) else base.embed(spec.zeta)


def _power(base: FieldOps, a: Any, n: int) -> Any:
    out = base.one
    for _ in range(n):
        out = base.mul(out, a)
    return out


def build_algebra(a: Any, b: Any, spec: FieldSpec, base: FieldOps | None = None) -> SymbolAlgebra:
    """
    (x^i y^j)(x^k y^l) = omega^(jk) a^((i+k)//m) b^((j+l)//m) x^((i+k)%m) y^((j+l)%m)
    """
    K = spec if base is None else base
    if not a or not b:
        raise ZeroParameter("symbol algebra parameters must be nonzero")
    m = spec.m
    omega = _omega(spec, K)
    omega_pows = [_power(K, omega, k) for k in range(m)]
    table = []
    for r in range(m * m):
        i, j = divmod(r, m)
        row = []
        for s in range(m * m):
            k, l = divmod(s, m)
            c = omega_pows[(j * k) % m]
            if i + k >= m:
                c = K.mul(c, a)
            if j + l >= m:
                c = K.mul(c, b)
            row.append((c, ((i + k) % m) * m + (j + l) % m))
        table.append(tuple(row))
    A = SymbolAlgebra(spec, K, a, b, omega, tuple(table))
    _check_associative(A)
    return A


def _check_associative(A: SymbolAlgebra) -> None:
    K, T = A.base, A.table
    n = A.dimension
    for r, s, u in itertools.product(range(n), repeat=3):
        c1, k1 = T[r][s]
        c2, k2 = T[k1][u]
        d1, l1 = T[s][u]
        d2, l2 = T[r][l1]
        if k2 != l2 or K.mul(c1, c2) != K.mul(d1, d2):
            raise AssociativityFailure(f"(e{r} e{s}) e{u} != e{r} (e{s} e{u})")


def symbol_to_algebra(s: Symbol2, spec: FieldSpec) -> SymbolAlgebra:
    """c*{a, b} -> (a^c, b) for constant a, b."""
    if not (s.a.is_constant() and s.b.is_constant()):
        raise NonConstantEntries(f"{s.render()} has non-constant entries")
    a = spec.pow(s.a.constant_value(), s.coefficient)
    return build_algebra(a, s.b.constant_value(), spec)


# ---------------------------------------------------------------------------
# Linear structure
# ---------------------------------------------------------------------------


def multiply(A: SymbolAlgebra, u: list[Any], v: list[Any]) -> list[Any]:
    K = A.base
    out = [K.zero] * A.dimension
    for r, ur in enumerate(u):
        if not ur:
            continue
        for s, vs in enumerate(v):
            if not vs:
                continue
            c, k = A.table[r][s]
            out[k] = K.add(out[k], K.mul(K.mul(ur, vs), c))
    return out


def left_matrix(A: SymbolAlgebra, u: list[Any]) -> list[list[Any]]:
    """Matrix of v -> u*v; column s holds u*e_s."""
    cols = [multiply(A, u, A.unit_vector(s)) for s in range(A.dimension)]
    return [[cols[s][r] for s in range(A.dimension)] for r in range(A.dimension)]


def reduced_norm_vanishes(A: SymbolAlgebra, u: list[Any]) -> bool:
    """u is a zero divisor iff left multiplication by u is singular."""
    return rank(left_matrix(A, u), A.base) < A.dimension


def center_dimension(A: SymbolAlgebra) -> int:
    n = A.dimension
    K = A.base
    x, y = A.unit_vector(A.m), A.unit_vector(1)
    rows: list[list[Any]] = []
    for gen in (x, y):
        cols = []
        for r in range(n):
            e = A.unit_vector(r)
            zg, gz = multiply(A, e, gen), multiply(A, gen, e)
            cols.append([K.sub(p, q) for p, q in zip(zg, gz)])
        rows.extend([cols[r][k] for r in range(n)] for k in range(n))
    return kernel_dimension(rows, n, K)


# ---------------------------------------------------------------------------
# Split witnesses
# ---------------------------------------------------------------------------


def _norm_form_witness(A: SymbolAlgebra, budget: int) -> tuple[Any, Any, Any]:
    K = A.base
    seen = 0
    elems = list(K.elements())
    for x0, y0, z0 in itertools.product(elems, repeat=3):
        if not (x0 or y0 or z0):
            continue
        seen += 1
        if seen > budget:
            break
        lhs = K.add(K.mul(A.a, K.mul(x0, x0)), K.mul(A.b, K.mul(y0, y0)))
        if lhs == K.mul(z0, z0):
            return x0, y0, z0
    raise BudgetExhausted(f"no isotropic vector of a*x^2 + b*y^2 - z^2 in {seen} tries")


def _zero_divisor(A: SymbolAlgebra, budget: int, support_bound: int) -> list[Any]:
    K = A.base
    n = A.dimension
    nonzero = [c for c in K.elements() if c]
    seen = 0
    for size in range(2, min(support_bound, n) + 1):
        for idx in itertools.combinations(range(n), size):
            for coeffs in itertools.product(nonzero, repeat=size - 1):
                seen += 1
                if seen > budget:
                    raise BudgetExhausted(f"budget of {budget} elements exhausted")
                u = [K.zero] * n
                u[idx[0]] = K.one
                for r, c in zip(idx[1:], coeffs):
                    u[r] = c
                if reduced_norm_vanishes(A, u):
                    return u
    raise BudgetExhausted(f"no zero divisor with basis support <= {support_bound}")


def split_witness(A: SymbolAlgebra, budget: int | None = None) -> tuple[Any, ...] | list[Any]:
    """
    m = 2: an isotropic (x0, y0, z0) of a*x^2 + b*y^2 = z^2.
    Otherwise a zero divisor with leading coefficient 1 and small basis support.
    """
    if budget is None:
        budget = config.get("session.budget", 200000)
    if A.m == 2:
        return _norm_form_witness(A, budget)
    return _zero_divisor(A, budget, config.get("algebra.support_bound", 3))
