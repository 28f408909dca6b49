# Purpose: Sparse bivariate polynomials over F_q and their gcd.
# Relationships: Built on gf.py; used by local2d.py and the cli grammar.
#
# Coefficients are a mapping (i, j) -> c for c * x^i * y^j with no zero
# entries stored. The gcd treats polynomials as elements of (F_q[x])[y] and
# runs a primitive pseudo-remainder sequence.

from dataclasses import dataclass
from typing import Iterable

from .gf import FieldSpec, Poly, poly_gcd


@dataclass(frozen=True)
class BivariatePoly:
    field: FieldSpec
    terms: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(sorted((k, c) for k, c in self.terms if c)))

    @classmethod
    def from_dict(cls, fld: FieldSpec, coeffs: dict[tuple[int, int], int]) -> "BivariatePoly":
        return cls(fld, tuple(coeffs.items()))

    @classmethod
    def constant(cls, fld: FieldSpec, c: int) -> "BivariatePoly":
        return cls(fld, (((0, 0), c),))

    @classmethod
    def x(cls, fld: FieldSpec) -> "BivariatePoly":
        return cls(fld, (((1, 0), 1),))

    @classmethod
    def y(cls, fld: FieldSpec) -> "BivariatePoly":
        return cls(fld, (((0, 1), 1),))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    @property
    def constant_term(self) -> int:
        return self.coefficient(0, 0)

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=-1)

    @property
    def degree_y(self) -> int:
        return max((j for (_, j), _ in self.terms), default=-1)

    def is_constant(self) -> bool:
        return self.total_degree <= 0

    def vanishes_at_origin(self) -> bool:
        return self.constant_term == 0

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        F = self.field
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = F.add(out.get(k, 0), c)
        return BivariatePoly.from_dict(F, out)

    def __neg__(self) -> "BivariatePoly":
        F = self.field
        return BivariatePoly(F, tuple((k, F.neg(c)) for k, c in self.terms))

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        return self + (-other)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        F = self.field
        out: dict[tuple[int, int], int] = {}
        for (i, j), a in self.terms:
            for (k, l), b in other.terms:
                key = (i + k, j + l)
                out[key] = F.add(out.get(key, 0), F.mul(a, b))
        return BivariatePoly.from_dict(F, out)

    def __pow__(self, n: int) -> "BivariatePoly":
        out = BivariatePoly.constant(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: int) -> "BivariatePoly":
        F = self.field
        return BivariatePoly(F, tuple((k, F.mul(c, a)) for k, a in self.terms))

    def shift(self, di: int, dj: int) -> "BivariatePoly":
        """Multiply by x^di y^dj (negative shifts must divide exactly)."""
        return BivariatePoly(self.field, tuple(((i + di, j + dj), c) for (i, j), c in self.terms))

    def __call__(self, x: int, y: int) -> int:
        F = self.field
        acc = 0
        for (i, j), c in self.terms:
            acc = F.add(acc, F.mul(c, F.mul(F.pow(x, i), F.pow(y, j))))
        return acc

    # -- restrictions and derivatives -----------------------------------------

    def restrict_y0(self) -> Poly:
        """f(x, 0) as a polynomial in x."""
        return self._restrict(axis=1)

    def restrict_x0(self) -> Poly:
        """f(0, y) as a polynomial in y."""
        return self._restrict(axis=0)

    def _restrict(self, axis: int) -> Poly:
        coeffs: dict[int, int] = {}
        for key, c in self.terms:
            if key[axis] == 0:
                coeffs[key[1 - axis]] = c
        n = max(coeffs, default=-1) + 1
        return Poly(self.field, tuple(coeffs.get(k, 0) for k in range(n)))

    def partial_x(self) -> "BivariatePoly":
        F = self.field
        return BivariatePoly(F, tuple(((i - 1, j), F.mul(F.embed(i), c)) for (i, j), c in self.terms if i))

    def partial_y(self) -> "BivariatePoly":
        F = self.field
        return BivariatePoly(F, tuple(((i, j - 1), F.mul(F.embed(j), c)) for (i, j), c in self.terms if j))

    # -- normal forms --------------------------------------------------------

    @property
    def leading_coefficient(self) -> int:
        """Coefficient of the largest (y-degree, x-degree) term."""
        if not self.terms:
            return 0
        return max(self.terms, key=lambda kc: (kc[0][1], kc[0][0]))[1]

    def monic(self) -> "BivariatePoly":
        return self.scale(self.field.inv(self.leading_coefficient))

    def is_associate(self, other: "BivariatePoly") -> bool:
        """self == c * other for some nonzero scalar c."""
        if not self or not other:
            return False
        return self.monic() == other.monic()

    def key(self) -> tuple:
        """Total degree, then larger x-degree first: x sorts before y."""
        return (self.total_degree, tuple(sorted(((-i, -j), c) for (i, j), c in self.monic().terms)))

    def render(self) -> str:
        """Ascending (total degree, x-degree) order, e.g. y+2*x^2."""
        if not self.terms:
            return "0"
        F = self.field
        out = []
        for (i, j), c in sorted(self.terms, key=lambda kc: (kc[0][0] + kc[0][1], -kc[0][1])):
            mono = "*".join(
                part
                for part in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                )
                if part
            )
            cs = F.render(c)
            if not mono:
                out.append(cs)
            elif c == 1:
                out.append(mono)
            elif "+" in cs or "*" in cs:
                out.append(f"({cs})*{mono}")
            else:
                out.append(f"{cs}*{mono}")
        return "+".join(out)

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# gcd in (F_q[x])[y]
# ---------------------------------------------------------------------------


def _to_y_coeffs(f: BivariatePoly) -> list[Poly]:
    rows: dict[int, dict[int, int]] = {}
    for (i, j), c in f.terms:
        rows.setdefault(j, {})[i] = c
    out = []
    for j in range(f.degree_y + 1):
        row = rows.get(j, {})
        n = max(row, default=-1) + 1
        out.append(Poly(f.field, tuple(row.get(i, 0) for i in range(n))))
    return out


def _from_y_coeffs(fld: FieldSpec, coeffs: Iterable[Poly]) -> BivariatePoly:
    out = {}
    for j, cj in enumerate(coeffs):
        for i, c in enumerate(cj.coeffs):
            if c:
                out[(i, j)] = c
    return BivariatePoly.from_dict(fld, out)


def _trim(a: list[Poly]) -> list[Poly]:
    while a and not a[-1]:
        a.pop()
    return a


def _content(a: list[Poly]) -> Poly:
    g = Poly(a[0].field, ())
    for c in a:
        g = poly_gcd(g, c)
    return g


def _primitive(a: list[Poly]) -> list[Poly]:
    c = _content(a)
    return [x // c for x in a]


def _prem(a: list[Poly], b: list[Poly]) -> list[Poly]:
    """Pseudo-remainder of a by b in y."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        lr, shift = r[-1], len(r) - 1 - db
        r = [lb * c for c in r]
        for k, bk in enumerate(b):
            r[k + shift] = r[k + shift] - lr * bk
        r = _trim(r)
    return r


def bivariate_gcd(f: BivariatePoly, g: BivariatePoly) -> BivariatePoly:
    """Greatest common divisor, scaled to leading coefficient 1."""
    F = f.field
    if not f:
        return g.monic() if g else g
    if not g:
        return f.monic()
    a, b = _to_y_coeffs(f), _to_y_coeffs(g)
    cont = poly_gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            # b is a primitive element of F_q[x], hence a unit.
            a = [Poly.constant(F, 1)]
            break
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else r)
    result = _from_y_coeffs(F, [cont * c for c in _primitive(a)])
    return result.monic()


def is_squarefree(f: BivariatePoly) -> bool:
    g = bivariate_gcd(bivariate_gcd(f, f.partial_x()), f.partial_y())
    return g.is_constant()
