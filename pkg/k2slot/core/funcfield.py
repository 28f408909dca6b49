# Purpose: Places, Z-valuations, residue fields and reductions of the
#          rational function field F = F_q(t).
# Relationships: Built on gf.py; consumed by k2.py, slot.py and
#               cyclic_algebra.py (symbol algebras over residue fields).
#
# The places of F trivial on F_q are the monic irreducibles of F_q[t] and
# the point at infinity. Infinity is normalized by v_inf(f) = deg(den) -
# deg(num) with local parameter 1/t. Rational functions are always stored
# gcd-reduced with a monic denominator, so valuations and supports read off
# the factorizations of numerator and denominator directly.

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator

from .config import config
from .errors import InputError
from .gf import (
    FieldSpec,
    FieldTooLarge,
    Poly,
    ZeroElement,
    is_irreducible,
    mth_power_index,
    norm_to_base,
    poly_factor,
    poly_gcd,
)

logger = logging.getLogger("funcfield")


class ZeroFunction(InputError):
    """An operation that needs a nonzero rational function received zero."""


class NotAUnit(InputError):
    """residue() was asked to reduce a function with nonzero valuation."""


class InvalidPlace(InputError):
    """A finite place was built from a polynomial that is not monic irreducible."""


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """num/den in F_q(t), gcd-reduced, den monic; zero is 0/1."""

    num: Poly
    den: Poly

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if not den:
            raise ZeroFunction("zero denominator")
        if not num:
            object.__setattr__(self, "den", Poly.constant(den.field, 1))
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = den.field.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_poly(cls, f: Poly) -> "RationalFunction":
        return cls(f, Poly.constant(f.field, 1))

    @classmethod
    def constant(cls, fld: FieldSpec, c: int) -> "RationalFunction":
        return cls.from_poly(Poly.constant(fld, c))

    @classmethod
    def var(cls, fld: FieldSpec) -> "RationalFunction":
        return cls.from_poly(Poly.var(fld))

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self.render()} is not a constant")
        return self.num[0]

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroFunction("0 has no inverse")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return RationalFunction(self.den ** -n, self.num ** -n) if self.num else self.inverse()
        return RationalFunction(self.num ** n, self.den ** n)

    def substitute(self, g: "RationalFunction") -> "RationalFunction":
        """The pullback f(g) along t -> g."""
        return _horner(self.num, g) / _horner(self.den, g)

    def render(self, var: str = "t") -> str:
        num = self.num.render(var)
        if self.den.degree == 0:
            return num
        if "+" in num or ("*" in num and self.num.degree > 0):
            num = f"({num})"
        den = self.den.render(var)
        if "+" in den or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.render()


def _horner(f: Poly, g: RationalFunction) -> RationalFunction:
    F = f.field
    acc = RationalFunction.constant(F, 0)
    for c in reversed(f.coeffs):
        acc = acc * g + RationalFunction.constant(F, c)
    return acc


# ---------------------------------------------------------------------------
# Places
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A closed point of P^1 over F_q: a monic irreducible, or infinity (poly None)."""

    field: FieldSpec
    poly: Poly | None = None

    @classmethod
    def finite(cls, poly: Poly) -> "Place":
        if poly.degree < 1 or not poly.is_monic or not is_irreducible(poly):
            raise InvalidPlace(f"{poly.render()} is not a monic irreducible polynomial")
        return cls(poly.field, poly)

    @classmethod
    def infinity(cls, fld: FieldSpec) -> "Place":
        return cls(fld, None)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def key(self) -> tuple:
        """Finite places by (degree, coefficients), infinity last."""
        return (1,) if self.poly is None else (0, self.poly.degree, self.poly.coeffs)

    def __lt__(self, other: "Place") -> bool:
        return self.key() < other.key()

    def render(self) -> str:
        return "inf" if self.poly is None else self.poly.render()

    def __str__(self) -> str:
        return self.render()

    def residue_field(self) -> "ResidueField":
        return ResidueField(self)


def _strip(f: Poly, P: Poly) -> tuple[int, Poly]:
    k = 0
    while True:
        quo, rem = divmod(f, P)
        if rem:
            return k, f
        f, k = quo, k + 1


def valuation(v: Place, f: RationalFunction) -> int:
    if not f:
        raise ZeroFunction("the valuation of 0 is infinite")
    if v.poly is None:
        return f.den.degree - f.num.degree
    a, _ = _strip(f.num, v.poly)
    if a:
        return a
    b, _ = _strip(f.den, v.poly)
    return -b


def unit_part(v: Place, f: RationalFunction) -> tuple[int, "ResidueElement"]:
    """(v(f), residue of f * pi_v^(-v(f))) with pi_v the place polynomial or 1/t."""
    if not f:
        raise ZeroFunction("0 has no unit part")
    kappa = v.residue_field()
    if v.poly is None:
        F = f.field
        return f.den.degree - f.num.degree, F.div(f.num.lc, f.den.lc)
    a, num = _strip(f.num, v.poly)
    b, den = _strip(f.den, v.poly)
    return a - b, kappa.mul(kappa.reduce(num), kappa.inv(kappa.reduce(den)))


def residue(v: Place, f: RationalFunction) -> "ResidueElement":
    k, u = unit_part(v, f)
    if k != 0:
        raise NotAUnit(f"{f.render()} has valuation {k} at {v.render()}")
    return u


def support(f: RationalFunction, seed: int = 0) -> list[Place]:
    """Places with nonzero valuation, sorted finite-first."""
    if not f:
        raise ZeroFunction("the support of 0 is every place")
    F = f.field
    places = []
    for part in (f.num, f.den):
        for g, _ in poly_factor(part, seed).factors:
            places.append(Place(F, g))
    places.sort(key=Place.key)
    if f.num.degree != f.den.degree:
        places.append(Place.infinity(F))
    return places


# ---------------------------------------------------------------------------
# Residue fields
# ---------------------------------------------------------------------------

# Elements of a degree-1 residue field are F_q ints, otherwise Polys mod P.
ResidueElement = int | Poly


@dataclass(frozen=True)
class ResidueField:
    """kappa_v: F_q itself for degree-1 places, F_q[t]/(P) otherwise."""

    place: Place

    @property
    def base(self) -> FieldSpec:
        return self.place.field

    @property
    def degree(self) -> int:
        return self.place.degree

    @property
    def order(self) -> int:
        return self.base.q ** self.degree

    @property
    def modulus(self) -> Poly | None:
        return self.place.poly if self.degree > 1 else None

    @property
    def zero(self) -> ResidueElement:
        return 0 if self.degree == 1 else Poly(self.base, ())

    @property
    def one(self) -> ResidueElement:
        return 1 if self.degree == 1 else Poly.constant(self.base, 1)

    def embed(self, c: int) -> ResidueElement:
        """Image of an F_q element."""
        return c if self.degree == 1 else Poly.constant(self.base, c)

    def reduce(self, f: Poly) -> ResidueElement:
        """f mod P (evaluation at the root for linear P)."""
        P = self.place.poly
        if P is None:
            raise NotAUnit("polynomials reduce at infinity only through residue()")
        if P.degree == 1:
            return f(self.base.neg(P[0]))
        return f % P

    def add(self, a: ResidueElement, b: ResidueElement) -> ResidueElement:
        return self.base.add(a, b) if self.degree == 1 else (a + b)

    def sub(self, a: ResidueElement, b: ResidueElement) -> ResidueElement:
        return self.base.sub(a, b) if self.degree == 1 else (a - b)

    def neg(self, a: ResidueElement) -> ResidueElement:
        return self.base.neg(a) if self.degree == 1 else -a

    def mul(self, a: ResidueElement, b: ResidueElement) -> ResidueElement:
        if self.degree == 1:
            return self.base.mul(a, b)
        return (a * b) % self.place.poly

    def inv(self, a: ResidueElement) -> ResidueElement:
        if self.degree == 1:
            return self.base.inv(a)
        if not a:
            raise ZeroElement("0 has no inverse")
        return a.pow_mod(self.order - 2, self.place.poly)

    def pow(self, a: ResidueElement, n: int) -> ResidueElement:
        if self.degree == 1:
            return self.base.pow(a, n)
        if n < 0:
            a, n = self.inv(a), -n
        return a.pow_mod(n, self.place.poly)

    def elements(self) -> Iterator[ResidueElement]:
        cap = config.get("limits.max_enumeration_order", 2 ** 31)
        if self.order > cap:
            raise FieldTooLarge(f"|kappa| = {self.order} exceeds limits.max_enumeration_order")
        if self.degree == 1:
            yield from range(self.base.q)
            return
        for coeffs in itertools.product(range(self.base.q), repeat=self.degree):
            yield Poly(self.base, coeffs)

    def power_index(self, a: ResidueElement) -> int:
        return mth_power_index(a, self.base, self.modulus)

    def norm(self, a: ResidueElement) -> int:
        return norm_to_base(a, self.base, self.modulus)

    def render(self, a: ResidueElement) -> str:
        if self.degree == 1:
            return self.base.render(a)
        return a.render("t")
