# Purpose: K_2 mod m of F_q(t): symbols, tame residues, ramification
#          profiles, the residue-based zero test and Weil reciprocity.
# Relationships: Built on funcfield.py; slot.py and cyclic_algebra.py
#               consume the types defined here.
#
# There is no canonical form for K2Element. Two classes are equal exactly
# when their difference has empty ramification, which is a complete test
# over F_q(t) as long as mu_m lies in F_q (enforced by field_make).

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import MathError
from .funcfield import (
    Place,
    RationalFunction,
    ResidueElement,
    ZeroFunction,
    support,
    unit_part,
)
from .gf import ConstantPolynomial, FieldSpec, mth_power_index

logger = logging.getLogger("k2")


class ReciprocityViolation(MathError):
    """The residue indices of a class did not sum to zero. Always an arithmetic bug."""

    def __init__(self, total: int, m: int) -> None:
        super().__init__(f"residue indices sum to {total} mod {m}, expected 0")
        self.total = total


@dataclass(frozen=True)
class Symbol2:
    """coefficient * {a, b}, coefficient reduced mod m."""

    a: RationalFunction
    b: RationalFunction
    coefficient: int = 1

    def __post_init__(self) -> None:
        if not self.a or not self.b:
            raise ZeroFunction("symbol entries must be nonzero")
        object.__setattr__(self, "coefficient", self.coefficient % self.a.field.m)

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def render(self) -> str:
        body = f"{{{self.a.render()}, {self.b.render()}}}"
        return body if self.coefficient == 1 else f"{self.coefficient}*{body}"


@dataclass(frozen=True)
class K2Element:
    """A formal sum of symbols read in K_2(F_q(t)) / m."""

    field: FieldSpec
    terms: tuple[Symbol2, ...] = ()

    @classmethod
    def of(cls, fld: FieldSpec, terms: Iterable[Symbol2]) -> "K2Element":
        return cls(fld, tuple(s for s in terms if s.coefficient))

    @classmethod
    def symbol(cls, a: RationalFunction, b: RationalFunction, coefficient: int = 1) -> "K2Element":
        return cls.of(a.field, [Symbol2(a, b, coefficient)])

    def __iter__(self) -> Iterator[Symbol2]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "K2Element") -> "K2Element":
        return k2_add(self, other)

    def __neg__(self) -> "K2Element":
        return k2_negate(self)

    def __sub__(self, other: "K2Element") -> "K2Element":
        return k2_add(self, k2_negate(other))

    def __rmul__(self, c: int) -> "K2Element":
        return k2_scale(self, c)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(s.render() for s in self.terms)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ResidueClass:
    place: Place
    index: int
    representative: ResidueElement

    def render_representative(self) -> str:
        return self.place.residue_field().render(self.representative)


@dataclass(frozen=True)
class RamificationProfile:
    """Places with a nonzero residue, sorted finite-first with infinity last."""

    rows: tuple[ResidueClass, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.rows)

    def __iter__(self) -> Iterator[ResidueClass]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def places(self) -> list[Place]:
        return [r.place for r in self.rows]

    def index_at(self, v: Place) -> int:
        for r in self.rows:
            if r.place == v:
                return r.index
        return 0


# ---------------------------------------------------------------------------
# Group structure
# ---------------------------------------------------------------------------


def k2_add(alpha: K2Element, beta: K2Element) -> K2Element:
    return K2Element.of(alpha.field, alpha.terms + beta.terms)


def k2_scale(alpha: K2Element, c: int) -> K2Element:
    return K2Element.of(alpha.field, (Symbol2(s.a, s.b, s.coefficient * c) for s in alpha))


def k2_negate(alpha: K2Element) -> K2Element:
    return k2_scale(alpha, -1)


def steinberg(a: RationalFunction) -> K2Element:
    """The relation {a, 1 - a}; a must differ from 0 and 1."""
    one = RationalFunction.constant(a.field, 1)
    return K2Element.symbol(a, one - a)


def k2_pullback(alpha: K2Element, g: RationalFunction) -> K2Element:
    """Image of alpha under the field map F_q(t) -> F_q(s), t -> g(s)."""
    if g.is_constant():
        raise ConstantPolynomial(f"t -> {g.render()} is not a field embedding")
    return K2Element.of(
        alpha.field,
        (Symbol2(s.a.substitute(g), s.b.substitute(g), s.coefficient) for s in alpha),
    )


# ---------------------------------------------------------------------------
# Residues
# ---------------------------------------------------------------------------


def _residue_unit(s: Symbol2, v: Place) -> ResidueElement:
    """(-1)^(v(a)v(b)) a^(-v(b)) b^(v(a)) reduced at v, raised to the coefficient."""
    kappa = v.residue_field()
    va, ua = unit_part(v, s.a)
    vb, ub = unit_part(v, s.b)
    u = kappa.mul(kappa.pow(ua, -vb), kappa.pow(ub, va))
    if (va * vb) % 2:
        u = kappa.neg(u)
    return kappa.pow(u, s.coefficient)


def tame_residue(s: Symbol2, v: Place) -> ResidueClass:
    rep = _residue_unit(s, v)
    return ResidueClass(v, v.residue_field().power_index(rep), rep)


def _candidate_places(alpha: K2Element, seed: int) -> list[Place]:
    places: set[Place] = set()
    for s in alpha:
        places.update(support(s.a, seed))
        places.update(support(s.b, seed))
    return sorted(places, key=Place.key)


def ramification(alpha: K2Element, seed: int = 0) -> RamificationProfile:
    """
    Sum of the tame residues of all terms, at every place of the joint
    support of the entries. Outside that support each term is a symbol of
    units, so its residue vanishes.
    """
    m = alpha.field.m
    rows = []
    for v in _candidate_places(alpha, seed):
        kappa = v.residue_field()
        rep = kappa.one
        for s in alpha:
            rep = kappa.mul(rep, _residue_unit(s, v))
        index = kappa.power_index(rep) % m
        logger.debug(f"residue at {v.render()}: {kappa.render(rep)} (index {index})")
        if index:
            rows.append(ResidueClass(v, index, rep))
    return RamificationProfile(tuple(rows))


def is_zero(alpha: K2Element, seed: int = 0) -> bool:
    return not ramification(alpha, seed)


def reciprocity_check(alpha: K2Element, seed: int = 0) -> tuple[bool, int]:
    """
    Sum over the ramified places of the index of N(residue) in F_q. The norm
    preserves the power residue index, so Weil reciprocity forces 0.
    """
    fld = alpha.field
    total = 0
    for row in ramification(alpha, seed):
        kappa = row.place.residue_field()
        total += mth_power_index(kappa.norm(row.representative), fld)
    total %= fld.m
    if total:
        logger.error(f"reciprocity failed for {alpha.render()}: sum {total}")
    return total == 0, total
