# Purpose: Reciprocity on R = k[x,y] localized at the origin: residues at
#          height-one primes, intersection multiplicities at the origin,
#          and the check that the composed map K_2 -> Z/m vanishes.
# Relationships: Built on bivariate.py and linalg.py; driven by cli r2d
#               commands.
#
# Symbol entries arrive factored. Squarefreeness and pairwise coprimality
# are checked, irreducibility of each factor is the caller's promise. A
# polynomial that does not vanish at the origin is a unit of R and belongs
# to no prime of R.

import logging
import math
from dataclasses import dataclass

from .bivariate import BivariatePoly, bivariate_gcd, is_squarefree
from .config import config
from .errors import InputError, MathError
from .gf import ConstantPolynomial, FieldSpec, ZeroPolynomial
from .linalg import rank

logger = logging.getLogger("local2d")


class NotThroughOrigin(InputError):
    """The given prime does not pass through the origin."""


class NotSquarefree(InputError):
    pass


class NotCoprime(InputError):
    pass


class SharedComponent(MathError):
    """A factor is the prime itself, so the element is not a unit at the prime."""


class InfiniteIntersection(MathError):
    pass


@dataclass(frozen=True)
class FactoredBivariate:
    """unit * prod f_i^e_i."""

    field: FieldSpec
    unit: int
    factors: tuple[tuple[BivariatePoly, int], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.unit)

    def validate(self) -> "FactoredBivariate":
        if not self.unit:
            raise ZeroPolynomial("factored entry has zero unit")
        polys = [f for f, _ in self.factors]
        for f in polys:
            if not f:
                raise ZeroPolynomial("zero factor")
            if f.is_constant():
                raise ConstantPolynomial(f"constant factor {f.render()} belongs in the unit")
            if not is_squarefree(f):
                raise NotSquarefree(f"{f.render()} is not squarefree")
        for i, f in enumerate(polys):
            for g in polys[i + 1:]:
                if not bivariate_gcd(f, g).is_constant():
                    raise NotCoprime(f"{f.render()} and {g.render()} share a factor")
        return self

    def render(self) -> str:
        parts = []
        if self.unit != 1 or not self.factors:
            u = self.field.render(self.unit)
            parts.append(f"({u})" if "+" in u and self.factors else u)
        for f, e in self.factors:
            body = f.render()
            if len(f.terms) > 1 or "*" in body:
                body = f"({body})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LocalSymbol:
    a: FactoredBivariate
    b: FactoredBivariate
    coefficient: int = 1

    def __post_init__(self) -> None:
        if not self.a or not self.b:
            raise ZeroPolynomial("symbol entries must be nonzero")
        object.__setattr__(self, "coefficient", self.coefficient % self.a.field.m)

    def render(self) -> str:
        body = f"{{{self.a.render()}, {self.b.render()}}}"
        return body if self.coefficient == 1 else f"{self.coefficient}*{body}"


# ---------------------------------------------------------------------------
# Intersection multiplicity at the origin
# ---------------------------------------------------------------------------


def _ord(f) -> int:
    return next(i for i, c in enumerate(f.coeffs) if c)


def _divide_by_y(f: BivariatePoly) -> BivariatePoly:
    return f.shift(0, -1)


def intersection_multiplicity(f: BivariatePoly, g: BivariatePoly) -> int | float:
    """
    Local intersection number at the origin; math.inf when f and g share
    a component through the origin.

    Reduction steps: split off y when f(x,0) = 0, otherwise cancel the
    leading x-term of the restriction of higher degree.
    """
    if not f or not g:
        return math.inf
    if not f.vanishes_at_origin() or not g.vanishes_at_origin():
        return 0
    h = bivariate_gcd(f, g)
    if not h.is_constant() and h.vanishes_at_origin():
        return math.inf
    total = 0
    while f.vanishes_at_origin() and g.vanishes_at_origin():
        f0, g0 = f.restrict_y0(), g.restrict_y0()
        if not f0 and not g0:
            return math.inf
        if not g0 or (f0 and f0.degree > g0.degree):
            f, g, f0, g0 = g, f, g0, f0
        if not f0:
            # y | f and y does not divide g.
            total += _ord(g0)
            f = _divide_by_y(f)
            continue
        r, s = f0.degree, g0.degree
        g = g.scale(f0.lc) - f.shift(s - r, 0).scale(g0.lc)
    logger.debug(f"intersection multiplicity {total}")
    return total


def truncated_local_length(f: BivariatePoly, g: BivariatePoly, max_degree: int | None = None) -> int | float:
    """
    dim_k k[x,y] / (f, g, m^D), raising D until two consecutive values agree;
    at that point m^D lies in (f, g) locally. math.inf if max_degree is hit.
    """
    if max_degree is None:
        max_degree = config.get("limits.max_local_degree", 32)
    if not f.vanishes_at_origin() or not g.vanishes_at_origin():
        return 0
    F = f.field
    prev = None
    for D in range(1, max_degree + 2):
        monos = [(i, d - i) for d in range(D) for i in range(d + 1)]
        col = {mono: k for k, mono in enumerate(monos)}
        rows = []
        for base in (f, g):
            for (i, j) in monos:
                row = [0] * len(monos)
                for (a, b), c in base.terms:
                    k = col.get((a + i, b + j))
                    if k is not None:
                        row[k] = c
                rows.append(row)
        dim = len(monos) - rank(rows, F)
        if dim == prev:
            return dim
        prev = dim
    return math.inf


# ---------------------------------------------------------------------------
# Residues and the reciprocity sum
# ---------------------------------------------------------------------------


def _check_prime(p: BivariatePoly) -> None:
    if p.is_constant() or not p.vanishes_at_origin():
        raise NotThroughOrigin(f"{p.render()} does not pass through the origin")
    if not is_squarefree(p):
        raise NotSquarefree(f"prime {p.render()} is not squarefree")


def prime_valuation(p: BivariatePoly, u: FactoredBivariate) -> int:
    _check_prime(p)
    return sum(e for f, e in u.factors if f.is_associate(p))


def _ratio(f: BivariatePoly, g: BivariatePoly) -> int:
    """c with f = c * g for associates f, g."""
    F = f.field
    return F.div(f.leading_coefficient, g.leading_coefficient)


def local_residue(s: LocalSymbol, p: BivariatePoly) -> FactoredBivariate:
    """(-1)^(v(a)v(b)) a^(-v(b)) b^(v(a)) with the p-factors cancelled."""
    F = s.a.field
    va, vb = prime_valuation(p, s.a), prime_valuation(p, s.b)
    unit = F.mul(F.pow(s.a.unit, -vb), F.pow(s.b.unit, va))
    if (va * vb) % 2:
        unit = F.neg(unit)
    merged: list[list] = []
    for entry, scale in ((s.a, -vb), (s.b, va)):
        for f, e in entry.factors:
            k = e * scale
            if not k:
                continue
            if f.is_associate(p):
                unit = F.mul(unit, F.pow(_ratio(f, p), k))
                continue
            for slot in merged:
                if slot[0].is_associate(f):
                    unit = F.mul(unit, F.pow(_ratio(f, slot[0]), k))
                    slot[1] += k
                    break
            else:
                merged.append([f, k])
    c = s.coefficient
    return FactoredBivariate(
        F,
        F.pow(unit, c),
        tuple((f, k * c) for f, k in merged if k * c),
    )


def mult_index(p: BivariatePoly, u: FactoredBivariate, spec: FieldSpec) -> int:
    """sum e_i * i(p, f_i) mod m over the factors through the origin."""
    _check_prime(p)
    total = 0
    for f, e in u.factors:
        if not f.vanishes_at_origin():
            continue
        if f.is_associate(p):
            raise SharedComponent(f"{f.render()} is the prime {p.render()} itself")
        i = intersection_multiplicity(p, f)
        if i == math.inf:
            raise InfiniteIntersection(f"{p.render()} and {f.render()} share a component")
        total += e * i
    return total % spec.m


@dataclass(frozen=True)
class PrimeContribution:
    prime: BivariatePoly
    residue: FactoredBivariate
    index: int


def reciprocity_2d(symbols: list[LocalSymbol]) -> tuple[bool, int, list[PrimeContribution]]:
    """Sum over the primes through the origin of r_p(residue at p); zero mod m."""
    if not symbols:
        return True, 0, []
    spec = symbols[0].a.field
    primes: list[BivariatePoly] = []
    for s in symbols:
        for entry in (s.a, s.b):
            for f, _ in entry.factors:
                if f.vanishes_at_origin() and not any(f.is_associate(q) for q in primes):
                    primes.append(f.monic())
    primes.sort(key=BivariatePoly.key)
    breakdown = []
    total = 0
    for p in primes:
        unit = FactoredBivariate(spec, 1)
        index = 0
        for s in symbols:
            res = local_residue(s, p)
            index += mult_index(p, res, spec)
            unit = _combine(unit, res)
        index %= spec.m
        breakdown.append(PrimeContribution(p, unit, index))
        total += index
    total %= spec.m
    if total:
        logger.error(f"2d reciprocity sum is {total}")
    return total == 0, total, breakdown


def _combine(u: FactoredBivariate, w: FactoredBivariate) -> FactoredBivariate:
    F = u.field
    unit = F.mul(u.unit, w.unit)
    merged = [list(fe) for fe in u.factors]
    for f, k in w.factors:
        for slot in merged:
            if slot[0].is_associate(f):
                unit = F.mul(unit, F.pow(_ratio(f, slot[0]), k))
                slot[1] += k
                break
        else:
            merged.append([f, k])
    return FactoredBivariate(F, unit, tuple((f, k) for f, k in merged if k))
