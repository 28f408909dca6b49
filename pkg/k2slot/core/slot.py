# Purpose: Strong linkage on K_2(F_q(t))/m: joint ramification support,
#          a common slot f by weak approximation, and certificates that f
#          is a slot of each class (with an explicit cofactor b when the
#          bounded search finds one).
# Relationships: Built on k2.py and funcfield.py; driven by cli/commands.py.
#
# f is a slot of alpha as soon as gcd(v(f), m) = 1 at every place where
# alpha ramifies. The cofactor b with alpha = {f, b} is then searched over
# b = g^c * prod P_i^e_i with P_i monic irreducible, 0 <= e_i < m and g the
# least generator of F_q^x. Every m-th power class is reached this way, and
# {f, -} is linear in (c, e_i), so candidates are screened with precomputed
# residue indices and only the winner is recomputed in full.

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator

from .config import config
from .errors import InputError, MathError
from .funcfield import Place, RationalFunction, ZeroFunction, support, unit_part, valuation
from .gf import Exhausted, FieldSpec, Poly, irreducible_of_degree_avoiding, is_irreducible, monic_polynomials
from .k2 import K2Element, Symbol2, is_zero, k2_pullback, ramification, tame_residue

logger = logging.getLogger("slot")

CERTIFIED = "certified"
PRECONDITION_ONLY = "precondition-verified-only"


class PreconditionViolated(MathError):
    """v(f) is not prime to m at a place where the class ramifies."""

    def __init__(self, place: Place, val: int, m: int) -> None:
        super().__init__(f"v_{place.render()}(f) = {val} is not coprime to m = {m}")
        self.place = place
        self.valuation = val


class CofactorNotFound(MathError):
    """The bounded search produced no b with alpha = {f, b}."""


class UnsupportedExtension(InputError):
    """The Kummer extension F(f^(1/m)) is only materialized for deg f = 1."""


@dataclass(frozen=True)
class SlotProblem:
    field: FieldSpec
    classes: tuple[K2Element, ...] = ()


@dataclass
class SlotCertificate:
    f: RationalFunction
    support: list[Place]
    valuations: dict[Place, int]
    cofactors: dict[int, RationalFunction] = field(default_factory=dict)
    status: str = PRECONDITION_ONLY
    reason: str = ""
    candidates_examined: int = 0

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED


# ---------------------------------------------------------------------------
# Support and weak approximation
# ---------------------------------------------------------------------------


def joint_support(problem: SlotProblem, seed: int = 0) -> list[Place]:
    places: set[Place] = set()
    for alpha in problem.classes:
        places.update(ramification(alpha, seed).places())
    return sorted(places, key=Place.key)


def weak_approx_slot(S: list[Place], fld: FieldSpec) -> RationalFunction:
    """
    f with v(f) = 1 at every finite place of S and, when infinity is in S,
    gcd(v_inf(f), m) = 1. The correction factor for infinity is the least
    irreducible of the least usable degree that avoids S. A degree whose
    irreducibles all lie in S is skipped for the next usable one.
    """
    finite = [v.poly for v in S if not v.is_infinity]
    f = Poly.constant(fld, 1)
    for P in finite:
        f = f * P
    if any(v.is_infinity for v in S) and math.gcd(f.degree, fld.m) != 1:
        d = 0
        corr = None
        while corr is None:
            d += 1
            if math.gcd(f.degree + d, fld.m) != 1:
                continue
            try:
                corr = irreducible_of_degree_avoiding(d, finite, fld)
            except Exhausted:
                logger.debug(f"every irreducible of degree {d} is in the support")
        logger.debug(f"infinity correction factor {corr.render()}")
        f = f * corr
    return RationalFunction.from_poly(f)


# ---------------------------------------------------------------------------
# Cofactor search
# ---------------------------------------------------------------------------


class _Pool:
    """
    Monic irreducibles grown one degree at a time, with their residue index
    columns on the screening rows. Indices are stable as the pool grows.
    """

    def __init__(self, f: RationalFunction, rows: list[Place]) -> None:
        self.f = f
        self.rows = rows
        self.on_row = {v.poly for v in rows if not v.is_infinity}
        self.primes: list[Poly] = []
        self.degrees: list[int] = []
        self.cols: list[list[int]] = []
        self.off_row: list[int] = []

    def grow(self, d: int) -> None:
        fld = self.f.field
        for P in monic_polynomials(fld, d):
            if not is_irreducible(P):
                continue
            self.primes.append(P)
            self.degrees.append(d)
            Pf = RationalFunction.from_poly(P)
            self.cols.append([tame_residue(Symbol2(self.f, Pf), v).index for v in self.rows])
            # Off-row primes only see {f, P^e} through -e * index(f mod P).
            if P in self.on_row:
                self.off_row.append(0)
            else:
                v = Place(fld, P)
                _, u = unit_part(v, self.f)
                self.off_row.append(v.residue_field().power_index(u))
        logger.debug(f"cofactor pool has {len(self.primes)} primes up to degree {d}")


def _exponent_vectors(
    degrees: list[int], total: int, count: int, m: int, start: int = 0
) -> Iterator[tuple[tuple[int, int], ...]]:
    """(pool index, exponent) tuples, increasing index, with sum e*deg == total."""
    if count == 0:
        if total == 0:
            yield ()
        return
    for i in range(start, len(degrees)):
        if degrees[i] > total:
            continue
        for e in range(1, m):
            rest = total - e * degrees[i]
            if rest < 0:
                break
            for tail in _exponent_vectors(degrees, rest, count - 1, m, i + 1):
                yield ((i, e),) + tail


def _cofactor(fld: FieldSpec, pool: list[Poly], vec: tuple, c: int) -> RationalFunction:
    b = Poly.constant(fld, fld.pow(fld.generator, c))
    for i, e in vec:
        b = b * pool[i] ** e
    return RationalFunction.from_poly(b)


def _search(
    alpha: K2Element, f: RationalFunction, degree_bound: int, budget: int, seed: int
) -> tuple[RationalFunction | None, int, str]:
    """
    Candidates in order of total degree, number of factors, lex of
    (pool index, exponent), then constant exponent. A linear screen on the
    residue indices comes first; a survivor is re-verified in full.
    """
    fld = alpha.field
    m = fld.m
    profile = ramification(alpha, seed)
    places = set(profile.places()) | set(support(f, seed)) | {Place.infinity(fld)}
    rows = sorted(places, key=Place.key)
    targets = [profile.index_at(v) for v in rows]
    gen = RationalFunction.constant(fld, fld.generator)
    const_col = [tame_residue(Symbol2(f, gen), v).index for v in rows]
    pool = _Pool(f, rows)

    examined = 0
    for total in range(degree_bound + 1):
        if total:
            pool.grow(total)
        for count in range(total + 1):
            for vec in _exponent_vectors(pool.degrees, total, count, m):
                if any((e * pool.off_row[i]) % m for i, e in vec):
                    examined += 1
                    if examined > budget:
                        return None, examined, f"budget of {budget} candidates exhausted"
                    continue
                partial = [
                    (targets[r] - sum(e * pool.cols[i][r] for i, e in vec)) % m for r in range(len(rows))
                ]
                for c in range(m):
                    examined += 1
                    if examined > budget:
                        return None, examined, f"budget of {budget} candidates exhausted"
                    if all((partial[r] - c * const_col[r]) % m == 0 for r in range(len(rows))):
                        b = _cofactor(fld, pool.primes, vec, c)
                        if is_zero(alpha - K2Element.symbol(f, b), seed):
                            return b, examined, ""
                        logger.warning(f"screened cofactor {b.render()} failed the full residue check")
    return None, examined, f"no cofactor of degree <= {degree_bound}"


def certify_slot(
    alpha: K2Element,
    f: RationalFunction,
    degree_bound: int,
    budget: int | None = None,
    seed: int = 0,
    class_index: int = 0,
) -> SlotCertificate:
    """
    Check gcd(v(f), m) = 1 at every ramified place of alpha, then look for a
    cofactor b with alpha = {f, b}. Exhausting the bound or the budget is
    reported through the status, never as a disproof.
    """
    fld = alpha.field
    if budget is None:
        budget = config.get("session.budget", 200000)
    S = ramification(alpha, seed).places()
    vals = {}
    for v in S:
        k = valuation(v, f)
        if math.gcd(k, fld.m) != 1:
            raise PreconditionViolated(v, k, fld.m)
        vals[v] = k
    cert = SlotCertificate(f=f, support=S, valuations=vals)
    b, examined, reason = _search(alpha, f, degree_bound, budget, seed)
    cert.candidates_examined = examined
    if b is None:
        cert.reason = reason
        logger.warning(f"slot {f.render()} for class {class_index}: {reason}")
    else:
        cert.cofactors[class_index] = b
        cert.status = CERTIFIED
        logger.info(f"class {class_index} = {{{f.render()}, {b.render()}}}")
    return cert


def strong_linkage(
    problem: SlotProblem, degree_bound: int, budget: int | None = None, seed: int = 0
) -> tuple[RationalFunction, list[SlotCertificate]]:
    S = joint_support(problem, seed)
    f = weak_approx_slot(S, problem.field)
    logger.info(f"common slot {f.render()} over {len(S)} ramified places")
    certs = [
        certify_slot(alpha, f, degree_bound, budget, seed, class_index=i)
        for i, alpha in enumerate(problem.classes)
    ]
    return f, certs


def express_as_symbol(
    alpha: K2Element, degree_bound: int, budget: int | None = None, seed: int = 0
) -> tuple[RationalFunction, RationalFunction]:
    """(f, b) with alpha = {f, b}; every class is a single symbol."""
    f = weak_approx_slot(ramification(alpha, seed).places(), alpha.field)
    cert = certify_slot(alpha, f, degree_bound, budget, seed)
    if not cert.certified:
        raise CofactorNotFound(f"{alpha.render()} with slot {f.render()}: {cert.reason}")
    return f, cert.cofactors[0]


def split_by_kummer(alpha: K2Element, f: RationalFunction, seed: int = 0) -> bool:
    """
    For f = c*(t - t0) the field F(f^(1/m)) is F_q(s) with t = t0 + s^m / c.
    Returns whether alpha dies there; it must when f is a slot of alpha.
    """
    fld = alpha.field
    if f.den.degree != 0 or f.num.degree != 1:
        raise UnsupportedExtension(f"F(({f.render()})^(1/{fld.m})) is not a rational function field here")
    c = f.num.lc
    t0 = fld.neg(fld.div(f.num[0], c))
    g = Poly(fld, (t0,) + (0,) * (fld.m - 1) + (fld.inv(c),))
    return is_zero(k2_pullback(alpha, RationalFunction.from_poly(g)), seed)


def splitting_field_descriptor(f: RationalFunction, fld: FieldSpec) -> str:
    if not f:
        raise ZeroFunction("the splitting field of 0 is undefined")
    base = f"F_{fld.q}(t)"
    if f.is_constant() and f.constant_value() == 1:
        return base
    text = f.render()
    if any(ch in text for ch in "+*/^"):
        text = f"({text})"
    return f"{base}({text}^{{1/{fld.m}}})"
