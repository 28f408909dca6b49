# Purpose: Exact arithmetic in F_p, F_q = F_p[u]/(g) and F_q[t]: polynomial
#          factorization, irreducibility and m-th power residue tests.
# Relationships: Substrate for funcfield.py, k2.py, slot.py,
#               cyclic_algebra.py, bivariate.py and local2d.py.
#
# F_q elements are plain ints 0 <= x < q. The base-p digits of x, least
# significant first, are the coefficient vector of x in the power basis of
# the defining modulus, so comparing the ints is the canonical ordering of
# coefficient vectors. Multiplication goes through exp/log tables over the
# least generator of F_q^x, which is why q is capped by
# limits.max_field_order.
#
# Polynomials are dense coefficient tuples, least degree first, with no
# trailing zeros. The zero polynomial has degree -1.

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .config import config
from .errors import InputError, MathError

logger = logging.getLogger("gf")

ZERO_DEGREE = -1


class NotPrime(InputError):
    """The characteristic is not a prime number."""


class ReducibleModulus(InputError):
    """The tower modulus is not a monic irreducible polynomial of degree e."""


class BadModulusM(InputError):
    """The symbol modulus m does not divide q - 1 (or m < 2)."""


class FieldTooLarge(InputError):
    """q (or an enumerated q^d) exceeds the configured cap."""


class ZeroPolynomial(InputError):
    """An operation that needs a nonzero polynomial received zero."""


class ConstantPolynomial(InputError):
    """An operation that needs a nonconstant polynomial received a constant."""


class ZeroElement(InputError):
    """An operation that needs a nonzero field element received zero."""


class Exhausted(MathError):
    """Every monic irreducible of the requested degree is forbidden."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# The coefficient field F_q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """
    F_q = F_p[u]/(modulus) together with the symbol modulus m and the fixed
    primitive m-th root of unity zeta.

    Equality and hashing only look at (p, e, modulus, m); the lookup tables
    and the display name of the tower variable are derived data.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    m: int
    zeta: int
    generator: int
    variable: str = field(default="u", compare=False)
    _exp: tuple[int, ...] = field(default=(), repr=False, compare=False)
    _log: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    # -- encoding ----------------------------------------------------------

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_digits(self, digits: Iterable[int]) -> int:
        x, scale = 0, 1
        for d in digits:
            x += (d % self.p) * scale
            scale *= self.p
        return x

    def embed(self, n: int) -> int:
        """Image of the integer n in the prime field F_p."""
        return n % self.p

    def generator_element(self) -> int:
        """The class of the tower variable u (for e = 1, u is just 0)."""
        return self.p if self.e > 1 else 0

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        for _ in range(self.e):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self.from_digits(-d for d in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroElement("0 has no inverse")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm to the base `generator`."""
        if a == 0:
            raise ZeroElement("log of 0")
        return self._log[a]

    def order(self, a: int) -> int:
        return (self.q - 1) // math.gcd(self.log(a), self.q - 1)

    # -- display -----------------------------------------------------------

    def render(self, a: int) -> str:
        """Ascending powers of the tower variable, e.g. 2+u for e > 1."""
        if self.e == 1 or a < self.p:
            return str(a)
        terms = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.variable if i == 1 else f"{self.variable}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    def describe(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        mod = Poly(prime_field(self.p), self.modulus).render(self.variable)
        return f"GF({self.q})=GF({self.p})[{self.variable}]/({mod})"


def _raw_mul(a: int, b: int, p: int, e: int, modulus: tuple[int, ...]) -> int:
    """Multiply two encoded elements by schoolbook convolution mod (p, modulus)."""
    da, db = [], []
    for _ in range(e):
        a, r = divmod(a, p)
        da.append(r)
        b, r = divmod(b, p)
        db.append(r)
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(e):
                prod[k - e + j] -= c * modulus[j]
    out, scale = 0, 1
    for k in range(e):
        out += (prod[k] % p) * scale
        scale *= p
    return out


def _raw_pow(a: int, n: int, p: int, e: int, modulus: tuple[int, ...]) -> int:
    result = 1
    while n:
        if n & 1:
            result = _raw_mul(result, a, p, e, modulus)
        a = _raw_mul(a, a, p, e, modulus)
        n >>= 1
    return result


def _build_field(p: int, e: int, modulus: tuple[int, ...], m: int, variable: str) -> FieldSpec:
    q = p ** e
    cofactors = [(q - 1) // r for r in prime_divisors(q - 1)]
    generator = 1
    for g in range(1, q):
        if all(_raw_pow(g, c, p, e, modulus) != 1 for c in cofactors):
            generator = g
            break
    exp = [1] * (q - 1)
    log = [-1] * q
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = _raw_mul(x, generator, p, e, modulus)
    zeta = exp[((q - 1) // m) % (q - 1)]
    return FieldSpec(p, e, modulus, m, zeta, generator, variable, tuple(exp), tuple(log))


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldSpec:
    """F_p with the trivial symbol modulus; used to check tower moduli."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    _check_order(p)
    return _build_field(p, 1, (0, 1), 1, "u")


def _check_order(q: int) -> None:
    cap = config.get("limits.max_field_order", 65536)
    if q > cap:
        raise FieldTooLarge(f"q = {q} exceeds limits.max_field_order = {cap}")


@lru_cache(maxsize=64)
def field_make(
    p: int,
    e: int = 1,
    modulus: tuple[int, ...] | None = None,
    m: int = 2,
    variable: str = "u",
) -> FieldSpec:
    """
    Build F_q = F_p[u]/(modulus) with symbol modulus m.

    zeta is g^((q-1)/m) for the least generator g of F_q^x in the canonical
    coefficient-vector order.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ReducibleModulus(f"extension degree must be >= 1, got {e}")
    q = p ** e
    _check_order(q)
    if e == 1:
        modulus = (0, 1)
    else:
        if modulus is None:
            raise ReducibleModulus(f"GF({q}) needs an explicit tower modulus of degree {e}")
        base = prime_field(p)
        g = Poly(base, tuple(c % p for c in modulus))
        if g.degree != e or not g.is_monic or not is_irreducible(g):
            raise ReducibleModulus(
                f"{g.render(variable)} is not a monic irreducible of degree {e} over GF({p})"
            )
        modulus = g.coeffs
    if m < 2 or (q - 1) % m != 0:
        raise BadModulusM(f"m = {m} does not divide q - 1 = {q - 1}")
    spec = _build_field(p, e, modulus, m, variable)
    logger.debug("built GF(%d): generator=%d zeta=%d", q, spec.generator, spec.zeta)
    return spec


# ---------------------------------------------------------------------------
# Polynomials over F_q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial over F_q, coefficients least degree first."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(self.coeffs)
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", c[:n])

    @classmethod
    def constant(cls, fld: FieldSpec, c: int) -> "Poly":
        return cls(fld, (c,))

    @classmethod
    def monomial(cls, fld: FieldSpec, n: int, c: int = 1) -> "Poly":
        return cls(fld, (0,) * n + (c,))

    @classmethod
    def var(cls, fld: FieldSpec) -> "Poly":
        return cls(fld, (0, 1))

    # -- shape ---------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def key(self) -> tuple:
        """Sort key: degree, then ascending coefficient tuple."""
        return (self.degree, self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, tuple(out))

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, tuple(out))

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, tuple(F.mul(c, a) for a in self.coeffs))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if not other.coeffs:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dg = other.degree
        if len(rem) - 1 < dg:
            return Poly(F, ()), self
        inv_lc = F.inv(other.lc)
        quo = [0] * (len(rem) - dg)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = F.mul(c, inv_lc)
            quo[k - dg] = c
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[k - dg + j] = F.sub(rem[k - dg + j], F.mul(c, b))
        return Poly(F, tuple(quo)), Poly(F, tuple(rem[:dg]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        result = Poly.constant(self.field, 1) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lc))

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, tuple(F.mul(F.embed(i), c) for i, c in enumerate(self.coeffs))[1:])

    def render(self, var: str = "t") -> str:
        """Ascending-degree canonical text, e.g. 2*t+t^3."""
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = F.render(c)
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(mono)
            elif "+" in cs or "*" in cs:
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.render()


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (the zero polynomial when both inputs are zero)."""
    while g:
        f, g = g, f % g
    return f.monic() if f else f


# ---------------------------------------------------------------------------
# Factorization: squarefree -> distinct degree -> equal degree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def expand(self, fld: FieldSpec) -> Poly:
        out = Poly.constant(fld, self.unit)
        for g, k in self.factors:
            out = out * g ** k
        return out


def _pth_root(f: Poly) -> Poly:
    """f(t) = h(t^p)^... for a polynomial with zero derivative: its p-th root."""
    F = f.field
    root_exp = F.q // F.p  # a -> a^(q/p) inverts Frobenius on F_q
    return Poly(F, tuple(F.pow(f.coeffs[i], root_exp) for i in range(0, len(f.coeffs), F.p)))


def poly_squarefree(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition of a monic f: [(g_i, k_i)] with f = prod g_i^k_i."""
    F = f.field
    n, factors = 1, []
    while f.degree >= 1:
        df = f.derivative()
        if df:
            g = poly_gcd(f, df)
            h = f // g
            i = 1
            while h.degree > 0:
                G = poly_gcd(g, h)
                H = h // G
                if H.degree > 0:
                    factors.append((H, i * n))
                g, h, i = g // G, G, i + 1
            if g.degree <= 0:
                break
            f = g
        f, n = _pth_root(f), n * F.p
    return factors


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    F = f.field
    x = Poly.var(F)
    out, i, h = [], 1, x
    while 2 * i <= f.degree:
        h = h.pow_mod(F.q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(F: FieldSpec, below: int, rng: random.Random) -> Poly:
    return Poly(F, tuple(rng.randrange(F.q) for _ in range(below)))


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a monic f whose irreducible factors all have degree d."""
    F = f.field
    if f.degree <= d:
        return [f]
    one = Poly.constant(F, 1)
    while True:
        r = _random_poly(F, f.degree, rng)
        if r.degree < 1:
            continue
        if F.p == 2:
            # absolute trace F_{q^d} -> F_2
            h, power = r % f, r % f
            for _ in range(F.e * d - 1):
                power = (power * power) % f
                h = h + power
        else:
            h = r.pow_mod((F.q ** d - 1) // 2, f) - one
        g = poly_gcd(f, h)
        if 0 < g.degree < f.degree:
            logger.debug("EDF split degree %d into %d + %d", f.degree, g.degree, f.degree - g.degree)
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


@lru_cache(maxsize=8192)
def poly_factor(f: Poly, seed: int = 0) -> Factorization:
    """
    Factor f into unit * prod g_i^k_i with monic irreducible, pairwise
    distinct g_i sorted by (degree, ascending coefficients).
    """
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit = f.lc
    if f.degree == 0:
        return Factorization(unit, ())
    rng = random.Random(seed)
    found: list[tuple[Poly, int]] = []
    for g, k in poly_squarefree(f.monic()):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                found.append((irr, k))
    merged: dict[Poly, int] = {}
    for g, k in found:
        merged[g] = merged.get(g, 0) + k
    factors = tuple(sorted(merged.items(), key=lambda item: item[0].key()))
    return Factorization(unit, factors)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1 for primes r | n."""
    if not f:
        raise ZeroPolynomial("the zero polynomial is not irreducible")
    if f.degree < 1:
        raise ConstantPolynomial("constants are not irreducible")
    F = f.field
    f = f.monic()
    n = f.degree
    if n == 1:
        return True
    x = Poly.var(F)
    frob = [x % f]
    for _ in range(n):
        frob.append(frob[-1].pow_mod(F.q, f))
    if frob[n] != x % f:
        return False
    for r in prime_divisors(n):
        if poly_gcd(frob[n // r] - x, f).degree > 0:
            return False
    return True


def monic_polynomials(fld: FieldSpec, d: int) -> Iterator[Poly]:
    """Monic polynomials of degree d, lexicographic in (c_0, ..., c_{d-1})."""
    for lower in itertools.product(range(fld.q), repeat=d):
        yield Poly(fld, lower + (1,))


def irreducible_of_degree_avoiding(d: int, forbidden: Iterable[Poly], fld: FieldSpec) -> Poly:
    """Least monic irreducible of degree d (canonical order) outside `forbidden`."""
    if d < 1:
        raise ConstantPolynomial(f"degree must be >= 1, got {d}")
    banned = set(forbidden)
    for g in monic_polynomials(fld, d):
        if g not in banned and is_irreducible(g):
            return g
    raise Exhausted(f"all monic irreducibles of degree {d} over GF({fld.q}) are forbidden")


# ---------------------------------------------------------------------------
# Power residues and norms in F_q and F_{q^d} = F_q[t]/(P)
# ---------------------------------------------------------------------------


def _reduce(x: int | Poly, fld: FieldSpec, modulus: Poly | None) -> int | Poly:
    """Canonical residue of x: an int when the field is F_q itself (d = 1)."""
    if modulus is None:
        return x[0] if isinstance(x, Poly) else x
    if modulus.degree == 1:
        return (x % modulus)[0] if isinstance(x, Poly) else x
    return (x if isinstance(x, Poly) else Poly.constant(fld, x)) % modulus


def _base_power(x: int | Poly, n: int, fld: FieldSpec, modulus: Poly | None) -> int:
    """x^n for a reduced x whose n-th power is known to lie in F_q."""
    if isinstance(x, int):
        return fld.pow(x, n)
    y = x.pow_mod(n, modulus)
    if y.degree > 0:
        raise ValueError("power did not land in the base field")
    return y[0]


def mth_power_index(x: int | Poly, fld: FieldSpec, modulus: Poly | None = None) -> int:
    """
    The k in Z/mZ with x^((q^d - 1)/m) = zeta^k, where x lives in F_q
    (modulus None) or in F_q[t]/(modulus) with d = deg(modulus).
    x is an m-th power iff k == 0.
    """
    d = 1 if modulus is None else modulus.degree
    r = _reduce(x, fld, modulus)
    if not r:
        raise ZeroElement("0 has no power residue index")
    y = _base_power(r, (fld.q ** d - 1) // fld.m, fld, modulus)
    z = 1
    for k in range(fld.m):
        if z == y:
            return k
        z = fld.mul(z, fld.zeta)
    raise ValueError(f"{y} is not an m-th root of unity")


def norm_to_base(x: int | Poly, fld: FieldSpec, modulus: Poly | None = None) -> int:
    """N(x) = x^((q^d - 1)/(q - 1)) from F_q[t]/(modulus) down to F_q."""
    d = 1 if modulus is None else modulus.degree
    r = _reduce(x, fld, modulus)
    if not r:
        return 0
    return _base_power(r, (fld.q ** d - 1) // (fld.q - 1), fld, modulus)
