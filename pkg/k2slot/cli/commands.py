# Purpose: Command implementations and their report models.
# Relationships: Each make_*_command() returns a Command for cli/registry.py;
#               reports are rendered by cli/output.py.
#
# Report fields are plain JSON types. Polynomials and field elements are
# given both as canonical text and, where an auditor needs them, as
# coefficient lists (least degree first, field elements in digit encoding).

import logging
from typing import TYPE_CHECKING, Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, InstanceOf

from ..core.cyclic_algebra import build_algebra, center_dimension, split_witness
from ..core.funcfield import RationalFunction
from ..core.gf import FieldSpec, Poly
from ..core.k2 import (
    K2Element,
    RamificationProfile,
    ReciprocityViolation,
    ramification,
    reciprocity_check,
)
from ..core.local2d import (
    FactoredBivariate,
    LocalSymbol,
    mult_index,
    prime_valuation,
    reciprocity_2d,
)
from ..core.bivariate import BivariatePoly
from ..core.slot import (
    SlotCertificate,
    SlotProblem,
    UnsupportedExtension,
    certify_slot,
    express_as_symbol,
    joint_support,
    split_by_kummer,
    splitting_field_descriptor,
    strong_linkage,
)
from .registry import Command, CommandRegistry

if TYPE_CHECKING:
    from .session import SessionConfig

logger = logging.getLogger("cli")

SCHEMA_VERSION = 1


class _Params(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    field: InstanceOf[FieldSpec] = Field(description="Base field F_q with its modulus m.")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class Coefficients(BaseModel):
    num: list[int]
    den: list[int]


def _coefficients(f: RationalFunction) -> Coefficients:
    return Coefficients(num=list(f.num.coeffs), den=list(f.den.coeffs))


class ResidueRow(BaseModel):
    place: str = Field(description="Monic irreducible polynomial or 'inf'.")
    degree: int
    index: int = Field(description="m-th power residue index of the residue in Z/m.")
    representative: str
    coefficients: list[int] = Field(description="Residue as a polynomial in t mod the place, least degree first.")


def _profile_rows(profile: RamificationProfile) -> list[ResidueRow]:
    rows = []
    for r in profile:
        rep = r.representative
        coeffs = list(rep.coeffs) if isinstance(rep, Poly) else [rep]
        rows.append(
            ResidueRow(
                place=r.place.render(),
                degree=r.place.degree,
                index=r.index,
                representative=r.render_representative(),
                coefficients=coeffs,
            )
        )
    return rows


class ProfileReport(BaseModel):
    kind: Literal["residues"] = "residues"
    alpha: str
    profile: list[ResidueRow]


class ZeroReport(BaseModel):
    kind: Literal["zero"] = "zero"
    alpha: str
    result: Literal["zero", "nonzero"]
    profile: list[ResidueRow]


class ReciprocityReport(BaseModel):
    kind: Literal["reciprocity"] = "reciprocity"
    alpha: str
    holds: bool
    total: int
    profile: list[ResidueRow]


class SymbolReport(BaseModel):
    kind: Literal["k2-symbol"] = "k2-symbol"
    alpha: str
    f: str
    b: str
    symbol: str


class CertificateReport(BaseModel):
    class_index: int
    alpha: str
    status: str
    certified: bool
    cofactor: str | None = None
    reason: str = ""
    valuations: dict[str, int] = Field(description="v(f) at each ramified place of the class.")
    candidates_examined: int
    split_check: bool | None = Field(
        default=None,
        description="Whether the class dies in F(f^(1/m)); only computed when deg f = 1.",
    )


class SlotReport(BaseModel):
    kind: Literal["slot-find", "slot-verify"]
    f: str
    f_coefficients: Coefficients
    splitting_field: str
    support: list[str]
    certificates: list[CertificateReport]


class AlgebraReport(BaseModel):
    kind: Literal["alg-build"] = "alg-build"
    a: str
    b: str
    omega: str
    m: int
    dimension: int
    basis: list[str]
    table: list[list[list[int]]] = Field(description="table[r][s] is e_r*e_s as a coordinate vector.")
    products: list[list[str]] = Field(description="table[r][s] as text, e.g. 2*x*y.")
    center_dimension: int


class SplitReport(BaseModel):
    kind: Literal["alg-split"] = "alg-split"
    a: str
    b: str
    form: Literal["norm-form", "zero-divisor"]
    witness: list[int]
    rendered: str


class MultReport(BaseModel):
    kind: Literal["r2d-mult"] = "r2d-mult"
    prime: str
    u: str
    valuation: int
    index: int


class PrimeRow(BaseModel):
    prime: str
    residue: str
    index: int


class Reciprocity2DReport(BaseModel):
    kind: Literal["r2d-reciprocity"] = "r2d-reciprocity"
    symbols: list[str]
    holds: bool
    total: int
    breakdown: list[PrimeRow]


Report = Annotated[
    Union[
        ProfileReport,
        ZeroReport,
        ReciprocityReport,
        SymbolReport,
        SlotReport,
        AlgebraReport,
        SplitReport,
        MultReport,
        Reciprocity2DReport,
    ],
    Field(discriminator="kind"),
]


class SessionReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    field: str
    m: int
    seed: int
    reports: list[Report] = Field(default_factory=list)
    error: str | None = Field(default=None, description="Set when a command aborted the session.")


# ---------------------------------------------------------------------------
# k2 commands
# ---------------------------------------------------------------------------


class K2Params(_Params):
    alpha: InstanceOf[K2Element] = Field(description="The class, as a sum of symbols.")


def make_residues_command() -> Command:
    def execute(params: K2Params, cfg: "SessionConfig") -> ProfileReport:
        profile = ramification(params.alpha, cfg.seed)
        return ProfileReport(alpha=params.alpha.render(), profile=_profile_rows(profile))

    return Command(
        name="residues",
        description="Tame residues of a class at every place where it ramifies.",
        _execute=execute,
        params_model=K2Params,
    )


def make_zero_command() -> Command:
    def execute(params: K2Params, cfg: "SessionConfig") -> ZeroReport:
        profile = ramification(params.alpha, cfg.seed)
        return ZeroReport(
            alpha=params.alpha.render(),
            result="nonzero" if profile else "zero",
            profile=_profile_rows(profile),
        )

    return Command(
        name="zero",
        description="Decide whether a class vanishes in K2(F_q(t))/m.",
        _execute=execute,
        params_model=K2Params,
    )


def make_reciprocity_command() -> Command:
    def execute(params: K2Params, cfg: "SessionConfig") -> ReciprocityReport:
        alpha = params.alpha
        ok, total = reciprocity_check(alpha, cfg.seed)
        if not ok:
            raise ReciprocityViolation(total, params.field.m)
        return ReciprocityReport(
            alpha=alpha.render(),
            holds=ok,
            total=total,
            profile=_profile_rows(ramification(alpha, cfg.seed)),
        )

    return Command(
        name="reciprocity",
        description="Check that the residue indices of a class sum to zero mod m.",
        _execute=execute,
        params_model=K2Params,
    )


def make_symbol_command() -> Command:
    def execute(params: K2Params, cfg: "SessionConfig") -> SymbolReport:
        f, b = express_as_symbol(params.alpha, cfg.degree_bound, cfg.budget, cfg.seed)
        return SymbolReport(
            alpha=params.alpha.render(),
            f=f.render(),
            b=b.render(),
            symbol=f"{{{f.render()}, {b.render()}}}",
        )

    return Command(
        name="k2-symbol",
        description="Write a class as a single symbol {f, b}.",
        _execute=execute,
        params_model=K2Params,
    )


# ---------------------------------------------------------------------------
# slot commands
# ---------------------------------------------------------------------------


class SlotFindParams(_Params):
    classes: tuple[InstanceOf[K2Element], ...] = Field(description="Classes that must share a slot.")


class SlotVerifyParams(SlotFindParams):
    f: InstanceOf[RationalFunction] = Field(description="Candidate common slot.")


def _split_check(alpha: K2Element, f: RationalFunction, seed: int) -> bool | None:
    try:
        return split_by_kummer(alpha, f, seed)
    except UnsupportedExtension:
        return None


def _certificate_report(alpha: K2Element, cert: SlotCertificate, index: int, seed: int) -> CertificateReport:
    b = cert.cofactors.get(index)
    return CertificateReport(
        class_index=index,
        alpha=alpha.render(),
        status=cert.status,
        certified=cert.certified,
        cofactor=b.render() if b is not None else None,
        reason=cert.reason,
        valuations={v.render(): k for v, k in cert.valuations.items()},
        candidates_examined=cert.candidates_examined,
        split_check=_split_check(alpha, cert.f, seed),
    )


def _slot_report(
    kind: str, problem: SlotProblem, f: RationalFunction, certs: list[SlotCertificate], seed: int
) -> SlotReport:
    return SlotReport(
        kind=kind,
        f=f.render(),
        f_coefficients=_coefficients(f),
        splitting_field=splitting_field_descriptor(f, problem.field),
        support=[v.render() for v in joint_support(problem, seed)],
        certificates=[
            _certificate_report(alpha, cert, i, seed)
            for i, (alpha, cert) in enumerate(zip(problem.classes, certs))
        ],
    )


def make_slot_find_command() -> Command:
    def execute(params: SlotFindParams, cfg: "SessionConfig") -> SlotReport:
        problem = SlotProblem(params.field, params.classes)
        f, certs = strong_linkage(problem, cfg.degree_bound, cfg.budget, cfg.seed)
        return _slot_report("slot-find", problem, f, certs, cfg.seed)

    return Command(
        name="slot-find",
        description="Construct a common slot f for the classes and certify it per class.",
        _execute=execute,
        params_model=SlotFindParams,
    )


def make_slot_verify_command() -> Command:
    def execute(params: SlotVerifyParams, cfg: "SessionConfig") -> SlotReport:
        problem = SlotProblem(params.field, params.classes)
        certs = [
            certify_slot(alpha, params.f, cfg.degree_bound, cfg.budget, cfg.seed, class_index=i)
            for i, alpha in enumerate(params.classes)
        ]
        return _slot_report("slot-verify", problem, params.f, certs, cfg.seed)

    return Command(
        name="slot-verify",
        description="Check a given f against every class and search for cofactors.",
        _execute=execute,
        params_model=SlotVerifyParams,
    )


# ---------------------------------------------------------------------------
# alg commands
# ---------------------------------------------------------------------------


def _term(F: FieldSpec, c: int, label: str) -> str:
    if label == "1":
        return F.render(c)
    if c == 1:
        return label
    cs = F.render(c)
    return f"({cs})*{label}" if "+" in cs else f"{cs}*{label}"


class AlgebraParams(_Params):
    a: int = Field(description="First parameter, a nonzero element of F_q.")
    b: int = Field(description="Second parameter, a nonzero element of F_q.")


def make_alg_build_command() -> Command:
    def execute(params: AlgebraParams, cfg: "SessionConfig") -> AlgebraReport:
        F = params.field
        A = build_algebra(params.a, params.b, F)
        return AlgebraReport(
            a=F.render(A.a),
            b=F.render(A.b),
            omega=F.render(A.omega),
            m=A.m,
            dimension=A.dimension,
            basis=[A.basis_label(r) for r in range(A.dimension)],
            table=A.coordinate_table(),
            products=[[_term(F, c, A.basis_label(k)) for c, k in row] for row in A.table],
            center_dimension=center_dimension(A),
        )

    return Command(
        name="alg-build",
        description="Structure constants and center of the symbol algebra (a, b).",
        _execute=execute,
        params_model=AlgebraParams,
    )


def make_alg_split_command() -> Command:
    def execute(params: AlgebraParams, cfg: "SessionConfig") -> SplitReport:
        F = params.field
        A = build_algebra(params.a, params.b, F)
        w = split_witness(A, cfg.budget)
        if A.m == 2:
            x0, y0, z0 = w
            return SplitReport(
                a=F.render(A.a),
                b=F.render(A.b),
                form="norm-form",
                witness=[x0, y0, z0],
                rendered=f"(x, y, z) = ({F.render(x0)}, {F.render(y0)}, {F.render(z0)})",
            )
        terms = [_term(F, c, A.basis_label(r)) for r, c in enumerate(w) if c]
        return SplitReport(
            a=F.render(A.a),
            b=F.render(A.b),
            form="zero-divisor",
            witness=list(w),
            rendered="+".join(terms),
        )

    return Command(
        name="alg-split",
        description="Exhibit a witness that the symbol algebra (a, b) is split.",
        _execute=execute,
        params_model=AlgebraParams,
    )


# ---------------------------------------------------------------------------
# r2d commands
# ---------------------------------------------------------------------------


class MultParams(_Params):
    prime: InstanceOf[BivariatePoly] = Field(description="Height-one prime through the origin.")
    u: InstanceOf[FactoredBivariate] = Field(description="Factored element to evaluate.")


class Reciprocity2DParams(_Params):
    symbols: tuple[InstanceOf[LocalSymbol], ...] = Field(description="Symbols with factored entries.")


def make_mult_command() -> Command:
    def execute(params: MultParams, cfg: "SessionConfig") -> MultReport:
        u = params.u.validate()
        return MultReport(
            prime=params.prime.render(),
            u=u.render(),
            valuation=prime_valuation(params.prime, u),
            index=mult_index(params.prime, u, params.field),
        )

    return Command(
        name="r2d-mult",
        description="Intersection index sum e_i*i(p, f_i) mod m of u along the prime p.",
        _execute=execute,
        params_model=MultParams,
    )


def make_reciprocity_2d_command() -> Command:
    def execute(params: Reciprocity2DParams, cfg: "SessionConfig") -> Reciprocity2DReport:
        for s in params.symbols:
            s.a.validate()
            s.b.validate()
        ok, total, breakdown = reciprocity_2d(list(params.symbols))
        if not ok:
            raise ReciprocityViolation(total, params.field.m)
        return Reciprocity2DReport(
            symbols=[s.render() for s in params.symbols],
            holds=ok,
            total=total,
            breakdown=[PrimeRow(prime=c.prime.render(), residue=c.residue.render(), index=c.index) for c in breakdown],
        )

    return Command(
        name="r2d-reciprocity",
        description="Sum of the intersection indices of all residues at the origin.",
        _execute=execute,
        params_model=Reciprocity2DParams,
    )


def build_registry() -> CommandRegistry:
    registry = CommandRegistry()
    for make in (
        make_residues_command,
        make_zero_command,
        make_reciprocity_command,
        make_symbol_command,
        make_slot_find_command,
        make_slot_verify_command,
        make_alg_build_command,
        make_alg_split_command,
        make_mult_command,
        make_reciprocity_2d_command,
    ):
        registry.register(make())
    logger.debug(f"registered {len(registry.all_commands())} commands")
    return registry
