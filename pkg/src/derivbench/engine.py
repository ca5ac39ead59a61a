"""Classification of extended derivations and the built-in example families.

``classify`` gathers the three base hypotheses (no image in k[x_i] up to the
cap, an exponent matrix with trivial cone, trivial base isotropy) together
with the structural checks on the links, and reports the isotropy and
simplicity conclusions with an explicit trust level for each input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .deriv import ChainError, DegreeCap, Derivation, ExtensionChain, extend
from .dsl import BaseFlags, Certificate, DerivationSpec, default_names, parse_polynomial
from .isotropy import (
    PolyMap,
    TriangularMap,
    enumerate_commuting_triangular,
    translation_family_check,
    translation_samples_needed,
)
from .oracles import OracleVerdict, shamsuddin_obstruction, subring_image_scan
from .poly import Polynomial, degree_in
from .starcone import ExponentMatrix, ZeroImageError, candidate_matrices, check_star

COND_I = "CondI"
COND_II = "CondII_Star"
COND_III = "CondIII_TrivialIsotropy"
LINKS = "LinksNonConstant"
CAP = "DegCapRespected"
HYPOTHESES = (LINKS, CAP, COND_I, COND_II, COND_III)

EXACT = "ExactDecision"
DESK = "DeskOracle"
CITED = "PaperCertified"
USER = "UserAsserted"

PLANE_ISOTROPY_CITATION = "simple-plane-derivations-have-trivial-isotropy"


class ClassificationError(ValueError):
    pass


class FamilyError(ValueError):
    """A family constructor refused its parameters; ``hypothesis`` names the violated condition."""

    def __init__(self, message: str, hypothesis: str):
        super().__init__(f"{message} (requires {hypothesis})")
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class HypothesisStatus:
    which: str
    method: str
    outcome: str  # pass / fail / unknown
    bound: int | None = None
    citation: str | None = None
    detail: str = ""

    def __post_init__(self):
        if self.method == DESK and self.bound is None:
            raise ValueError("desk-oracle statuses must carry their bound")
        if self.method == CITED and not self.citation:
            raise ValueError("cited statuses must carry a citation")
        if self.outcome not in ("pass", "fail", "unknown"):
            raise ValueError(f"bad outcome {self.outcome!r}")


@dataclass(frozen=True)
class DeskBounds:
    oracle: int = 8
    tail_degree: int = 2
    coeffs: tuple[Fraction, ...] = (Fraction(-1), Fraction(0), Fraction(1))
    samples: tuple[Fraction, ...] = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2))

    def __str__(self) -> str:
        coeffs = ",".join(str(c) for c in self.coeffs)
        return f"D_oracle={self.oracle}, Dtail={self.tail_degree}, coeffs={{{coeffs}}}"


@dataclass(frozen=True)
class LinkCheck:
    link: int
    verdict: OracleVerdict


@dataclass(frozen=True)
class ShamsuddinResult:
    checks: tuple[LinkCheck, ...]

    @property
    def witness(self) -> LinkCheck | None:
        return next((c for c in self.checks if c.verdict.found), None)

    @property
    def confirmed(self) -> bool:
        return self.witness is None


def shamsuddin_extend_simple(chain: ExtensionChain, bound: int) -> ShamsuddinResult:
    """For each link, look for r in the partial extension with d(r) = link.

    Such an r makes ``x_{j+1} - r`` a non-trivial constant, so the chain is
    not simple; the scan stops at the first witness.
    """
    checks = []
    for t, g in enumerate(chain.links):
        d = chain.partial_extension(t)
        verdict = shamsuddin_obstruction(d, Polynomial.zero(d.arity), g, bound)
        checks.append(LinkCheck(t, verdict))
        if verdict.found:
            break
    return ShamsuddinResult(tuple(checks))


@dataclass
class ClassificationReport:
    chain: ExtensionChain
    statuses: list[HypothesisStatus]
    star_matrix: ExponentMatrix | None
    star_candidates: list[tuple[ExponentMatrix, bool]]
    isotropy_conclusion: str  # TranslationsInXn / Unknown
    simplicity_conclusion: str  # Simple / Unknown / NotSimpleWitness
    simplicity_witness: Polynomial | None
    certification_level: str  # ExactUnderPaperCitations / DeskScaleOnly
    bounds: DeskBounds
    translation_check: bool
    translation_samples_certify: bool
    commuting_maps: list[TriangularMap]
    link_checks: ShamsuddinResult
    notes: list[str] = field(default_factory=list)

    def holds(self, which: str) -> str:
        return _combined_outcome([s for s in self.statuses if s.which == which])

    @property
    def enumeration_only_translations(self) -> bool:
        return all(m.as_map().translation_constant() is not None for m in self.commuting_maps)


def _combined_outcome(statuses: Sequence[HypothesisStatus]) -> str:
    outcomes = {s.outcome for s in statuses}
    if "fail" in outcomes:
        return "fail"
    if "pass" in outcomes:
        return "pass"
    return "unknown"


def _from_certificate(which: str, cert: Certificate, detail: str = "") -> HypothesisStatus:
    return HypothesisStatus(which, cert.method, "pass", citation=cert.citation, detail=detail)


def classify(
    chain: ExtensionChain,
    flags: BaseFlags | None = None,
    bounds: DeskBounds | None = None,
    notes: Sequence[str] = (),
) -> ClassificationReport:
    flags = flags or BaseFlags()
    bounds = bounds or DeskBounds()
    if not chain.strict:
        raise ClassificationError("relaxed chains (constant links allowed) cannot be classified")
    if not chain.links:
        raise ClassificationError("the chain needs at least one link (n > i)")
    i = chain.base_arity
    if flags.trivial_isotropy is False and flags.simple is not None and i == 2:
        raise ClassificationError(
            "contradictory flags: a simple derivation of k[x1,x2] has trivial isotropy, "
            "yet non-trivial isotropy was asserted"
        )
    base = chain.base
    dn = extend(chain)
    statuses: list[HypothesisStatus] = []

    nonconstant = all(not g.is_constant() for g in chain.links)
    statuses.append(HypothesisStatus(LINKS, EXACT, "pass" if nonconstant else "fail"))
    first_deg = degree_in(chain.links[0], i)
    statuses.append(
        HypothesisStatus(CAP, EXACT, "pass" if chain.cap.admits(first_deg) else "fail",
                         detail=f"deg_x{i} g = {first_deg}, cap = {chain.cap}")
    )

    # (ii) exponent matrix with trivial cone
    star = None
    tried: list[tuple[ExponentMatrix, bool]] = []
    try:
        for cand in candidate_matrices(base):
            ok = check_star(cand).holds
            tried.append((cand, ok))
            if ok and star is None:
                star = cand
        statuses.append(
            HypothesisStatus(COND_II, EXACT, "pass" if star else "fail",
                             detail=f"matrix {star}" if star else f"{len(tried)} candidate(s), none trivial")
        )
    except ZeroImageError as exc:
        statuses.append(HypothesisStatus(COND_II, EXACT, "fail", detail=str(exc)))

    # (i) no non-zero g(x_i) of degree <= cap in the image of the base
    if flags.cond_i is not None:
        statuses.append(_from_certificate(COND_I, flags.cond_i))
    scan = subring_image_scan(base, i, chain.cap, bounds.oracle)
    statuses.append(
        HypothesisStatus(COND_I, DESK, "fail" if scan.found else "pass", bound=bounds.oracle, detail=str(scan))
    )

    # (iii) trivial isotropy of the base
    if isinstance(flags.trivial_isotropy, Certificate):
        statuses.append(_from_certificate(COND_III, flags.trivial_isotropy))
    elif flags.trivial_isotropy is False:
        statuses.append(HypothesisStatus(COND_III, USER, "fail", detail="non-trivial isotropy asserted"))
    elif i == 2 and flags.simple is not None:
        statuses.append(
            HypothesisStatus(COND_III, CITED, "pass", citation=PLANE_ISOTROPY_CITATION,
                             detail="base is simple on two variables")
        )
    base_maps = enumerate_commuting_triangular(base, bounds.tail_degree, bounds.coeffs)
    others = [m for m in base_maps if not m.as_map().is_identity()]
    statuses.append(
        HypothesisStatus(COND_III, DESK, "fail" if others else "pass", bound=bounds.tail_degree,
                         detail=(f"commuting non-identity map {_fmt_map(others[0])}" if others
                                 else f"only the identity among {len(base_maps)} triangular map(s) found"))
    )

    outcome = {h: _combined_outcome([s for s in statuses if s.which == h]) for h in HYPOTHESES}
    all_pass = all(v == "pass" for v in outcome.values())
    isotropy = "TranslationsInXn" if all_pass else "Unknown"

    link_checks = shamsuddin_extend_simple(chain, bounds.oracle)
    witness = link_checks.witness
    chain_condition = all(outcome[h] == "pass" for h in (LINKS, CAP, COND_I))
    if witness is not None:
        simplicity, simplicity_witness = "NotSimpleWitness", witness.verdict.witness
    elif flags.simple is not None and chain_condition:
        simplicity, simplicity_witness = "Simple", None
    else:
        simplicity, simplicity_witness = "Unknown", None

    def certified(h: str) -> bool:
        return any(s.outcome == "pass" and s.method != DESK for s in statuses if s.which == h)

    relied = [h for h in HYPOTHESES if outcome[h] == "pass"]
    level = "ExactUnderPaperCitations" if all(certified(h) for h in relied) else "DeskScaleOnly"

    samples = bounds.samples
    translation_ok = translation_family_check(dn, samples)
    samples_certify = len(set(samples)) >= translation_samples_needed(dn)
    maps = enumerate_commuting_triangular(dn, bounds.tail_degree, bounds.coeffs)

    report = ClassificationReport(
        chain=chain,
        statuses=statuses,
        star_matrix=star,
        star_candidates=tried,
        isotropy_conclusion=isotropy,
        simplicity_conclusion=simplicity,
        simplicity_witness=simplicity_witness,
        certification_level=level,
        bounds=bounds,
        translation_check=translation_ok,
        translation_samples_certify=samples_certify,
        commuting_maps=maps,
        link_checks=link_checks,
        notes=list(notes) + ["ground field fixed to Q"],
    )
    if isotropy == "TranslationsInXn" and not (translation_ok and report.enumeration_only_translations):
        report.notes.append("desk confirmation disagrees with the isotropy conclusion")
    return report


def _fmt_map(rho: TriangularMap | PolyMap) -> str:
    if isinstance(rho, TriangularMap):
        rho = rho.as_map()
    return "(" + ", ".join(str(p) for p in rho.images) + ")"


# built-in families


@dataclass(frozen=True)
class Family:
    name: str
    params: dict
    chain: ExtensionChain
    flags: BaseFlags
    notes: tuple[str, ...] = ()

    def spec(self) -> DerivationSpec:
        return DerivationSpec(default_names(self.chain.arity), self.chain.base, self.chain.links,
                              self.chain.cap, self.flags)


def _links(raw: Sequence, n: int, base_arity: int, hypothesis: str) -> tuple[Polynomial, ...]:
    if n <= base_arity:
        raise FamilyError(f"n = {n} must exceed {base_arity}", "n > 2")
    if len(raw) != n - base_arity:
        raise FamilyError(f"expected {n - base_arity} link(s), got {len(raw)}", hypothesis)
    out = []
    for t, g in enumerate(raw):
        arity = base_arity + t
        if isinstance(g, str):
            g = parse_polynomial(g, default_names(arity))
        out.append(g)
    return tuple(out)


def _chain(base: Derivation, links, cap: DegreeCap, hypothesis: str) -> ExtensionChain:
    try:
        return ExtensionChain(base, links, cap)
    except ChainError as exc:
        raise FamilyError(str(exc), hypothesis) from None


LINK_HYPOTHESIS = "g_j(x_j) in k[x_j] minus k for every link"


def family_cor29(m1: int, m2: int, n: int, links: Sequence) -> Family:
    """d_2 = (1 + x1^m2 x2) dx1 + x1^m1 dx2 with m2 not dividing m1."""
    if m1 < 1 or m2 < 1:
        raise FamilyError(f"m1 = {m1}, m2 = {m2}", "m1, m2 positive integers")
    if m1 % m2 == 0:
        raise FamilyError(f"m2 = {m2} divides m1 = {m1}", "m2 does not divide m1")
    x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    base = Derivation((1 + x1**m2 * x2, x1**m1))
    chain = _chain(base, _links(links, n, 2, LINK_HYPOTHESIS), DegreeCap(), LINK_HYPOTHESIS)
    cert = Certificate(CITED, "cor29")
    notes = ("condition (i) is the no-g(x)-in-image property of y^m1 dx + (1 + y^m2 x) dy "
             "under the identification x -> x2, y -> x1",)
    return Family("cor29", {"m1": m1, "m2": m2, "n": n}, chain,
                  BaseFlags(simple=cert, cond_i=cert), notes)


def family_cor211(m1: int, m2: int, n: int, links: Sequence) -> Family:
    """d_2 = (1 - x2^m2 x1) dx1 + x1^m1 dx2, first link of degree <= 1."""
    if m1 < 2:
        raise FamilyError(f"m1 = {m1}", "m1 >= 2")
    if m2 < 1:
        raise FamilyError(f"m2 = {m2}", "m2 positive integer")
    x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    base = Derivation((1 - x2**m2 * x1, x1**m1))
    parsed = _links(links, n, 2, LINK_HYPOTHESIS)
    if parsed and degree_in(parsed[0], 2) > 1:
        raise FamilyError(f"first link has degree {degree_in(parsed[0], 2)} in x2", "deg_x2 g_2(x2) <= 1")
    chain = _chain(base, parsed, DegreeCap(1), LINK_HYPOTHESIS)
    cert = Certificate(CITED, "cor211")
    return Family("cor211", {"m1": m1, "m2": m2, "n": n}, chain, BaseFlags(simple=cert, cond_i=cert))


def family_cor212(m: int, g, n: int, links: Sequence) -> Family:
    """d_2 = (x1^m x2 + g) dx1 + x1^(m-1) dx2 with g in k[x1], deg g <= m, gcd(x1, g) = 1."""
    if m < 2:
        raise FamilyError(f"m = {m}", "m >= 2")
    if isinstance(g, str):
        g = parse_polynomial(g, default_names(2))
    elif isinstance(g, (int, Fraction)):
        g = Polynomial.const(2, g)
    if g.arity != 2 or not g.variables() <= {1}:
        raise FamilyError(f"g = {g} is not a polynomial in x1", "g in k[x1]")
    if degree_in(g, 1) > m:
        raise FamilyError(f"deg g = {degree_in(g, 1)} exceeds m = {m}", "deg_x1 g <= m")
    if g.constant_term() == 0:
        raise FamilyError(f"x1 divides g = {g}", "gcd(x1, g) = 1")
    x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    base = Derivation((x1**m * x2 + g, x1 ** (m - 1)))
    chain = _chain(base, _links(links, n, 2, LINK_HYPOTHESIS), DegreeCap(), LINK_HYPOTHESIS)
    cert = Certificate(CITED, "cor212")
    return Family("cor212", {"m": m, "g": str(g), "n": n}, chain, BaseFlags(simple=cert, cond_i=cert))


FAMILIES = {"cor29": family_cor29, "cor211": family_cor211, "cor212": family_cor212}
