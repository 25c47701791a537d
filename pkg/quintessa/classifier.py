"""
Radicand classification for the three radicand families with a 5-class group of
type (5,5), plus hypothesis checklists and the class-number index formula.
"""

import logging
from typing import Dict, List, Optional

from sympy import factorint, isprime, nextprime

from quintessa.cyclo5 import LAMBDA, CycInt
from quintessa.exceptions import DegenerateRadicand, InvalidArgument
from quintessa.models import (
    Q_STAR,
    AuxiliaryCandidate,
    CaseReport,
    ClassData,
    GeneratorDescription,
    HypothesisCheck,
    RadicandCase,
    StructureVerdict,
)
from quintessa.splitting import (
    PrimeK0,
    distinct_primes_k0,
    field_kind,
    pi_pair,
    split_in_k,
    validate_radicand,
)
from quintessa.symbols import power_residue_symbol, symbol_at_rational_prime
from quintessa.utils.helpers import SECOND_KIND_RESIDUES, valuation

logger = logging.getLogger(__name__)

ONE_MINUS_TAU2 = "(1−τ²)"


def normalize_radicand(m: int) -> int:
    """
    Strip fifth powers from m.

    Raises:
        InvalidArgument: m <= 1.
        DegenerateRadicand: m is a perfect fifth power.
    """
    if not isinstance(m, int) or m <= 1:
        raise InvalidArgument(f"radicand must be an integer > 1, got {m!r}")
    n = 1
    for prime, exponent in factorint(m).items():
        n *= prime ** (exponent % 5)
    if n == 1:
        raise DegenerateRadicand(f"{m} is a fifth power; Q({m}^(1/5)) = Q")
    return n


def _evidence(n: int, p: Optional[int] = None, q: Optional[int] = None) -> Dict[str, int]:
    evidence = {"n_mod_25": n % 25}
    if p is not None:
        evidence["p_mod_5"] = p % 5
        evidence["p_mod_25"] = p % 25
    if q is not None:
        evidence["q_mod_5"] = q % 5
        evidence["q_mod_25"] = q % 25
    return evidence


def _is_admissible_p(p: int) -> bool:
    return p % 5 == 4 and p % 25 != 24


def detect_case(n: int) -> RadicandCase:
    """Match n against the forms 5^e p, p^e q and p^e."""
    validate_radicand(n)
    factors = factorint(n)
    primes = sorted(factors)

    if len(primes) == 1:
        p = primes[0]
        if p % 25 == 24:
            return RadicandCase(variant="Case3", p=p, e=factors[p], evidence=_evidence(n, p))
        return RadicandCase(
            variant="Uncovered",
            reason=f"single prime {p} is not -1 mod 25",
            evidence=_evidence(n, p),
        )

    if len(primes) == 2 and 5 in factors:
        p = primes[0] if primes[1] == 5 else primes[1]
        if factors[p] == 1 and _is_admissible_p(p):
            return RadicandCase(variant="Case1", p=p, e=factors[5], evidence=_evidence(n, p))
        return RadicandCase(
            variant="Uncovered",
            reason=f"n = 5^e * {p}^{factors[p]} needs a simple p = -1 mod 5, p != -1 mod 25",
            evidence=_evidence(n, p),
        )

    if len(primes) == 2:
        for p, q in ((primes[0], primes[1]), (primes[1], primes[0])):
            if (
                _is_admissible_p(p)
                and factors[q] == 1
                and q % 5 in (2, 3)
                and q % 25 not in (7, 18)
                and n % 25 in SECOND_KIND_RESIDUES
            ):
                return RadicandCase(
                    variant="Case2", p=p, e=factors[p], q=q, evidence=_evidence(n, p, q)
                )
        return RadicandCase(
            variant="Uncovered",
            reason="two-prime radicand does not match p^e * q with the required congruences",
            evidence=_evidence(n),
        )

    return RadicandCase(
        variant="Uncovered",
        reason=f"{len(primes)} distinct prime factors",
        evidence=_evidence(n),
    )


def _first_label(p: int, n: int, prefix: str) -> str:
    return split_in_k(p, n, prefix).labels[0]


def _describe_generators(case: RadicandCase, n: int, l: Optional[int]) -> GeneratorDescription:
    if case.variant in ("Case1", "Case2"):
        pattern = split_in_k(case.p, n, "P")
        p1, p2 = pattern.labels[0], pattern.labels[-1]
        big_l = _first_label(l, n, "L") if l is not None else "L"
        minus = f"[{big_l}]^{ONE_MINUS_TAU2}"
        if case.variant == "Case1":
            other = _first_label(5, n, "I")
        else:
            other = _first_label(case.q, n, "Q")
        return GeneratorDescription(
            primary=f"⟨[{p1}], {minus}⟩",
            alternates=[f"⟨[{p2}], {minus}⟩", f"⟨[{other}], {minus}⟩"],
            components={"C(σ)": f"⟨[{p1}]⟩", "C+": f"⟨[{p1}]⟩", "C-": f"⟨{minus}⟩"},
            labels=[*pattern.labels, big_l, other],
            condition="if C_k,5 has type (5,5) and rank C_k,5^(σ) = 1",
        )
    if case.variant == "Case3":
        labels = split_in_k(5, n, "B").labels
        product = "".join(labels)
        return GeneratorDescription(
            primary=f"⟨[{labels[0]}], [{labels[1]}]⟩",
            alternates=[f"⟨[{product}], [Bi]^{ONE_MINUS_TAU2}⟩"],
            components={
                "C(σ)": f"⟨[{product}]⟩",
                "C+": f"⟨[{product}]⟩",
                "C-": f"⟨[Bi]^{ONE_MINUS_TAU2}⟩",
            },
            labels=labels,
            condition="if C_k,5 has type (5,5); any two distinct Bi generate",
        )
    return GeneratorDescription()


def _validate_auxiliary(case: RadicandCase, l: int) -> None:
    if not isinstance(l, int) or not isprime(l):
        raise InvalidArgument(f"auxiliary prime l = {l!r} is not a prime")
    if l in (case.p, case.q):
        raise InvalidArgument(f"auxiliary prime l = {l} must differ from p and q")
    if case.variant == "Case1" and l == 5:
        raise InvalidArgument("auxiliary prime l must be unramified in k; 5 is ramified here")


def classify(n: int, l: Optional[int] = None) -> CaseReport:
    """
    Classify a fifth-power-free radicand.

    Args:
        n: Radicand.
        l: Optional auxiliary prime naming the L ideal in the generator description.

    Raises:
        InvalidArgument: n is not a valid radicand, or l is not admissible.
    """
    case = detect_case(n)
    if l is not None and case.variant in ("Case1", "Case2"):
        _validate_auxiliary(case, l)
    kind = field_kind(n)
    report = CaseReport(
        n=n,
        case=case,
        kind=kind,
        q_star=Q_STAR[case.variant],
        lambda_ramified=kind.kind == "First",
        generators=_describe_generators(case, n, l),
        auxiliary_prime=l if case.variant in ("Case1", "Case2") else None,
    )
    logger.debug(f"Classified {n} as {case.variant}")
    return report


def _rational_check(base: int, p: int) -> HypothesisCheck:
    symbols = symbol_at_rational_prime(base, p)
    status = "FLAG" if symbols.trivial else "PASS"
    if status == "FLAG":
        logger.info(f"({base}/p)_5 is trivial at every prime over {p}; the hypothesis expects nontrivial")
    return HypothesisCheck(
        name=f"({base}/{p})_5 nontrivial", computed=symbols.exponents, status=status
    )


def _prime_check(name: str, alpha: CycInt, prime: PrimeK0) -> HypothesisCheck:
    j = power_residue_symbol(alpha, prime)
    return HypothesisCheck(name=name, computed=[j], status="FLAG" if j == 0 else "PASS")


def hypothesis_check(report: CaseReport, l: Optional[int] = None) -> CaseReport:
    """
    Evaluate every non-residue hypothesis of the report's case.

    Case 1 needs 5 and l, Case 2 needs q and l, Case 3 needs 5, all as symbols at the
    primes over p. Trivial symbols are recorded as FLAG, never dropped.

    Raises:
        InvalidArgument: l is missing for Cases 1 and 2, or not admissible.
    """
    case = report.case
    if case.variant == "Uncovered":
        return report
    p = case.p
    pi1_gen, pi2_gen = pi_pair(p)
    pis = [("pi1", PrimeK0(pi1_gen, p, 2)), ("pi2", PrimeK0(pi2_gen, p, 2))]

    hypotheses: List[HypothesisCheck] = []
    proof_symbols: List[HypothesisCheck] = []
    if case.variant == "Case3":
        hypotheses.append(_rational_check(5, p))
        for name, prime in pis:
            proof_symbols.append(_prime_check(f"(lambda/{name})_5 over {p}", LAMBDA, prime))
        return report.model_copy(update={"hypotheses": hypotheses, "proof_symbols": proof_symbols})

    if l is None:
        l = report.auxiliary_prime
    if l is None:
        raise InvalidArgument(f"{case.variant} needs an auxiliary prime l")
    _validate_auxiliary(case, l)
    first = 5 if case.variant == "Case1" else case.q
    hypotheses.append(_rational_check(first, p))
    hypotheses.append(_rational_check(l, p))
    for k, over_l in enumerate(distinct_primes_k0(l), start=1):
        for name, prime in pis:
            proof_symbols.append(
                _prime_check(f"(pi'{k} over {l}/{name})_5", over_l.generator, prime)
            )

    updated = report.model_copy(
        update={
            "hypotheses": hypotheses,
            "proof_symbols": proof_symbols,
            "auxiliary_prime": l,
            "generators": _describe_generators(case, report.n, l),
        }
    )
    return updated


def suggest_auxiliary_primes(report: CaseReport, count: int = 5) -> List[AuxiliaryCandidate]:
    """
    Scan primes 2, 3, 7, ... (skipping 5, p and q) and report their symbols mod p.

    Nothing is selected; the caller chooses l.
    """
    case = report.case
    if case.variant not in ("Case1", "Case2"):
        return []
    candidates: List[AuxiliaryCandidate] = []
    l = 2
    while len(candidates) < count:
        if l not in (5, case.p, case.q):
            symbols = symbol_at_rational_prime(l, case.p)
            candidates.append(
                AuxiliaryCandidate(l=l, exponents=symbols.exponents, nontrivial=not symbols.trivial)
            )
        l = nextprime(l)
    return candidates


def _five_adic_exponent(u: int) -> Optional[int]:
    v = valuation(u, 5)
    return v if u == 5**v else None


def predicted_structure(data: ClassData) -> StructureVerdict:
    """
    5-adic reading of h_k = (u/5)(h_Gamma/5)^4.

    Type (5,5) needs v5(h_k) = 2, i.e. v5(u) + 4 v5(h_Gamma) = 7 with v5(u) <= 6,
    whose only solution is (3, 1).

    Raises:
        InvalidArgument: u is not a power of 5 dividing 5^6, or h_Gamma < 1.
    """
    v5_u = _five_adic_exponent(data.u_value)
    if v5_u is None or v5_u > 6:
        raise InvalidArgument(f"unit index {data.u_value} is not a divisor of 5^6")
    if data.h_gamma < 1:
        raise InvalidArgument(f"class number {data.h_gamma} must be positive")
    v5_h = valuation(data.h_gamma, 5)
    v5_hk = v5_u - 1 + 4 * (v5_h - 1)
    return StructureVerdict(
        v5_u=v5_u,
        v5_h_gamma=v5_h,
        v5_h_k=v5_hk,
        type_55_possible=(v5_u, v5_h) == (3, 1),
        solves_index_equation=v5_u + 4 * v5_h == 7,
        consistent=v5_hk >= 0,
    )
