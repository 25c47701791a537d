"""
Decomposition laws for rational primes in k0 = Q(zeta), Gamma = Q(n^(1/5)) and the
normal closure k = Gamma(zeta).

Primes of k0 are found constructively. Splitting in k is derived prime by prime from
the Kummer criterion, with lambda handled by an exhaustive search modulo lambda^6.
"""

import functools
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Dict, FrozenSet, List, Optional, Tuple

from sympy import isprime, primitive_root

from quintessa.cyclo5 import (
    LAMBDA,
    LAMBDA_COFACTOR,
    ZETA,
    CycInt,
    IntOrCyc,
    eval_at_one,
    exact_quotient,
    galois,
    gcd,
    valuation,
)
from quintessa.exceptions import InvalidArgument, Unsupported
from quintessa.models import FieldKind, PatternEntry, SplittingPattern
from quintessa.utils.helpers import is_fifth_power_free, is_second_kind_residue, radical

logger = logging.getLogger(__name__)

LAMBDA_DIGITS = 6


class SplitType(str, Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"


@dataclass(frozen=True)
class PrimeK0:
    """A prime of Z[zeta] lying over the rational prime parent_p."""

    generator: CycInt
    parent_p: int
    residue_degree: int
    is_lambda: bool = False

    @property
    def norm(self) -> int:
        return self.parent_p**self.residue_degree

    def __str__(self) -> str:
        return str(self.generator)


LAMBDA_PRIME = PrimeK0(LAMBDA, 5, 1, is_lambda=True)


def residue_degree(p: int) -> int:
    """Multiplicative order of p modulo 5 (p != 5)."""
    return {1: 1, 4: 2, 2: 4, 3: 4}[p % 5]


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise InvalidArgument(f"{p} is not a prime")


def validate_radicand(n: int) -> None:
    """
    Raises:
        InvalidArgument: n <= 1 or some prime divides n to the fifth power.
    """
    if not isinstance(n, int) or n <= 1:
        raise InvalidArgument(f"radicand must be an integer > 1, got {n!r}")
    if not is_fifth_power_free(n):
        raise InvalidArgument(f"radicand {n} is not fifth-power-free; normalize it first")


def fifth_roots_of_unity(p: int) -> List[int]:
    """The four nontrivial 5th roots of unity mod p = 1 (mod 5), as r, r^2, r^3, r^4."""
    g = primitive_root(p)
    step = (p - 1) // 5
    r = min(pow(g, k * step, p) for k in range(1, 5))
    return [pow(r, i, p) for i in range(1, 5)]


def quadratic_representation(p: int) -> Tuple[int, int]:
    """
    Find (a, b) with p = a^2 + ab - b^2 for p = -1 (mod 5).

    a is the smallest positive solution; b is then chosen so that 2a + b = 1 (mod 5).
    """
    if p % 5 != 4:
        raise InvalidArgument(f"{p} is not -1 mod 5")
    a = 1
    while True:
        disc = 5 * a * a - 4 * p
        if disc >= 0:
            s = isqrt(disc)
            if s * s == disc:
                b = (a - s) // 2
                if (2 * a + b) % 5 != 1:
                    b = a - b
                return a, b
        a += 1


def pi_pair(p: int) -> Tuple[CycInt, CycInt]:
    """pi1 = b + a(zeta^2 + zeta^3) and pi2 = (a - b) + a(zeta^2 + zeta^3)."""
    a, b = quadratic_representation(p)
    return CycInt(b, 0, a, a), CycInt(a - b, 0, a, a)


def factor_rational_prime_k0(p: int) -> List[PrimeK0]:
    """
    Factor p in Z[zeta], with multiplicity.

    Args:
        p: Rational prime.

    Returns:
        Four copies of lambda for p = 5, otherwise the distinct primes over p.

    Raises:
        InvalidArgument: p is not prime.
    """
    _require_prime(p)
    if p == 5:
        return [LAMBDA_PRIME] * 4
    f = residue_degree(p)
    if f == 1:
        return [
            PrimeK0(gcd(p, ZETA - r), p, 1) for r in fifth_roots_of_unity(p)
        ]
    if f == 2:
        pi1, pi2 = pi_pair(p)
        return [PrimeK0(pi1, p, 2), PrimeK0(pi2, p, 2)]
    return [PrimeK0(CycInt(p), p, 4)]


def distinct_primes_k0(p: int) -> List[PrimeK0]:
    primes: List[PrimeK0] = []
    for prime in factor_rational_prime_k0(p):
        if prime not in primes:
            primes.append(prime)
    return primes


def ramification_in_k0(prime: PrimeK0) -> int:
    return 4 if prime.is_lambda else 1


def galois_prime(prime: PrimeK0, i: int) -> PrimeK0:
    """Image of a prime under zeta -> zeta^i."""
    return PrimeK0(galois(prime.generator, i), prime.parent_p, prime.residue_degree, prime.is_lambda)


def _labels(prefix: str, count: int) -> List[str]:
    if count == 1:
        return [prefix]
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def _pattern(
    field_tag: str,
    p: int,
    n: Optional[int],
    prefix: str,
    shapes: List[Tuple[int, int]],
    inferred: bool = False,
    note: Optional[str] = None,
) -> SplittingPattern:
    entries = [
        PatternEntry(label=label, e=e, f=f)
        for label, (e, f) in zip(_labels(prefix, len(shapes)), shapes)
    ]
    return SplittingPattern(
        field_tag=field_tag, p=p, n=n, entries=entries, inferred=inferred, note=note
    )


def split_in_k0(p: int, prefix: str = "pi") -> SplittingPattern:
    """Pattern of p in k0."""
    primes = factor_rational_prime_k0(p)
    if p == 5:
        return _pattern("K0", p, None, "lambda", [(4, 1)])
    return _pattern("K0", p, None, prefix, [(1, prime.residue_degree) for prime in primes])


def field_kind(n: int) -> FieldKind:
    """
    Kind and conductor of Gamma = Q(n^(1/5)).

    Second kind iff n^4 = 1 (mod 25); f^4 = 25 R^4 for the first kind and R^4 otherwise.
    """
    validate_radicand(n)
    kind = "Second" if is_second_kind_residue(n) else "First"
    r = radical(n)
    return FieldKind(
        n=n, kind=kind, radical=r, conductor_f4=r**4 * (25 if kind == "First" else 1)
    )


def divides_discriminant(p: int, n: int) -> bool:
    """p ramifies in Gamma: p | n, or p = 5 (P^5 or P1 P2^4 depending on the kind)."""
    _require_prime(p)
    validate_radicand(n)
    return p == 5 or n % p == 0


def is_quintic_residue_mod(n: int, p: int) -> bool:
    """n is a 5th power mod p, decided by the power residue symbol at a prime over p."""
    from quintessa.symbols import power_residue_symbol

    return power_residue_symbol(CycInt(n), factor_rational_prime_k0(p)[0]) == 0


def split_in_gamma(p: int, n: int, prefix: str = "P") -> SplittingPattern:
    """
    Decomposition of p in Gamma = Q(n^(1/5)).

    Raises:
        InvalidArgument: p is not prime or n is not a valid radicand.
    """
    _require_prime(p)
    validate_radicand(n)
    if p == 5:
        if field_kind(n).kind == "First":
            return _pattern("Gamma", p, n, prefix, [(5, 1)])
        return _pattern("Gamma", p, n, prefix, [(1, 1), (4, 1)])
    if n % p == 0:
        return _pattern("Gamma", p, n, prefix, [(5, 1)])
    if p % 5 in (2, 3):
        return _pattern("Gamma", p, n, prefix, [(1, 1), (1, 4)])
    if p % 5 == 4:
        return _pattern("Gamma", p, n, prefix, [(1, 1), (1, 2), (1, 2)])
    if is_quintic_residue_mod(n, p):
        return _pattern("Gamma", p, n, prefix, [(1, 1)] * 5)
    return _pattern("Gamma", p, n, prefix, [(1, 5)])


def lambda_digits(y: IntOrCyc, count: int = LAMBDA_DIGITS) -> Tuple[int, ...]:
    """First `count` lambda-adic digits of y, each in 0..4."""
    y = CycInt.of(y)
    digits = []
    for _ in range(count):
        d = eval_at_one(y)
        digits.append(d)
        shifted = (y - d) * LAMBDA_COFACTOR
        y = CycInt(*(c // 5 for c in shifted.coords))
    return tuple(digits)


@functools.lru_cache(maxsize=1)
def fifth_power_residues() -> Tuple[FrozenSet[Tuple[int, ...]], FrozenSet[Tuple[int, ...]]]:
    """
    Digit tuples of x^5 modulo lambda^6 and lambda^5, over all x modulo lambda^6.
    """
    powers = [CycInt(1)]
    for _ in range(1, LAMBDA_DIGITS):
        powers.append(powers[-1] * LAMBDA)
    level6 = set()
    for digits in itertools.product(range(5), repeat=LAMBDA_DIGITS):
        x = CycInt(0)
        for d, power in zip(digits, powers):
            if d:
                x = x + power * d
        level6.add(lambda_digits(x**5))
    level5 = {digits[: LAMBDA_DIGITS - 1] for digits in level6}
    logger.debug(f"Enumerated {len(level6)} fifth powers modulo lambda^6")
    return frozenset(level6), frozenset(level5)


def _lambda_split_type(theta: CycInt) -> SplitType:
    v = valuation(theta, LAMBDA)
    if v % 5:
        return SplitType.RAMIFIED
    if v:
        raise Unsupported(f"lambda divides {theta} to a multiple of 5; criterion needs lambda prime to theta")
    level6, level5 = fifth_power_residues()
    digits = lambda_digits(theta)
    if digits in level6:
        return SplitType.SPLIT
    if digits[: LAMBDA_DIGITS - 1] in level5:
        return SplitType.INERT
    return SplitType.RAMIFIED


def kummer_split_type(theta: IntOrCyc, prime: PrimeK0) -> SplitType:
    """
    Behaviour of a prime of k0 in k0(theta^(1/5)).

    Raises:
        InvalidArgument: theta is zero.
        Unsupported: prime is lambda and lambda^(5j) exactly divides theta with j > 0.
    """
    theta = CycInt.of(theta)
    if not theta:
        raise InvalidArgument("theta must be nonzero")
    if prime.is_lambda:
        return _lambda_split_type(theta)

    from quintessa.symbols import power_residue_symbol

    v = valuation(theta, prime.generator)
    if v % 5:
        return SplitType.RAMIFIED
    if v:
        theta = exact_quotient(theta, prime.generator**v)
    j = power_residue_symbol(theta, prime)
    return SplitType.SPLIT if j == 0 else SplitType.INERT


_STATED_COUNTS: Dict[int, str] = {
    2: "stated as pO_k = L1L2; primes of k over p share one (e, f)",
    3: "stated as pO_k = L1L2; primes of k over p share one (e, f)",
    4: "stated as pO_k = L1...L6; primes of k over p share one (e, f)",
}


def split_in_k(p: int, n: int, prefix: str = "L") -> SplittingPattern:
    """
    Decomposition of p in the normal closure k, derived from the primes of k0 over p.

    Raises:
        InvalidArgument: p is not prime or n is not a valid radicand.
    """
    _require_prime(p)
    validate_radicand(n)
    shapes: List[Tuple[int, int]] = []
    for prime in distinct_primes_k0(p):
        e0 = ramification_in_k0(prime)
        f0 = prime.residue_degree
        split_type = kummer_split_type(n, prime)
        if split_type is SplitType.SPLIT:
            shapes.extend([(e0, f0)] * 5)
        elif split_type is SplitType.INERT:
            shapes.append((e0, 5 * f0))
        else:
            shapes.append((5 * e0, f0))

    inferred = p != 5 and n % p != 0 and p % 5 != 1
    note = _STATED_COUNTS[p % 5] if inferred else None
    return _pattern("K", p, n, prefix, shapes, inferred=inferred, note=note)

