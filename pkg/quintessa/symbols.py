"""
Residue fields O/pi and quintic power residue symbols.

The symbol (alpha/pi) is returned as its exponent j, meaning zeta^j, so symbols compose
by adding exponents modulo 5.
"""

import logging
from dataclasses import dataclass
from threading import Lock
from typing import Dict, List, Tuple

from sympy import isprime, is_nthpow_residue, sqrt_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_pow_mod, gf_rem

from quintessa.cyclo5 import CycInt, IntOrCyc, exact_quotient, valuation
from quintessa.exceptions import InvalidArgument, NotCoprime, Unsupported
from quintessa.models import PiPairIdentityReport, SymbolEntry, SymbolReport
from quintessa.splitting import (
    PrimeK0,
    distinct_primes_k0,
    fifth_roots_of_unity,
    pi_pair,
    quadratic_representation,
)

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]

CYCLOTOMIC_5 = (1, 1, 1, 1, 1)


def _normalized(poly: List[int]) -> Poly:
    return tuple(int(c) for c in poly)


@dataclass(frozen=True)
class ResidueField:
    """
    O/pi realized as F_p[x]/(modulus), with modulus a monic factor of x^4+x^3+x^2+x+1.

    Polynomials are coefficient tuples, highest degree first.
    """

    p: int
    f: int
    modulus: Poly
    zeta_image: Poly
    zeta_powers: Tuple[Poly, ...]

    @property
    def size(self) -> int:
        return self.p**self.f

    def reduce(self, alpha: IntOrCyc) -> Poly:
        alpha = CycInt.of(alpha)
        coefficients = list(reversed(alpha.coords))
        poly = gf_from_int_poly(coefficients, self.p)
        return _normalized(gf_rem(poly, list(self.modulus), self.p, ZZ))

    def power(self, element: Poly, exponent: int) -> Poly:
        return _normalized(gf_pow_mod(list(element), exponent, list(self.modulus), self.p, ZZ))


def _build_field(p: int, f: int, modulus: Poly) -> ResidueField:
    zeta_image = _normalized(gf_rem(gf_from_int_poly([1, 0], p), list(modulus), p, ZZ))
    powers = tuple(
        _normalized(gf_pow_mod(list(zeta_image), j, list(modulus), p, ZZ)) for j in range(5)
    )
    return ResidueField(p=p, f=f, modulus=modulus, zeta_image=zeta_image, zeta_powers=powers)


def _annihilates(generator: CycInt, p: int, modulus: Poly) -> bool:
    poly = gf_from_int_poly(list(reversed(generator.coords)), p)
    return not gf_rem(poly, list(modulus), p, ZZ)


def _construct_residue_field(prime: PrimeK0) -> ResidueField:
    p = prime.parent_p
    if prime.residue_degree == 4:
        return _build_field(p, 4, CYCLOTOMIC_5)
    if prime.residue_degree == 1:
        for r in fifth_roots_of_unity(p):
            modulus = (1, (-r) % p)
            if _annihilates(prime.generator, p, modulus):
                return _build_field(p, 1, modulus)
    else:
        root5 = sqrt_mod(5, p)
        inverse2 = (p + 1) // 2
        for s in (root5, -root5):
            eta = ((-1 + s) * inverse2) % p
            modulus = (1, (-eta) % p, 1)
            if _annihilates(prime.generator, p, modulus):
                return _build_field(p, 2, modulus)
    raise InvalidArgument(f"{prime.generator} does not generate a prime over {p}")


class ResidueFieldCache:
    """Residue fields keyed by (p, generator); safe for concurrent readers."""

    def __init__(self):
        self.fields: Dict[Tuple[int, Tuple[int, ...]], ResidueField] = {}
        self.lock = Lock()

    def get(self, prime: PrimeK0) -> ResidueField:
        key = (prime.parent_p, prime.generator.coords)
        field = self.fields.get(key)
        if field is not None:
            return field
        field = _construct_residue_field(prime)
        with self.lock:
            self.fields.setdefault(key, field)
            return self.fields[key]

    def clear(self):
        with self.lock:
            self.fields.clear()

    def __len__(self) -> int:
        return len(self.fields)


# Global cache instance
residue_field_cache = ResidueFieldCache()


def residue_field(prime: PrimeK0) -> ResidueField:
    """
    Concrete residue field of a prime of k0.

    Raises:
        Unsupported: prime is lambda.
    """
    if prime.is_lambda:
        raise Unsupported("the residue ring at lambda is not modelled")
    return residue_field_cache.get(prime)


def power_residue_symbol(alpha: IntOrCyc, prime: PrimeK0) -> int:
    """
    Quintic power residue symbol by Euler's criterion.

    Args:
        alpha: Element prime to the prime.
        prime: Prime of k0 other than lambda.

    Returns:
        j in 0..4 with alpha^((N(pi)-1)/5) = zeta^j mod pi.

    Raises:
        NotCoprime: the prime divides alpha.
        Unsupported: prime is lambda.
    """
    if prime.is_lambda:
        raise Unsupported("power residue symbol at lambda is not supported")
    field = residue_field(prime)
    reduced = field.reduce(alpha)
    if not reduced:
        raise NotCoprime(f"{prime.generator} divides {CycInt.of(alpha)}")
    value = field.power(reduced, (field.size - 1) // 5)
    for j, candidate in enumerate(field.zeta_powers):
        if value == candidate:
            return j
    raise ArithmeticError(
        f"{CycInt.of(alpha)}^m mod {prime.generator} is not a fifth root of unity"
    )


@dataclass(frozen=True)
class PrimeSymbols:
    alpha: CycInt
    p: int
    entries: Tuple[Tuple[PrimeK0, int], ...]

    @property
    def exponents(self) -> List[int]:
        return [j for _, j in self.entries]

    @property
    def product(self) -> int:
        return sum(self.exponents) % 5

    @property
    def trivial(self) -> bool:
        return all(j == 0 for j in self.exponents)

    def to_model(self) -> SymbolReport:
        return SymbolReport(
            alpha=str(self.alpha),
            p=self.p,
            entries=[
                SymbolEntry(
                    prime=str(prime.generator),
                    parent_p=prime.parent_p,
                    residue_degree=prime.residue_degree,
                    exponent=j,
                )
                for prime, j in self.entries
            ],
            product=self.product,
        )


def symbol_at_rational_prime(alpha: IntOrCyc, p: int) -> PrimeSymbols:
    """
    Symbols of alpha at every prime of k0 over p, and their product.

    Raises:
        InvalidArgument: p is not a prime.
        Unsupported: p is 5.
        NotCoprime: some prime over p divides alpha.
    """
    if not isprime(p):
        raise InvalidArgument(f"{p} is not a prime")
    if p == 5:
        raise Unsupported("symbols at the prime over 5 are not supported")
    alpha = CycInt.of(alpha)
    entries = tuple((prime, power_residue_symbol(alpha, prime)) for prime in distinct_primes_k0(p))
    return PrimeSymbols(alpha=alpha, p=p, entries=entries)


def norm_residue_unramified(beta: IntOrCyc, alpha: IntOrCyc, prime: PrimeK0) -> int:
    """
    Norm residue symbol (beta, alpha / pi) at a prime unramified in k0(alpha^(1/5)).

    Equals (alpha'/pi)^(-b) where b = v_pi(beta) and alpha' is alpha stripped of pi.

    Raises:
        Unsupported: the prime is lambda or ramifies (v_pi(alpha) not divisible by 5).
    """
    if prime.is_lambda:
        raise Unsupported("norm residue symbol at lambda is not supported")
    alpha = CycInt.of(alpha)
    v = valuation(alpha, prime.generator)
    if v % 5:
        raise Unsupported(f"{prime.generator} ramifies in the extension by the 5th root of {alpha}")
    if v:
        alpha = exact_quotient(alpha, prime.generator**v)
    b = valuation(beta, prime.generator)
    return (-b * power_residue_symbol(alpha, prime)) % 5


def check_pi_pair_identities(p: int, c: int) -> PiPairIdentityReport:
    """
    Evaluate the symbol identities at pi1, pi2 over p = -1 (mod 5) for a rational c.

    Raises:
        InvalidArgument: p is not a prime = -1 (mod 5).
        NotCoprime: p divides c.
    """
    if not isprime(p) or p % 5 != 4:
        raise InvalidArgument(f"{p} is not a prime congruent to -1 mod 5")
    if c % p == 0:
        raise NotCoprime(f"{p} divides {c}")
    a, b = quadratic_representation(p)
    pi1_gen, pi2_gen = pi_pair(p)
    pi1 = PrimeK0(pi1_gen, p, 2)
    pi2 = PrimeK0(pi2_gen, p, 2)
    j1 = power_residue_symbol(c, pi1)
    j2 = power_residue_symbol(c, pi2)
    j21 = power_residue_symbol(pi2_gen, pi1)
    j12 = power_residue_symbol(pi1_gen, pi2)
    return PiPairIdentityReport(
        p=p,
        c=c,
        a=a,
        b=b,
        pi1=str(pi1_gen),
        pi2=str(pi2_gen),
        c_over_pi1=j1,
        c_over_pi2=j2,
        pi2_over_pi1=j21,
        pi1_over_pi2=j12,
        square_identity_holds=j1 == (2 * j2) % 5,
        mutual_symbols_trivial=j21 == 0 and j12 == 0,
        c_symbols_trivial=j1 == 0 and j2 == 0,
        c_rational_quintic_residue=bool(is_nthpow_residue(c % p, 5, p)),
    )

