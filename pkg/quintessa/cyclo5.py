"""
Exact arithmetic in the cyclotomic ring Z[zeta], zeta a primitive 5th root of unity.

Elements are stored in the basis 1, zeta, zeta^2, zeta^3; zeta^4 is always rewritten
as -1 - zeta - zeta^2 - zeta^3, so equal elements have equal coordinates.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

from quintessa.exceptions import InvalidArgument

logger = logging.getLogger(__name__)

IntOrCyc = Union[int, "CycInt"]


def _reduce(terms: Sequence[int]) -> Tuple[int, int, int, int]:
    """Fold a coefficient list of any length onto the canonical basis."""
    folded = [0, 0, 0, 0, 0]
    for degree, coefficient in enumerate(terms):
        folded[degree % 5] += coefficient
    top = folded[4]
    return (folded[0] - top, folded[1] - top, folded[2] - top, folded[3] - top)


@dataclass(frozen=True)
class CycInt:
    """An element c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 of Z[zeta]."""

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    @classmethod
    def of(cls, value: IntOrCyc) -> "CycInt":
        if isinstance(value, CycInt):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidArgument(f"cannot coerce {value!r} to a cyclotomic integer")
        return cls(value, 0, 0, 0)

    @classmethod
    def from_terms(cls, terms: Sequence[int]) -> "CycInt":
        """Build from coefficients of 1, zeta, zeta^2, ... (any length)."""
        return cls(*_reduce(terms))

    @classmethod
    def parse(cls, text: str) -> "CycInt":
        """
        Parse "c0,c1,c2,c3" or a plain integer.

        Raises:
            InvalidArgument: text is neither form.
        """
        cleaned = text.strip()
        parts = cleaned.split(",")
        try:
            if len(parts) == 1:
                return cls(int(parts[0]))
            if len(parts) == 4:
                return cls(*(int(part) for part in parts))
        except ValueError:
            pass
        raise InvalidArgument(f"not a cyclotomic integer: {text!r} (expected c0,c1,c2,c3)")

    @property
    def coords(self) -> Tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    @property
    def is_rational(self) -> bool:
        return self.c1 == 0 and self.c2 == 0 and self.c3 == 0

    def __bool__(self) -> bool:
        return any(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __add__(self, other: IntOrCyc) -> "CycInt":
        o = CycInt.of(other)
        return CycInt(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other: IntOrCyc) -> "CycInt":
        return self + (-CycInt.of(other))

    def __rsub__(self, other: IntOrCyc) -> "CycInt":
        return CycInt.of(other) - self

    def __mul__(self, other: IntOrCyc) -> "CycInt":
        o = CycInt.of(other)
        terms = [0] * 7
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                terms[i + j] += a * b
        return CycInt.from_terms(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CycInt":
        if exponent < 0:
            raise InvalidArgument("negative exponents are not defined in Z[zeta]")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


ZERO = CycInt(0)
ONE = CycInt(1)
ZETA = CycInt(0, 1, 0, 0)
LAMBDA = CycInt(1, -1, 0, 0)


def add(x: IntOrCyc, y: IntOrCyc) -> CycInt:
    return CycInt.of(x) + y


def sub(x: IntOrCyc, y: IntOrCyc) -> CycInt:
    return CycInt.of(x) - y


def neg(x: IntOrCyc) -> CycInt:
    return -CycInt.of(x)


def mul(x: IntOrCyc, y: IntOrCyc) -> CycInt:
    return CycInt.of(x) * y


def zeta_power(i: int) -> CycInt:
    """zeta^i for any integer i."""
    terms = [0] * 5
    terms[i % 5] = 1
    return CycInt.from_terms(terms)


def galois(x: IntOrCyc, i: int) -> CycInt:
    """
    Apply the automorphism zeta -> zeta^i.

    Raises:
        InvalidArgument: i is not in 1..4.
    """
    if i not in (1, 2, 3, 4):
        raise InvalidArgument(f"galois index must be 1, 2, 3 or 4, got {i}")
    x = CycInt.of(x)
    terms = [0] * 5
    for degree, coefficient in enumerate(x.coords):
        terms[(degree * i) % 5] += coefficient
    return CycInt.from_terms(terms)


def conjugate_product(x: IntOrCyc) -> CycInt:
    """Product of the three nontrivial conjugates, so x * conjugate_product(x) = norm(x)."""
    return galois(x, 2) * galois(x, 3) * galois(x, 4)


def norm(x: IntOrCyc) -> int:
    """Absolute norm: product of the four Galois conjugates."""
    x = CycInt.of(x)
    if x.is_rational:
        return x.c0**4
    return (x * conjugate_product(x)).c0


def eval_at_one(x: IntOrCyc) -> int:
    """Residue of x modulo lambda, as an integer in 0..4."""
    return sum(CycInt.of(x).coords) % 5


def _nearest(numerator: int, denominator: int) -> int:
    return (2 * numerator + denominator) // (2 * denominator)


def _offsets(radius: int) -> Iterator[Tuple[int, ...]]:
    span = range(-radius, radius + 1)
    for offset in itertools.product(span, repeat=4):
        if max(abs(o) for o in offset) == radius or radius == 1:
            yield offset


def euclid_div(a: IntOrCyc, b: IntOrCyc) -> Tuple[CycInt, CycInt]:
    """
    Euclidean division in Z[zeta].

    Args:
        a: Dividend.
        b: Nonzero divisor.

    Returns:
        (q, r) with a = q*b + r and norm(r) < norm(b).

    Raises:
        ZeroDivisionError: b is zero.
    """
    a = CycInt.of(a)
    b = CycInt.of(b)
    if not b:
        raise ZeroDivisionError("division by zero in Z[zeta]")
    bound = norm(b)
    numerator = a * conjugate_product(b)
    base = [_nearest(c, bound) for c in numerator.coords]
    q = CycInt(*base)
    r = a - q * b
    if norm(r) < bound:
        return q, r

    logger.debug(f"Rounding quotient of {a} by {b} missed the norm bound, searching offsets")
    for radius in (1, 2):
        for offset in _offsets(radius):
            q = CycInt(*(c + o for c, o in zip(base, offset)))
            r = a - q * b
            if norm(r) < bound:
                return q, r
    raise ArithmeticError(f"no Euclidean quotient found for {a} / {b}")


def divides(d: IntOrCyc, x: IntOrCyc) -> bool:
    """True when d divides x in Z[zeta]."""
    d = CycInt.of(d)
    x = CycInt.of(x)
    if not d:
        return not x
    bound = norm(d)
    return all(c % bound == 0 for c in (x * conjugate_product(d)).coords)


def exact_quotient(x: IntOrCyc, d: IntOrCyc) -> CycInt:
    """
    x / d for a divisor d of x.

    Raises:
        ZeroDivisionError: d is zero.
        ArithmeticError: d does not divide x.
    """
    d = CycInt.of(d)
    x = CycInt.of(x)
    if not d:
        raise ZeroDivisionError("division by zero in Z[zeta]")
    bound = norm(d)
    numerator = x * conjugate_product(d)
    if any(c % bound for c in numerator.coords):
        raise ArithmeticError(f"{d} does not divide {x}")
    return CycInt(*(c // bound for c in numerator.coords))


def valuation(x: IntOrCyc, prime: IntOrCyc) -> int:
    """Exponent of the prime element in nonzero x."""
    x = CycInt.of(x)
    if not x:
        raise InvalidArgument("valuation of 0 is undefined")
    v = 0
    while divides(prime, x):
        x = exact_quotient(x, prime)
        v += 1
    return v


def associates(x: IntOrCyc) -> List[CycInt]:
    """The ten multiples +-zeta^i * x."""
    x = CycInt.of(x)
    multiples = [zeta_power(i) * x for i in range(5)]
    return multiples + [-m for m in multiples]


def normalize(x: IntOrCyc) -> CycInt:
    """
    Deterministic representative of x up to the units +-zeta^i.

    The sign is chosen so eval_at_one lies in {1, 2}, then the lexicographically
    smallest zeta multiple wins. When lambda divides x all ten associates compete.
    """
    x = CycInt.of(x)
    residue = eval_at_one(x)
    if residue == 0:
        return min(associates(x), key=lambda c: c.coords)
    signed = x if residue in (1, 2) else -x
    return min((zeta_power(i) * signed for i in range(5)), key=lambda c: c.coords)


def gcd(a: IntOrCyc, b: IntOrCyc) -> CycInt:
    """
    Generator of the ideal (a, b), normalized up to +-zeta^i.

    Raises:
        InvalidArgument: both arguments are zero.
    """
    a = CycInt.of(a)
    b = CycInt.of(b)
    if not a and not b:
        raise InvalidArgument("gcd(0, 0) is undefined")
    while b:
        _, r = euclid_div(a, b)
        a, b = b, r
    return normalize(a)


# Cofactor of lambda in 5: LAMBDA * LAMBDA_COFACTOR == 5.
LAMBDA_COFACTOR = conjugate_product(LAMBDA)
