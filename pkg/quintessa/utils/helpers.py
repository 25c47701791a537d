"""
Small integer helpers shared by the arithmetic and harness modules.
"""

import logging
import re
from typing import List

from sympy import factorint, multiplicity

from quintessa.exceptions import InvalidArgument

logger = logging.getLogger(__name__)

SECOND_KIND_RESIDUES = frozenset({1, 7, 18, 24})

_VECTOR_PATTERN = re.compile(r"^\[\s*(-?\d+(\s*;\s*-?\d+)*)?\s*\]$")


def valuation(n: int, p: int) -> int:
    """
    Exponent of the prime p in the nonzero integer n.

    Args:
        n: Nonzero integer.
        p: Prime.

    Returns:
        The largest v with p**v dividing n.
    """
    if n == 0:
        raise InvalidArgument("valuation of 0 is undefined")
    return int(multiplicity(p, abs(n)))


def is_fifth_power_free(n: int) -> bool:
    """True when no prime divides n to the fifth power."""
    return all(exponent < 5 for exponent in factorint(n).values())


def radical(n: int) -> int:
    """Product of the distinct prime divisors of n."""
    result = 1
    for prime in factorint(n):
        result *= prime
    return result


def is_second_kind_residue(n: int) -> bool:
    """n**4 == 1 (mod 25), i.e. n is +-1 or +-7 mod 25."""
    return n % 25 in SECOND_KIND_RESIDUES


def parse_int_vector(text: str) -> List[int]:
    """
    Parse a bracketed, semicolon-separated vector such as "[4;0]".

    Raises:
        InvalidArgument: text is not a bracket vector.
    """
    cleaned = text.strip()
    if not _VECTOR_PATTERN.match(cleaned):
        raise InvalidArgument(f"not a bracket vector: {text!r}")
    inner = cleaned[1:-1].strip()
    if not inner:
        return []
    return [int(part) for part in inner.split(";")]

