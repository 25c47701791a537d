"""
quintessa: prime decomposition, quintic residue symbols and radicand classification
for pure quintic fields and their normal closures.
"""

from quintessa.cyclo5 import LAMBDA, ZETA, CycInt
from quintessa.exceptions import (
    DegenerateRadicand,
    FixtureError,
    InvalidArgument,
    NotCoprime,
    OracleProtocolError,
    OracleUnavailable,
    QuintessaError,
    Unsupported,
)

__version__ = "0.1.0"

__all__ = [
    "CycInt",
    "LAMBDA",
    "ZETA",
    "QuintessaError",
    "InvalidArgument",
    "DegenerateRadicand",
    "NotCoprime",
    "Unsupported",
    "FixtureError",
    "OracleUnavailable",
    "OracleProtocolError",
]
