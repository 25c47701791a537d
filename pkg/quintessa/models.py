from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator
import logging

logger = logging.getLogger(__name__)

FieldTag = Literal["Gamma", "K0", "K"]
Kind = Literal["First", "Second"]
CaseVariant = Literal["Case1", "Case2", "Case3", "Uncovered"]
Status = Literal["PASS", "FAIL", "FLAG", "SKIP"]
CheckCategory = Literal["congruence", "classification", "symbol", "order5", "oracle"]
OracleKind = Literal["CLASSGROUP5", "HGAMMA", "UINDEX"]

FIELD_DEGREES: Dict[str, int] = {"Gamma": 5, "K0": 4, "K": 20}


def parse_claimed_type(text: str) -> List[int]:
    """"(5,5)" -> [5, 5]"""
    return [int(part) for part in text.strip().strip("()").split(",")]


class PatternEntry(BaseModel):
    label: str
    e: int = Field(ge=1)
    f: int = Field(ge=1)


class SplittingPattern(BaseModel):
    """Decomposition of a rational prime in Gamma, k0 or k."""
    field_tag: FieldTag
    p: int
    n: Optional[int] = None
    entries: List[PatternEntry]
    inferred: bool = False
    note: Optional[str] = None

    @model_validator(mode='after')
    def check_degree(self):
        total = sum(entry.e * entry.f for entry in self.entries)
        expected = FIELD_DEGREES[self.field_tag]
        if total != expected:
            raise ValueError(f"sum of e*f is {total}, expected {expected} for {self.field_tag}")
        return self

    @property
    def labels(self) -> List[str]:
        return [entry.label for entry in self.entries]

    @property
    def is_ramified(self) -> bool:
        return any(entry.e > 1 for entry in self.entries)


class FieldKind(BaseModel):
    n: int
    kind: Kind
    radical: int = Field(ge=2)
    conductor_f4: int

    @model_validator(mode='after')
    def check_conductor(self):
        expected = self.radical**4 * (25 if self.kind == "First" else 1)
        if self.conductor_f4 != expected:
            raise ValueError(f"conductor_f4 {self.conductor_f4} does not match kind {self.kind}")
        return self


class SymbolEntry(BaseModel):
    prime: str = Field(description="Generator in c0,c1,c2,c3 form")
    parent_p: int
    residue_degree: int
    exponent: int = Field(ge=0, le=4)


class SymbolReport(BaseModel):
    alpha: str
    p: int
    entries: List[SymbolEntry]
    product: int = Field(ge=0, le=4)


class PiPairIdentityReport(BaseModel):
    """Symbol identities at the two primes over p = -1 (mod 5)."""
    p: int
    c: int
    a: int
    b: int
    pi1: str
    pi2: str
    c_over_pi1: int
    c_over_pi2: int
    pi2_over_pi1: int
    pi1_over_pi2: int
    square_identity_holds: bool
    mutual_symbols_trivial: bool
    c_symbols_trivial: bool
    c_rational_quintic_residue: bool


class RadicandCase(BaseModel):
    variant: CaseVariant
    p: Optional[int] = None
    e: Optional[int] = Field(default=None, ge=1, le=4)
    q: Optional[int] = None
    reason: Optional[str] = None
    evidence: Dict[str, int] = Field(default_factory=dict)


class GeneratorDescription(BaseModel):
    primary: Optional[str] = None
    alternates: List[str] = Field(default_factory=list)
    components: Dict[str, str] = Field(default_factory=dict)
    labels: List[str] = Field(default_factory=list)
    condition: Optional[str] = None


class HypothesisCheck(BaseModel):
    name: str
    expected: str = "nontrivial"
    computed: List[int]
    status: Literal["PASS", "FLAG"]


Q_STAR: Dict[str, Optional[int]] = {"Case1": 1, "Case2": 1, "Case3": 2, "Uncovered": None}


class CaseReport(BaseModel):
    n: int
    case: RadicandCase
    kind: FieldKind
    q_star: Optional[int] = Field(default=None, ge=0, le=2)
    lambda_ramified: bool
    generators: GeneratorDescription
    auxiliary_prime: Optional[int] = None
    hypotheses: List[HypothesisCheck] = Field(default_factory=list)
    proof_symbols: List[HypothesisCheck] = Field(default_factory=list)

    @model_validator(mode='after')
    def check_constants(self):
        if self.lambda_ramified != (self.kind.kind == "First"):
            raise ValueError("lambda_ramified must match the field kind")
        if self.q_star != Q_STAR[self.case.variant]:
            raise ValueError(f"q_star for {self.case.variant} is {Q_STAR[self.case.variant]}")
        return self


class AuxiliaryCandidate(BaseModel):
    l: int
    exponents: List[int]
    nontrivial: bool


class ClassData(BaseModel):
    u_value: int = Field(ge=1, description="Unit index [E_k : E_0]")
    h_gamma: int = Field(ge=1, description="Class number of Gamma")
    source: Literal["oracle", "fixture", "manual"] = "manual"


class StructureVerdict(BaseModel):
    v5_u: int
    v5_h_gamma: int
    v5_h_k: int
    type_55_possible: bool
    solves_index_equation: bool
    consistent: bool = Field(description="v5(h_k) is non-negative")


class TableRow(BaseModel):
    table: Literal[1, 2, 3]
    p: int = Field(gt=1)
    q: Optional[int] = Field(default=None, gt=1)
    l: Optional[int] = Field(default=None, gt=1)
    e: int = Field(default=1, ge=1, le=4)
    e_assumed: bool = True
    claimed_type: str
    column_names: List[str]
    ideal_vectors: List[List[int]]
    fifth_power_vectors: List[List[int]]
    line: Optional[int] = None

    @field_validator('claimed_type')
    @classmethod
    def validate_claimed_type(cls, v):
        parts = v.strip().strip("()").split(",")
        if not v.strip().startswith("(") or not all(part.strip().isdigit() for part in parts):
            raise ValueError(f"claimed type must look like (5,5), got {v!r}")
        return v.strip()

    @model_validator(mode='after')
    def check_columns(self):
        if self.table in (1, 2) and self.l is None:
            raise ValueError(f"table {self.table} rows need l")
        if self.table == 2 and self.q is None:
            raise ValueError("table 2 rows need q")
        if self.table != 2 and self.q is not None:
            raise ValueError(f"table {self.table} rows have no q")
        if self.table == 3 and self.l is not None:
            raise ValueError("table 3 rows have no l")
        if not (len(self.column_names) == len(self.ideal_vectors) == len(self.fifth_power_vectors)):
            raise ValueError("column names and vectors must pair up")
        return self

    @property
    def claimed_divisors(self) -> List[int]:
        return parse_claimed_type(self.claimed_type)

    @property
    def expected_case(self) -> CaseVariant:
        return {1: "Case1", 2: "Case2", 3: "Case3"}[self.table]  # type: ignore[return-value]

    def radicand(self) -> int:
        if self.table == 1:
            return 5**self.e * self.p
        if self.table == 2:
            return self.p**self.e * (self.q or 1)
        return self.p**self.e


class CheckResult(BaseModel):
    category: CheckCategory
    name: str
    status: Status
    detail: Optional[str] = None


def _overall(statuses: List[str]) -> Status:
    if "FAIL" in statuses:
        return "FAIL"
    if "FLAG" in statuses:
        return "FLAG"
    if statuses and all(s == "SKIP" for s in statuses):
        return "SKIP"
    return "PASS"


class RowVerification(BaseModel):
    table: int
    line: Optional[int] = None
    p: int
    q: Optional[int] = None
    l: Optional[int] = None
    e: int
    e_assumed: bool
    n: int
    claimed_type: str
    expected_case: CaseVariant
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def claimed_divisors(self) -> List[int]:
        return parse_claimed_type(self.claimed_type)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def status(self) -> Status:
        return _overall([check.status for check in self.checks])

    def category_status(self, category: str) -> Status:
        return _overall([check.status for check in self.checks if check.category == category])


class VerificationReport(BaseModel):
    rows: List[RowVerification] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def summary(self) -> Dict[str, int]:
        counts = {"rows": len(self.rows), "PASS": 0, "FLAG": 0, "FAIL": 0, "SKIP": 0}
        for row in self.rows:
            counts[row.status] += 1
        return counts

    @property
    def failed(self) -> bool:
        return any(row.status == "FAIL" for row in self.rows)


class ClassGroupRequest(BaseModel):
    kind: OracleKind
    n: int = Field(ge=2)

    def line(self) -> str:
        return f"{self.kind} {self.n}"


class OracleResponse(BaseModel):
    request: str
    ok: bool
    payload: str = ""
    raw: str
    cached: bool = False


class ErrorDetail(BaseModel):
    message: str
    type: str
    code: Optional[str] = None


class ErrorResponse(BaseModel):
    error: ErrorDetail


class ClassifyResult(BaseModel):
    report: CaseReport
    suggestions: Optional[List[AuxiliaryCandidate]] = None
