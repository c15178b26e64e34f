from typing import List, Dict, Optional, Any
from pydantic import BaseModel, ConfigDict, Field
from enum import Enum


REPORT_SCHEMA_VERSION = "semiring-lab/report/v1"


class CatalogFamily(str, Enum):
    BOOLEAN = "boolean"
    LAGRASSA = "lagrassa"
    CHAIN_LATTICE = "chain_lattice"
    POWER_SET_LATTICE = "power_set_lattice"
    CHAIN_C = "chain_C"
    B_N_I = "b_n_i"
    TRUNCATION = "truncation"
    NIL_CHAIN = "nil_chain"
    IDEMPOTENT_MONOID_EXT = "idempotent_monoid_ext"
    PRODUCT = "product"


class VerdictStatus(str, Enum):
    EXACT = "exact"
    BOUNDED = "bounded"
    SAMPLED = "sampled"
    SKIPPED = "skipped"
    ADVISORY = "advisory"
    THEOREM_BACKED = "theorem-backed"


class GaussianCertificate(str, Enum):
    SUM_GENERATION = "SumGeneration"
    BDL = "BDL"
    LOCAL_NIL_MAX = "LocalNilMax"
    CANCELATION = "Cancelation"
    NONE = "None"


class CatalogSpec(BaseModel):
    family: CatalogFamily = Field(description="Catalog family name")
    params: Dict[str, Any] = Field(default_factory=dict, description="Family parameters, e.g. {'n': 4}")

    def describe(self) -> str:
        if self.family == CatalogFamily.PRODUCT:
            factors = [CatalogSpec.model_validate(f).describe() for f in self.params.get("factors", [])]
            return "product(" + ", ".join(factors) + ")"
        if not self.params:
            return self.family.value
        shown = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()) if k != "monoid")
        return f"{self.family.value}({shown})" if shown else self.family.value


class SemiringTables(BaseModel):
    """JSON semiring format"""
    elements: List[str] = Field(description="Element labels, index order")
    add: List[List[int]] = Field(description="Addition table over element indices")
    mul: List[List[int]] = Field(description="Multiplication table over element indices")
    zero: int = Field(description="Index of the additive identity")
    one: int = Field(description="Index of the multiplicative identity")


class SemimoduleTables(BaseModel):
    """JSON semimodule format: semiring format plus a scalar table"""
    semiring: Dict[str, Any] = Field(description="Semiring tables or a catalog spec")
    elements: List[str]
    add: List[List[int]]
    scalar: List[List[int]] = Field(description="|S| x |M| table: scalar[s][m] = s.m")
    zero: int


class CheckResult(BaseModel):
    holds: bool = Field(description="Verdict of the check")
    status: VerdictStatus = Field(default=VerdictStatus.EXACT, description="How far the verdict reaches")
    bound: Optional[int] = Field(default=None, description="Degree bound for bounded sweeps")
    witness: Optional[Dict[str, Any]] = Field(default=None, description="Replayable counterexample")
    detail: str = Field(default="", description="Human-readable note")

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def skipped(cls, reason: str) -> "CheckResult":
        return cls(holds=False, status=VerdictStatus.SKIPPED, detail=reason)


class DMReport(BaseModel):
    exponent: Optional[int] = Field(default=None, description="Least m with c(f)^(m+1)c(g) = c(f)^m c(fg); None if no such m")
    bound_used: int = Field(description="Largest exponent tried")
    exhausted: bool = Field(default=False, description="c(f)^m cycled, so None holds for every m")
    lhs: List[str] = Field(default_factory=list, description="c(f)^(m+1)c(g) at the last exponent tried")
    rhs: List[str] = Field(default_factory=list, description="c(f)^m c(fg) at the last exponent tried")

    @property
    def found(self) -> bool:
        return self.exponent is not None


class EquivalenceReport(BaseModel):
    agrees: bool = Field(description="Structural and polynomial routes give the same verdict")
    structural: CheckResult = Field(description="Subtractivity verdict")
    sweep: CheckResult = Field(description="Bounded Dedekind-Mertens sweep")
    probes: List[Dict[str, Any]] = Field(default_factory=list, description="Probe polynomials built from non-subtractive pairs")

    def __bool__(self) -> bool:
        return self.agrees


class StructuralFlags(BaseModel):
    size: int
    zerosumfree: bool
    additively_idempotent: bool
    bounded_distributive_lattice: bool
    is_local: Optional[bool] = None
    maximal_ideal_squared_zero: Optional[bool] = None


class LatticeSummary(BaseModel):
    ideal_count: int
    ideals: List[List[str]] = Field(default_factory=list)
    primes: List[List[str]] = Field(default_factory=list)
    min_primes: List[List[str]] = Field(default_factory=list)
    max_ideals: List[List[str]] = Field(default_factory=list)
    nil_radical: List[str] = Field(default_factory=list)


class GaussianVerdict(BaseModel):
    certificate: GaussianCertificate = Field(description="First exact certificate that applies")
    certificates: List[GaussianCertificate] = Field(default_factory=list)
    bounded: Optional[CheckResult] = Field(default=None, description="Exhaustive sweep up to the degree bound")


class SemialgebraVerdict(BaseModel):
    axiom1: CheckResult = Field(description="f in I[X] iff c(f) in I")
    axiom2: CheckResult = Field(description="c(sf) = s c(f) and c(1) = S")
    axiom3: CheckResult = Field(description="Dedekind-Mertens exponent exists")
    min_prime_bijection: CheckResult
    nil_extension: CheckResult

    @property
    def overall(self) -> bool:
        return bool(self.axiom1) and bool(self.axiom2) and bool(self.axiom3)


class ZeroDivisorProfile(BaseModel):
    zset: List[str] = Field(description="Z(S)")
    ass_primes: List[List[str]] = Field(default_factory=list)
    maximal_primes_of_Z: List[List[str]] = Field(default_factory=list)
    very_few: bool = False
    few: bool = False
    primal: bool = False
    property_A: Optional[CheckResult] = None
    zd_degree: Optional[int] = None
    cover_unique: Optional[bool] = None


class ClassificationVerdicts(BaseModel):
    subtractive: Optional[CheckResult] = None
    weak_gaussian: Optional[CheckResult] = None
    gaussian: Optional[GaussianVerdict] = None
    content_semialgebra: Optional[SemialgebraVerdict] = None
    property_A: Optional[CheckResult] = None
    primal: Optional[bool] = None
    very_few: Optional[bool] = None
    zd_degree: Optional[CheckResult] = None


class ClassificationReport(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    input: Dict[str, Any] = Field(description="Input descriptor")
    elements: List[str]
    structural: Optional[StructuralFlags] = None
    lattice: Optional[LatticeSummary] = None
    zero_divisors: Optional[ZeroDivisorProfile] = None
    verdicts: ClassificationVerdicts = Field(default_factory=ClassificationVerdicts)
    settings: Dict[str, Any] = Field(default_factory=dict, description="Bounds the verdicts were computed with")
    skipped: Dict[str, str] = Field(default_factory=dict, description="Stage -> reason for resource-limited fields")
    error_summary: Dict[str, Any] = Field(default_factory=dict)
    timing: Dict[str, float] = Field(default_factory=dict)


class LabSettings(BaseModel):
    degree_bound: int = Field(default=3, ge=0, description="Sweep degree bound D")
    lattice_cap: int = Field(default=12, ge=1, description="Largest |S| for ideal-lattice enumeration")
    pair_budget: int = Field(default=2_000_000, ge=1, description="Largest number of polynomial pairs per sweep")
    nil_power_bound: Optional[int] = Field(default=None, description="K for nilpotency checks; None derives it from Nil(S)")
    series_order: int = Field(default=6, ge=1)
    series_support_degree: int = Field(default=2, ge=1)
    property_a_cap: int = Field(default=16, ge=1)
    transfer_degree: int = Field(default=2, ge=0)
    parallel: bool = False
    workers: Optional[int] = None
    seed: int = 0
    sample: Optional[int] = Field(default=None, description="Sample this many left factors instead of sweeping all")
    tropical_pairs: int = 1000
    tropical_coeff_max: int = 20
    tropical_degree: int = 5
    tropical_carrier: int = 12
    report_dir: str = "reports"


class ClassificationState(BaseModel):
    """State threaded through the classification graph"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    descriptor: Dict[str, Any] = Field(description="Catalog spec or input path")
    settings: LabSettings = Field(default_factory=LabSettings)
    semiring: Optional[Any] = Field(default=None, description="Validated FiniteSemiring")
    report: Optional[ClassificationReport] = None
    stage_times: Dict[str, float] = Field(default_factory=dict)
    skipped: Dict[str, str] = Field(default_factory=dict)


class GoldenRow(BaseModel):
    name: str
    topic: str
    expected: str
    observed: str = ""
    passed: bool = False
