from .schemas import (
    REPORT_SCHEMA_VERSION,
    CatalogFamily,
    VerdictStatus,
    GaussianCertificate,
    CatalogSpec,
    SemiringTables,
    SemimoduleTables,
    CheckResult,
    DMReport,
    EquivalenceReport,
    StructuralFlags,
    LatticeSummary,
    GaussianVerdict,
    SemialgebraVerdict,
    ZeroDivisorProfile,
    ClassificationVerdicts,
    ClassificationReport,
    LabSettings,
    ClassificationState,
    GoldenRow
)

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "CatalogFamily",
    "VerdictStatus",
    "GaussianCertificate",
    "CatalogSpec",
    "SemiringTables",
    "SemimoduleTables",
    "CheckResult",
    "DMReport",
    "EquivalenceReport",
    "StructuralFlags",
    "LatticeSummary",
    "GaussianVerdict",
    "SemialgebraVerdict",
    "ZeroDivisorProfile",
    "ClassificationVerdicts",
    "ClassificationReport",
    "LabSettings",
    "ClassificationState",
    "GoldenRow"
]
