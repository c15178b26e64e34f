import time
from typing import Any, Callable, Dict, Optional

from app.algebra.catalog import build_catalog
from app.algebra.content_semialgebra import verify_content_semialgebra
from app.algebra.gaussian import gaussian_verdict, is_weak_gaussian
from app.algebra.ideals import is_subtractive_semiring, lattice_summary
from app.algebra.semiring import FiniteSemiring, structural_flags
from app.algebra.sweeps import SweepOptions
from app.algebra.zerodivisors import (
    is_primal,
    very_few_zero_divisors,
    zd_degree_check,
    zero_divisor_profile,
)
from app.models.schemas import (
    CatalogSpec,
    CheckResult,
    ClassificationReport,
    ClassificationState,
    VerdictStatus,
)
from app.utils.error_handler import create_error_summary, with_error_handling
from app.utils.file_io import file_io
from app.utils.tracer import get_tracer

STAGES = ["load_input", "structure", "ideal_verdicts", "gaussian", "content_semialgebra",
          "zero_divisors", "finalize"]


def _skipped(e: Exception) -> CheckResult:
    return CheckResult.skipped(str(e))


def _missing(e: Exception) -> None:
    return None


def resolve_semiring(descriptor: Dict[str, Any]) -> FiniteSemiring:
    """Catalog spec, JSON path or an already-built semiring"""
    if descriptor.get("semiring") is not None:
        return descriptor["semiring"]
    if "catalog" in descriptor:
        return build_catalog(descriptor["catalog"])
    return file_io.load_semiring_json(descriptor["path"])


def describe_input(descriptor: Dict[str, Any], S: FiniteSemiring) -> Dict[str, Any]:
    if "catalog" in descriptor:
        spec = CatalogSpec.model_validate(descriptor["catalog"])
        return {"name": spec.describe(), "catalog": spec.model_dump(mode="json")}
    if "path" in descriptor:
        return {"name": S.name or descriptor["path"], "path": descriptor["path"]}
    return {"name": S.name or "semiring"}


class ClassificationNodes:
    """LangGraph node implementations, one per analysis stage"""

    def __init__(self, run_id: str = "classify", save: bool = True, fmt: str = "json"):
        self.run_id = run_id
        self.save = save
        self.fmt = fmt

    def _options(self, state: ClassificationState) -> SweepOptions:
        return SweepOptions.from_settings(state.settings)

    def _run_stage(self, state: ClassificationState, stage: str, message: str,
                   body: Callable[[FiniteSemiring], str]) -> ClassificationState:
        tracer = get_tracer()
        if tracer:
            tracer.trace_node_start(stage)
            tracer.start_stage(stage, message)

        started = time.time()
        summary = body(state.semiring)
        elapsed = time.time() - started
        state.stage_times[stage] = elapsed

        file_io.log_run_state(self.run_id, {
            "node": stage,
            "action": "stage_completed",
            "summary": summary,
            "elapsed": elapsed
        })
        if tracer:
            tracer.stage_complete(stage, summary, elapsed)
            tracer.trace_node_complete(stage)
        return state

    def _record(self, state: ClassificationState, field: str, verdict: Optional[CheckResult]):
        if verdict is not None and verdict.status == VerdictStatus.SKIPPED:
            state.skipped[field] = verdict.detail
            tracer = get_tracer()
            if tracer:
                tracer.stage_skipped(field, verdict.detail)

    # -- nodes -------------------------------------------------------------

    def load_input(self, state: ClassificationState) -> ClassificationState:
        """Build or load the semiring; parse and axiom errors propagate"""
        def body(_):
            S = resolve_semiring(state.descriptor)
            state.semiring = S
            state.report = ClassificationReport(
                input=describe_input(state.descriptor, S),
                elements=list(S.elements),
                settings=state.settings.model_dump(mode="json")
            )
            return f"{S.size} elements"

        return self._run_stage(state, "load_input", "📥 Loading semiring...", body)

    def structure(self, state: ClassificationState) -> ClassificationState:
        cap = state.settings.lattice_cap

        @with_error_handling("structure", "lattice", fallback=_missing)
        def lattice(S):
            return lattice_summary(S, cap)

        @with_error_handling("structure", "flags", fallback=_missing)
        def flags(S):
            return structural_flags(S, cap)

        def body(S):
            state.report.structural = flags(S)
            state.report.lattice = lattice(S)
            if state.report.lattice is None:
                state.skipped["lattice"] = f"|S| = {S.size} exceeds lattice cap {cap}"
                return "lattice skipped"
            return f"{state.report.lattice.ideal_count} ideals, {len(state.report.lattice.primes)} primes"

        return self._run_stage(state, "structure", "🧮 Structural flags and ideal lattice...", body)

    def ideal_verdicts(self, state: ClassificationState) -> ClassificationState:
        cap = state.settings.lattice_cap

        @with_error_handling("ideal_verdicts", "weak_gaussian", fallback=_skipped)
        def weak(S):
            return is_weak_gaussian(S, cap)

        def body(S):
            verdicts = state.report.verdicts
            verdicts.subtractive = is_subtractive_semiring(S)
            verdicts.weak_gaussian = weak(S)
            self._record(state, "weak_gaussian", verdicts.weak_gaussian)
            return f"subtractive: {verdicts.subtractive.holds}, weak Gaussian: {verdicts.weak_gaussian.holds}"

        return self._run_stage(state, "ideal_verdicts", "🔎 Subtractivity and prime ideals...", body)

    def gaussian(self, state: ClassificationState) -> ClassificationState:
        settings = state.settings

        def body(S):
            verdict = gaussian_verdict(S, settings.degree_bound, settings.lattice_cap, self._options(state))
            state.report.verdicts.gaussian = verdict
            self._record(state, "gaussian", verdict.bounded)
            return f"certificate: {verdict.certificate.value}"

        return self._run_stage(state, "gaussian", "📐 Gaussian certificates and sweep...", body)

    def content_semialgebra(self, state: ClassificationState) -> ClassificationState:
        settings = state.settings

        @with_error_handling("content_semialgebra", "verify", fallback=_missing)
        def verify(S):
            return verify_content_semialgebra(S, settings.degree_bound, settings.lattice_cap,
                                              nil_degree=settings.transfer_degree,
                                              options=self._options(state))

        def body(S):
            verdict = verify(S)
            state.report.verdicts.content_semialgebra = verdict
            if verdict is None:
                state.skipped["content_semialgebra"] = "ideal lattice not enumerable"
                return "skipped"
            for name in ("axiom1", "axiom2", "axiom3", "min_prime_bijection", "nil_extension"):
                self._record(state, f"content_semialgebra.{name}", getattr(verdict, name))
            return f"content semialgebra: {verdict.overall}"

        return self._run_stage(state, "content_semialgebra", "🧱 Content-semialgebra axioms for S[X]...", body)

    def zero_divisors(self, state: ClassificationState) -> ClassificationState:
        settings = state.settings

        @with_error_handling("zero_divisors", "profile", fallback=_missing)
        def profile(S):
            return zero_divisor_profile(S, settings.lattice_cap, settings.property_a_cap)

        @with_error_handling("zero_divisors", "zd_degree", fallback=_skipped)
        def zd(S):
            return zd_degree_check(S, settings.lattice_cap)

        def body(S):
            verdicts = state.report.verdicts
            state.report.zero_divisors = profile(S)
            verdicts.primal = is_primal(S)
            verdicts.very_few = very_few_zero_divisors(S)
            verdicts.zd_degree = zd(S)
            self._record(state, "zd_degree", verdicts.zd_degree)
            if state.report.zero_divisors is not None:
                verdicts.property_A = state.report.zero_divisors.property_A
                self._record(state, "property_A", verdicts.property_A)
            else:
                state.skipped["zero_divisors"] = "ideal lattice not enumerable"
            return f"primal: {verdicts.primal}, very few: {verdicts.very_few}"

        return self._run_stage(state, "zero_divisors", "🕳️  Zero-divisors...", body)

    def finalize(self, state: ClassificationState) -> ClassificationState:
        tracer = get_tracer()
        if tracer:
            tracer.trace_node_start("finalize")

        report = state.report
        report.timing = dict(state.stage_times)
        report.skipped = dict(state.skipped)
        report.error_summary = create_error_summary()

        path = None
        if self.save:
            path = file_io.save_report(report, state.settings.report_dir, self.fmt)
        file_io.log_run_state(self.run_id, {
            "node": "finalize",
            "action": "report_written",
            "path": path,
            "skipped": list(report.skipped)
        })
        if tracer:
            tracer.trace_node_complete("finalize")
            tracer.run_complete(path)
        return state
