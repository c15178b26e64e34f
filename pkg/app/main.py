import sys
import argparse
import json
from typing import Any, Dict, List, Optional
from pathlib import Path
from dotenv import load_dotenv

from langgraph.graph import StateGraph, END

from app.algebra.catalog import catalog_spec_from_cli
from app.algebra.semimodules import content_equivalences, dm_semimodule_equivalence, is_subtractive_semimodule
from app.algebra.sweeps import SweepOptions
from app.models.schemas import ClassificationReport, ClassificationState, GoldenRow, LabSettings
from app.utils.error_handler import (
    AxiomViolationError,
    BadParams,
    InputParseError,
    SemiringLabError,
    create_error_summary,
    error_handler,
)
from app.utils.file_io import file_io, render_report
from app.utils.input_validator import validate_inputs
from app.utils.tracer import initialize_tracer
from app.workflow.nodes import STAGES, ClassificationNodes
from app.workflow.golden_suite import GoldenSuite, print_table

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

INPUT_ERRORS = (InputParseError, AxiomViolationError, BadParams)


class SemiringLab:
    """Orchestrator for classification runs and the golden suite"""

    def __init__(self, settings: Optional[LabSettings] = None, base_path: str = "."):
        self.base_path = Path(base_path)
        self.settings = settings or LabSettings()

    def _build_graph(self, nodes: ClassificationNodes) -> StateGraph:
        """Linear pipeline; each stage fills its part of the report"""
        workflow = StateGraph(ClassificationState)

        for stage in STAGES:
            workflow.add_node(stage, getattr(nodes, stage))

        workflow.set_entry_point(STAGES[0])
        for current, following in zip(STAGES, STAGES[1:]):
            workflow.add_edge(current, following)
        workflow.add_edge(STAGES[-1], END)

        return workflow.compile()

    def classify(self, descriptor: Dict[str, Any], run_id: str = "classify", save: bool = True,
                 fmt: str = "json", verbose: bool = True) -> ClassificationReport:
        """Run the classification graph; parse and axiom errors propagate"""
        tracer = initialize_tracer(run_id, verbose)
        tracer.set_total_steps(len(STAGES) - 1)
        # error_summary covers this run only
        error_handler.reset()

        nodes = ClassificationNodes(run_id=run_id, save=save, fmt=fmt)
        graph = self._build_graph(nodes)
        initial_state = ClassificationState(descriptor=descriptor, settings=self.settings)

        try:
            final_state = graph.invoke(initial_state)
        except INPUT_ERRORS as e:
            tracer.run_error(str(e), "load_input")
            raise
        # LangGraph hands back a dict of channel values
        return final_state["report"]

    def classify_semimodule(self, path: str, verbose: bool = True) -> Dict[str, Any]:
        tracer = initialize_tracer("semimodule", verbose)
        tracer.start_validation()
        M = file_io.load_semimodule_json(path)
        tracer.validation_complete()

        options = SweepOptions.from_settings(self.settings)
        degree = max(self.settings.degree_bound, 2)
        tracer.start_stage("semimodule", f"🧱 Semimodule checks for {M!r}...")
        report = {
            "input": {"name": Path(path).stem, "path": path},
            "elements": list(M.elements),
            "subtractive": is_subtractive_semimodule(M).model_dump(mode="json"),
            "dm_equivalence": dm_semimodule_equivalence(M, degree, options).model_dump(mode="json"),
            "content": content_equivalences(M, self.settings.lattice_cap).model_dump(mode="json"),
            "error_summary": create_error_summary(),
        }
        tracer.stage_complete("semimodule", f"subtractive: {report['subtractive']['holds']}", 0.0)
        tracer.run_complete()
        return report

    def verify_golden(self, only: Optional[List[str]] = None, verbose: bool = True) -> List[GoldenRow]:
        tracer = initialize_tracer("verify_golden", verbose)
        suite = GoldenSuite(self.settings)
        tracer.set_total_steps(1)
        tracer.start_stage("verify_golden", "📚 Replaying published examples...")
        rows = suite.run(only)
        passed = all(r.passed for r in rows)
        file_io.log_run_state("verify_golden", {
            "node": "verify_golden",
            "action": "suite_complete",
            "rows": len(rows),
            "failed": [r.name for r in rows if not r.passed]
        })
        tracer.run_complete(passed=passed)
        return rows


def _descriptor(args) -> Dict[str, Any]:
    if args.catalog:
        spec = catalog_spec_from_cli(args.catalog, args.param or [])
        return {"catalog": spec.model_dump(mode="json")}
    return {"path": args.input}


def _settings(args) -> LabSettings:
    overrides = {
        "degree_bound": args.degree_bound,
        "lattice_cap": args.lattice_cap,
        "pair_budget": args.pair_budget,
        "seed": args.seed,
        "sample": args.sample,
        "workers": args.workers,
        "parallel": True if args.parallel else None,
    }
    return file_io.load_lab_config(args.config, overrides)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--degree-bound", type=int, help="Polynomial degree bound D for sweeps (default 3)")
    parser.add_argument("--lattice-cap", type=int, help="Largest |S| for ideal-lattice enumeration (default 12)")
    parser.add_argument("--pair-budget", type=int, help="Largest number of polynomial pairs per sweep")
    parser.add_argument("--parallel", action="store_true", help="Fan sweeps out over a process pool")
    parser.add_argument("--workers", type=int, help="Process pool size for --parallel")
    parser.add_argument("--seed", type=int, help="Seed for sampled sweeps and tropical spot checks")
    parser.add_argument("--sample", type=int, help="Sample this many left factors per sweep")
    parser.add_argument("--config", help="Path to lab configuration YAML (default config/lab_config.yaml)")
    parser.add_argument("--quiet", action="store_true", help="Reduce output verbosity (disable progress tracing)")


def _add_input(parser: argparse.ArgumentParser):
    parser.add_argument("input", nargs="?", help="Semiring (or semimodule) tables as JSON")
    parser.add_argument("--catalog", help="Catalog family instead of an input file")
    parser.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="Catalog parameter, repeatable (JSON values accepted)")
    parser.add_argument("--semimodule", action="store_true", help="Input file holds a semimodule")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiring-lab",
        description="Classify finite commutative semirings through their content ideals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  semiring-lab classify --catalog chain_C
  semiring-lab classify --catalog nil_chain --param n=4
  semiring-lab classify my_semiring.json --degree-bound 2
  semiring-lab report --catalog b_n_i --param n=4 --param i=2 --format text
  semiring-lab verify-paper

Environment Variables:
  SEMIRING_LAB_<SETTING>    Override any lab setting (e.g. SEMIRING_LAB_LATTICE_CAP=16)

Configuration Files:
  .env                      Environment overrides
  config/lab_config.yaml    Sweep bounds, caps, tropical spot-check settings

Exit codes: 0 success, 1 verification mismatch, 2 input error
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="Run the full classification pipeline")
    _add_input(classify)
    _add_common(classify)
    classify.add_argument("--no-save", action="store_true", help="Do not write the report under reports/")

    report = sub.add_parser("report", help="Classify and print the serialized report")
    _add_input(report)
    _add_common(report)
    report.add_argument("--format", choices=["json", "text"], default="json")
    report.add_argument("--no-save", action="store_true", help="Print only, do not write under reports/")

    verify = sub.add_parser("verify-paper", help="Replay every published example as a golden row")
    _add_common(verify)
    verify.add_argument("--only", action="append", metavar="ROW", help="Run only the named row (repeatable)")

    return parser


def _print_summary(report: ClassificationReport):
    verdicts = report.verdicts
    print(f"\n🧾 {report.input.get('name')}: {len(report.elements)} elements")
    if verdicts.subtractive is not None:
        print(f"   subtractive:   {verdicts.subtractive.holds}")
    if verdicts.weak_gaussian is not None:
        print(f"   weak Gaussian: {verdicts.weak_gaussian.holds} [{verdicts.weak_gaussian.status.value}]")
    if verdicts.gaussian is not None:
        bounded = verdicts.gaussian.bounded
        print(f"   Gaussian:      certificate {verdicts.gaussian.certificate.value}; "
              f"sweep {bounded.holds} [{bounded.status.value}]")
    if verdicts.content_semialgebra is not None:
        print(f"   content semialgebra: {verdicts.content_semialgebra.overall}")
    if report.skipped:
        print(f"   ⏭️  skipped: {', '.join(sorted(report.skipped))}")
    errors = report.error_summary.get("total_errors", 0) if report.error_summary else 0
    if errors:
        print(f"   ⚠️  Note: {errors} errors handled during classification")


def main(argv: Optional[List[str]] = None):
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    load_dotenv()
    # report writes the serialized report to stdout, so progress stays quiet
    quiet = args.quiet or args.command == "report"
    verbose = not quiet

    try:
        settings = _settings(args)
        lab = SemiringLab(settings)

        if args.command == "verify-paper":
            rows = lab.verify_golden(args.only, verbose)
            print_table(rows)
            sys.exit(EXIT_OK if rows and all(r.passed for r in rows) else EXIT_MISMATCH)

        if not args.input and not args.catalog:
            parser.error("pass an input file or --catalog")

        check = validate_inputs(".", args.input, args.catalog, args.param or [], args.semimodule, quiet=quiet)
        if not check.is_valid:
            sys.exit(EXIT_INPUT)

        if args.semimodule:
            if not args.input:
                parser.error("--semimodule needs an input file")
            result = lab.classify_semimodule(args.input, verbose)
            print(json.dumps(result, indent=2, sort_keys=True))
            sys.exit(EXIT_OK)

        fmt = getattr(args, "format", "json")
        report = lab.classify(_descriptor(args), run_id=args.command, save=not args.no_save,
                              fmt=fmt, verbose=verbose)
        if args.command == "report":
            sys.stdout.write(render_report(report, fmt))
        else:
            _print_summary(report)
        sys.exit(EXIT_OK)

    except INPUT_ERRORS as e:
        print(f"❌ INPUT ERROR: {e}")
        sys.exit(EXIT_INPUT)
    except KeyboardInterrupt:
        print("\n🛑 Run interrupted by user")
        sys.exit(EXIT_MISMATCH)
    except SemiringLabError as e:
        print(f"❌ FATAL ERROR: {e}")
        sys.exit(EXIT_MISMATCH)


if __name__ == "__main__":
    main()
