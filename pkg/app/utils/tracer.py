"""
Progress tracing for classification, semimodule and golden-suite runs.

Every event lands as one JSON line in run_logs/<run_id>_trace.jsonl; the
human-readable part is echoed to stdout unless the run is quiet.
"""

import json
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional


class RunTracer:
    """Numbered stage lines on stdout plus a JSONL event stream"""

    def __init__(self, run_id: str, verbose: bool = True, log_dir: str = "run_logs"):
        self.run_id = run_id
        self.verbose = verbose
        self.started = time.time()
        self.step = 0
        self.total_steps = 0
        self.stage: Optional[str] = None
        self.stages_seen: List[str] = []
        self.trace_file = Path(log_dir) / f"{run_id}_trace.jsonl"
        self.trace_file.parent.mkdir(parents=True, exist_ok=True)
        self._emit("run_start")

    # -- stages ------------------------------------------------------------

    def set_total_steps(self, stage_count: int):
        self.total_steps = stage_count
        self._emit("plan", total_steps=stage_count)

    def start_stage(self, stage: str, message: str):
        self.step += 1
        self.stage = stage
        self.stages_seen.append(stage)
        counter = f"[{self.step}/{self.total_steps}]" if self.total_steps else f"[{self.step}]"
        self._say(f"{counter} {message}")
        self._emit("stage_start", message=message)

    def stage_complete(self, stage: str, summary: str, elapsed: float):
        self._say(f"     ✅ {summary} ({elapsed:.2f}s)")
        self._emit("stage_complete", stage_name=stage, summary=summary, seconds=round(elapsed, 4))

    def stage_skipped(self, field: str, reason: str):
        self._say(f"     ⏭️  {field} skipped: {reason}")
        self._emit("field_skipped", field=field, reason=reason)

    def trace_node_start(self, node: str):
        self._emit("node_start", node=node)

    def trace_node_complete(self, node: str):
        self._emit("node_complete", node=node)

    # -- inputs and golden rows -------------------------------------------

    def start_validation(self):
        self.start_stage("input_validation", "🔍 Checking semiring / semimodule axioms...")

    def validation_complete(self, violations: Optional[List[str]] = None):
        if violations:
            self._say(f"     ⚠️  {len(violations)} axiom violation(s)")
            for v in violations:
                self._say(f"        • {v}")
        else:
            self._say("     ✅ axioms hold")
        self._emit("validation", violations=violations or [])

    def golden_row(self, name: str, passed: bool, observed: str):
        self._say(f"     {'✅' if passed else '❌'} {name}: {observed}")
        self._emit("golden_row", name=name, passed=passed, observed=observed)

    # -- run end -----------------------------------------------------------

    def run_complete(self, output_path: Optional[str] = None, passed: Optional[bool] = None):
        elapsed = time.time() - self.started
        self._say(f"     🎊 {self.run_id} finished in {elapsed:.1f}s")
        if output_path:
            self._say(f"   📄 Report: {output_path}")
        self._emit("run_end", output_path=output_path, success=True if passed is None else passed,
                   stages=self.stages_seen)

    def run_error(self, error_message: str, node: Optional[str] = None):
        self._say(f"     ❌ {node or 'run'}: {error_message}")
        self._emit("run_error", node=node, error_message=error_message, success=False)

    # -- output ------------------------------------------------------------

    def _say(self, line: str):
        if self.verbose:
            print(line)

    def _emit(self, kind: str, **fields: Any):
        event: Dict[str, Any] = {
            "type": kind,
            "run_id": self.run_id,
            "timestamp": datetime.now().isoformat(),
            "elapsed": round(time.time() - self.started, 4),
            "step": self.step,
            "stage": self.stage,
        }
        event.update(fields)
        try:
            with open(self.trace_file, "a", encoding="utf-8") as f:
                f.write(json.dumps(event, default=str) + "\n")
        except OSError as e:
            # a lost trace line never fails the run
            self._say(f"⚠️  trace write failed: {e}")


_tracer: Optional[RunTracer] = None


def initialize_tracer(run_id: str, verbose: bool = True, log_dir: str = "run_logs") -> RunTracer:
    global _tracer
    _tracer = RunTracer(run_id, verbose, log_dir)
    return _tracer


def get_tracer() -> Optional[RunTracer]:
    return _tracer
