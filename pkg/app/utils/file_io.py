import os
import json
import yaml
from datetime import datetime
from pathlib import Path
from typing import Dict, Any, Optional

from dotenv import load_dotenv

from app.models.schemas import ClassificationReport, LabSettings
from app.utils.error_handler import InputParseError

ENV_PREFIX = "SEMIRING_LAB_"


class FileIO:
    def __init__(self, base_path: str = "."):
        self.base_path = Path(base_path)
        self.config_dir = self.base_path / "config"
        self.run_logs_dir = self.base_path / "run_logs"

    def read_yaml_file(self, file_path: str) -> Dict[str, Any]:
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"YAML file not found: {file_path}")

        with open(file_path, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f) or {}

    def read_json_file(self, file_path: str) -> Dict[str, Any]:
        if not os.path.exists(file_path):
            raise InputParseError(f"input file not found: {file_path}")
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InputParseError(f"{file_path} is not valid JSON: {e}") from e

    def load_lab_config(self, config_path: Optional[str] = None,
                        overrides: Optional[Dict[str, Any]] = None) -> LabSettings:
        """
        config/lab_config.yaml, then SEMIRING_LAB_* environment variables
        (after .env), then explicit overrides such as CLI flags.
        """
        load_dotenv()
        path = Path(config_path) if config_path else self.config_dir / "lab_config.yaml"
        values: Dict[str, Any] = {}
        if path.exists():
            values.update(self._flatten_config(self.read_yaml_file(str(path))))

        for field in LabSettings.model_fields:
            raw = os.getenv(ENV_PREFIX + field.upper())
            if raw is not None:
                values[field] = yaml.safe_load(raw)

        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value
        return LabSettings.model_validate(values)

    def _flatten_config(self, data: Dict[str, Any]) -> Dict[str, Any]:
        """Nested sections (sweeps:, tropical:, report:) map onto flat settings"""
        flat: Dict[str, Any] = {}
        for key, value in data.items():
            if key == "tropical" and isinstance(value, dict):
                for sub, v in value.items():
                    flat[f"tropical_{sub}"] = v
            elif key == "report" and isinstance(value, dict):
                if "dir" in value:
                    flat["report_dir"] = value["dir"]
            elif isinstance(value, dict):
                flat.update(value)
            else:
                flat[key] = value
        return {k: v for k, v in flat.items() if k in LabSettings.model_fields}

    def load_semiring_json(self, file_path: str):
        from app.algebra.semiring import validate_semiring

        return validate_semiring(self.read_json_file(file_path), name=Path(file_path).stem)

    def load_semimodule_json(self, file_path: str):
        from app.algebra.semimodules import validate_semimodule

        return validate_semimodule(self.read_json_file(file_path), name=Path(file_path).stem)

    def save_report(self, report: ClassificationReport, report_dir: str = "reports",
                    fmt: str = "json") -> str:
        out_dir = self.base_path / report_dir
        out_dir.mkdir(parents=True, exist_ok=True)
        name = report.input.get("name", "semiring").replace("/", "_").replace(" ", "")
        suffix = "json" if fmt == "json" else "txt"
        file_path = out_dir / f"{name}.{suffix}"
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(render_report(report, fmt))
        return str(file_path)

    def log_run_state(self, run_id: str, state_data: Dict[str, Any]) -> None:
        """Append one JSON line to run_logs/<run_id>.jsonl"""
        self.run_logs_dir.mkdir(exist_ok=True)
        log_path = self.run_logs_dir / f"{run_id}.jsonl"

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            **state_data
        }

        with open(log_path, 'a', encoding='utf-8') as f:
            f.write(json.dumps(log_entry, default=str) + '\n')


def render_report(report: ClassificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise InputParseError(f"unknown report format '{fmt}'")

    data = report.model_dump(mode="json")
    lines = [f"Semiring: {data['input'].get('name', '?')}  ({len(data['elements'])} elements)",
             f"Elements: {', '.join(data['elements'])}"]
    if data.get("structural"):
        flags = ", ".join(f"{k}={v}" for k, v in data["structural"].items())
        lines.append(f"Structure: {flags}")
    lines.append("")
    lines.append("Verdicts:")
    for name, verdict in data["verdicts"].items():
        if verdict is None:
            continue
        if isinstance(verdict, dict) and "holds" in verdict:
            bound = f", D={verdict['bound']}" if verdict.get("bound") is not None else ""
            lines.append(f"  {name}: {verdict['holds']} [{verdict['status']}{bound}] {verdict.get('detail', '')}")
            if verdict.get("witness"):
                lines.append(f"    witness: {json.dumps(verdict['witness'], sort_keys=True)}")
        elif isinstance(verdict, dict):
            lines.append(f"  {name}:")
            for sub, value in verdict.items():
                if isinstance(value, dict) and "holds" in value:
                    lines.append(f"    {sub}: {value['holds']} [{value['status']}] {value.get('detail', '')}")
                    if value.get("witness"):
                        lines.append(f"      witness: {json.dumps(value['witness'], sort_keys=True)}")
                else:
                    lines.append(f"    {sub}: {value}")
        else:
            lines.append(f"  {name}: {verdict}")
    if data.get("skipped"):
        lines.append("")
        lines.append("Skipped:")
        for stage, reason in sorted(data["skipped"].items()):
            lines.append(f"  {stage}: {reason}")
    return "\n".join(lines) + "\n"


# Convenience instance
file_io = FileIO()
