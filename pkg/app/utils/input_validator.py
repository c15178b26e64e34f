"""
Input validation
Checks semiring / semimodule files, catalog parameters and configuration
before a run starts
"""

import importlib
import json
import yaml
from pathlib import Path
from typing import List, Optional, Sequence, Tuple
from dataclasses import dataclass, field

from app.utils.error_handler import AxiomViolationError, BadParams, InputParseError


@dataclass
class ValidationResult:
    """Messages collected by one validation pass; any error makes the input unusable"""

    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    info: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def add_error(self, message: str):
        self.errors.append(message)

    def add_warning(self, message: str):
        self.warnings.append(message)

    def add_info(self, message: str):
        self.info.append(message)

    def add_violations(self, error: AxiomViolationError):
        self.errors.extend(v.describe() for v in error.violations)


# (module, what the lab needs it for)
REQUIRED_MODULES: Tuple[Tuple[str, str], ...] = (
    ("numpy", "table arithmetic and pair sweeps"),
    ("langgraph.graph", "the classification graph"),
)


class InputValidator:
    """Validation of one classify/report input plus the lab configuration"""

    def __init__(self, base_path: str = ".", input_path: Optional[str] = None,
                 catalog: Optional[str] = None, params: Sequence[str] = (),
                 semimodule: bool = False, verbose: bool = True):
        self.verbose = verbose
        self.base_path = Path(base_path)
        self.input_path = input_path
        self.catalog = catalog
        self.params = list(params)
        self.semimodule = semimodule
        self.result = ValidationResult()

    def validate_all(self) -> ValidationResult:
        if self.verbose:
            print("🔍 Checking input and lab configuration...")

        self.result = ValidationResult()
        self._validate_configuration_file()
        if self.input_path:
            self._validate_input_file()
        elif self.catalog:
            self._validate_catalog()
        else:
            self.result.add_error("no input: pass a JSON file or --catalog")
        self._validate_dependencies()
        return self.result

    def _validate_configuration_file(self):
        config_path = self.base_path / "config" / "lab_config.yaml"
        if not config_path.exists():
            self.result.add_warning(f"{config_path} missing - built-in defaults apply")
            return
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            self.result.add_error(f"lab_config.yaml is not valid YAML: {e}")
            return
        if not isinstance(data, dict):
            self.result.add_error("lab_config.yaml must be a YAML mapping")
            return
        sweeps = data.get("sweeps", {})
        for key in ("degree_bound", "lattice_cap", "pair_budget"):
            if key in sweeps and (not isinstance(sweeps[key], int) or sweeps[key] < 0):
                self.result.add_error(f"sweeps.{key} must be a non-negative integer")
        self.result.add_info("⚙️  lab_config.yaml validated")

    def _validate_input_file(self):
        path = Path(self.input_path)
        if not path.exists():
            self.result.add_error(f"Input file not found: {path}")
            return
        if path.suffix.lower() != ".json":
            self.result.add_warning(f"{path.name} does not have a .json extension")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            self.result.add_error(f"{path.name} is not valid JSON: {e}")
            return
        except UnicodeDecodeError:
            self.result.add_error(f"{path.name} contains invalid UTF-8 encoding")
            return

        try:
            if self.semimodule:
                from app.algebra.semimodules import validate_semimodule
                M = validate_semimodule(data, name=path.stem)
                self.result.add_info(f"✅ {path.name} - semimodule with {M.size} elements over {M.semiring!r}")
            else:
                from app.algebra.semiring import validate_semiring
                S = validate_semiring(data, name=path.stem)
                self.result.add_info(f"✅ {path.name} - semiring with {S.size} elements")
        except AxiomViolationError as e:
            self.result.add_violations(e)
        except (InputParseError, BadParams) as e:
            self.result.add_error(f"{path.name}: {e}")

    def _validate_catalog(self):
        from app.algebra.catalog import build_catalog, catalog_spec_from_cli

        try:
            spec = catalog_spec_from_cli(self.catalog, self.params)
            S = build_catalog(spec)
        except (InputParseError, BadParams) as e:
            self.result.add_error(str(e))
            return
        except AxiomViolationError as e:
            self.result.add_violations(e)
            return
        self.result.add_info(f"✅ catalog {spec.describe()} - {S.size} elements")
        if S.size > 12:
            self.result.add_warning(f"{S.size} elements: raise --lattice-cap for lattice-based verdicts")

    def _validate_dependencies(self):
        for module, purpose in REQUIRED_MODULES:
            try:
                importlib.import_module(module)
            except ImportError:
                self.result.add_error(f"{module} is not installed; needed for {purpose}")

    def print_results(self):
        r = self.result
        verdict = "✅ INPUT OK" if r.is_valid else f"❌ INPUT REJECTED ({len(r.errors)} error(s))"
        print("\n" + "=" * 60)
        print(verdict)
        print("=" * 60)
        for marker, messages in (("📌", r.info), ("⚠️ ", r.warnings), ("❌", r.errors)):
            for message in messages:
                print(f"   {marker} {message}")
        print("=" * 60 + "\n")


def validate_inputs(base_path: str = ".", input_path: Optional[str] = None,
                    catalog: Optional[str] = None, params: Sequence[str] = (),
                    semimodule: bool = False, quiet: bool = False) -> ValidationResult:
    validator = InputValidator(base_path, input_path, catalog, params, semimodule, verbose=not quiet)
    result = validator.validate_all()
    if not quiet or not result.is_valid:
        validator.print_results()
    return result
