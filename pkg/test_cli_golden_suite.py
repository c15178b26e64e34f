#!/usr/bin/env python3
"""
Command line, configuration layering, report rendering and the golden suite
"""

import json

import pytest

from app.algebra.catalog import catalog_spec_from_cli
from app.main import EXIT_INPUT, EXIT_OK, SemiringLab, build_parser, main
from app.models.schemas import LabSettings
from app.utils.file_io import FileIO, render_report
from app.workflow.golden_suite import GoldenSuite

QUICK_ROWS = [
    "lagrassa_product",
    "nil_chain_dm",
    "truncation_radical",
    "chain_C_structure",
    "b_n_i_prime",
    "monoid_extension_prime",
]


def test_parser_subcommands():
    print("\n1️⃣ Command line...")
    parser = build_parser()
    args = parser.parse_args(["classify", "--catalog", "nil_chain", "--param", "n=4", "--degree-bound", "2"])
    assert args.command == "classify" and args.catalog == "nil_chain"
    assert args.param == ["n=4"] and args.degree_bound == 2
    args = parser.parse_args(["report", "--catalog", "chain_C", "--format", "text"])
    assert args.format == "text"
    args = parser.parse_args(["verify-paper", "--only", "tropical"])
    assert args.only == ["tropical"]
    print("   ✅ classify, report, verify-paper")


def test_classify_catalog_exits_ok(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as exit_info:
        main(["classify", "--catalog", "chain_C", "--no-save", "--quiet", "--degree-bound", "2"])
    assert exit_info.value.code == EXIT_OK


def test_unknown_catalog_is_an_input_error(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as exit_info:
        main(["classify", "--catalog", "no_such_family", "--no-save", "--quiet"])
    assert exit_info.value.code == EXIT_INPUT


def test_report_json(tmp_path, monkeypatch, capsys):
    print("\n2️⃣ Serialized report for B(4,2)...")
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as exit_info:
        main(["report", "--catalog", "b_n_i", "--param", "n=4", "--param", "i=2",
              "--format", "json", "--no-save", "--degree-bound", "2"])
    assert exit_info.value.code == EXIT_OK
    out = capsys.readouterr().out
    data = json.loads(out[out.index("{"):])
    assert data["verdicts"]["weak_gaussian"]["holds"] is False
    assert data["verdicts"]["subtractive"]["holds"] is False


def test_render_text_report(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    lab = SemiringLab(LabSettings(degree_bound=2))
    descriptor = {"catalog": catalog_spec_from_cli("chain_C").model_dump(mode="json")}
    report = lab.classify(descriptor, save=False, verbose=False)
    text = render_report(report, "text")
    assert text.startswith("Semiring: ")
    assert "Verdicts:" in text
    assert json.loads(render_report(report, "json"))["elements"] == ["0", "1", "u"]



def test_reports_are_deterministic(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    descriptor = {"catalog": catalog_spec_from_cli("nil_chain", ["n=4"]).model_dump(mode="json")}
    reports = [
        SemiringLab(LabSettings(degree_bound=2)).classify(descriptor, save=False, verbose=False)
        for _ in range(2)
    ]
    # stage timings are wall-clock
    first, second = (r.model_dump(mode="json", exclude={"timing"}) for r in reports)
    assert first == second

def test_config_layers(tmp_path, monkeypatch):
    print("\n3️⃣ Configuration layers...")
    config = tmp_path / "config"
    config.mkdir()
    (config / "lab_config.yaml").write_text("sweeps:\n  degree_bound: 2\ntropical:\n  pairs: 50\n")
    monkeypatch.setenv("SEMIRING_LAB_LATTICE_CAP", "16")
    settings = FileIO(str(tmp_path)).load_lab_config()
    assert settings.degree_bound == 2
    assert settings.tropical_pairs == 50
    assert settings.lattice_cap == 16
    overridden = FileIO(str(tmp_path)).load_lab_config(overrides={"lattice_cap": 5, "seed": None})
    assert overridden.lattice_cap == 5 and overridden.seed == 0
    print("   ✅ YAML < environment < flags")


def test_golden_rows_pass(tmp_path, monkeypatch):
    print("\n4️⃣ Golden rows...")
    monkeypatch.chdir(tmp_path)
    rows = GoldenSuite(LabSettings()).run(only=QUICK_ROWS)
    assert [r.name for r in rows] == QUICK_ROWS
    for row in rows:
        assert row.passed, f"{row.name}: {row.observed}"
    print(f"   ✅ {len(rows)} rows passed")


def test_suite_lists_every_row():
    names = [case.name for case in GoldenSuite().cases()]
    assert len(names) == len(set(names)) == 24


def main_tests():
    print("🧪 Testing the command line and golden suite...")
    print("=" * 60)
    test_parser_subcommands()
    test_suite_lists_every_row()
    print("\n" + "=" * 60)
    print("🎉 Run with pytest for the fixture-based tests")


if __name__ == "__main__":
    main_tests()
