"""Tests for the command-line front end."""

import json

import jsonschema
import pytest

from app.api.schemas.run import RunConfig
from app.cli import SCHEMAS, build_parser, main, resolve_config, write_schemas
from app.config import SCHEMA_DIR


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def committed(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text(encoding="utf-8"))


class TestResolveConfig:
    """Tests for config files and flag overrides."""

    def test_defaults(self):
        config = resolve_config(build_parser().parse_args(["validate"]))
        assert config.task == "validate"
        assert config.lattice.type == "ruby"
        assert (config.lattice.Lx, config.lattice.Ly) == (1, 1)

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(
            json.dumps(
                {
                    "task": "spectrum",
                    "lattice": {"type": "ruby", "Lx": 2, "Ly": 1},
                    "couplings": {"jx": 0.5, "jy": 0.5, "jz": 1.0},
                    "solver": {"m": 8, "seed": 3},
                }
            )
        )
        args = build_parser().parse_args(["run", "--config", str(path), "--jx", "0.1", "--eigs", "4"])
        config = resolve_config(args)
        assert config.task == "spectrum"
        assert config.lattice.Lx == 2
        assert config.couplings.jx == 0.1
        assert config.couplings.jy == 0.5
        assert config.solver.m == 4
        assert config.solver.seed == 3

    def test_subcommand_sets_task(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"task": "spectrum"}))
        config = resolve_config(build_parser().parse_args(["code", "--config", str(path)]))
        assert config.task == "code"


class TestRun:
    """End-to-end runs through main()."""

    def test_validate(self, capsys):
        code, report = run(capsys, "validate")
        assert code == 0
        assert report["task"] == "validate"
        assert report["version"]
        assert report["config"]["lattice"]["Lx"] == 1
        assert report["result"]["ruby"]["valid"]
        assert report["result"]["colex"]["valid"]

    def test_zero_size_is_a_config_error(self, capsys, tmp_path):
        out = tmp_path / "error.json"
        code, report = run(capsys, "validate", "--lx", "0", "--out", str(out))
        assert code == 2
        assert report["error"] == "config"
        assert report["message"] == "Lx must be ≥ 1"
        assert json.loads(out.read_text())["message"] == "Lx must be ≥ 1"

    def test_toric_code(self, capsys):
        code, report = run(capsys, "code", "--type", "square", "--l", "4")
        assert code == 0
        assert report["result"]["code"]["k"] == 2
        assert report["result"]["code"]["degeneracy"] == 4
        assert report["result"]["code"]["charges"]["nontrivial"] == 3

    def test_color_code(self, capsys):
        code, report = run(capsys, "code", "--type", "colex")
        assert code == 0
        assert report["result"]["code"]["k"] == 4
        assert report["result"]["code"]["brute_force_degeneracy"] == 16
        assert report["result"]["code"]["charges"]["nontrivial"] == 15

    def test_ioms(self, capsys):
        code, report = run(capsys, "ioms")
        assert code == 0
        result = report["result"]
        assert result["all_verified"]
        assert len(result["plaquettes"]) == 3
        for face in result["plaquettes"]:
            for label in ("A", "B", "C"):
                record = face[label]
                assert record["hermitian"]
                assert record["squares_to_identity"]
                assert record["commutes_with_hamiltonian"]

    def test_logicals(self, capsys):
        code, report = run(capsys, "logicals")
        assert code == 0
        assert all(report["result"]["relations"]["squares"].values())

    def test_spectrum_on_color_code(self, capsys, tmp_path):
        eigs = tmp_path / "eigs.txt"
        code, report = run(capsys, "spectrum", "--type", "colex", "--eigs", "16", "--eigenvalues", str(eigs))
        assert code == 0
        spectrum = report["result"]["spectrum"]
        assert spectrum["clusters"][0]["total_multiplicity"] == 16
        assert report["result"]["stabilizer_levels"]["rank"] == 2
        assert [float(line) for line in eigs.read_text().splitlines()] == spectrum["eigenvalues"]

    def test_model_exports(self, capsys, tmp_path):
        terms = tmp_path / "terms.jsonl"
        matrix = tmp_path / "matrix.txt"
        code, _ = run(
            capsys, "validate", "--type", "colex", "--terms", str(terms), "--matrix", str(matrix)
        )
        assert code == 0
        assert len(terms.read_text().splitlines()) == 6
        assert matrix.read_text().strip()

    def test_square_lattice_needs_even_size(self, capsys):
        code, report = run(capsys, "code", "--type", "square", "--l", "3")
        assert code == 2
        assert report["error"] == "lattice"

    def test_bad_config_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, report = run(capsys, "run", "--config", str(path))
        assert code == 2
        assert report["error"] == "config"

    def test_missing_task(self, capsys):
        code, report = run(capsys, "run")
        assert code == 2
        assert report["message"].startswith("task")

    def test_unknown_flag_exits(self):
        with pytest.raises(SystemExit):
            main(["validate", "--bogus"])

    def test_output_file_matches_stdout(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = main(["code", "--type", "colex", "--out", str(out)])
        assert code == 0
        assert json.loads(capsys.readouterr().out) == json.loads(out.read_text())

    def test_identical_config_gives_identical_report(self, capsys, tmp_path):
        texts = []
        for name in ("first.json", "second.json"):
            out = tmp_path / name
            assert main(["code", "--type", "square", "--l", "4", "--out", str(out)]) == 0
            lines = out.read_text(encoding="utf-8").splitlines(keepends=True)
            texts.append("".join(line for line in lines if '"generated_at"' not in line))
        capsys.readouterr()
        assert texts[0] == texts[1]


class TestSchemas:
    """Tests for published JSON schemas."""

    def test_write_schemas(self, tmp_path):
        written = write_schemas(tmp_path)
        assert len(written) == len(SCHEMAS)
        schema = json.loads((tmp_path / "run_config.schema.json").read_text())
        assert "task" in schema["required"]

    def test_config_round_trip(self):
        config = RunConfig(task="code")
        assert RunConfig.model_validate_json(config.model_dump_json()) == config

    def test_committed_schemas_follow_the_models(self):
        for name, model in SCHEMAS.items():
            schema = committed(name)
            body = schema["$defs"][model.__name__] if "$ref" in schema else schema
            assert body["title"] == model.__name__
            assert list(body["properties"]) == list(model.model_fields)

    @pytest.mark.parametrize(
        "argv", [("validate",), ("code", "--type", "square", "--l", "4"), ("code",), ("ioms",)]
    )
    def test_reports_validate_against_committed_schema(self, capsys, argv):
        code, report = run(capsys, *argv)
        assert code == 0
        jsonschema.validate(report, committed("run_report"))
        if argv[0] == "code":
            jsonschema.validate(report["result"]["code"], committed("code_report"))
        if argv[0] == "ioms":
            jsonschema.validate(report["result"], committed("iom_report"))

    def test_error_validates_against_committed_schema(self, capsys):
        code, report = run(capsys, "validate", "--lx", "0")
        assert code == 2
        jsonschema.validate(report, committed("error_report"))
