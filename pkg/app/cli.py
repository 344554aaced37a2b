"""Command-line entry point

    ruby-code <task> [flags]          run one task (validate, ioms, ...)
    ruby-code run --config FILE       run the task named in a config file
    ruby-code schema [--dir DIR]      write JSON schemas of every report

Flags override values read from --config. The report (or a machine-readable
error object) is printed to stdout and written to --out when given.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel, ValidationError

from app.api.schemas.code import ChargeTableResponse, CodeReport
from app.api.schemas.iom import IomReport, LogicalReport
from app.api.schemas.lattice import LatticeExport, ValidationResponse
from app.api.schemas.run import ErrorReport, RunConfig, RunReport
from app.api.schemas.spectrum import CompareReport, SpectrumReport, StabilizerSpectrumResponse
from app.api.services import spectral_service, task_service
from app.config import APP_NAME, APP_VERSION, SCHEMA_DIR, TASKS, configure_logging
from app.errors import ConfigError, InvariantViolation, RubyCodeError

logger = logging.getLogger("app.cli")

SCHEMAS: dict[str, type[BaseModel]] = {
    "run_config": RunConfig,
    "run_report": RunReport,
    "error_report": ErrorReport,
    "validation": ValidationResponse,
    "lattice_export": LatticeExport,
    "iom_report": IomReport,
    "logical_report": LogicalReport,
    "code_report": CodeReport,
    "charge_table": ChargeTableResponse,
    "spectrum_report": SpectrumReport,
    "stabilizer_spectrum": StabilizerSpectrumResponse,
    "compare_report": CompareReport,
}

# flag -> (section, key) in the config document
_OVERRIDES = {
    "type": ("lattice", "type"),
    "lx": ("lattice", "Lx"),
    "ly": ("lattice", "Ly"),
    "l": ("lattice", "L"),
    "jx": ("couplings", "jx"),
    "jy": ("couplings", "jy"),
    "jz": ("couplings", "jz"),
    "eigs": ("solver", "m"),
    "extra": ("solver", "extra"),
    "tol": ("solver", "tol"),
    "cluster_tol": ("solver", "cluster_tol"),
    "seed": ("solver", "seed"),
    "reading": (None, "reading"),
    "out": (None, "output"),
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--type", choices=("ruby", "square", "colex"), help="lattice type")
    common.add_argument("--lx", type=int, help="ruby cells along T1")
    common.add_argument("--ly", type=int, help="ruby cells along T2")
    common.add_argument("--l", type=int, help="square lattice linear size")
    common.add_argument("--jx", type=float, help="red-link coupling")
    common.add_argument("--jy", type=float, help="green-link coupling")
    common.add_argument("--jz", type=float, help="blue-link coupling")
    common.add_argument("--eigs", type=int, help="number of eigenvalues to report")
    common.add_argument("--extra", type=int, help="additional eigenvalues for cluster completion")
    common.add_argument("--tol", type=float, help="eigensolver tolerance")
    common.add_argument("--cluster-tol", dest="cluster_tol", type=float, help="relative degeneracy tolerance")
    common.add_argument("--seed", type=int, help="starting-vector seed")
    common.add_argument("--reading", choices=("symmetric", "literal"), help="effective k_y formula")
    common.add_argument("--out", type=Path, help="report path")
    common.add_argument("--eigenvalues", type=Path, help="spectrum: also write eigenvalues, one per line")
    common.add_argument("--terms", type=Path, help="also write the model as JSON lines")
    common.add_argument("--matrix", type=Path, help="also write the model in coordinate text form")
    common.add_argument("--log-level", dest="log_level", help="overrides RUBY_CODE_LOG_LEVEL")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruby-code",
        description="Two-body ruby-lattice model and its emergent color code.",
    )
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)
    for task in TASKS:
        sub.add_parser(task, parents=[common], help=f"run the {task} task")
    run = sub.add_parser("run", parents=[common], help="run the task named by --task or the config")
    run.add_argument("--task", choices=TASKS)
    schema = sub.add_parser("schema", help="write JSON schemas for every report")
    schema.add_argument("--dir", type=Path, default=SCHEMA_DIR)
    return parser


def _validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    if first["type"] == "value_error":
        return first["msg"].removeprefix("Value error, ")
    loc = ".".join(str(part) for part in first["loc"])
    return f"{loc}: {first['msg']}"


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file first, then flag overrides, then validation."""
    document: dict[str, Any] = {}
    if args.config is not None:
        try:
            document = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(document, dict):
            raise ConfigError("config must be a JSON object")

    if args.command != "run":
        document["task"] = args.command
    elif getattr(args, "task", None):
        document["task"] = args.task

    for flag, (section, key) in _OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is None:
            continue
        if isinstance(value, Path):
            value = str(value)
        target = document.setdefault(section, {}) if section else document
        target[key] = value

    try:
        return RunConfig.model_validate(document)
    except ValidationError as exc:
        raise ConfigError(
            _validation_message(exc), {"errors": json.loads(exc.json(include_url=False))}
        ) from exc


def write_schemas(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in SCHEMAS.items():
        path = directory / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n", encoding="utf-8")
        written.append(path)
    return written


def _fail(error: RubyCodeError, out: Optional[Union[Path, str]]) -> int:
    try:
        text = task_service.write_report(task_service.error_report(error), out)
    except OSError:
        text = task_service.write_report(task_service.error_report(error), None)
    sys.stdout.write(text)
    return error.exit_code


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(getattr(args, "log_level", None))

    if args.command == "schema":
        for path in write_schemas(args.dir):
            print(path)
        return 0

    out = getattr(args, "out", None)
    try:
        config = resolve_config(args)
        out = config.output
        report = task_service.run_task(config)
        if args.terms or args.matrix:
            task_service.export_model(config, args.terms, args.matrix)
        if args.eigenvalues and config.task == "spectrum":
            args.eigenvalues.write_text(
                spectral_service.eigenvalue_text(report.result.spectrum.eigenvalues),
                encoding="utf-8",
            )
        text = task_service.write_report(report, config.output)
    except RubyCodeError as exc:
        logger.error("%s: %s", exc.kind, exc.message)
        return _fail(exc, out)
    except OSError as exc:
        return _fail(ConfigError(f"cannot write output: {exc}"), None)
    except Exception as exc:
        logger.exception("unexpected failure")
        return _fail(InvariantViolation(f"unexpected {type(exc).__name__}: {exc}"), out)

    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
