"""Task service

One entry point shared by the CLI and the HTTP routes: resolve a RunConfig,
build the lattice and model it names, run the task and wrap the result in the
report envelope.
"""

import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional, Union

from pydantic import BaseModel

from app.api.schemas.run import (
    CodeResult,
    CompareResult,
    ErrorReport,
    IomsResult,
    LogicalsResult,
    RunConfig,
    RunReport,
    SpectrumResult,
    TaskName,
    TaskResult,
    ValidateResult,
)
from app.api.services import (
    code_service,
    hamiltonian_service,
    iom_service,
    lattice_service,
    spectral_service,
)
from app.api.services.hamiltonian_service import Couplings, HamiltonianTerms
from app.config import APP_NAME, APP_VERSION, COMPARE_TOL
from app.errors import ConfigError, RubyCodeError

logger = logging.getLogger(__name__)


def couplings_of(config: RunConfig) -> Couplings:
    c = config.couplings
    return Couplings(c.jx, c.jy, c.jz)


def _ruby(config: RunConfig) -> lattice_service.RubyLattice:
    if config.lattice.type == "square":
        raise ConfigError(f"task {config.task} needs a ruby lattice, got square")
    return lattice_service.build_ruby(config.lattice.Lx, config.lattice.Ly)


def _validate(config: RunConfig) -> ValidateResult:
    spec = config.lattice
    if spec.type == "square":
        return ValidateResult(square=lattice_service.validate(lattice_service.build_square(spec.L)))
    lat = lattice_service.build_ruby(spec.Lx, spec.Ly)
    result = ValidateResult(ruby=lattice_service.validate(lat))
    if result.ruby.valid:
        result.colex = lattice_service.validate(lattice_service.contract_triangles(lat))
    return result


def _ioms(config: RunConfig) -> IomsResult:
    lat = _ruby(config)
    h = hamiltonian_service.build_two_body(lat, couplings_of(config))
    return IomsResult(**dict(iom_service.iom_report(lat, h)))


def _logicals(config: RunConfig) -> LogicalsResult:
    lat = _ruby(config)
    h = hamiltonian_service.build_two_body(lat, couplings_of(config))
    return LogicalsResult(**dict(iom_service.logical_report(lat, h)))


def _code(config: RunConfig) -> CodeResult:
    spec = config.lattice
    if spec.type == "square":
        h = hamiltonian_service.build_toric(lattice_service.build_square(spec.L))
        family = "toric"
    else:
        colex = lattice_service.contract_triangles(lattice_service.build_ruby(spec.Lx, spec.Ly))
        h = hamiltonian_service.build_color_code(colex)
        family = "color"
    group = code_service.from_terms(h)
    return CodeResult(
        model=hamiltonian_service.summarize(h), code=code_service.code_report(group, family)
    )


def build_model(config: RunConfig) -> tuple[HamiltonianTerms, Optional[lattice_service.RubyLattice]]:
    """Default model of the configured lattice, plus the ruby lattice when there is one."""
    spec = config.lattice
    if spec.type == "square":
        return hamiltonian_service.build_toric(lattice_service.build_square(spec.L)), None
    lat = lattice_service.build_ruby(spec.Lx, spec.Ly)
    if spec.type == "colex":
        return hamiltonian_service.build_color_code(lattice_service.contract_triangles(lat)), None
    return hamiltonian_service.build_two_body(lat, couplings_of(config)), lat


def export_model(
    config: RunConfig,
    terms: Optional[Union[Path, str]] = None,
    matrix: Optional[Union[Path, str]] = None,
) -> None:
    """Write the model as a JSON-lines term list and/or coordinate-format matrix text."""
    h, _ = build_model(config)
    if terms is not None:
        Path(terms).write_text(hamiltonian_service.to_jsonl(h), encoding="utf-8")
    if matrix is not None:
        nnz = spectral_service.write_coordinate_text(h, matrix)
        logger.info("wrote %d matrix entries to %s", nnz, matrix)


def _spectrum(config: RunConfig) -> SpectrumResult:
    solver = config.solver
    h, lat = build_model(config)
    k = min(1 << h.n, solver.m + solver.extra)
    pairs = spectral_service.eigenpairs(h, k, solver.tol, solver.seed, solver.cluster_tol)
    report = spectral_service.spectrum_report(h, pairs, solver.m, solver.cluster_tol)
    levels = None
    if lat is not None:
        # Within a degenerate cluster the solver basis need not diagonalize the plaquettes.
        ops = {}
        for a, b, _ in iom_service.all_plaquette_ioms(lat, h):
            ops[a.name] = a.op
            ops[b.name] = b.op
        states = report.clusters[0].multiplicity if report.clusters else 0
        report.iom_expectations = spectral_service.expectations(ops, pairs, states)
    else:
        levels = spectral_service.stabilizer_spectrum(h, solver.cluster_tol)
    return SpectrumResult(
        model=hamiltonian_service.summarize(h), spectrum=report, stabilizer_levels=levels
    )


def _compare(config: RunConfig) -> CompareResult:
    lat = _ruby(config)
    solver = config.solver
    report = spectral_service.compare_effective(
        lat,
        couplings_of(config),
        tol=min(solver.tol, COMPARE_TOL),
        seed=solver.seed,
        reading=config.reading,
    )
    return CompareResult(
        coefficients=hamiltonian_service.effective_coefficients(couplings_of(config), config.reading),
        comparison=report,
    )


TASK_HANDLERS: dict[TaskName, Callable[[RunConfig], TaskResult]] = {
    "validate": _validate,
    "ioms": _ioms,
    "logicals": _logicals,
    "code": _code,
    "spectrum": _spectrum,
    "compare-effective": _compare,
}


def run_task(config: RunConfig) -> RunReport:
    """Run one task and return its report envelope."""
    logger.info("running %s on %s lattice", config.task, config.lattice.type)
    result = TASK_HANDLERS[config.task](config)
    return RunReport(
        tool=APP_NAME,
        version=APP_VERSION,
        task=config.task,
        config=config,
        generated_at=datetime.now(timezone.utc),
        result=result,
    )


def error_report(error: RubyCodeError) -> ErrorReport:
    return ErrorReport(tool=APP_NAME, version=APP_VERSION, **error.to_dict())


def write_report(report: BaseModel, path: Optional[Union[Path, str]]) -> str:
    """Serialize a report; write it to ``path`` when one is given."""
    text = json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("report written to %s", path)
    return text
