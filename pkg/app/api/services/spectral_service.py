"""Spectral service

Matrix-free exact diagonalization of Pauli term lists. Terms sharing the same
X pattern are merged into one diagonal weight vector, so

    (H v)[a] = sum_x w_x[a] * v[a ^ x]

costs one gather and one multiply per distinct X pattern.
"""

import functools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from app.api.schemas.spectrum import (
    ClusterRecord,
    CompareReport,
    ExpectationRecord,
    LevelRecord,
    SpectrumReport,
    StabilizerSpectrumResponse,
)
from app.api.services import code_service, pauli_service
from app.api.services.hamiltonian_service import (
    Couplings,
    HamiltonianTerms,
    build_effective,
    build_two_body,
)
from app.api.services.lattice_service import RubyLattice, contract_triangles
from app.api.services.pauli_service import PauliOperator
from app.config import (
    COMPARE_FALLBACK_T,
    COMPARE_GAP_FACTOR,
    COMPARE_MAX_TRIANGLES,
    COMPARE_PATTERN_TOLERANCE,
    COMPARE_TOL,
    DEFAULT_CLUSTER_TOL,
    DEFAULT_EXTRA_EIGS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    DENSE_MAX_QUBITS,
    MAX_ARNOLDI_ITERATIONS,
    MAX_QUBITS,
    STABILIZER_SPECTRUM_MAX_RANK,
)
from app.errors import ConfigError, ConvergenceError, StructureError

logger = logging.getLogger(__name__)

MAX_DEFLATION_ROUNDS = 4


def _check_dimension(h: HamiltonianTerms) -> int:
    if h.n > MAX_QUBITS:
        raise StructureError(
            f"{h.n} qubits exceeds the exact-diagonalization cap of {MAX_QUBITS}",
            {"n": h.n},
        )
    return 1 << h.n


@functools.lru_cache(maxsize=4)
def _weights(h: HamiltonianTerms) -> tuple[tuple[int, np.ndarray], ...]:
    dim = _check_dimension(h)
    dtype = np.float64 if h.is_real else np.complex128
    index = np.arange(dim, dtype=np.int64)
    groups: dict[int, np.ndarray] = {}
    for coef, op in h.terms:
        if coef == 0.0:
            continue
        source = index ^ op.xbits
        signs = 1.0 - 2.0 * (np.bitwise_count(source & op.zbits) & 1)
        phase = 1j**op.phase_exp if not op.is_real else (1.0 if op.phase_exp == 0 else -1.0)
        weight = (coef * phase * signs).astype(dtype)
        if op.xbits in groups:
            groups[op.xbits] = groups[op.xbits] + weight
        else:
            groups[op.xbits] = weight
    return tuple(sorted(groups.items()))


def _dtype(h: HamiltonianTerms):
    return np.float64 if h.is_real else np.complex128


def matvec(h: HamiltonianTerms, v: np.ndarray) -> np.ndarray:
    """H v for a state (or block of states as columns) of length 2^n."""
    dim = _check_dimension(h)
    if v.shape[0] != dim:
        raise StructureError(f"state has length {v.shape[0]}, expected {dim}")
    index = np.arange(dim, dtype=np.int64)
    dtype = np.result_type(_dtype(h), v.dtype)
    out = np.zeros(v.shape, dtype=dtype)
    for xbits, weight in _weights(h):
        w = weight if v.ndim == 1 else weight[:, None]
        out += w * (v if xbits == 0 else v[index ^ xbits])
    return out


def as_linear_operator(h: HamiltonianTerms) -> LinearOperator:
    dim = _check_dimension(h)
    return LinearOperator(
        (dim, dim), matvec=lambda v: matvec(h, np.ravel(v)), dtype=_dtype(h)
    )


def to_sparse(h: HamiltonianTerms) -> sp.csr_matrix:
    """Sparse matrix with H[a, a ^ x] = w_x[a]."""
    dim = _check_dimension(h)
    index = np.arange(dim, dtype=np.int64)
    rows, cols, data = [], [], []
    for xbits, weight in _weights(h):
        rows.append(index)
        cols.append(index ^ xbits)
        data.append(weight)
    if not data:
        return sp.csr_matrix((dim, dim), dtype=_dtype(h))
    matrix = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    matrix.eliminate_zeros()
    return matrix.tocsr()


def write_coordinate_text(h: HamiltonianTerms, path: Path | str) -> int:
    """Write nonzero entries as "row col real imag" lines; returns the entry count."""
    matrix = to_sparse(h).tocoo()
    data = matrix.data.astype(np.complex128)
    with open(path, "w") as fh:
        for r, c, value in zip(matrix.row, matrix.col, data):
            fh.write(f"{int(r)} {int(c)} {float(value.real)!r} {float(value.imag)!r}\n")
    return int(matrix.nnz)


def eigenvalue_text(values) -> str:
    return "".join(f"{float(v)!r}\n" for v in values)


def expectation(p: PauliOperator, v: np.ndarray) -> complex:
    """<v|P|v>."""
    if v.shape != (1 << p.n,):
        raise StructureError(f"state has shape {v.shape}, expected ({1 << p.n},)")
    return complex(np.vdot(v, pauli_service.apply_to_state(p, v)))


def commutator_residual(h: HamiltonianTerms, p: PauliOperator, v: np.ndarray) -> float:
    """|| H P v - P H v ||."""
    return float(
        np.linalg.norm(
            matvec(h, pauli_service.apply_to_state(p, v))
            - pauli_service.apply_to_state(p, matvec(h, v))
        )
    )


# ---------------------------------------------------------------------------
# Eigensolvers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eigenpairs:
    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    method: str


def _residuals(h: HamiltonianTerms, values, vectors) -> np.ndarray:
    return np.linalg.norm(matvec(h, vectors) - vectors * values[None, :], axis=0)


def _dense(h: HamiltonianTerms, k: int) -> Eigenpairs:
    values, vectors = np.linalg.eigh(to_sparse(h).toarray())
    values, vectors = values[:k], vectors[:, :k]
    return Eigenpairs(values, vectors, _residuals(h, values, vectors), "dense")


def _diagonal(h: HamiltonianTerms, k: int) -> Eigenpairs:
    dim = 1 << h.n
    groups = dict(_weights(h))
    diag = np.real(groups.get(0, np.zeros(dim)))
    order = np.argsort(diag, kind="stable")[:k]
    # basis states; kept sparse so a full-spectrum request stays cheap
    vectors = sp.csc_matrix(
        (np.ones(len(order)), (order, np.arange(len(order)))), shape=(dim, len(order))
    )
    return Eigenpairs(diag[order], vectors, np.zeros(len(order)), "diagonal")


def state(pairs: Eigenpairs, index: int) -> np.ndarray:
    """Normalized eigenvector ``index`` as a dense array."""
    column = pairs.vectors[:, [index]]
    v = np.ravel(column.toarray() if sp.issparse(column) else column)
    return v / np.linalg.norm(v)


def _arpack(operator: LinearOperator, k: int, tol: float, rng, dtype):
    dim = operator.shape[0]
    v0 = rng.standard_normal(dim)
    if np.issubdtype(dtype, np.complexfloating):
        v0 = v0 + 1j * rng.standard_normal(dim)
    try:
        return eigsh(
            operator,
            k=k,
            which="SA",
            v0=v0.astype(dtype),
            tol=tol,
            ncv=min(dim, max(2 * k + 1, 40)),
            maxiter=MAX_ARNOLDI_ITERATIONS,
        )
    except ArpackNoConvergence as exc:
        raise ConvergenceError(
            f"Lanczos did not converge after {MAX_ARNOLDI_ITERATIONS} iterations",
            {"converged": len(exc.eigenvalues), "requested": k},
        ) from exc


def _iterative(h: HamiltonianTerms, k: int, tol: float, seed: int, cluster_tol: float) -> Eigenpairs:
    """
    Implicitly restarted Lanczos with deflation rounds.

    A single Krylov run can miss copies of an exactly degenerate level. Each
    further round shifts the span found so far out of the way and searches the
    complement; new directions are merged by Rayleigh-Ritz on an
    orthonormalized basis until no round finds anything below the current top.
    """
    dim = 1 << h.n
    dtype = _dtype(h)
    rng = np.random.default_rng(seed)
    scale = max(h.norm_bound, 1.0)
    shift = 2.0 * scale + 1.0
    margin = cluster_tol * scale
    operator = as_linear_operator(h)

    basis = np.zeros((dim, 0), dtype=dtype)
    values = np.zeros(0)
    for round_ in range(MAX_DEFLATION_ROUNDS):
        if basis.shape[1]:
            frozen = basis

            def shifted(v, frozen=frozen):
                v = np.ravel(v)
                return matvec(h, v) + shift * (frozen @ (frozen.conj().T @ v))

            search = LinearOperator((dim, dim), matvec=shifted, dtype=dtype)
        else:
            search = operator
        found, vectors = _arpack(search, k, tol, rng, dtype)
        if basis.shape[1] and found.min() >= values[-1] - margin:
            break
        q, _ = np.linalg.qr(np.hstack([basis, vectors]))
        projected = q.conj().T @ matvec(h, q)
        projected = (projected + projected.conj().T) / 2
        ritz, coeffs = np.linalg.eigh(projected)
        values = ritz[:k]
        basis = q @ coeffs[:, :k]
        logger.debug("deflation round %d: lowest %s", round_, values[:4])
    else:
        logger.warning("deflation did not settle after %d rounds", MAX_DEFLATION_ROUNDS)

    residuals = _residuals(h, values, basis)
    # tol below double rounding on a dim-length vector is unreachable
    limit = max(tol, np.finfo(float).eps * np.sqrt(dim)) * scale
    if residuals.max(initial=0.0) > limit:
        raise ConvergenceError(
            "eigenpair residuals exceed the tolerance",
            {"max_residual": float(residuals.max()), "tol": tol, "limit": float(limit)},
        )
    return Eigenpairs(values, basis, residuals, "lanczos")


def eigenpairs(
    h: HamiltonianTerms,
    k: int,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> Eigenpairs:
    """The k lowest eigenpairs, by the cheapest exact route available."""
    dim = _check_dimension(h)
    if not 1 <= k <= dim:
        raise ConfigError(f"cannot compute {k} eigenvalues of a {dim}-dimensional space")
    if h.is_diagonal:
        return _diagonal(h, k)
    if h.n <= DENSE_MAX_QUBITS:
        return _dense(h, k)
    if k >= dim - 1:
        raise ConfigError(
            f"{k} eigenvalues of a {h.n}-qubit model need a dense solve, "
            f"which is limited to {DENSE_MAX_QUBITS} qubits",
            {"requested": k, "dimension": dim},
        )
    logger.info("Lanczos on %d qubits for %d eigenvalues", h.n, k)
    return _iterative(h, k, tol, seed, cluster_tol)


def cluster(eigs, cluster_tol: float = DEFAULT_CLUSTER_TOL, scale: Optional[float] = None):
    """Group sorted eigenvalues whose neighbours differ by at most cluster_tol * scale.

    Returns a list of (mean value, multiplicity).
    """
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size == 0:
        return []
    if scale is None:
        scale = max(float(np.abs(eigs).max()), 1.0)
    width = cluster_tol * scale
    groups = [[eigs[0]]]
    for value in eigs[1:]:
        if value - groups[-1][-1] <= width:
            groups[-1].append(value)
        else:
            groups.append([value])
    return [(float(np.mean(g)), len(g)) for g in groups]


def spectrum_report(
    h: HamiltonianTerms,
    pairs: Eigenpairs,
    m: int,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> SpectrumReport:
    scale = max(h.norm_bound, 1.0)
    computed = len(pairs.values)
    exhaustive = computed == 1 << h.n
    records = []
    start = 0
    for value, count in cluster(pairs.values, cluster_tol, scale):
        if start >= m:
            break
        end = start + count
        records.append(
            ClusterRecord(
                value=value,
                multiplicity=min(end, m) - start,
                total_multiplicity=count,
                complete=exhaustive or end < computed,
            )
        )
        start = end
    return SpectrumReport(
        n_qubits=h.n,
        requested=m,
        method=pairs.method,
        eigenvalues=[float(v) for v in pairs.values[:m]],
        clusters=records,
        gap=records[1].value - records[0].value if len(records) > 1 else None,
        residuals=[float(r) for r in pairs.residuals[:m]],
        scale=scale,
    )


def lowest_eigs(
    h: HamiltonianTerms,
    m: int,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    extra: int = DEFAULT_EXTRA_EIGS,
) -> SpectrumReport:
    """
    Lowest m eigenvalues, clustered.

    ``extra`` further eigenvalues are computed so the last reported cluster
    can be marked complete or not.
    """
    dim = _check_dimension(h)
    k = min(dim, m + extra)
    return spectrum_report(h, eigenpairs(h, k, tol, seed, cluster_tol), m, cluster_tol)


def expectations(ops: dict[str, PauliOperator], pairs: Eigenpairs, states: int) -> list[ExpectationRecord]:
    records = []
    for index in range(min(states, pairs.vectors.shape[1])):
        v = state(pairs, index)
        for name, op in ops.items():
            value = expectation(op, v)
            records.append(
                ExpectationRecord(operator=name, state=index, real=value.real, imag=value.imag)
            )
    return records


# ---------------------------------------------------------------------------
# Stabilizer Hamiltonians
# ---------------------------------------------------------------------------


def stabilizer_spectrum(h: HamiltonianTerms, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> StabilizerSpectrumResponse:
    """
    Exact spectrum of a commuting Pauli Hamiltonian.

    Every term is written as a signed product of independent generators; each
    sign assignment of the generators is one joint eigenspace of dimension
    2^(n - rank).
    """
    group = code_service.from_terms(h)
    independent: list[PauliOperator] = []
    for op in group.generators:
        if code_service.decompose_ops(independent, op) is None:
            independent.append(op)
    rank = len(independent)
    if rank > STABILIZER_SPECTRUM_MAX_RANK:
        raise StructureError(f"rank {rank} is too large to enumerate", {"rank": rank})

    patterns = np.arange(1 << rank, dtype=np.int64)
    energies = np.zeros(patterns.shape)
    for coef, op in h.terms:
        members, sign = code_service.decompose_ops(independent, op)
        mask = sum(1 << j for j in members)
        parity = np.bitwise_count(patterns & mask) & 1
        energies += coef * sign * (1.0 - 2.0 * parity)
    energies.sort()
    levels = cluster(energies, cluster_tol, max(h.norm_bound, 1.0))
    per_pattern = 1 << (h.n - rank)
    return StabilizerSpectrumResponse(
        n_qubits=h.n,
        rank=rank,
        levels=[LevelRecord(value=v, multiplicity=count * per_pattern) for v, count in levels],
    )


def expand_levels(levels, m: int) -> list[float]:
    """First m eigenvalues of a level list, with repetition."""
    values = []
    for level in levels:
        values.extend([level.value] * min(level.multiplicity, m - len(values)))
        if len(values) >= m:
            break
    return values


# ---------------------------------------------------------------------------
# Strong-coupling comparison
# ---------------------------------------------------------------------------


def _pattern(values: np.ndarray, spread: float) -> list[int]:
    if spread <= 0:
        return [len(values)]
    return [count for _, count in cluster(values, 1e-3, spread)]


def _compare_once(
    lat: RubyLattice, c: Couplings, tol: float, seed: int, reading: str
) -> CompareReport:
    triangles = len(lat.triangles)
    m = 1 << triangles
    # Ferromagnetic triangles give the 2^T low sector the effective model describes.
    h = build_two_body(lat, c.negated())
    pairs = eigenpairs(h, m + DEFAULT_EXTRA_EIGS, tol, seed)
    low = np.sort(pairs.values[:m])
    first_excited = float(pairs.values[m])

    eff = build_effective(contract_triangles(lat), c, reading)
    eff_values = np.sort(eigenpairs(eff, 1 << eff.n).values)

    a = low - low.mean()
    b = eff_values - eff_values.mean()
    denom = float(b @ b)
    s = float(a @ b) / denom if denom > 0 else 0.0
    deviation = float(np.abs(a - s * b).max())
    eff_spread = abs(s) * float(b.max() - b.min())
    if eff_spread > 0:
        relative = deviation / eff_spread
    else:
        relative = 0.0 if deviation == 0 else float("inf")

    low_spread = float(low.max() - low.min())
    gap = first_excited - float(low.max())
    low_pattern = _pattern(low, low_spread)
    eff_pattern = _pattern(eff_values, float(eff_values.max() - eff_values.min()))
    gap_ok = gap >= COMPARE_GAP_FACTOR * low_spread
    pattern_ok = relative <= COMPARE_PATTERN_TOLERANCE
    return CompareReport(
        jx=c.jx,
        jy=c.jy,
        jz=c.jz,
        sign_convention="H = -sum J sigma sigma (ferromagnetic triangles)",
        reading=reading,
        n_triangles=triangles,
        low_sector=[float(v) for v in low],
        effective_spectrum=[float(v) for v in eff_values],
        first_excited=first_excited,
        gap=gap,
        low_spread=low_spread,
        gap_ok=gap_ok,
        scale_factor=s,
        relative_deviation=relative,
        pattern_ok=pattern_ok,
        low_pattern=low_pattern,
        effective_pattern=eff_pattern,
        patterns_match=low_pattern == eff_pattern,
        passed=gap_ok and pattern_ok,
    )


def compare_effective(
    lat: RubyLattice,
    c: Couplings,
    tol: float = COMPARE_TOL,
    seed: int = DEFAULT_SEED,
    reading: str = "symmetric",
    fallback_t: Optional[float] = COMPARE_FALLBACK_T,
) -> CompareReport:
    """
    Compare the two-body low-energy sector with the effective color code.

    When the pattern check fails at the given couplings it is repeated once
    at jx = jy = ``fallback_t`` before the comparison is declared failed.
    """
    if len(lat.triangles) > COMPARE_MAX_TRIANGLES:
        raise ConfigError(
            f"comparison needs at most {COMPARE_MAX_TRIANGLES} triangles, got {len(lat.triangles)}"
        )
    report = _compare_once(lat, c, tol, seed, reading)
    if report.pattern_ok or fallback_t is None or fallback_t == c.jx == c.jy:
        return report
    logger.warning(
        "pattern deviation %.3g exceeds tolerance; retrying at t = %g",
        report.relative_deviation,
        fallback_t,
    )
    retry = _compare_once(lat, Couplings(fallback_t, fallback_t, c.jz), tol, seed, reading)
    return report.model_copy(update={"fallback": retry, "passed": report.gap_ok and retry.passed})
