"""Experiment runners behind the ``qchernoff`` subcommands.

Each ``run_*`` function takes an :class:`ExperimentConfig` and returns
either a report dict (serialized by :func:`qchernoff.io.dumps`) or CSV text.
Outputs depend only on the config, so repeated runs are byte-identical.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import classical, io, nsmap, quantum
from .exceptions import InvariantViolation, SizeCapError, ValidationError
from .linalg import eig_hermitian
from .states import StatePair, commutes, default_qubit_pair, random_density

log = logging.getLogger(__name__)

CSV_HEADER = "n,err_exact,exponent,floor,upper,qcb_bound"
ROW_SLACK = 1e-12


@dataclass
class ExperimentConfig:
    """Inputs shared by all subcommands.

    ``gens`` holds ``(d, rank, seed)`` generator specs; a single spec
    produces both states (seeds ``seed`` and ``seed + 1``). Explicit files
    take precedence over generators; with neither, the default qubit pair
    is used.
    """

    state0: Optional[str] = None
    state1: Optional[str] = None
    gens: list[tuple[int, int, int]] = field(default_factory=list)
    n: Optional[int] = None
    grid: int = 101
    eps_rank: Optional[float] = None
    out: Optional[str] = None
    priors: Optional[tuple[float, float]] = None


def parse_gen(text: str) -> tuple[int, int, int]:
    try:
        d, rank, seed = (int(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(f"--gen expects d,rank,seed, got {text!r}") from None
    return d, rank, seed


def resolve_pair(cfg: ExperimentConfig) -> StatePair:
    rho0 = io.load_state(cfg.state0) if cfg.state0 else None
    rho1 = io.load_state(cfg.state1) if cfg.state1 else None
    gens = list(cfg.gens)
    if len(gens) == 1:
        d, rank, seed = gens[0]
        gens = [(d, rank, seed), (d, rank, seed + 1)]
    if rho0 is None and gens:
        rho0 = random_density(*gens[0])
    if rho1 is None and len(gens) > 1:
        rho1 = random_density(*gens[1])
    if rho0 is None and rho1 is None:
        pair = default_qubit_pair()
        return StatePair(pair.rho0.matrix, pair.rho1.matrix, cfg.eps_rank)
    if rho0 is None or rho1 is None:
        raise ValidationError("both states are needed: give --state0/--state1 or --gen")
    return StatePair(rho0.matrix, rho1.matrix, cfg.eps_rank)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    err_exact: float
    exponent: float
    floor: float
    upper: float
    qcb_bound: float

    def check(self) -> None:
        if not self.floor <= self.exponent + ROW_SLACK:
            raise InvariantViolation(
                f"n={self.n}: floor {self.floor!r} exceeds exponent {self.exponent!r}"
            )
        if not self.exponent <= self.upper + ROW_SLACK:
            raise InvariantViolation(
                f"n={self.n}: exponent {self.exponent!r} exceeds upper {self.upper!r}"
            )

    def to_csv(self) -> str:
        values = (self.err_exact, self.exponent, self.floor, self.upper, self.qcb_bound)
        return ",".join([str(self.n), *(io.fmt_float(v) for v in values)])


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def convergence_row(pair: StatePair, n: int, bound: float) -> ConvergenceRow:
    err = quantum.min_error_exact(pair, n)
    row = ConvergenceRow(
        n=n,
        err_exact=err,
        exponent=_log(err) / n,
        floor=nsmap.log_error_floor(pair, n) / n,
        upper=quantum.log_repeated_measurement_upper(pair, n) / n,
        qcb_bound=bound,
    )
    row.check()
    return row


def converge_rows(pair: StatePair, n_max: int) -> tuple[list[ConvergenceRow], list[str]]:
    """Rows for every feasible ``n <= n_max`` plus notes for the skipped ones."""
    bound = quantum.qcb(pair).bound
    rows, notes = [], []
    for n in range(1, n_max + 1):
        try:
            rows.append(convergence_row(pair, n, bound))
        except SizeCapError as exc:
            log.warning("n=%d skipped: %s", n, exc)
            notes.append(f"# n={n} skipped: {exc}")
    return rows, notes


def run_converge(cfg: ExperimentConfig) -> str:
    pair = resolve_pair(cfg)
    n_max = cfg.n or 10
    rows, notes = converge_rows(pair, n_max)
    lines = [CSV_HEADER, *(r.to_csv() for r in rows), *notes]
    bound = quantum.qcb(pair).bound
    if rows:
        gap = rows[-1].exponent - bound
        lines.append(
            f"# summary n={rows[-1].n} qcb_bound={io.fmt_float(bound)} gap={io.fmt_float(gap)}"
        )
    return "\n".join(lines) + "\n"


def run_qcb(cfg: ExperimentConfig) -> dict:
    pair = resolve_pair(cfg)
    res = quantum.qcb(pair)
    grid = np.linspace(0.0, 1.0, cfg.grid + 2)[1:-1]
    return {
        "dim": pair.dim,
        "bound": res.bound,
        "minimizer": res.minimizer,
        "s_star": res.s_star,
        "case": res.classical.case,
        "a_hat_min": res.a_hat_min,
        "a_hat_limit0": res.limit0,
        "a_hat_limit1": res.limit1,
        "commuting": commutes(pair),
        "identity_residual": nsmap.ns_chernoff_identity_check(pair, grid),
    }


def run_error(cfg: ExperimentConfig) -> dict:
    pair = resolve_pair(cfg)
    n = cfg.n or 1
    proj = quantum.helstrom_test(pair, n)
    err = quantum.min_error_exact(pair, n)
    at_test = quantum.bayes_error_quantum(pair, n, proj)
    return {
        "dim": pair.dim,
        "n": n,
        "min_error_exact": err,
        "helstrom_rank": int(round(float(np.real(np.trace(proj))))),
        "helstrom_error": at_test,
        "helstrom_residual": abs(at_test - err),
        "error_floor": nsmap.error_floor(pair, n),
        "repeated_measurement_upper": quantum.repeated_measurement_upper(pair, n),
    }


def run_nsmap(cfg: ExperimentConfig) -> dict:
    pair = resolve_pair(cfg)
    ns = nsmap.ns_distributions(pair)
    grid = np.linspace(0.0, 1.0, cfg.grid + 2)[1:-1]
    return {
        "dim": pair.dim,
        "P": list(ns.P),
        "Q": list(ns.Q),
        "error_floor": nsmap.error_floor(pair),
        "identity_residual": nsmap.ns_chernoff_identity_check(pair, grid),
    }


def run_classical(cfg: ExperimentConfig) -> dict:
    if not (cfg.state0 and cfg.state1):
        raise ValidationError("classical needs two distribution files (--state0, --state1)")
    p0 = io.load_distribution(cfg.state0)
    p1 = io.load_distribution(cfg.state1)
    if p0.size != p1.size:
        raise ValidationError(f"distribution sizes differ: {p0.size} vs {p1.size}")
    res = classical.chernoff(p0, p1)
    empty = res.case == "disjoint"
    n_max = cfg.n or 10
    exponents = []
    for n in range(1, n_max + 1):
        try:
            exponents.append(classical.log_product_min_error(p0, p1, n, cfg.priors) / n)
        except SizeCapError as exc:
            log.warning("n=%d skipped: %s", n, exc)
            break
    report = {
        "min_error": classical.min_error(p0, p1, cfg.priors),
        "chernoff": res.value,
        "case": res.case,
        "minimizer": res.minimizer,
        "sigma": res.sigma,
        "kl_form": -math.inf if empty else classical.chernoff_kl_form(p0, p1),
        "exponents": exponents,
    }
    if res.case == "a":
        sc = classical.sigma_characterization(p0, p1)
        report["sigma_residuals"] = [sc.residual0, sc.residual1]
    return report


def commuting_distributions(pair: StatePair) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalue distributions of a commuting pair in a common eigenbasis."""
    if not commutes(pair):
        raise ValidationError("states do not commute")
    # a generic combination separates every joint eigenspace
    V = eig_hermitian(pair.rho0.matrix + math.sqrt(2.0) * pair.rho1.matrix).eigenvectors
    p = np.clip(np.real(np.diagonal(V.conj().T @ pair.rho0.matrix @ V)), 0.0, None)
    q = np.clip(np.real(np.diagonal(V.conj().T @ pair.rho1.matrix @ V)), 0.0, None)
    return p / p.sum(), q / q.sum()


def commuting_check(pair: StatePair, n_max: int) -> float:
    """Largest gap between quantum and classical minimal errors for a commuting pair."""
    p, q = commuting_distributions(pair)
    gaps = [
        abs(quantum.min_error_exact(pair, n) - classical.product_min_error(p, q, n))
        for n in range(1, n_max + 1)
    ]
    return max(gaps)


__all__ = [
    "CSV_HEADER",
    "ConvergenceRow",
    "ExperimentConfig",
    "commuting_check",
    "commuting_distributions",
    "converge_rows",
    "convergence_row",
    "parse_gen",
    "resolve_pair",
    "run_classical",
    "run_converge",
    "run_error",
    "run_nsmap",
    "run_qcb",
]
