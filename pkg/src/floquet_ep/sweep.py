"""Parallel parameter-grid evaluation for the single-qubit phase diagram.

Grids are specified in the dimensionless phase-diagram coordinates
``(1-p)*gamma_av/(p*j_av)`` (gain axis) and ``omega/(p*j_av)`` (frequency
axis).  Cells are pure-function evaluations, so work is partitioned by grid
rows, every worker count produces bit-identical results, and the worker pool
shares nothing mutable.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .floquet import (
    FloquetParams,
    PhaseKind,
    classify_phase,
    discriminant,
    eigenvector_overlap,
    ep_contour_gamma,
)

__all__ = [
    "AxisSpec",
    "GridSpec",
    "Quantity",
    "HeatMap",
    "ContourBranch",
    "ContourSet",
    "ResonanceInfo",
    "resolve_worker_count",
    "compute_heatmap",
    "trace_contours",
    "resonance_frequencies",
]

WORKER_ENV_VAR = "FLOQUET_EP_THREADS"


@dataclass(frozen=True)
class AxisSpec:
    """One grid axis; ``scale`` is "linear" or "log" (log needs lo > 0)."""

    lo: float
    hi: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("axis count must be >= 2")
        if not self.lo < self.hi:
            raise ValueError("axis needs lo < hi")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown axis scale {self.scale!r}")
        if self.scale == "log" and self.lo <= 0:
            raise ValueError("log axis needs lo > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class GridSpec:
    """Dimensionless gain x frequency grid at fixed (p, j_av)."""

    gamma_axis: AxisSpec
    omega_axis: AxisSpec
    p: float = 0.5
    j_av: float = 1.0

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if self.j_av <= 0:
            raise ValueError("j_av must be positive")

    def params_at(self, gamma_ratio: float, omega_ratio: float) -> FloquetParams:
        return FloquetParams.from_dimensionless(gamma_ratio, omega_ratio, self.p, self.j_av)


class Quantity(Enum):
    INNER_PRODUCT = "inner-product"
    DISCRIMINANT = "discriminant"
    PHASE = "phase"


#: numeric encoding of phase labels in heat maps
PHASE_CODE = {
    PhaseKind.PT_SYMMETRIC: -1.0,
    PhaseKind.EXCEPTIONAL_POINT: 0.0,
    PhaseKind.PT_BROKEN: 1.0,
}


@dataclass
class HeatMap:
    """Row-major values: ``values[i, j]`` belongs to gamma row i, omega
    column j."""

    grid: GridSpec
    quantity: Quantity
    values: np.ndarray = field(repr=False)

    def gamma_values(self) -> np.ndarray:
        return self.grid.gamma_axis.values()

    def omega_values(self) -> np.ndarray:
        return self.grid.omega_axis.values()


def _cell(grid: GridSpec, quantity: Quantity, gamma_ratio: float, omega_ratio: float) -> float:
    params = grid.params_at(gamma_ratio, omega_ratio)
    if quantity is Quantity.INNER_PRODUCT:
        return eigenvector_overlap(params)
    if quantity is Quantity.DISCRIMINANT:
        return discriminant(params)
    return PHASE_CODE[classify_phase(params).kind]


def _row(args) -> tuple[int, list[float]]:
    i, grid, quantity, gamma_ratio, omega_ratios = args
    return i, [_cell(grid, quantity, gamma_ratio, w) for w in omega_ratios]


def resolve_worker_count(requested: int | None = None) -> int:
    """Effective worker count: the request (default 1), capped by the
    ``FLOQUET_EP_THREADS`` environment variable (0 there means all cores)."""
    n = 1 if requested is None else int(requested)
    if n < 1:
        raise ValueError("worker count must be >= 1")
    cap_env = os.environ.get(WORKER_ENV_VAR)
    if cap_env is not None:
        cap = int(cap_env)
        if cap == 0:
            cap = os.cpu_count() or 1
        n = min(n, max(1, cap))
    return n


def compute_heatmap(grid: GridSpec, quantity: Quantity, workers: int | None = None) -> HeatMap:
    """Evaluate one quantity over the grid.

    Deterministic: the per-cell code path is identical for every worker
    count, and rows are written to their own output slots, so the result is
    bit-identical whether computed serially or in a pool.
    """
    gammas = grid.gamma_axis.values()
    omegas = list(grid.omega_axis.values())
    jobs = [(i, grid, quantity, float(g), omegas) for i, g in enumerate(gammas)]
    values = np.empty((len(gammas), len(omegas)), dtype=float)
    n_workers = resolve_worker_count(workers)
    if n_workers == 1:
        rows = map(_row, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=n_workers)
        try:
            rows = list(pool.map(_row, jobs, chunksize=max(1, len(jobs) // (4 * n_workers))))
        finally:
            pool.shutdown()
    for i, row in rows:
        values[i, :] = row
    return HeatMap(grid=grid, quantity=quantity, values=values)


@dataclass
class ContourBranch:
    """Points of one exceptional-contour arm.

    ``branch`` is the sign (+1/-1) solved for in the contour condition;
    ``resonance_index`` k labels the inter-resonance frequency interval
    the points fall in; points are (gamma_av, omega) in raw units.
    """

    branch: int
    resonance_index: int
    points: list[tuple[float, float]] = field(default_factory=list)


@dataclass
class ContourSet:
    branches: list[ContourBranch] = field(default_factory=list)


def trace_contours(p: float, j_av: float, omega_range: tuple[float, float], n_samples: int) -> ContourSet:
    """Sample the exceptional contours over a frequency window.

    The contour condition is exactly invertible per frequency, so the arms
    are sampled directly rather than path-followed.  Points are grouped by
    (branch sign, inter-resonance interval index).
    """
    lo, hi = omega_range
    if not (lo > 0 and hi > lo):
        raise ValueError("omega_range must satisfy 0 < lo < hi")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    pj = p * j_av
    groups: dict[tuple[int, int], ContourBranch] = {}
    for omega in np.linspace(lo, hi, n_samples):
        params = FloquetParams.from_omega(p, float(omega), j_av, 0.0)
        k_interval = int(math.floor(2 * pj / omega))
        for branch in (1, -1):
            gamma = ep_contour_gamma(params, branch)
            if gamma is None:
                continue
            key = (branch, k_interval)
            if key not in groups:
                groups[key] = ContourBranch(branch=branch, resonance_index=k_interval)
            groups[key].points.append((gamma, float(omega)))
    ordered = sorted(groups.values(), key=lambda b: (b.resonance_index, -b.branch))
    return ContourSet(branches=ordered)


@dataclass(frozen=True)
class ResonanceInfo:
    """Resonance frequency 2 p j_av / k (None for k = 0) and node frequency
    2 p j_av / (k + 1/2)."""

    k: int
    omega_resonance: float | None
    omega_node: float


def resonance_frequencies(p: float, j_av: float, k_max: int) -> list[ResonanceInfo]:
    """Resonances for k = 1..k_max and nodes for k = 0..k_max.

    At a resonance the unitary segment is trivial (+-identity) and the
    contour terminates at zero gain; at a node the PT-symmetric phase
    survives to arbitrarily large gain.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    pj = p * j_av
    out = [ResonanceInfo(k=0, omega_resonance=None, omega_node=2 * pj / 0.5)]
    for k in range(1, k_max + 1):
        out.append(ResonanceInfo(k=k, omega_resonance=2 * pj / k, omega_node=2 * pj / (k + 0.5)))
    return out
