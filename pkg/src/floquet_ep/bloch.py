"""Post-selected single-qubit trajectories on the Bloch sphere.

The state is evolved with the closed-form segment maps and renormalized
after every substep, which is how post-selection acts in experiments: the
qubit never leaves the sphere surface.  Unitary substeps precess the state
about the x-axis; thermal substeps pull it along meridians toward the north
pole (the amplified level).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .floquet import FloquetParams, PhaseKind, classify_phase, floquet_operator
from .linalg import eig

__all__ = [
    "SegmentKind",
    "BlochState",
    "Trajectory",
    "equal_superposition_xyz",
    "evolve_state",
    "stroboscopic_slice",
    "steady_state_bloch",
]


class SegmentKind(Enum):
    UNITARY = "unitary"
    THERMAL = "thermal"


@dataclass(frozen=True)
class BlochState:
    """Point on the Bloch sphere: polar angle theta in [0, pi], azimuth phi
    in [-pi, pi)."""

    theta: float
    phi: float

    @property
    def cartesian(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    @classmethod
    def from_statevector(cls, psi) -> "BlochState":
        v = np.asarray(psi, dtype=complex)
        if v.shape != (2,):
            raise ValueError("statevector must have two components")
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("zero statevector has no Bloch representation")
        v = v / n
        cross = np.conj(v[0]) * v[1]
        x = 2 * cross.real
        y = 2 * cross.imag
        z = abs(v[0]) ** 2 - abs(v[1]) ** 2
        return cls.from_cartesian((x, y, z))

    @classmethod
    def from_cartesian(cls, vec) -> "BlochState":
        x, y, z = (float(c) for c in vec)
        theta = math.acos(min(1.0, max(-1.0, z)))
        phi = math.atan2(y, x)
        if phi >= math.pi:  # keep phi in [-pi, pi)
            phi -= 2 * math.pi
        return cls(theta=theta, phi=phi)


@dataclass
class Trajectory:
    """Sampled trajectory: times in units of the drive period, one Bloch
    state and segment tag per sample, strictly increasing times."""

    times: np.ndarray
    states: list[BlochState]
    segment_tags: list[SegmentKind]
    samples_per_period: int
    n_periods: int


def equal_superposition_xyz() -> np.ndarray:
    """Normalized sum of the +x, -y and +z Pauli eigenstates.

    The spinor sum is not unit-norm, so the normalization is done
    numerically; this is the reference initial state of the trajectory
    presets.
    """
    plus_x = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2)
    minus_y = np.array([1.0, -1.0j], dtype=complex) / math.sqrt(2)
    plus_z = np.array([1.0, 0.0], dtype=complex)
    psi = plus_x + minus_y + plus_z
    return psi / np.linalg.norm(psi)


def _unitary_step(params: FloquetParams, dt: float) -> np.ndarray:
    a = params.j_av * dt
    return np.array(
        [[math.cos(a), -1j * math.sin(a)], [-1j * math.sin(a), math.cos(a)]], dtype=complex
    )


def _thermal_step(params: FloquetParams, dt: float) -> np.ndarray:
    g = params.gamma_av * dt
    return np.array([[math.exp(g), 0.0], [0.0, math.exp(-g)]], dtype=complex)


def evolve_state(
    psi0,
    params: FloquetParams,
    n_periods: int,
    substeps_per_segment: int = 64,
) -> Trajectory:
    """Evolve a pure state through ``n_periods`` drive periods.

    Within each segment the closed-form partial map for the substep interval
    is applied and the state renormalized after every substep
    (post-selection).  Substeps only refine the sampling: the segment maps
    are exact, so doubling ``substeps_per_segment`` leaves the sampled
    states unchanged to rounding.

    Raises ValueError for a non-normalized initial state.
    """
    psi = np.asarray(psi0, dtype=complex).copy()
    if psi.shape != (2,):
        raise ValueError("initial state must be a two-component vector")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValueError("initial state must be normalized")
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")
    if substeps_per_segment < 1:
        raise ValueError("substeps_per_segment must be >= 1")

    sub = substeps_per_segment
    u_step = _unitary_step(params, params.tau / sub)
    t_step = _thermal_step(params, params.beta / sub)

    times = [0.0]
    states = [BlochState.from_statevector(psi)]
    tags = [SegmentKind.UNITARY]
    samples_per_period = 0

    for n in range(n_periods):
        if params.tau > 0:
            for i in range(sub):
                psi = u_step @ psi
                psi /= np.linalg.norm(psi)
                times.append(n + params.p * (i + 1) / sub)
                states.append(BlochState.from_statevector(psi))
                tags.append(SegmentKind.UNITARY)
        if params.beta > 0:
            for i in range(sub):
                psi = t_step @ psi
                psi /= np.linalg.norm(psi)
                times.append(n + params.p + (1 - params.p) * (i + 1) / sub)
                states.append(BlochState.from_statevector(psi))
                tags.append(SegmentKind.THERMAL)
        if n == 0:
            samples_per_period = len(times) - 1

    return Trajectory(
        times=np.asarray(times),
        states=states,
        segment_tags=tags,
        samples_per_period=samples_per_period,
        n_periods=n_periods,
    )


def stroboscopic_slice(traj: Trajectory) -> list[BlochState]:
    """States at the period boundaries t = T, 2T, ..., nT (initial state
    excluded)."""
    step = traj.samples_per_period
    return [traj.states[m * step] for m in range(1, traj.n_periods + 1)]


def steady_state_bloch(params: FloquetParams) -> BlochState | None:
    """Stroboscopic attractor in the PT-broken phase.

    The renormalized stroboscopic map converges to the dominant eigenvector
    of the one-period map whenever the eigenvalue magnitudes differ; that
    Bloch vector is returned.  In the PT-symmetric phase and exactly on a
    contour there is no attractor and None is returned.
    """
    if classify_phase(params).kind is not PhaseKind.PT_BROKEN:
        return None
    gf, _ = floquet_operator(params)
    pairs = eig(gf)
    lam, vec = max(pairs, key=lambda pair: abs(pair[0]))
    return BlochState.from_statevector(vec)
