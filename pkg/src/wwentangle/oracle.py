"""Brute-force finite-N realization of the one-photon field state.

The continuum results in :mod:`wwentangle.model` are validated here from
first principles: a large but finite set of modes on a uniform detuning
grid, complex Lorentzian amplitudes, exact partial traces of the resulting
pure state, and a dense Hermitian eigensolver for the reduced state.  All
probability reductions use compensated summation (``math.fsum``) because the
mode weights span many orders of magnitude across a wide grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PartitionSpec, SpectralWeights

__all__ = [
    "DiscreteModeGrid",
    "PartitionLabels",
    "JointStateCoefficients",
    "build_mode_grid",
    "assign_partition",
    "reduced_weights",
    "reduced_density_matrix",
    "eigenvalues_hermitian",
    "joint_state_at",
    "atom_reduced_populations",
]

#: Largest reduced density matrix handed to the dense eigensolver.
DENSE_DIM_GUARD = 4096

_NORM_TOL = 1e-12
_PROFILE_TOL = 1e-9


def _weights(amplitudes: np.ndarray) -> np.ndarray:
    return amplitudes.real ** 2 + amplitudes.imag ** 2


def _fsum(values: np.ndarray) -> float:
    return math.fsum(values.tolist())


@dataclass(frozen=True)
class DiscreteModeGrid:
    """N field modes with detunings x_i = (nu_i - omega)/Gamma and amplitudes p_i.

    The amplitudes follow the Lorentzian profile p_i ∝ 1/(x_i + i/2) with a
    single normalization constant (the flat coupling magnitude is absorbed
    by it), so the squared amplitudes sum to one.
    """

    detunings: np.ndarray
    amplitudes: np.ndarray
    span: float  # half-width of the detuning window, in units of Gamma
    tail_mass: float  # analytic Lorentzian weight outside [-span, span]

    def __post_init__(self) -> None:
        x = np.asarray(self.detunings, dtype=float)
        p = np.asarray(self.amplitudes, dtype=complex)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("detunings must be a nonempty 1-d array")
        if p.shape != x.shape:
            raise ValueError("amplitudes must match detunings in shape")
        if not np.all(np.isfinite(x)):
            raise ValueError("detunings must be finite")
        if np.any(np.diff(x) <= 0.0):
            raise ValueError("detunings must be strictly increasing")
        if not (math.isfinite(self.span) and self.span > 0.0):
            raise ValueError(f"span must be positive, got {self.span!r}")
        total = _fsum(_weights(p))
        if abs(total - 1.0) > _NORM_TOL:
            raise ValueError(f"squared amplitudes must sum to 1 within {_NORM_TOL:g}, "
                             f"got {total!r}")
        coupling = p * (x + 0.5j)
        ref = coupling[int(np.argmax(np.abs(coupling)))]
        if np.max(np.abs(coupling - ref)) > _PROFILE_TOL * abs(ref):
            raise ValueError("amplitudes do not follow the Lorentzian profile "
                             "1/(x + i/2) with a constant coupling")
        x.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "detunings", x)
        object.__setattr__(self, "amplitudes", p)
        object.__setattr__(self, "span", float(self.span))
        object.__setattr__(self, "tail_mass", float(self.tail_mass))

    @property
    def mode_count(self) -> int:
        return int(self.detunings.size)


@dataclass(frozen=True)
class PartitionLabels:
    """Boolean membership of each mode in partition A (complement is B)."""

    in_a: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.in_a, dtype=bool)
        if labels.ndim != 1:
            raise ValueError("in_a must be a 1-d boolean array")
        labels.setflags(write=False)
        object.__setattr__(self, "in_a", labels)

    @property
    def count_a(self) -> int:
        return int(np.count_nonzero(self.in_a))


@dataclass(frozen=True)
class JointStateCoefficients:
    """Amplitudes of the joint atom-field state in the one-excitation sector."""

    excited_amplitude: complex
    mode_amplitudes: np.ndarray

    def __post_init__(self) -> None:
        cb = np.asarray(self.mode_amplitudes, dtype=complex)
        cb.setflags(write=False)
        object.__setattr__(self, "mode_amplitudes", cb)
        object.__setattr__(self, "excited_amplitude", complex(self.excited_amplitude))


def build_mode_grid(mode_count: int, span: float,
                    center: float = 0.0) -> DiscreteModeGrid:
    """Uniform midpoint grid of detunings over [center - span, center + span].

    Parameters
    ----------
    mode_count : number of modes N (>= 1).
    span : half-width of the detuning window in units of Gamma.
    center : offset of the window, in units of Gamma (default 0).

    The grid uses cell midpoints, x_i = center - span + (i + 1/2) * 2*span/N,
    so its Riemann sums converge to the continuum band integrals.  The
    recorded ``tail_mass`` 1 - (2/pi) arctan(2*span) is the analytic photon
    weight left outside the window for error budgeting.
    """
    n = int(mode_count)
    if n != mode_count or n < 1:
        raise ValueError(f"mode_count must be a positive integer, got {mode_count!r}")
    if not (math.isfinite(span) and span > 0.0):
        raise ValueError(f"span must be positive, got {span!r}")
    if not math.isfinite(center):
        raise ValueError(f"center must be finite, got {center!r}")
    step = 2.0 * span / n
    x = center - span + (np.arange(n) + 0.5) * step
    p = 1.0 / (x + 0.5j)
    p = p / math.sqrt(_fsum(_weights(p)))
    tail = 1.0 - (2.0 / math.pi) * math.atan(2.0 * span)
    return DiscreteModeGrid(x, p, float(span), tail)


def assign_partition(grid: DiscreteModeGrid, spec: PartitionSpec) -> PartitionLabels:
    """Label modes inside the open window |x - delta| < eps as partition A.

    The window boundary uses strict inequality, so modes sitting exactly on
    an edge stay in partition B.
    """
    return PartitionLabels(
        np.abs(grid.detunings - spec.delta_tilde) < spec.eps_tilde)


def reduced_weights(grid: DiscreteModeGrid,
                    labels: PartitionLabels) -> SpectralWeights:
    """The two nonzero eigenvalues of the reduced state: in-band and out-of-band mass."""
    if labels.in_a.size != grid.mode_count:
        raise ValueError(f"labels length {labels.in_a.size} does not match "
                         f"grid with {grid.mode_count} modes")
    w = _weights(grid.amplitudes)
    lam_a = _fsum(w[labels.in_a])
    lam_b = _fsum(w[~labels.in_a])
    return SpectralWeights(lam_a, lam_b)


def reduced_density_matrix(grid: DiscreteModeGrid,
                           labels: PartitionLabels) -> np.ndarray:
    """Reduced state of partition A in the basis {vacuum, one photon in mode m}.

    Tracing out partition B leaves a vacuum block carrying the out-of-band
    weight and a rank-one photon block p_m p_n* over the in-band modes, so
    the matrix has dimension (number of A modes) + 1 and rank at most two.
    """
    if labels.in_a.size != grid.mode_count:
        raise ValueError(f"labels length {labels.in_a.size} does not match "
                         f"grid with {grid.mode_count} modes")
    n_a = labels.count_a
    if n_a + 1 > DENSE_DIM_GUARD + 1:
        raise ValueError(f"partition A has {n_a} modes, exceeding the dense "
                         f"eigensolver guard of {DENSE_DIM_GUARD}")
    w = _weights(grid.amplitudes)
    lam_b = _fsum(w[~labels.in_a])
    in_band = grid.amplitudes[labels.in_a]
    rho = np.zeros((n_a + 1, n_a + 1), dtype=complex)
    rho[0, 0] = lam_b
    rho[1:, 1:] = np.outer(in_band, in_band.conj())
    return rho


def eigenvalues_hermitian(matrix: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > 1e-12:
        raise ValueError("matrix is not Hermitian within 1e-12")
    return np.linalg.eigvalsh(m)[::-1].copy()


def joint_state_at(grid: DiscreteModeGrid, gamma_t: float) -> JointStateCoefficients:
    """Joint atom-field amplitudes at scaled time gamma_t.

    The excited amplitude is exp(-gamma_t/2); each mode amplitude is the
    stationary Lorentzian value times the transient factor
    1 - exp(-i x gamma_t - gamma_t/2), which dies out for gamma_t >> 1,
    leaving the post-decay field state.
    """
    tau = float(gamma_t)
    if math.isnan(tau) or tau < 0.0:
        raise ValueError(f"gamma_t must be >= 0, got {gamma_t!r}")
    if not math.isfinite(tau):
        raise ValueError(f"gamma_t must be finite, got {gamma_t!r}")
    excited = math.exp(-tau / 2.0)
    transient = 1.0 - excited * np.exp(-1j * grid.detunings * tau)
    return JointStateCoefficients(excited, grid.amplitudes * transient)


def atom_reduced_populations(coeffs: JointStateCoefficients) -> tuple[float, float]:
    """Excited and ground populations from the joint state amplitudes."""
    excited = abs(coeffs.excited_amplitude) ** 2
    ground = _fsum(_weights(coeffs.mode_amplitudes))
    return excited, ground
