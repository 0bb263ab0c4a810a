"""Closed-form continuum results for spontaneous emission in free space.

A two-level atom decaying into the vacuum leaves one photon shared by the
continuum of radiation modes, with a Lorentzian amplitude profile of width
Gamma/2 around the transition frequency.  Splitting the modes into a band A
of half-width eps around a central frequency nu_q and its complement B gives
a reduced state with exactly two nonzero eigenvalues: the photon weight
inside the band and the weight outside it.  Everything here is expressed in
the dimensionless variables

    eps_tilde   = eps / Gamma
    delta_tilde = (nu_q - omega) / Gamma
    gamma_t     = Gamma * t

Physical units enter only through :func:`decay_rate_from_dipole`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.constants import c as _LIGHT_SPEED
from scipy.constants import epsilon_0 as _VACUUM_PERMITTIVITY
from scipy.constants import hbar as _REDUCED_PLANCK
from scipy.optimize import brentq

__all__ = [
    "DipoleParams",
    "PartitionSpec",
    "SpectralWeights",
    "DecaySnapshot",
    "decay_rate_from_dipole",
    "partition_weights",
    "binary_entropy",
    "partition_entanglement",
    "critical_epsilon",
    "vacuum_fidelity",
    "atom_population",
    "atom_field_entanglement",
    "field_state_entropy",
    "distillable_bound",
]

#: Tolerance for "two weights sum to one" style invariants.
WEIGHT_SUM_TOL = 1e-14


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class DipoleParams:
    """Physical inputs for the free-space decay rate, in SI units.

    The fundamental constants default to CODATA values; they are fields so
    that a caller can pin a specific constants release.
    """

    dipole_moment: float  # C*m
    angular_frequency: float  # rad/s
    vacuum_permittivity: float = _VACUUM_PERMITTIVITY  # F/m
    reduced_planck: float = _REDUCED_PLANCK  # J*s
    light_speed: float = _LIGHT_SPEED  # m/s

    def __post_init__(self) -> None:
        # A zero dipole moment is admitted as the non-radiating limit; every
        # other field must be strictly positive.
        d = _require_finite("dipole_moment", self.dipole_moment)
        if d < 0.0:
            raise ValueError(f"dipole_moment must be >= 0, got {d!r}")
        object.__setattr__(self, "dipole_moment", d)
        for name in ("angular_frequency", "vacuum_permittivity",
                     "reduced_planck", "light_speed"):
            v = _require_finite(name, getattr(self, name))
            if v <= 0.0:
                raise ValueError(f"{name} must be strictly positive, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class PartitionSpec:
    """Frequency band A: half-width and center detuning in units of Gamma.

    Infinite inputs are rejected rather than mapped onto limiting values;
    the limits are exercised with large finite arguments instead.
    """

    eps_tilde: float
    delta_tilde: float = 0.0

    def __post_init__(self) -> None:
        eps = _require_finite("eps_tilde", self.eps_tilde)
        if eps < 0.0:
            raise ValueError(f"eps_tilde must be >= 0, got {eps!r}")
        object.__setattr__(self, "eps_tilde", eps)
        object.__setattr__(self, "delta_tilde",
                           _require_finite("delta_tilde", self.delta_tilde))


@dataclass(frozen=True)
class SpectralWeights:
    """The two nonzero eigenvalues of a reduced field (or atom) state."""

    lambda_a: float
    lambda_b: float

    def __post_init__(self) -> None:
        la = _require_finite("lambda_a", self.lambda_a)
        lb = _require_finite("lambda_b", self.lambda_b)
        if la < 0.0 or lb < 0.0:
            raise ValueError(f"weights must be nonnegative, got ({la!r}, {lb!r})")
        if abs(la + lb - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(
                f"weights must sum to 1 within {WEIGHT_SUM_TOL:g}, got {la + lb!r}")
        object.__setattr__(self, "lambda_a", la)
        object.__setattr__(self, "lambda_b", lb)


@dataclass(frozen=True)
class DecaySnapshot:
    """Atomic populations and atom-field entanglement at a scaled time."""

    scaled_time: float
    excited_population: float
    ground_population: float
    atom_field_entropy: float  # bits

    def __post_init__(self) -> None:
        t = _require_finite("scaled_time", self.scaled_time)
        if t < 0.0:
            raise ValueError(f"scaled_time must be >= 0, got {t!r}")
        if abs(self.excited_population + self.ground_population - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError("populations must sum to 1")
        if abs(self.excited_population - math.exp(-t)) > WEIGHT_SUM_TOL:
            raise ValueError("excited_population must equal exp(-scaled_time)")


def decay_rate_from_dipole(params: DipoleParams) -> float:
    """Free-space decay rate Gamma = omega^3 d^2 / (3 pi eps0 hbar c^3), in rad/s."""
    w = params.angular_frequency
    return (w ** 3 * params.dipole_moment ** 2) / (
        3.0 * math.pi * params.vacuum_permittivity
        * params.reduced_planck * params.light_speed ** 3)


def partition_weights(spec: PartitionSpec) -> SpectralWeights:
    """Photon weight inside and outside the band A.

    In the flat-coupling continuum limit the in-band weight is

        lambda_a = (1/pi) [arctan(2(eps + delta)) + arctan(2(eps - delta))]

    and the complement carries lambda_b = 1 - lambda_a, exactly conserving
    normalization for every band.
    """
    eps = spec.eps_tilde
    delta = spec.delta_tilde
    lam_a = (math.atan(2.0 * (eps + delta)) + math.atan(2.0 * (eps - delta))) / math.pi
    return SpectralWeights(lam_a, 1.0 - lam_a)


def binary_entropy(weights: SpectralWeights) -> float:
    """Shannon entropy -sum(p log2 p) of a two-point spectrum, in bits.

    Uses the convention 0 * log2(0) = 0, so pure cases return exactly 0.
    """
    total = 0.0
    for p in (weights.lambda_a, weights.lambda_b):
        if p > 0.0:
            total -= p * math.log2(p)
    # clamp the +-1 ulp roundoff at the pure and balanced endpoints
    return min(max(total, 0.0), 1.0)


def partition_entanglement(spec: PartitionSpec) -> float:
    """Entropy of entanglement between band A and the rest of the modes, in bits."""
    return binary_entropy(partition_weights(spec))


def critical_epsilon(delta_tilde: float, xtol: float = 1e-12) -> float:
    """Band half-width at which the in-band weight reaches one half.

    At this width the two partitions share the photon evenly and the
    entanglement entropy attains its maximum of one bit.  The root is
    bracketed on [|delta|, |delta| + 10] (the weight is strictly increasing
    in eps_tilde, so bisection-style search is guaranteed) and the bracket
    is expanded if needed.
    """
    delta = _require_finite("delta_tilde", delta_tilde)

    def gap(eps: float) -> float:
        return partition_weights(PartitionSpec(eps, delta)).lambda_a - 0.5

    lo = abs(delta)
    hi = lo + 10.0
    for _ in range(100):
        if gap(hi) > 0.0:
            break
        hi += 10.0
    else:
        raise RuntimeError("failed to bracket the half-weight root")
    return float(brentq(gap, lo, hi, xtol=xtol))


def vacuum_fidelity(spec: PartitionSpec) -> float:
    """Overlap of the band-A reduced state with the band-A vacuum.

    This is the vacuum-diagonal element of the reduced state, i.e. exactly
    the out-of-band photon weight lambda_b.
    """
    return partition_weights(spec).lambda_b


def _populations(gamma_t: float) -> tuple[float, float]:
    t = _require_finite("gamma_t", gamma_t)
    if t < 0.0:
        raise ValueError(f"gamma_t must be >= 0, got {t!r}")
    excited = math.exp(-t)
    ground = -math.expm1(-t)
    return excited, ground


def atom_population(gamma_t: float) -> DecaySnapshot:
    """Excited/ground populations exp(-gamma_t), 1 - exp(-gamma_t) plus entropy."""
    excited, ground = _populations(gamma_t)
    entropy = binary_entropy(SpectralWeights(excited, ground))
    return DecaySnapshot(float(gamma_t), excited, ground, entropy)


def atom_field_entanglement(gamma_t: float) -> float:
    """Entanglement between the atom and all field modes at scaled time gamma_t.

    The joint state stays pure, so this is the binary entropy of the atomic
    populations: zero initially, one bit at the half-life instant
    gamma_t = ln 2, and decaying back to zero afterwards.
    """
    excited, ground = _populations(gamma_t)
    return binary_entropy(SpectralWeights(excited, ground))


def field_state_entropy(gamma_t: float) -> float:
    """Joint entropy of all field modes during the decay, in bits.

    Because the global atom+field state remains pure, the field entropy
    equals the atomic entropy at all times, so this coincides with
    :func:`atom_field_entanglement`.
    """
    return atom_field_entanglement(gamma_t)


def distillable_bound(entropy_b: float, entropy_ab: float) -> float:
    """Entropy bound max(S_B - S_AB, 0) on distillable entanglement.

    For a pure joint field state (S_AB = 0) the bound collapses to the
    reduced entropy itself.
    """
    s_b = _require_finite("entropy_b", entropy_b)
    s_ab = _require_finite("entropy_ab", entropy_ab)
    if s_b < 0.0 or s_ab < 0.0:
        raise ValueError("entropies must be nonnegative")
    return max(s_b - s_ab, 0.0)
