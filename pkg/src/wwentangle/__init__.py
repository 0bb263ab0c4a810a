"""Entanglement structure of the radiation field after free-space atomic decay.

The package has four layers:

- :mod:`wwentangle.model` — closed-form continuum results: partition
  weights, entanglement entropies, vacuum fidelity, decay dynamics.
- :mod:`wwentangle.oracle` — a brute-force discrete-mode realization of the
  one-photon field state that validates every closed form from first
  principles.
- :mod:`wwentangle.quadrature` — adaptive integration of the
  Lorentzian-weighted integrals that the closed forms summarize.
- :mod:`wwentangle.sweeps` / :mod:`wwentangle.cli` — parameter sweeps that
  regenerate the reference figure datasets, with CSV/JSON serialization.
"""

__version__ = "0.1.0"

from .model import (DecaySnapshot, DipoleParams, PartitionSpec,
                    SpectralWeights, atom_field_entanglement, atom_population,
                    binary_entropy, critical_epsilon, decay_rate_from_dipole,
                    distillable_bound, field_state_entropy,
                    partition_entanglement, partition_weights, vacuum_fidelity)
from .oracle import (DiscreteModeGrid, JointStateCoefficients, PartitionLabels,
                     assign_partition, atom_reduced_populations,
                     build_mode_grid, eigenvalues_hermitian, joint_state_at,
                     reduced_density_matrix, reduced_weights)
from .quadrature import (ConvergenceError, IntegralResult,
                         cubic_weight_band_error, lorentzian_band_integral,
                         rho_bb_integral)
from .sweeps import (SweepConfig, SweepKind, SweepRange, SweepResult,
                     grid_fidelity, oracle_check, read_json, sweep_delta,
                     sweep_epsilon, sweep_time, write_csv, write_json,
                     write_result)

__all__ = [
    "__version__",
    # model
    "DipoleParams", "PartitionSpec", "SpectralWeights", "DecaySnapshot",
    "decay_rate_from_dipole", "partition_weights", "binary_entropy",
    "partition_entanglement", "critical_epsilon", "vacuum_fidelity",
    "atom_population", "atom_field_entanglement", "field_state_entropy",
    "distillable_bound",
    # oracle
    "DiscreteModeGrid", "PartitionLabels", "JointStateCoefficients",
    "build_mode_grid", "assign_partition", "reduced_weights",
    "reduced_density_matrix", "eigenvalues_hermitian", "joint_state_at",
    "atom_reduced_populations",
    # quadrature
    "ConvergenceError", "IntegralResult", "lorentzian_band_integral",
    "rho_bb_integral", "cubic_weight_band_error",
    # sweeps
    "SweepKind", "SweepRange", "SweepConfig", "SweepResult",
    "sweep_epsilon", "sweep_delta", "sweep_time", "grid_fidelity",
    "oracle_check", "write_csv", "write_json", "write_result", "read_json",
]
