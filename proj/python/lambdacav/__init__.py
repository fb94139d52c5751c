"""Exact dynamics of a three-level Lambda atom coupled to two cavity modes.

Thin re-export of the compiled extension; see the project README for the
physics conventions and the CLI that produces full observable sweeps.
"""

from _lambdacav import (
    AtomSpec,
    ConfigError,
    CouplingConfig,
    Evolver,
    PacketState,
    atom,
    atom_entropy,
    atom_linear_entropy,
    atomic_rdm,
    conserved,
    coupling,
    csv_columns,
    level_populations,
    mandel_q,
    mode_density,
    mode_entropy,
    oracle_compare,
    packet,
    phase_area,
    photon_marginal,
    preset_names,
    run,
)

__all__ = [
    "AtomSpec",
    "ConfigError",
    "CouplingConfig",
    "Evolver",
    "PacketState",
    "atom",
    "atom_entropy",
    "atom_linear_entropy",
    "atomic_rdm",
    "conserved",
    "coupling",
    "csv_columns",
    "level_populations",
    "mandel_q",
    "mode_density",
    "mode_entropy",
    "oracle_compare",
    "packet",
    "phase_area",
    "photon_marginal",
    "preset_names",
    "run",
]
