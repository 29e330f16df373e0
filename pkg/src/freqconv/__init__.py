"""Simulator for qubit-mediated photon frequency conversion between two
resonators in the ultrastrong-coupling regime."""

from .fockspace import BasisLabel, SpaceConfig, annihilator, index_of, lift, qubit_operator
from .models import (
    GENERALIZED_RABI,
    JAYNES_CUMMINGS,
    QUANTUM_RABI,
    ModelParams,
    build_hamiltonian,
    project_subspace,
)
from .spectrum import (
    AnticrossingResult,
    EigenSystem,
    diagonalize,
    identify_level,
    locate_anticrossing,
    sweep_levels,
)
from .effcoupling import (
    PROCESSES,
    adiabatic_eliminate,
    geff_single_photon,
    geff_two_photon_eg_jc,
    geff_two_photon_eg_rabi,
    geff_two_photon_ge,
)
from .dynamics import (
    DecoherenceRates,
    ProtocolSegment,
    Timeseries,
    adiabatic_sweep,
    dressed_dissipators,
    positive_part,
    propagate_segment,
    run_protocol,
)
from .scenario import Scenario, parse_config

__all__ = [
    "AnticrossingResult", "BasisLabel", "DecoherenceRates", "EigenSystem",
    "GENERALIZED_RABI", "JAYNES_CUMMINGS", "ModelParams", "PROCESSES",
    "ProtocolSegment", "QUANTUM_RABI", "Scenario", "SpaceConfig", "Timeseries",
    "adiabatic_eliminate", "adiabatic_sweep", "annihilator", "build_hamiltonian",
    "diagonalize", "dressed_dissipators", "geff_single_photon",
    "geff_two_photon_eg_jc", "geff_two_photon_eg_rabi", "geff_two_photon_ge",
    "identify_level", "index_of", "lift", "locate_anticrossing", "parse_config",
    "positive_part", "project_subspace", "propagate_segment", "qubit_operator",
    "run_protocol", "sweep_levels",
]

__version__ = "0.1.0"
