"""Hamiltonians of the two-resonator + qubit system and subspace projections.

Three model kinds are supported: the generalized Rabi model with a mixing
angle theta between transverse (sigma_x) and longitudinal (sigma_z) coupling,
the standard two-resonator quantum Rabi model (theta = 0), and the
Jaynes-Cummings model obtained by dropping the counter-rotating terms.
All frequencies are in units of the scenario reference qubit frequency and
hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fockspace import (
    BasisLabel,
    Matrix,
    SpaceConfig,
    annihilator,
    index_of,
    lift,
    qubit_operator,
)

GENERALIZED_RABI = "generalized_rabi"
QUANTUM_RABI = "quantum_rabi"
JAYNES_CUMMINGS = "jaynes_cummings"
MODEL_KINDS = (GENERALIZED_RABI, QUANTUM_RABI, JAYNES_CUMMINGS)


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters; by convention omega_a > omega_b for the studied
    conversion processes (not enforced, mode relabeling is legitimate)."""

    omega_a: float
    omega_b: float
    omega_q: float
    g_a: float
    g_b: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if self.omega_a <= 0 or self.omega_b <= 0:
            raise ValueError("resonator frequencies must be positive")
        if self.omega_q < 0:
            raise ValueError("qubit frequency must be >= 0")
        if self.g_a < 0 or self.g_b < 0:
            raise ValueError("coupling strengths must be >= 0")


def build_hamiltonian(kind: str, p: ModelParams, cfg: SpaceConfig) -> Matrix:
    """Full Hamiltonian on the truncated composite space.

    Generalized form:
        omega_a a^dag a + omega_b b^dag b + (omega_q/2) sigma_z
        + [g_a (a + a^dag) + g_b (b + b^dag)] (sigma_x cos theta + sigma_z sin theta)
    The quantum Rabi kind is the theta = 0 special case; the Jaynes-Cummings
    kind keeps only the excitation-conserving a sigma_+ + a^dag sigma_- (and b)
    coupling terms.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}, expected one of {MODEL_KINDS}")
    if kind != GENERALIZED_RABI and p.theta != 0.0:
        raise ValueError(f"model kind {kind!r} requires theta = 0, got {p.theta}")

    a = lift(annihilator(cfg.cutoff_a), "a", cfg)
    b = lift(annihilator(cfg.cutoff_b), "b", cfg)
    sz = lift(qubit_operator("z"), "qubit", cfg)
    h = (p.omega_a * (a.conj().T @ a)
         + p.omega_b * (b.conj().T @ b)
         + 0.5 * p.omega_q * sz)

    if kind == JAYNES_CUMMINGS:
        sp = lift(qubit_operator("+"), "qubit", cfg)
        sm = lift(qubit_operator("-"), "qubit", cfg)
        h += p.g_a * (a @ sp + a.conj().T @ sm)
        h += p.g_b * (b @ sp + b.conj().T @ sm)
    else:
        sx = lift(qubit_operator("x"), "qubit", cfg)
        field = p.g_a * (a + a.conj().T) + p.g_b * (b + b.conj().T)
        mix = math.cos(p.theta) * sx + math.sin(p.theta) * sz
        h += field @ mix
    return h


def project_subspace(h: Matrix, labels: tuple[BasisLabel, ...] | list[BasisLabel],
                     cfg: SpaceConfig) -> Matrix:
    """Matrix of <label_i|H|label_j> in the given label order."""
    idx = [index_of(lbl, cfg) for lbl in labels]
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate labels in projection list")
    return h[np.ix_(idx, idx)]


def parity_operator(cfg: SpaceConfig) -> Matrix:
    """Excitation-number parity sigma_z (-1)^(n_a + n_b), conserved by the
    quantum Rabi model."""
    sign_a = np.diag((-1.0) ** np.arange(cfg.cutoff_a)).astype(complex)
    sign_b = np.diag((-1.0) ** np.arange(cfg.cutoff_b)).astype(complex)
    return (lift(qubit_operator("z"), "qubit", cfg)
            @ lift(sign_a, "a", cfg) @ lift(sign_b, "b", cfg))


def excitation_number_operator(cfg: SpaceConfig) -> Matrix:
    """a^dag a + b^dag b + sigma_+ sigma_-, conserved by the JC model."""
    a = annihilator(cfg.cutoff_a)
    b = annihilator(cfg.cutoff_b)
    return (lift(a.conj().T @ a, "a", cfg)
            + lift(b.conj().T @ b, "b", cfg)
            + lift(qubit_operator("+") @ qubit_operator("-"), "qubit", cfg))


def _labels(*triples: tuple[int, int, str]) -> tuple[BasisLabel, ...]:
    return tuple(BasisLabel(*t) for t in triples)


# Canonical six-state blocks for the three conversion processes.  The two
# converting states always sit at positions 2 and 3; the other four are the
# lowest-order virtual intermediates.
SINGLE_PHOTON_BLOCK = _labels(
    (0, 0, "g"), (0, 0, "e"), (1, 0, "g"), (0, 1, "e"), (1, 1, "g"), (1, 1, "e"))
TWO_PHOTON_GE_BLOCK = _labels(
    (0, 0, "e"), (0, 1, "g"), (1, 0, "g"), (0, 2, "e"), (1, 1, "e"), (1, 2, "g"))
TWO_PHOTON_EG_BLOCK = _labels(
    (0, 0, "g"), (0, 1, "e"), (1, 0, "e"), (0, 2, "g"), (1, 1, "g"), (1, 2, "e"))
# Four-state block connected by excitation-conserving terms only; the
# converting pair sits at positions 1 and 2.
TWO_PHOTON_EG_RWA_BLOCK = _labels(
    (0, 1, "e"), (1, 0, "e"), (0, 2, "g"), (1, 1, "g"))
