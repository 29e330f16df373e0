"""Closed-form effective couplings for the three conversion processes and a
generic numerical adiabatic-elimination engine.

Elimination works on a small projected Hamiltonian: after subtracting a frame
energy from the diagonal, the amplitudes of the non-kept states are set
stationary and solved as a linear system (couplings among eliminated states
included), leaving a 2x2 effective Hamiltonian on the kept pair.  On
resonance the closed forms below reproduce that 2x2 coupling exactly, which
is the primary anti-regression check for the formula transcriptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fockspace import BasisLabel, Matrix, require_hermitian
from .models import (
    JAYNES_CUMMINGS,
    QUANTUM_RABI,
    GENERALIZED_RABI,
    SINGLE_PHOTON_BLOCK,
    TWO_PHOTON_EG_BLOCK,
    TWO_PHOTON_EG_RWA_BLOCK,
    TWO_PHOTON_GE_BLOCK,
    ModelParams,
)


class EliminationError(RuntimeError):
    """Adiabatic elimination invalid: an eliminated state is (near-)resonant."""


def geff_single_photon(p: ModelParams) -> float:
    """Effective |1,0,g> <-> |0,1,e> coupling via the four two-step virtual
    paths; requires longitudinal coupling (vanishes at theta = 0).

    General off-resonance form; with omega_q = omega_a - omega_b it reduces to
    g_a g_b sin(2 theta) (1/omega_b - 1/omega_a).
    """
    if p.omega_a == p.omega_q:
        raise ValueError("pole: omega_q equals omega_a")
    if p.omega_b + p.omega_q == 0:
        raise ValueError("pole: omega_b + omega_q vanishes")
    return 0.5 * p.g_a * p.g_b * math.sin(2.0 * p.theta) * (
        1.0 / (p.omega_a - p.omega_q)
        + 1.0 / p.omega_b
        - 1.0 / p.omega_a
        - 1.0 / (p.omega_b + p.omega_q)
    )


def geff_two_photon_ge(g_a: float, g_b: float,
                       omega_a: float, omega_b: float) -> float:
    """Effective |1,0,g> <-> |0,2,e> coupling of the two-resonator quantum
    Rabi model on resonance (omega_q = omega_a - 2 omega_b)."""
    den = math.sqrt(2.0) * (
        2.0 * omega_b**2 * (g_a**2 + (omega_a - omega_b) ** 2)
        + g_b**4
        + 3.0 * g_b**2 * omega_b * (omega_b - omega_a)
    )
    if den == 0.0:
        raise ValueError("vanishing denominator in two-photon coupling")
    num = g_a * g_b**2 * (g_a**2 - 3.0 * g_b**2 + 4.0 * omega_b * (omega_a - 2.0 * omega_b))
    return num / den


def geff_two_photon_eg_rabi(g_a: float, g_b: float,
                            omega_a: float, omega_b: float) -> float:
    """Effective |1,0,e> <-> |0,2,g> coupling of the quantum Rabi model on
    resonance (omega_q = 2 omega_b - omega_a).

    Algebraically identical to the |1,0,g> <-> |0,2,e> result: the two
    six-state blocks differ only in the sign of omega_q, which the respective
    resonance conditions substitute away identically.
    """
    return geff_two_photon_ge(g_a, g_b, omega_a, omega_b)


def geff_two_photon_eg_jc(g_a: float, g_b: float,
                          omega_a: float, omega_b: float) -> float:
    """Effective |1,0,e> <-> |0,2,g> coupling keeping only the
    excitation-conserving (Jaynes-Cummings) terms, on resonance."""
    den = g_a**2 + (omega_a - omega_b) ** 2
    if den == 0.0:
        raise ValueError("vanishing denominator in JC two-photon coupling")
    return -math.sqrt(2.0) * g_a * g_b**2 / den


def geff_two_photon_leading_order(g: float, omega_a: float, omega_b: float) -> float:
    """Leading g^3/omega^2 term of the equal-coupling two-photon result."""
    return math.sqrt(2.0) * g**3 * (omega_a - 2.0 * omega_b) / (
        omega_b * (omega_a - omega_b) ** 2)


@dataclass(frozen=True)
class EffectiveTwoLevel:
    """2x2 effective Hamiltonian on the kept pair, in the elimination frame.

    The shifts are the elimination-induced diagonal corrections relative to
    the frame-subtracted bare energies; they are not final (states outside
    the block also shift the levels) and should not be used quantitatively.
    """

    shift_kept_1: float
    shift_kept_2: float
    coupling: float


def adiabatic_eliminate(h_small: Matrix, kept: tuple[int, int],
                        frame_energy: float) -> EffectiveTwoLevel:
    """Eliminate all non-kept states of a small Hermitian block.

    Subtracts frame_energy from the diagonal, solves the stationary
    amplitudes of the eliminated set E (including their mutual couplings)
    and returns H_eff = H_KK - H_KE D_EE^-1 H_EK on the kept pair K.
    """
    h = np.asarray(h_small, dtype=complex)
    require_hermitian(h)
    d = h.shape[0]
    k1, k2 = kept
    if not (0 <= k1 < d and 0 <= k2 < d) or k1 == k2:
        raise ValueError(f"kept indices {kept} invalid for dimension {d}")
    keep = [k1, k2]
    elim = [i for i in range(d) if i not in keep]
    if not elim:
        raise ValueError("nothing to eliminate")

    shifted = h - frame_energy * np.eye(d)
    dee = shifted[np.ix_(elim, elim)]
    # resonant intermediate state -> singular block
    eigvals = np.linalg.eigvalsh(dee)
    if np.abs(eigvals).min() <= 1e-12 * max(np.abs(eigvals).max(), 1.0):
        raise EliminationError(
            "eliminated block is singular: an intermediate state is resonant "
            "with the kept pair in this frame")
    heff = (shifted[np.ix_(keep, keep)]
            - shifted[np.ix_(keep, elim)] @ np.linalg.solve(dee, shifted[np.ix_(elim, keep)]))

    coupling = heff[0, 1]
    if abs(coupling.imag) > 1e-12 * max(abs(coupling), 1e-300):
        raise ValueError("effective coupling is not real; check the input block")
    return EffectiveTwoLevel(
        shift_kept_1=float((heff[0, 0] - shifted[k1, k1]).real),
        shift_kept_2=float((heff[1, 1] - shifted[k2, k2]).real),
        coupling=float(coupling.real),
    )


@dataclass(frozen=True)
class ConversionProcess:
    """Everything scenario plumbing needs to know about one conversion process:
    which model it lives in, the converting pair and its virtual-intermediate
    block, the resonance condition, the elimination frame, and the analytic
    coupling (plus the RWA variant where one exists)."""

    name: str
    kind: str
    block: tuple[BasisLabel, ...]
    kept: tuple[int, int]
    resonance: Callable[[float, float], float]        # (omega_a, omega_b) -> omega_q
    frame: Callable[[ModelParams], float]
    analytic: Callable[[ModelParams], float]          # evaluated on resonance
    rwa_analytic: Callable[[ModelParams], float] | None = None
    rwa_block: tuple[BasisLabel, ...] | None = None
    rwa_kept: tuple[int, int] | None = None

    @property
    def pair(self) -> tuple[BasisLabel, BasisLabel]:
        return self.block[self.kept[0]], self.block[self.kept[1]]

    def on_resonance(self, p: ModelParams) -> ModelParams:
        return ModelParams(omega_a=p.omega_a, omega_b=p.omega_b,
                           omega_q=self.resonance(p.omega_a, p.omega_b),
                           g_a=p.g_a, g_b=p.g_b, theta=p.theta)


SINGLE_PHOTON = ConversionProcess(
    name="single_photon",
    kind=GENERALIZED_RABI,
    block=SINGLE_PHOTON_BLOCK,
    kept=(2, 3),
    resonance=lambda wa, wb: wa - wb,
    frame=lambda p: p.omega_a - 0.5 * p.omega_q,
    analytic=lambda p: geff_single_photon(
        SINGLE_PHOTON.on_resonance(p)),
)

TWO_PHOTON_GE = ConversionProcess(
    name="two_photon_ge",
    kind=QUANTUM_RABI,
    block=TWO_PHOTON_GE_BLOCK,
    kept=(2, 3),
    resonance=lambda wa, wb: wa - 2.0 * wb,
    frame=lambda p: p.omega_a - 0.5 * p.omega_q,
    analytic=lambda p: geff_two_photon_ge(p.g_a, p.g_b, p.omega_a, p.omega_b),
)

TWO_PHOTON_EG = ConversionProcess(
    name="two_photon_eg",
    kind=QUANTUM_RABI,
    block=TWO_PHOTON_EG_BLOCK,
    kept=(2, 3),
    resonance=lambda wa, wb: 2.0 * wb - wa,
    frame=lambda p: p.omega_a + 0.5 * p.omega_q,
    analytic=lambda p: geff_two_photon_eg_rabi(p.g_a, p.g_b, p.omega_a, p.omega_b),
    rwa_analytic=lambda p: geff_two_photon_eg_jc(p.g_a, p.g_b, p.omega_a, p.omega_b),
    rwa_block=TWO_PHOTON_EG_RWA_BLOCK,
    rwa_kept=(1, 2),
)

PROCESSES = {proc.name: proc for proc in (SINGLE_PHOTON, TWO_PHOTON_GE, TWO_PHOTON_EG)}
