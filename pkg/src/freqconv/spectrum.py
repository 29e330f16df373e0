"""Diagonalization, level tracking across qubit-frequency sweeps, and
anticrossing location.

Levels are tracked by maximal overlap with a bare product state; the gap of a
tracked pair is minimized with a coarse scan followed by golden-section
refinement.  Half the minimum splitting is the numerical effective coupling.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .fockspace import BasisLabel, Matrix, SpaceConfig, index_of, require_hermitian
from .models import ModelParams, build_hamiltonian


class SearchError(RuntimeError):
    """Gap minimization failed (no interior minimum in the window)."""


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and orthonormal eigenvector columns."""

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.energies)


def diagonalize(h: Matrix) -> EigenSystem:
    """Hermitian eigendecomposition with ascending energies."""
    require_hermitian(h)
    energies, vectors = np.linalg.eigh(h)
    return EigenSystem(energies=energies, vectors=vectors)


class LevelMatch(NamedTuple):
    index: int
    overlap: float


def identify_level(es: EigenSystem, bare: BasisLabel, cfg: SpaceConfig) -> LevelMatch:
    """Eigenstate with maximal |<bare|v_j>|^2; ties resolve to lower energy."""
    weights = np.abs(es.vectors[index_of(bare, cfg), :]) ** 2
    j = int(np.argmax(weights))  # argmax returns the first (lowest-energy) tie
    return LevelMatch(index=j, overlap=float(weights[j]))


@dataclass(frozen=True)
class LevelSweep:
    """Eigenenergies on a qubit-frequency grid plus tracked-level indices."""

    omega_q: np.ndarray           # (n,)
    energies: np.ndarray          # (n, dim)
    tracked_labels: tuple[BasisLabel, ...]
    tracked_indices: np.ndarray   # (n, len(tracked_labels)) int

    def write_csv(self, path) -> None:
        dim = self.energies.shape[1]
        header = ["omega_q"] + [f"E_{k}" for k in range(dim)]
        header += [f"idx_{lbl.token()}" for lbl in self.tracked_labels]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for i in range(len(self.omega_q)):
                row = [repr(float(self.omega_q[i]))]
                row += [repr(float(e)) for e in self.energies[i]]
                row += [str(int(k)) for k in self.tracked_indices[i]]
                w.writerow(row)


def sweep_levels(kind: str, p: ModelParams, omega_q_grid: Sequence[float],
                 cfg: SpaceConfig,
                 track: Sequence[BasisLabel] = ()) -> LevelSweep:
    """Diagonalize along a sorted omega_q grid, tracking the given bare labels."""
    grid = np.asarray(omega_q_grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise ValueError("omega_q grid must be a nonempty 1-d sequence")
    if np.any(np.diff(grid) < 0):
        raise ValueError("omega_q grid must be sorted ascending")
    track = tuple(track)
    energies = []
    indices = []
    base = {"omega_a": p.omega_a, "omega_b": p.omega_b, "g_a": p.g_a,
            "g_b": p.g_b, "theta": p.theta}
    for wq in grid:
        es = diagonalize(build_hamiltonian(kind, ModelParams(omega_q=wq, **base), cfg))
        energies.append(es.energies)
        indices.append([identify_level(es, lbl, cfg).index for lbl in track])
    return LevelSweep(
        omega_q=grid,
        energies=np.array(energies),
        tracked_labels=track,
        tracked_indices=np.array(indices, dtype=int).reshape(len(grid), len(track)),
    )


@dataclass(frozen=True)
class AnticrossingResult:
    omega_q_star: float
    delta_min: float
    level_lo: int
    level_hi: int

    @property
    def geff_numeric(self) -> float:
        return 0.5 * self.delta_min


def pair_gap(kind: str, p: ModelParams, pair: tuple[BasisLabel, BasisLabel],
             omega_q: float, cfg: SpaceConfig) -> tuple[float, int, int]:
    """Energy gap of the two eigenstates carrying the most weight of the pair.

    The pair is scored jointly (sum of both bare overlaps per eigenstate),
    which stays well defined through the anticrossing center where each
    hybridized level overlaps either bare state by about one half.
    """
    i1, i2 = index_of(pair[0], cfg), index_of(pair[1], cfg)
    base = {"omega_a": p.omega_a, "omega_b": p.omega_b, "g_a": p.g_a,
            "g_b": p.g_b, "theta": p.theta}
    es = diagonalize(build_hamiltonian(kind, ModelParams(omega_q=omega_q, **base), cfg))
    score = np.abs(es.vectors[i1, :]) ** 2 + np.abs(es.vectors[i2, :]) ** 2
    j1, j2 = np.argsort(score)[-2:]
    lo, hi = int(min(j1, j2)), int(max(j1, j2))
    return float(es.energies[hi] - es.energies[lo]), lo, hi


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def locate_anticrossing(kind: str, p: ModelParams,
                        pair: tuple[BasisLabel, BasisLabel],
                        window: tuple[float, float], cfg: SpaceConfig,
                        scan_points: int = 33,
                        rel_tol: float = 1e-8) -> AnticrossingResult:
    """Minimize the tracked-pair gap over omega_q in the window.

    A coarse scan brackets the minimum (raising SearchError if it sits on the
    window edge), then golden-section search refines omega_q to rel_tol.  The
    window must bracket a single gap minimum of the pair.
    """
    lo_w, hi_w = float(window[0]), float(window[1])
    if not hi_w > lo_w:
        raise ValueError(f"window must satisfy lo < hi, got ({lo_w}, {hi_w})")
    if scan_points < 5:
        raise ValueError("scan_points must be >= 5")

    def gap(wq: float) -> float:
        return pair_gap(kind, p, pair, wq, cfg)[0]

    grid = np.linspace(lo_w, hi_w, scan_points)
    gaps = [gap(w) for w in grid]
    k = int(np.argmin(gaps))
    if k == 0 or k == scan_points - 1:
        raise SearchError(
            f"gap minimum of pair ({pair[0].text()}; {pair[1].text()}) lies on "
            f"the window edge [{lo_w}, {hi_w}]; widen the search window")

    a, b = float(grid[k - 1]), float(grid[k + 1])
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = gap(c), gap(d)
    tol = rel_tol * max(1.0, abs(grid[k]))
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = gap(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = gap(d)
    omega_star = 0.5 * (a + b)
    delta, lo, hi = pair_gap(kind, p, pair, omega_star, cfg)
    return AnticrossingResult(omega_q_star=omega_star, delta_min=delta,
                              level_lo=lo, level_hi=hi)
