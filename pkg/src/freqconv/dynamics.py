"""Dressed-eigenbasis Lindblad dynamics and the two conversion protocols.

The master equation is written in the eigenbasis of the full coupled
Hamiltonian: jump operators are |j><k| between dressed levels with k above j
in energy, with rates kappa_a |<j|X_a|k>|^2 + kappa_b |<j|X_b|k>|^2 +
gamma |<j|sigma_x|k>|^2 where X_a = a + a^dag and X_b = b + b^dag.  Photon and
qubit excitations are counted with the energy-lowering (positive-frequency)
parts of the same operators, <X^- X^+>, which vanish identically in the
dressed ground state.

In that basis the Liouvillian is elementwise on coherences plus a classical
rate equation on populations, so a fixed-step RK4 integrator only needs an
elementwise product and one matrix-vector product per stage.  Time-dependent
qubit frequency is handled as piecewise-constant segments with per-segment
re-diagonalization and dissipator rebuild.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .fockspace import (
    BasisLabel,
    Matrix,
    SpaceConfig,
    annihilator,
    lift,
    qubit_operator,
)
from .models import ModelParams, build_hamiltonian
from .spectrum import EigenSystem, diagonalize, identify_level

try:
    import numba
except ImportError:  # pragma: no cover - numba is a normal dependency
    numba = None


class IdentificationError(RuntimeError):
    """Initial bare label does not single out a dressed level (overlap < 0.5)."""


class StepSizeError(RuntimeError):
    """Trace drift exceeded tolerance; the step size is too large."""


@dataclass(frozen=True)
class DecoherenceRates:
    """Relaxation rates, in units of the reference qubit frequency."""

    kappa_a: float
    kappa_b: float
    gamma: float

    def __post_init__(self) -> None:
        if self.kappa_a < 0 or self.kappa_b < 0 or self.gamma < 0:
            raise ValueError("decoherence rates must be >= 0")


class DressedChannel(NamedTuple):
    """One jump channel |lower><upper| between dressed levels."""

    rate: float
    lower: int
    upper: int


@dataclass(frozen=True)
class ProtocolSegment:
    """Constant qubit frequency held for a duration (units of 1/omega_q0)."""

    omega_q: float
    duration: float

    def __post_init__(self) -> None:
        if self.duration <= 0:
            raise ValueError("segment duration must be positive")


@dataclass(frozen=True)
class RunDiagnostics:
    max_trace_drift: float
    min_eigenvalue: float | None    # only when positivity checking is on


@dataclass(frozen=True)
class Timeseries:
    """Sampled dressed-counting records of a protocol run."""

    t: np.ndarray
    n_a: np.ndarray
    n_b: np.ndarray
    n_q: np.ndarray
    omega_q: np.ndarray
    diagnostics: RunDiagnostics | None = None

    def write_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "n_a", "n_b", "n_q", "omega_q"])
            for i in range(len(self.t)):
                w.writerow([repr(float(x)) for x in
                            (self.t[i], self.n_a[i], self.n_b[i],
                             self.n_q[i], self.omega_q[i])])


@dataclass(frozen=True)
class SweepResult:
    """Adiabatic ramp outcome: traces plus population of the target branch."""

    timeseries: Timeseries
    fidelity: float
    target_level: int
    target_overlap: float


def quadrature_operator(slot: str, cfg: SpaceConfig) -> Matrix:
    """X_a = a + a^dag, X_b = b + b^dag, or sigma_x, lifted to the full space."""
    if slot == "a":
        a = annihilator(cfg.cutoff_a)
        return lift(a + a.conj().T, "a", cfg)
    if slot == "b":
        b = annihilator(cfg.cutoff_b)
        return lift(b + b.conj().T, "b", cfg)
    if slot == "qubit":
        return lift(qubit_operator("x"), "qubit", cfg)
    raise ValueError(f"slot must be 'a', 'b' or 'qubit', got {slot!r}")


def positive_part(op: Matrix, es: EigenSystem) -> Matrix:
    """Energy-lowering part O^+ = sum_{j<k} <j|O|k> |j><k| (energies ascending).

    Zero-frequency (diagonal) terms are excluded; O^- is the adjoint.  The
    result is expressed back in the original basis.
    """
    v = es.vectors
    dressed = v.conj().T @ op @ v
    lowering = np.triu(dressed, 1)
    return v @ lowering @ v.conj().T


def dressed_excitation_operator(op: Matrix, es: EigenSystem) -> Matrix:
    """Counting operator O^- O^+ for expectation values <O^- O^+>."""
    plus = positive_part(op, es)
    return plus.conj().T @ plus


def dressed_dissipators(es: EigenSystem, cfg: SpaceConfig,
                        rates: DecoherenceRates) -> list[DressedChannel]:
    """One decay channel per dressed level pair j < k, zero-rate channels omitted."""
    v = es.vectors
    ya = v.conj().T @ quadrature_operator("a", cfg) @ v
    yb = v.conj().T @ quadrature_operator("b", cfg) @ v
    yq = v.conj().T @ quadrature_operator("qubit", cfg) @ v
    total = np.abs(ya) ** 2 * rates.kappa_a + np.abs(yb) ** 2 * rates.kappa_b \
        + np.abs(yq) ** 2 * rates.gamma
    floor = 1e-14 * (rates.kappa_a + rates.kappa_b + rates.gamma)
    channels = []
    for k in range(es.dim):
        for j in range(k):
            r = float(total[j, k])
            if r > floor:
                channels.append(DressedChannel(rate=r, lower=j, upper=k))
    return channels


def _gain_matrix(channels: Sequence[DressedChannel], dim: int) -> np.ndarray:
    g = np.zeros((dim, dim))
    for ch in channels:
        g[ch.lower, ch.upper] += ch.rate
    return g


def _evolution_matrix(es: EigenSystem, gain: np.ndarray) -> np.ndarray:
    """Elementwise generator A_mn = -i (E_m - E_n) - (R_m + R_n)/2 with
    R_k the total outgoing rate of level k; the population gain term
    delta_mn sum_k G_mk rho_kk is applied separately."""
    e = es.energies
    out_rate = gain.sum(axis=0)
    return (-1j * (e[:, None] - e[None, :])
            - 0.5 * (out_rate[:, None] + out_rate[None, :]))


def dressed_liouvillian_apply(rho_dressed: Matrix, es: EigenSystem,
                              channels: Sequence[DressedChannel]) -> Matrix:
    """Action of the dressed-basis Liouvillian on a dressed-basis density matrix."""
    gain = _gain_matrix(channels, es.dim)
    out = _evolution_matrix(es, gain) * rho_dressed
    np.einsum("ii->i", out)[...] += gain @ np.einsum("ii->i", rho_dressed)
    return out


def max_step(es: EigenSystem) -> float:
    """Largest admissible RK4 step, 2 pi / (50 max|E|)."""
    emax = float(np.abs(es.energies).max())
    if emax == 0.0:
        raise ValueError("cannot bound the step size for a zero Hamiltonian")
    return 2.0 * math.pi / (50.0 * emax)


# ---------------------------------------------------------------------------
# RK4 stepping kernels.  Both advance nsteps of classic fixed-step RK4 on
#   drho/dt = A * rho (elementwise) + diag(G @ diag(rho))
# re-Hermitizing after every step.  The numba kernel is the fast path; the
# numpy one is the reference/fallback.
# ---------------------------------------------------------------------------

def _rk4_numpy(rho: np.ndarray, a_mat: np.ndarray, gain: np.ndarray,
               dt: float, nsteps: int) -> np.ndarray:
    def liouville(r: np.ndarray) -> np.ndarray:
        out = a_mat * r
        np.einsum("ii->i", out)[...] += gain @ np.einsum("ii->i", r)
        return out

    for _ in range(nsteps):
        k1 = liouville(rho)
        k2 = liouville(rho + (0.5 * dt) * k1)
        k3 = liouville(rho + (0.5 * dt) * k2)
        k4 = liouville(rho + dt * k3)
        upd = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (upd + upd.conj().T)
    return rho


def _rk4_loops(rho, a_mat, gain, dt, nsteps):  # pragma: no cover - jitted
    d = rho.shape[0]
    k = np.empty((d, d), np.complex128)
    stage = np.empty((d, d), np.complex128)
    acc = np.empty((d, d), np.complex128)
    gvec = np.empty(d, np.complex128)
    for _ in range(nsteps):
        for s in range(4):
            src = rho if s == 0 else stage
            for i in range(d):
                tot = 0.0 + 0.0j
                for j in range(d):
                    tot += gain[i, j] * src[j, j]
                gvec[i] = tot
            for i in range(d):
                for j in range(d):
                    k[i, j] = a_mat[i, j] * src[i, j]
                k[i, i] += gvec[i]
            if s == 0:
                for i in range(d):
                    for j in range(d):
                        acc[i, j] = k[i, j]
                        stage[i, j] = rho[i, j] + 0.5 * dt * k[i, j]
            elif s == 1:
                for i in range(d):
                    for j in range(d):
                        acc[i, j] += 2.0 * k[i, j]
                        stage[i, j] = rho[i, j] + 0.5 * dt * k[i, j]
            elif s == 2:
                for i in range(d):
                    for j in range(d):
                        acc[i, j] += 2.0 * k[i, j]
                        stage[i, j] = rho[i, j] + dt * k[i, j]
            else:
                for i in range(d):
                    for j in range(d):
                        acc[i, j] += k[i, j]
        for i in range(d):
            diag = rho[i, i] + (dt / 6.0) * acc[i, i]
            rho[i, i] = 0.5 * (diag + np.conj(diag))
            for j in range(i + 1, d):
                upper = rho[i, j] + (dt / 6.0) * acc[i, j]
                lower = rho[j, i] + (dt / 6.0) * acc[j, i]
                h = 0.5 * (upper + np.conj(lower))
                rho[i, j] = h
                rho[j, i] = np.conj(h)
    return rho


_rk4_jitted = numba.njit(cache=True)(_rk4_loops) if numba is not None else None


def _rk4(rho: np.ndarray, a_mat: np.ndarray, gain: np.ndarray,
         dt: float, nsteps: int) -> np.ndarray:
    if nsteps == 0:
        return rho
    if _rk4_jitted is not None:
        return _rk4_jitted(rho, a_mat, gain, dt, nsteps)
    return _rk4_numpy(rho, a_mat, gain, dt, nsteps)


# ---------------------------------------------------------------------------
# Segment machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Frame:
    """Everything fixed within one constant-omega_q segment."""

    es: EigenSystem
    a_mat: np.ndarray
    gain: np.ndarray
    count_a: np.ndarray    # dressed-basis counting matrices
    count_b: np.ndarray
    count_q: np.ndarray
    dt_max: float


def _prepare_frame(kind: str, p: ModelParams, cfg: SpaceConfig,
                   rates: DecoherenceRates) -> _Frame:
    es = diagonalize(build_hamiltonian(kind, p, cfg))
    v = es.vectors
    gain = _gain_matrix(dressed_dissipators(es, cfg, rates), es.dim)
    counts = []
    for slot in ("a", "b", "qubit"):
        y = v.conj().T @ quadrature_operator(slot, cfg) @ v
        up = np.triu(y, 1)
        counts.append(np.ascontiguousarray(up.conj().T @ up))
    return _Frame(es=es, a_mat=_evolution_matrix(es, gain), gain=gain,
                  count_a=counts[0], count_b=counts[1], count_q=counts[2],
                  dt_max=max_step(es))


def _expectation(rho: np.ndarray, m: np.ndarray) -> float:
    return float(np.einsum("ij,ji->", rho, m).real)


def _validate_density_matrix(rho: Matrix, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix shape {rho.shape}, expected ({dim}, {dim})")
    if np.abs(rho - rho.conj().T).max() > 1e-10 * max(np.abs(rho).max(), 1e-300):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError("density matrix trace differs from one")
    if np.linalg.eigvalsh(rho).min() < -1e-8:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def propagate_segment(rho0: Matrix, kind: str, p: ModelParams, cfg: SpaceConfig,
                      rates: DecoherenceRates, duration: float,
                      dt: float | None = None,
                      sample_dt: float | None = None) -> list[tuple[float, Matrix]]:
    """Fixed-step RK4 propagation at constant omega_q.

    Returns (t, rho) samples in the bare basis, always including t = 0 and
    t = duration; intermediate samples roughly every sample_dt when given.
    The step size must respect dt <= 2 pi / (50 max|E|).
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    frame = _prepare_frame(kind, p, cfg, rates)
    rho0 = _validate_density_matrix(rho0, cfg.dim)
    if dt is None:
        dt = frame.dt_max
    elif dt > frame.dt_max * (1.0 + 1e-12):
        raise ValueError(f"dt = {dt} exceeds the stability bound {frame.dt_max}")
    nsteps = max(1, math.ceil(duration / dt - 1e-12))
    dt = duration / nsteps
    stride = nsteps if sample_dt is None else max(1, round(sample_dt / dt))

    v = frame.es.vectors
    rho = np.ascontiguousarray(v.conj().T @ rho0 @ v)
    samples = [(0.0, rho0)]
    done = 0
    while done < nsteps:
        chunk = min(stride, nsteps - done)
        rho = _rk4(rho, frame.a_mat, frame.gain, dt, chunk)
        done += chunk
        samples.append((done * dt, v @ rho @ v.conj().T))
    drift = abs(np.trace(rho).real - 1.0)
    if drift > 1e-6:
        raise StepSizeError(f"trace drift {drift:.3e} exceeds 1e-6; reduce dt")
    return samples


class _ProtocolState(NamedTuple):
    series: Timeseries
    rho_dressed: np.ndarray
    vectors: np.ndarray     # eigenvectors of the last segment's frame


def _run_segments(segments: Sequence[ProtocolSegment],
                  initial: BasisLabel | int,
                  kind: str, p_base: ModelParams, cfg: SpaceConfig,
                  rates: DecoherenceRates,
                  sample_dt: float,
                  check_positivity: bool) -> _ProtocolState:
    if not segments:
        raise ValueError("protocol needs at least one segment")
    if sample_dt <= 0:
        raise ValueError("sample_dt must be positive")

    ts: list[float] = []
    na: list[float] = []
    nb: list[float] = []
    nq: list[float] = []
    wq: list[float] = []
    max_drift = 0.0
    min_eig = math.inf if check_positivity else None

    rho: np.ndarray | None = None
    prev_vectors: np.ndarray | None = None
    t_base = 0.0
    for seg in segments:
        p = replace(p_base, omega_q=seg.omega_q)
        frame = _prepare_frame(kind, p, cfg, rates)
        d = frame.es.dim

        if rho is None:
            if isinstance(initial, BasisLabel):
                match = identify_level(frame.es, initial, cfg)
                if match.overlap < 0.5:
                    raise IdentificationError(
                        f"bare label {initial.text()} overlaps the best dressed "
                        f"level by only {match.overlap:.3f} at omega_q = "
                        f"{seg.omega_q}; initial state is ambiguous")
                start = match.index
            else:
                start = int(initial)
                if not 0 <= start < d:
                    raise ValueError(f"dressed index {start} outside 0..{d - 1}")
            rho = np.zeros((d, d), dtype=complex)
            rho[start, start] = 1.0
        else:
            w = frame.es.vectors.conj().T @ prev_vectors
            rho = np.ascontiguousarray(w @ rho @ w.conj().T)

        def record(t: float) -> None:
            nonlocal max_drift, min_eig
            ts.append(t)
            na.append(_expectation(rho, frame.count_a))
            nb.append(_expectation(rho, frame.count_b))
            nq.append(_expectation(rho, frame.count_q))
            wq.append(seg.omega_q)
            max_drift = max(max_drift, abs(np.trace(rho).real - 1.0))
            if check_positivity:
                min_eig = min(min_eig, float(np.linalg.eigvalsh(rho).min()))

        if not ts:
            record(0.0)

        nsteps = max(1, math.ceil(seg.duration / frame.dt_max - 1e-12))
        dt = seg.duration / nsteps
        stride = max(1, round(sample_dt / dt))
        done = 0
        while done < nsteps:
            chunk = min(stride, nsteps - done)
            rho = _rk4(rho, frame.a_mat, frame.gain, dt, chunk)
            done += chunk
            record(t_base + done * dt)
        if max_drift > 1e-6:
            raise StepSizeError(f"trace drift {max_drift:.3e} exceeds 1e-6")
        t_base += seg.duration
        prev_vectors = frame.es.vectors

    diag = RunDiagnostics(max_trace_drift=max_drift,
                          min_eigenvalue=None if min_eig is None else float(min_eig))
    series = Timeseries(t=np.array(ts), n_a=np.array(na), n_b=np.array(nb),
                        n_q=np.array(nq), omega_q=np.array(wq), diagnostics=diag)
    return _ProtocolState(series=series, rho_dressed=rho, vectors=prev_vectors)


def run_protocol(segments: Sequence[ProtocolSegment],
                 initial: BasisLabel | int,
                 kind: str, p_base: ModelParams, cfg: SpaceConfig,
                 rates: DecoherenceRates,
                 sample_dt: float = 1.0,
                 check_positivity: bool = False) -> Timeseries:
    """Run a piecewise-constant qubit-frequency protocol.

    The initial state is the dressed eigenstate maximally overlapping the
    given bare label at the first segment's omega_q (or a dressed index
    directly).  Expectation values use the active segment's eigensystem; the
    density matrix is transported between segment eigenbases exactly.
    """
    return _run_segments(segments, initial, kind, p_base, cfg, rates,
                         sample_dt, check_positivity).series


def adiabatic_sweep(omega_start: float, omega_stop: float, ramp_time: float,
                    segment_count: int,
                    initial: BasisLabel, target: BasisLabel,
                    kind: str, p_base: ModelParams, cfg: SpaceConfig,
                    rates: DecoherenceRates,
                    sample_dt: float = 1.0,
                    check_positivity: bool = False) -> SweepResult:
    """Linear qubit-frequency ramp discretized into piecewise-constant segments.

    Segments hold omega_q at the midpoint of each ramp slice.  The returned
    fidelity is the population of the dressed level at omega_stop that
    maximally overlaps the target bare label; for a zero-width ramp this
    reduces to the initial state's overlap with the target branch.  For a
    faithful ramp use >= 100 segments with endpoints on opposite sides of the
    anticrossing.
    """
    if ramp_time <= 0:
        raise ValueError("ramp_time must be positive")
    if segment_count < 1:
        raise ValueError("segment_count must be >= 1")
    step = (omega_stop - omega_start) / segment_count
    segs = [ProtocolSegment(omega_q=omega_start + (i + 0.5) * step,
                            duration=ramp_time / segment_count)
            for i in range(segment_count)]
    state = _run_segments(segs, initial, kind, p_base, cfg, rates,
                          sample_dt, check_positivity)

    end_es = diagonalize(build_hamiltonian(
        kind, replace(p_base, omega_q=omega_stop), cfg))
    w = end_es.vectors.conj().T @ state.vectors
    rho_end = w @ state.rho_dressed @ w.conj().T
    match = identify_level(end_es, target, cfg)
    fidelity = abs(float(rho_end[match.index, match.index].real))
    return SweepResult(timeseries=state.series, fidelity=fidelity,
                       target_level=match.index, target_overlap=match.overlap)
