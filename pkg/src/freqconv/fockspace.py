"""Truncated Hilbert space for two resonators and a qubit.

Basis ordering is fixed once and for all: resonator a is the outer factor,
resonator b the middle one, the qubit the inner one, so that
``index = (n_a * cutoff_b + n_b) * 2 + q`` with g -> 0, e -> 1.  All
operators are dense complex numpy arrays; at desk scale (dim <~ 200) sparse
storage buys nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Matrix = np.ndarray

QUBIT_LEVELS = ("g", "e")


@dataclass(frozen=True)
class SpaceConfig:
    """Fock cutoffs: photon numbers 0..cutoff-1 are kept per resonator."""

    cutoff_a: int
    cutoff_b: int

    def __post_init__(self) -> None:
        if self.cutoff_a < 2 or self.cutoff_b < 2:
            raise ValueError(
                f"cutoffs must be >= 2, got ({self.cutoff_a}, {self.cutoff_b})"
            )

    @property
    def dim(self) -> int:
        return 2 * self.cutoff_a * self.cutoff_b


@dataclass(frozen=True)
class BasisLabel:
    """Bare product state |n_a, n_b, q> with q in {g, e}."""

    n_a: int
    n_b: int
    q: str

    def __post_init__(self) -> None:
        if self.q not in QUBIT_LEVELS:
            raise ValueError(f"qubit level must be 'g' or 'e', got {self.q!r}")
        if self.n_a < 0 or self.n_b < 0:
            raise ValueError(f"photon numbers must be >= 0, got {self}")

    @classmethod
    def from_text(cls, text: str) -> "BasisLabel":
        """Parse 'n_a,n_b,q', e.g. '1,0,g'."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 'n_a,n_b,q', got {text!r}")
        try:
            n_a, n_b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"bad photon number in label {text!r}") from exc
        return cls(n_a, n_b, parts[2])

    def text(self) -> str:
        return f"{self.n_a},{self.n_b},{self.q}"

    def token(self) -> str:
        """Filesystem/CSV-safe form, e.g. '1_0_g'."""
        return f"{self.n_a}_{self.n_b}_{self.q}"


def index_of(label: BasisLabel, cfg: SpaceConfig) -> int:
    """Composite-basis index of a bare label (a outer, b middle, qubit inner)."""
    if label.n_a >= cfg.cutoff_a or label.n_b >= cfg.cutoff_b:
        raise ValueError(f"label {label.text()} outside cutoffs "
                         f"({cfg.cutoff_a}, {cfg.cutoff_b})")
    return (label.n_a * cfg.cutoff_b + label.n_b) * 2 + QUBIT_LEVELS.index(label.q)


def label_of(index: int, cfg: SpaceConfig) -> BasisLabel:
    """Inverse of index_of."""
    if index < 0 or index >= cfg.dim:
        raise ValueError(f"index {index} outside dimension {cfg.dim}")
    index, q = divmod(index, 2)
    n_a, n_b = divmod(index, cfg.cutoff_b)
    return BasisLabel(n_a, n_b, QUBIT_LEVELS[q])


def basis_state(label: BasisLabel, cfg: SpaceConfig) -> np.ndarray:
    """Unit vector for a bare label."""
    v = np.zeros(cfg.dim, dtype=complex)
    v[index_of(label, cfg)] = 1.0
    return v


def annihilator(cutoff: int) -> Matrix:
    """Truncated bosonic annihilation operator, <n-1|a|n> = sqrt(n)."""
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    return np.diag(np.sqrt(np.arange(1, cutoff)), 1).astype(complex)


_SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    # sign convention: sigma_z |e> = +|e>, so +omega_q/2 sigma_z raises |e>
    "z": np.array([[-1, 0], [0, 1]], dtype=complex),
    "+": np.array([[0, 0], [1, 0]], dtype=complex),   # |e><g|
    "-": np.array([[0, 1], [0, 0]], dtype=complex),   # |g><e|
}


def qubit_operator(which: str) -> Matrix:
    """Pauli / ladder operator on the (g, e) qubit basis: 'x', 'z', '+' or '-'."""
    if which not in _SIGMA:
        raise ValueError(f"unknown qubit operator {which!r}, "
                         f"expected one of {sorted(_SIGMA)}")
    return _SIGMA[which].copy()


def lift(op: Matrix, slot: str, cfg: SpaceConfig) -> Matrix:
    """Embed a single-subsystem operator into the composite space.

    slot is 'a', 'b' or 'qubit'; the operator acts as identity on the other
    two factors, consistent with index_of ordering.
    """
    op = np.asarray(op, dtype=complex)
    expected = {"a": cfg.cutoff_a, "b": cfg.cutoff_b, "qubit": 2}
    if slot not in expected:
        raise ValueError(f"slot must be 'a', 'b' or 'qubit', got {slot!r}")
    if op.shape != (expected[slot], expected[slot]):
        raise ValueError(f"operator shape {op.shape} does not match slot "
                         f"{slot!r} (dimension {expected[slot]})")
    eye_a = np.eye(cfg.cutoff_a)
    eye_b = np.eye(cfg.cutoff_b)
    eye_q = np.eye(2)
    if slot == "a":
        return np.kron(np.kron(op, eye_b), eye_q)
    if slot == "b":
        return np.kron(np.kron(eye_a, op), eye_q)
    return np.kron(np.kron(eye_a, eye_b), op)


def hermiticity_defect(m: Matrix) -> float:
    """max|M - M^dag|, the absolute deviation from Hermiticity."""
    return float(np.abs(m - m.conj().T).max())


def require_hermitian(m: Matrix, rel_tol: float = 1e-12) -> None:
    """Raise if M deviates from Hermiticity by more than rel_tol * max|M|."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"operator must be square, got shape {m.shape}")
    scale = float(np.abs(m).max())
    if scale == 0.0:
        return
    if hermiticity_defect(m) > rel_tol * scale:
        raise ValueError("operator is not Hermitian within tolerance")
