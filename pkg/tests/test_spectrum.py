import numpy as np
import pytest

from freqconv.fockspace import BasisLabel, SpaceConfig, index_of
from freqconv.models import (
    GENERALIZED_RABI,
    QUANTUM_RABI,
    ModelParams,
    build_hamiltonian,
    parity_operator,
)
from freqconv.spectrum import (
    AnticrossingResult,
    SearchError,
    diagonalize,
    identify_level,
    locate_anticrossing,
    pair_gap,
    sweep_levels,
)

from conftest import single_photon_params, two_photon_ge_params

PAIR_SP = (BasisLabel(1, 0, "g"), BasisLabel(0, 1, "e"))
PAIR_GE = (BasisLabel(1, 0, "g"), BasisLabel(0, 2, "e"))

# Frozen from direct evaluation of the analytic on-resonance couplings:
# g_a g_b sin(2 theta) (1/omega_b - 1/omega_a) at g = 0.15, theta = pi/6,
# and the equal-coupling two-photon closed form at g = 0.2, omega_a = 5.
GEFF_SP_FIG2 = 3.2475952641916445e-3
GEFF_GE_FIG5 = 6.257162641055461e-4


class TestDiagonalize:
    def test_diagonal_input(self):
        h = np.diag([3.0, -1.0, 2.0]).astype(complex)
        es = diagonalize(h)
        assert np.allclose(es.energies, [-1.0, 2.0, 3.0])
        for j, energy in enumerate(es.energies):
            v = es.vectors[:, j]
            assert np.allclose(h @ v, energy * v, atol=1e-14)

    def test_symmetric_two_level(self):
        g = 0.37
        es = diagonalize(np.array([[0.0, g], [g, 0.0]], dtype=complex))
        assert np.allclose(es.energies, [-g, g])
        assert es.energies[1] - es.energies[0] == pytest.approx(2 * g, rel=1e-14)

    def test_bare_combinations(self, cfg3):
        p = ModelParams(omega_a=3.0, omega_b=2.0, omega_q=1.0, g_a=0.0, g_b=0.0)
        es = diagonalize(build_hamiltonian(QUANTUM_RABI, p, cfg3))
        expected = sorted(
            3.0 * na + 2.0 * nb + (0.5 if q else -0.5)
            for na in range(3) for nb in range(3) for q in (0, 1))
        assert np.allclose(es.energies, expected, atol=1e-13)

    def test_orthonormal(self, cfg3):
        es = diagonalize(build_hamiltonian(
            GENERALIZED_RABI, single_photon_params(), cfg3))
        gram = es.vectors.conj().T @ es.vectors
        assert np.abs(gram - np.eye(cfg3.dim)).max() < 1e-10
        h = build_hamiltonian(GENERALIZED_RABI, single_photon_params(), cfg3)
        residual = h @ es.vectors - es.vectors * es.energies
        assert np.abs(residual).max() <= 1e-10 * np.linalg.norm(h)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            diagonalize(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


class TestIdentify:
    def test_uncoupled_exact(self, cfg3):
        p = ModelParams(omega_a=3.0, omega_b=2.0, omega_q=1.0, g_a=0.0, g_b=0.0)
        es = diagonalize(build_hamiltonian(QUANTUM_RABI, p, cfg3))
        for lbl in (BasisLabel(0, 0, "g"), BasisLabel(1, 2, "e")):
            match = identify_level(es, lbl, cfg3)
            assert match.overlap == pytest.approx(1.0, abs=1e-12)

    def test_far_detuned_branch_is_clean(self, cfg6):
        # derived from full diagonalization at cutoff 6, far-detuned qubit
        p = single_photon_params(omega_q=0.9)
        es = diagonalize(build_hamiltonian(GENERALIZED_RABI, p, cfg6))
        match = identify_level(es, BasisLabel(1, 0, "g"), cfg6)
        assert match.overlap > 0.9

    def test_center_hybridization(self, cfg6):
        result = locate_anticrossing(
            GENERALIZED_RABI, single_photon_params(), PAIR_SP,
            (0.95, 1.1), cfg6)
        es = diagonalize(build_hamiltonian(
            GENERALIZED_RABI,
            single_photon_params(omega_q=result.omega_q_star), cfg6))
        i = index_of(BasisLabel(1, 0, "g"), cfg6)
        weights = np.abs(es.vectors[i, [result.level_lo, result.level_hi]]) ** 2
        assert np.all(np.abs(weights - 0.5) < 0.05)


class TestSweep:
    def test_plain_table(self, cfg3):
        grid = np.linspace(0.8, 1.2, 5)
        table = sweep_levels(QUANTUM_RABI, two_photon_ge_params(), grid, cfg3)
        assert table.energies.shape == (5, cfg3.dim)
        assert table.tracked_indices.shape == (5, 0)

    def test_branches_anticross_near_reference(self, cfg6):
        """The tracked branches of the single-photon pair approach each other
        close to the nominal resonance and separate away from it."""
        p = single_photon_params()
        grid = np.linspace(0.9, 1.15, 26)
        gaps = [pair_gap(GENERALIZED_RABI, p, PAIR_SP, w, cfg6)[0] for w in grid]
        k = int(np.argmin(gaps))
        assert 0 < k < len(grid) - 1
        assert abs(grid[k] - 1.0) < 0.1

    def test_tracking_continuity(self, cfg4):
        """The gap function is continuous on the grid: the tracked pair
        subspace never jumps to unrelated levels (adjacent-point subspace
        overlap > 0.5) and the gap obeys the bare Lipschitz bound."""
        p = single_photon_params()
        grid = np.linspace(0.8, 1.2, 41)
        prev_sub = None
        prev_gap = None
        for wq in grid:
            gap, lo, hi = pair_gap(GENERALIZED_RABI, p, PAIR_SP, wq, cfg4)
            es = diagonalize(build_hamiltonian(
                GENERALIZED_RABI, single_photon_params(omega_q=wq), cfg4))
            sub = es.vectors[:, [lo, hi]]
            if prev_sub is not None:
                smallest = np.linalg.svd(prev_sub.conj().T @ sub,
                                         compute_uv=False).min()
                assert smallest**2 > 0.5
                assert abs(gap - prev_gap) < 1.2 * (grid[1] - grid[0])
            prev_sub, prev_gap = sub, gap

    def test_grid_validation(self, cfg3):
        with pytest.raises(ValueError):
            sweep_levels(QUANTUM_RABI, two_photon_ge_params(), [1.0, 0.5], cfg3)

    def test_csv_round_trip(self, cfg3, tmp_path):
        grid = np.linspace(0.9, 1.1, 3)
        table = sweep_levels(GENERALIZED_RABI, single_photon_params(), grid,
                             cfg3, track=PAIR_SP)
        path = tmp_path / "levels.csv"
        table.write_csv(path)
        rows = path.read_text().splitlines()
        header = rows[0].split(",")
        assert header[0] == "omega_q"
        assert header[1] == "E_0"
        assert header[-2:] == ["idx_1_0_g", "idx_0_1_e"]
        assert len(rows) == 4
        first = rows[1].split(",")
        assert float(first[0]) == 0.9
        assert float(first[1]) == pytest.approx(table.energies[0, 0], abs=0)


class TestAnticrossing:
    def test_uncoupled_pair_crosses(self, cfg3):
        p = ModelParams(omega_a=3.0, omega_b=2.0, omega_q=1.0, g_a=0.0, g_b=0.0)
        result = locate_anticrossing(GENERALIZED_RABI, p, PAIR_SP,
                                     (0.9, 1.1), cfg3)
        assert result.omega_q_star == pytest.approx(1.0, abs=1e-7)
        assert result.delta_min < 1e-7

    def test_single_photon_splitting(self, cfg6):
        result = locate_anticrossing(GENERALIZED_RABI, single_photon_params(),
                                     PAIR_SP, (0.9, 1.15), cfg6)
        assert result.geff_numeric == pytest.approx(GEFF_SP_FIG2, rel=0.05)
        assert isinstance(result, AnticrossingResult)
        assert result.level_hi > result.level_lo

    def test_two_photon_splitting(self, cfg6):
        result = locate_anticrossing(QUANTUM_RABI, two_photon_ge_params(),
                                     PAIR_GE, (0.9, 1.25), cfg6)
        assert result.geff_numeric == pytest.approx(GEFF_GE_FIG5, rel=0.05)

    def test_edge_minimum_raises(self, cfg4):
        with pytest.raises(SearchError):
            locate_anticrossing(GENERALIZED_RABI, single_photon_params(),
                                PAIR_SP, (1.3, 1.5), cfg4)

    def test_cutoff_convergence(self):
        """Raising both cutoffs by 2 changes the splitting by < 0.1%."""
        results = [locate_anticrossing(GENERALIZED_RABI, single_photon_params(),
                                       PAIR_SP, (0.95, 1.1), SpaceConfig(n, n))
                   for n in (6, 8)]
        d6, d8 = (r.delta_min for r in results)
        assert abs(d8 - d6) / d6 < 1e-3

    def test_mode_relabel_symmetry(self, cfg4):
        """Exchanging g_a <-> g_b together with omega_a <-> omega_b relabels
        the two modes; the relabeled pair shows the same minimum splitting."""
        p1 = ModelParams(omega_a=3.0, omega_b=2.0, omega_q=1.0,
                         g_a=0.10, g_b=0.18, theta=np.pi / 6)
        p2 = ModelParams(omega_a=2.0, omega_b=3.0, omega_q=1.0,
                         g_a=0.18, g_b=0.10, theta=np.pi / 6)
        pair2 = (BasisLabel(0, 1, "g"), BasisLabel(1, 0, "e"))
        r1 = locate_anticrossing(GENERALIZED_RABI, p1, PAIR_SP, (0.9, 1.15), cfg4)
        r2 = locate_anticrossing(GENERALIZED_RABI, p2, pair2, (0.9, 1.15), cfg4)
        assert r2.delta_min == pytest.approx(r1.delta_min, rel=1e-9)
        assert r2.omega_q_star == pytest.approx(r1.omega_q_star, abs=1e-7)

    def test_window_validation(self, cfg3):
        with pytest.raises(ValueError):
            locate_anticrossing(GENERALIZED_RABI, single_photon_params(),
                                PAIR_SP, (1.1, 0.9), cfg3)


class TestParityStructure:
    def test_eigenvectors_have_definite_parity(self, cfg4):
        """Away from degeneracies, quantum Rabi eigenvectors are parity
        eigenstates."""
        p = two_photon_ge_params(omega_q=0.77)
        es = diagonalize(build_hamiltonian(QUANTUM_RABI, p, cfg4))
        pi_op = parity_operator(cfg4)
        spacing = np.diff(es.energies)
        for j in range(es.dim):
            isolated = ((j == 0 or spacing[j - 1] > 1e-6)
                        and (j == es.dim - 1 or spacing[j] > 1e-6))
            if not isolated:
                continue
            v = es.vectors[:, j]
            expect = (v.conj() @ pi_op @ v).real
            assert abs(abs(expect) - 1.0) < 1e-10
