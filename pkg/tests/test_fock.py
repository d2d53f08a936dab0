import math

import numpy as np
import pytest
from scipy.sparse.linalg import eigsh

from optomech import (
    ConstantSqueezing,
    Coupling,
    CutoffInsufficientError,
    DomainError,
    InitialState,
    SystemParams,
    evaluate_point,
)
from optomech import fock


def free_system(omega_c=1.0):
    return SystemParams(omega_c, Coupling(g=0.0), ConstantSqueezing(0.0))


@pytest.fixture(scope="module")
def certified_point():
    system = SystemParams(1.0, Coupling(g=0.5), ConstantSqueezing(0.3))
    init = InitialState(1.0, 0.0)
    return system, init, np.pi / 2


class TestBuildHamiltonian:
    def test_free_diagonal(self):
        h = fock.build_hamiltonian(free_system(omega_c=2.0), 0.0, 3, 4).toarray()
        want = np.diag([2.0 * nc + nm for nc in range(3) for nm in range(4)])
        assert np.allclose(h, want)

    def test_drive_matrix_element(self):
        system = SystemParams(1.0, Coupling(g=0.0, drive=0.37), ConstantSqueezing(0.0))
        h = fock.build_hamiltonian(system, 0.0, 4, 6)
        # first mechanical excitation from the ground state
        assert h[1, 0] == pytest.approx(0.37)

    def test_hermitian(self):
        system = SystemParams(1.2, Coupling(g=0.5, drive=0.2), ConstantSqueezing(0.3))
        h = fock.build_hamiltonian(system, 0.0, 6, 8)
        assert np.max(np.abs((h - h.conj().T).toarray())) == 0.0

    def test_ground_energy_converged_in_mechanical_cutoff(self):
        # fixed photon cutoff: each photon block converges exponentially
        system = SystemParams(1.0, Coupling(g=0.5), ConstantSqueezing(0.3))
        e_small = eigsh(
            fock.build_hamiltonian(system, 0.0, 6, 24).tocsc(),
            k=1, which="SA", return_eigenvectors=False,
        )[0]
        e_large = eigsh(
            fock.build_hamiltonian(system, 0.0, 6, 48).tocsc(),
            k=1, which="SA", return_eigenvectors=False,
        )[0]
        assert abs(e_small - e_large) < 1e-6

    def test_tiny_cutoffs_rejected(self):
        with pytest.raises(DomainError):
            fock.build_hamiltonian(free_system(), 0.0, 1, 8)


class TestEvolve:
    def test_vacuum_is_stationary_up_to_phase(self):
        psi0 = fock.product_coherent(InitialState(0.0, 0.0), 4, 4)
        final = fock.evolve(psi0, free_system(), 1.7)
        assert fock.fidelity(psi0, final) == pytest.approx(1.0)

    def test_free_mechanical_rotation(self):
        init = InitialState(0.0, 1.0)
        psi0 = fock.product_coherent(init, 4, 24)
        final = fock.evolve(psi0, free_system(), 1.3)
        measured = fock.measure_moments(final, 1.0, 1.3)
        assert measured.b == pytest.approx(np.exp(-1.3j), abs=1e-9)

    def test_norm_preserved(self, certified_point):
        system, init, tau = certified_point
        final = fock.evolve(fock.product_coherent(init, 16, 48), system, tau)
        assert abs(final.norm_sq() - 1.0) < 1e-8

    def test_step_halving_stability(self, certified_point):
        # halving the step must not move any moment appreciably
        system, init, tau = certified_point
        psi0 = fock.product_coherent(init, 16, 48)
        coarse = fock.evolve(psi0, system, tau, dt=0.05, check_convergence=False)
        fine = fock.evolve(psi0, system, tau, dt=0.025, check_convergence=False)
        m1 = fock.measure_moments(coarse, system.omega_c, tau)
        m2 = fock.measure_moments(fine, system.omega_c, tau)
        for name in ("a", "b", "a2", "b2", "na", "nb", "ab", "ab_dag"):
            drift = abs(complex(getattr(m1, name)) - complex(getattr(m2, name)))
            assert drift <= 1e-4 * max(abs(complex(getattr(m2, name))), 1e-6)

    def test_undersized_basis_flagged(self):
        with pytest.raises(CutoffInsufficientError) as err:
            fock.product_coherent(InitialState(1.0, 0.0), 4, 6)
        assert err.value.diagnostics["n_c"] == 4

    def test_matches_analytic_moments(self, certified_point):
        system, init, tau = certified_point
        rec = evaluate_point(system, init, tau)
        final = fock.evolve(fock.product_coherent(init, 16, 48), system, tau)
        measured = fock.measure_moments(final, system.omega_c, tau)
        for name in ("a", "b", "a2", "b2", "na", "nb", "ab", "ab_dag"):
            ana = complex(getattr(rec.moments, name))
            orc = complex(getattr(measured, name))
            assert abs(ana - orc) <= max(1e-3 * abs(orc), 1e-6), name


class TestAnalyticKet:
    def test_trivial_coefficients_give_product_coherent(self):
        init = InitialState(0.6 + 0.1j, -0.3 + 0.4j)
        from optomech import DecouplingCoefficients

        ket = fock.analytic_ket(DecouplingCoefficients.zeros(), 1.0, 0.0, init, 12, 12)
        direct = fock.product_coherent(init, 12, 12)
        assert fock.fidelity(ket, direct) == pytest.approx(1.0, abs=1e-12)

    def test_fidelity_against_evolution(self, certified_point):
        system, init, tau = certified_point
        rec = evaluate_point(system, init, tau)
        ket = fock.analytic_ket(
            rec.coeffs, rec.alpha, rec.beta, init, 16, 48, omega_c=system.omega_c
        )
        final = fock.evolve(fock.product_coherent(init, 16, 48), system, tau)
        assert fock.fidelity(ket, final) >= 0.999

    def test_branch_weights_follow_photon_statistics(self, certified_point):
        system, init, tau = certified_point
        rec = evaluate_point(system, init, tau)
        ket = fock.analytic_ket(rec.coeffs, rec.alpha, rec.beta, init, 16, 48)
        n = np.arange(16)
        poisson = np.exp(-abs(init.mu_c) ** 2) * abs(init.mu_c) ** (2 * n) / [
            float(math.factorial(k)) for k in n
        ]
        assert np.max(np.abs(ket.photon_weights() - poisson)) < 1e-6

    def test_mechanical_purity_tracks_subsystem_eigenvalue(self):
        # early times: the reduced state is still near-Gaussian, so its purity
        # follows 1/nu; later it is merely reported
        system = SystemParams(1.0, Coupling(g=0.5), ConstantSqueezing(0.3))
        init = InitialState(1.0, 0.0)
        for tau in (0.15, 0.4):
            rec = evaluate_point(system, init, tau)
            final = fock.evolve(fock.product_coherent(init, 16, 48), system, tau)
            purity = fock.mechanical_purity(final)
            gauss = 1.0 / rec.report.nu_me
            assert abs(purity - gauss) <= 0.02 * gauss
        late = fock.evolve(fock.product_coherent(init, 16, 48), system, np.pi / 2)
        print(f"late-time mechanical purity: {fock.mechanical_purity(late):.6f}")

    def test_squeeze_rotation_matrix_implements_bogoliubov(self):
        from optomech import constant_bogoliubov

        alpha, beta = constant_bogoliubov(0.3, 1.1)
        n = 120
        u = fock.squeeze_rotation_matrix(alpha, beta, n)
        b = fock.destroy(n).toarray()
        sandwich = u.conj().T @ b @ u
        want = alpha * b + beta * b.T
        # compare well inside the truncation edge: the squeeze operator mixes
        # levels in steps of two with geometrically decaying weight
        block = slice(0, 30)
        assert np.max(np.abs(sandwich[block, block] - want[block, block])) < 1e-8
