"""Brute-force validator in a truncated two-mode Fock space.

Evolves the exact Hamiltonian with a midpoint-sampled per-step exponential
(applied with a sparse Krylov expm) and measures the same moments as the
analytic pipeline.  Also constructs the closed-form evolved ket directly
from the decoupling coefficients for fidelity cross-checks.  Only the
small-parameter envelope is certified; large couplings blow past any
affordable cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

from .decoupling import DecouplingCoefficients
from .errors import ConvergenceError, CutoffInsufficientError, DomainError
from .moments import InitialState
from .profiles import ConstantSqueezing, SystemParams

_NORM_TOL = 1e-8
_TAIL_TOL = 1e-8
_TAIL_FRACTION = 0.1
_HALVING_TOL = 1e-4


@dataclass
class FockState:
    """Two-mode amplitude tensor indexed as amplitudes[n_photons, n_phonons]."""

    amplitudes: np.ndarray

    @property
    def n_c(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def n_m(self) -> int:
        return self.amplitudes.shape[1]

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def photon_weights(self) -> np.ndarray:
        """Probability of each photon number (mechanical trace)."""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def tail_fractions(self) -> tuple[float, float]:
        """Occupation fraction in the top 10% of each index."""
        p = np.abs(self.amplitudes) ** 2
        total = max(np.sum(p), 1e-300)
        # the window always covers at least the last basis state
        c_edge = min(int(np.ceil((1.0 - _TAIL_FRACTION) * self.n_c)), self.n_c - 1)
        m_edge = min(int(np.ceil((1.0 - _TAIL_FRACTION) * self.n_m)), self.n_m - 1)
        return (
            float(np.sum(p[c_edge:, :]) / total),
            float(np.sum(p[:, m_edge:]) / total),
        )

    def require_tail_ok(self) -> None:
        c_tail, m_tail = self.tail_fractions()
        if c_tail > _TAIL_TOL or m_tail > _TAIL_TOL:
            raise CutoffInsufficientError(
                f"basis tail occupied (optical {c_tail:.3g}, mechanical {m_tail:.3g}); "
                f"increase the cutoffs ({self.n_c}, {self.n_m})",
                optical_tail=c_tail,
                mechanical_tail=m_tail,
                n_c=self.n_c,
                n_m=self.n_m,
            )


def destroy(n: int) -> sp.csr_matrix:
    """Annihilation operator on an n-dimensional truncated Fock space."""
    return sp.diags(np.sqrt(np.arange(1, n)), 1, format="csr")


def coherent_amplitudes(mu: complex, n: int) -> np.ndarray:
    """Truncated Fock amplitudes of a coherent state (log-domain, overflow-safe)."""
    m = np.arange(n)
    mag = abs(mu)
    if mag == 0.0:
        out = np.zeros(n, dtype=complex)
        out[0] = 1.0
        return out
    log_mag = -0.5 * mag**2 + m * np.log(mag) - 0.5 * gammaln(m + 1.0)
    return np.exp(log_mag) * np.exp(1j * m * np.angle(mu))


def product_coherent(init: InitialState, n_c: int, n_m: int) -> FockState:
    """Separable coherent state |mu_c> x |mu_m>."""
    state = FockState(
        np.outer(coherent_amplitudes(init.mu_c, n_c), coherent_amplitudes(init.mu_m, n_m))
    )
    state.require_tail_ok()
    return state


def build_hamiltonian(system: SystemParams, tau: float, n_c: int, n_m: int) -> sp.csr_matrix:
    """Sparse Hermitian Hamiltonian at time tau on the truncated space."""
    if n_c < 2 or n_m < 2:
        raise DomainError("Fock cutoffs must be at least 2")
    b = destroy(n_m)
    pos = (b + b.conj().T).tocsr()
    num_m = sp.diags(np.arange(n_m, dtype=float), format="csr")
    num_c = sp.diags(np.arange(n_c, dtype=float), format="csr")
    eye_c = sp.identity(n_c, format="csr")
    eye_m = sp.identity(n_m, format="csr")

    d2 = float(system.squeezing.d2_at(tau))
    g = float(system.coupling.g_at(tau))
    d1 = float(system.coupling.drive_at(tau))

    mech = num_m + d2 * (pos @ pos) + d1 * pos
    h = (
        system.omega_c * sp.kron(num_c, eye_m, format="csr")
        + sp.kron(eye_c, mech, format="csr")
        - g * sp.kron(num_c, pos, format="csr")
    )
    return h.tocsr()


def default_dt(system: SystemParams, tau_final: float, n_c: int) -> float:
    """Step small enough to resolve the fastest scale in the dynamics."""
    rate_sq = 1.0 + 4.0 * system.squeezing.max_abs(tau_final)
    g_scale = system.coupling.g_max(tau_final) * np.sqrt(n_c)
    return 2.0 * np.pi / (200.0 * max(system.omega_c, rate_sq, g_scale, 1.0))


def _is_time_independent(system: SystemParams) -> bool:
    return isinstance(system.squeezing, ConstantSqueezing) and system.coupling.is_constant


def _run_steps(psi: np.ndarray, system: SystemParams, tau_final: float, n_steps: int,
               n_c: int, n_m: int) -> np.ndarray:
    dt = tau_final / n_steps
    static = _is_time_independent(system)
    gen = None
    if static:
        gen = (-1j * dt) * build_hamiltonian(system, 0.0, n_c, n_m)
    for k in range(n_steps):
        if not static:
            mid = (k + 0.5) * dt
            gen = (-1j * dt) * build_hamiltonian(system, mid, n_c, n_m)
        psi = expm_multiply(gen, psi)
    return psi


def evolve(
    psi0: FockState,
    system: SystemParams,
    tau_final: float,
    dt: float | None = None,
    *,
    check_convergence: bool = True,
) -> FockState:
    """Evolve a truncated state to tau_final.

    The propagator is the exponential of the midpoint-sampled Hamiltonian on
    each uniform step (second-order accurate time ordering).  With
    ``check_convergence`` the run is repeated at half the step and the
    moments must agree to 1e-4 relative; the finer state is returned.  Norm
    drift or occupied basis tails raise flagged-run errors with diagnostics.
    """
    if tau_final < 0.0:
        raise DomainError("tau_final must be non-negative")
    n_c, n_m = psi0.n_c, psi0.n_m
    if tau_final == 0.0:
        return FockState(psi0.amplitudes.copy())
    if dt is None:
        dt = default_dt(system, tau_final, n_c)
    n_steps = max(int(np.ceil(tau_final / dt - 1e-12)), 1)

    flat0 = psi0.amplitudes.reshape(-1)
    psi = _run_steps(flat0.copy(), system, tau_final, n_steps, n_c, n_m)
    state = FockState(psi.reshape(n_c, n_m))

    if check_convergence:
        fine = _run_steps(flat0.copy(), system, tau_final, 2 * n_steps, n_c, n_m)
        fine_state = FockState(fine.reshape(n_c, n_m))
        coarse = measure_moments(state, system.omega_c, tau_final)
        refined = measure_moments(fine_state, system.omega_c, tau_final)
        for name in ("a", "b", "a2", "b2", "na", "nb", "ab", "ab_dag"):
            x, y = getattr(coarse, name), getattr(refined, name)
            drift = abs(x - y) / max(abs(y), 1e-6)
            if drift > _HALVING_TOL:
                raise ConvergenceError(
                    f"moment {name} moved by {drift:.3g} under step halving",
                    moment=name,
                    drift=drift,
                    dt=tau_final / n_steps,
                )
        state = fine_state

    drift = abs(state.norm_sq() - 1.0)
    if drift > _NORM_TOL:
        raise ConvergenceError(
            f"norm drifted by {drift:.3g} during evolution", norm_drift=drift
        )
    state.require_tail_ok()
    return state


@dataclass(frozen=True)
class MeasuredMoments:
    """The eight moments measured from a Fock-space state (rotating frame)."""

    a: complex
    b: complex
    a2: complex
    b2: complex
    na: float
    nb: float
    ab: complex
    ab_dag: complex


def measure_moments(state: FockState, omega_c: float, tau: float) -> MeasuredMoments:
    """Measure all eight moments, removing the cavity rotation accumulated by
    a lab-frame evolution (pass omega_c = 0 for states built in the rotating
    frame)."""
    n_c, n_m = state.n_c, state.n_m
    psi = state.amplitudes.reshape(-1)
    a_op = sp.kron(destroy(n_c), sp.identity(n_m, format="csr"), format="csr")
    b_op = sp.kron(sp.identity(n_c, format="csr"), destroy(n_m), format="csr")

    def ev(op):
        return complex(np.vdot(psi, op @ psi))

    phase = np.exp(1j * omega_c * tau)
    a = ev(a_op) * phase
    b = ev(b_op)
    a2 = ev(a_op @ a_op) * phase**2
    b2 = ev(b_op @ b_op)
    na = ev(a_op.conj().T @ a_op).real
    nb = ev(b_op.conj().T @ b_op).real
    ab = ev(a_op @ b_op) * phase
    ab_dag = ev(a_op @ b_op.conj().T) * phase
    return MeasuredMoments(a=a, b=b, a2=a2, b2=b2, na=na, nb=nb, ab=ab, ab_dag=ab_dag)


def squeeze_rotation_matrix(alpha: complex, beta: complex, n: int) -> np.ndarray:
    """Fock-space matrix of the Gaussian unitary with the given Bogoliubov pair.

    Any single-mode quadratic unitary is a squeeze times a rotation up to a
    global phase; the phase is common to every state the matrix acts on, so
    superpositions built with it carry consistent relative phases.
    """
    r = np.arccosh(max(abs(alpha), 1.0))
    theta = -np.angle(alpha)
    rot = np.diag(np.exp(-1j * theta * np.arange(n)))
    if abs(beta) < 1e-15 or r == 0.0:
        return rot
    phi = np.angle(-beta) - theta
    xi = r * np.exp(1j * phi)
    b = destroy(n).toarray()
    gen = 0.5 * (np.conj(xi) * (b @ b) - xi * (b.T @ b.T))
    return expm(gen) @ rot


def analytic_ket(
    coeffs: DecouplingCoefficients,
    alpha: complex,
    beta: complex,
    init: InitialState,
    n_c: int,
    n_m: int,
    *,
    omega_c: float = 0.0,
) -> FockState:
    """Closed-form evolved ket built from the decoupling coefficients.

    Photon-number branches carry the decoupling phases and a mechanical
    squeezed coherent state displaced once per photon; pass the cavity
    frequency to obtain the lab-frame ket (fidelity against a lab-frame
    evolution), or leave it zero for rotating-frame moments.
    """
    tau = coeffs.tau
    k_conj = np.conj(coeffs.displacement)
    k_n_conj = np.conj(coeffs.number_displacement)
    mu_m = complex(init.mu_m)

    n = np.arange(n_c)
    weights = coherent_amplitudes(init.mu_c, n_c)
    phase_sq = np.exp(-1j * (coeffs.num_sq + coeffs.num_pos * coeffs.num_mom) * n**2)
    linear = (
        omega_c * tau
        + coeffs.num
        + coeffs.num_pos * coeffs.mom
        + coeffs.num_mom * coeffs.pos
        + np.imag(coeffs.number_displacement * mu_m)
    )
    phase_lin = np.exp(-1j * linear * n)
    global_phase = np.exp(
        -1j * (coeffs.pos * coeffs.mom + np.imag(coeffs.displacement * mu_m))
    )

    gauss = squeeze_rotation_matrix(alpha, beta, n_m)
    amplitudes = np.empty((n_c, n_m), dtype=complex)
    for k in range(n_c):
        branch = k_conj + k * k_n_conj + mu_m
        amplitudes[k] = (
            global_phase
            * weights[k]
            * phase_sq[k]
            * phase_lin[k]
            * (gauss @ coherent_amplitudes(branch, n_m))
        )
    state = FockState(amplitudes)
    state.require_tail_ok()
    return state


def fidelity(s1: FockState, s2: FockState) -> float:
    """|<s1|s2>|^2 (insensitive to global phases)."""
    return float(abs(np.vdot(s1.amplitudes.reshape(-1), s2.amplitudes.reshape(-1))) ** 2)


def mechanical_density(state: FockState) -> np.ndarray:
    """Reduced mechanical density matrix (photon index traced out)."""
    a = state.amplitudes
    return np.einsum("nm,nk->mk", a, a.conj())


def mechanical_purity(state: FockState) -> float:
    rho = mechanical_density(state)
    return float(np.real(np.sum(np.abs(rho) ** 2)))


def default_cutoffs(
    init: InitialState, coeffs: DecouplingCoefficients | None = None
) -> tuple[int, int]:
    """Heuristic cutoffs sized from the coherent amplitudes; callers should
    double them if the tail check trips."""

    def room(amplitude: float) -> int:
        return int(np.ceil(amplitude**2 + 6.0 * amplitude + 8.0))

    mu_c = abs(complex(init.mu_c))
    n_c = room(mu_c)
    n_occ = int(np.ceil(mu_c**2 + 4.0 * mu_c + 4.0))
    reach = abs(complex(init.mu_m))
    if coeffs is not None:
        reach += abs(coeffs.displacement) + min(n_occ, n_c - 1) * abs(
            coeffs.number_displacement
        )
    return n_c, room(reach)
