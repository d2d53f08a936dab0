"""First and second moments of the evolved two-mode state.

All optical moments are reported in the frame co-rotating with the cavity;
an optional phase-restore step in the engine maps them back to the lab frame.
The covariance matrix uses the complex basis (a, b, a^dag, b^dag) with the
vacuum normalized to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decoupling import DecouplingCoefficients
from .errors import ConsistencyError, ValidationError

_BOGOLIUBOV_TOL = 1e-6
_OVERLAP_IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class InitialState:
    """Coherent amplitudes of the optical and mechanical modes at tau = 0."""

    mu_c: complex
    mu_m: complex = 0.0


@dataclass(frozen=True)
class MomentSet:
    """All first and second moments at one time, plus the auxiliaries
    entering them: the drive-induced displacement, the per-photon
    displacement, and the overlap factor of the photon-conditioned
    mechanical kicks."""

    a: complex
    b: complex
    a2: complex
    b2: complex
    ab: complex
    ab_dag: complex
    na: float
    nb: float
    drive_shift: complex
    photon_shift: complex
    kick_overlap: complex
    tau: float


def displacement_amplitudes(
    alpha: complex, beta: complex, coeffs: DecouplingCoefficients
) -> tuple[complex, complex]:
    """Drive-induced and per-photon mechanical displacement amplitudes.

    The Heisenberg-picture mechanical mode reads
    b(tau) = alpha*b + beta*b^dag + drive_shift + photon_shift * N.
    """
    residual = abs(abs(alpha) ** 2 - abs(beta) ** 2 - 1.0)
    if residual > _BOGOLIUBOV_TOL:
        raise ValidationError(
            f"Bogoliubov identity violated by {residual:.3g}; alpha/beta inconsistent"
        )
    plus = alpha + beta
    minus = alpha - beta
    drive_shift = plus * coeffs.mom - 1j * minus * coeffs.pos
    photon_shift = plus * coeffs.num_mom - 1j * minus * coeffs.num_pos
    return drive_shift, photon_shift


def kick_overlap(coeffs: DecouplingCoefficients, mu_m: complex) -> complex:
    """Expectation of the ordered photon-conditioned displacement product.

    Follows from composing the two Weyl displacement operators; its squared
    magnitude is exp(-|number_displacement|^2) independently of mu_m.
    """
    k_n = coeffs.number_displacement
    exponent = 0.5 * (
        -abs(k_n) ** 2
        - 2j * coeffs.num_mom * coeffs.num_pos
        - 2.0 * mu_m * k_n
        + 2.0 * np.conj(mu_m) * np.conj(k_n)
    )
    return complex(np.exp(exponent))


def moments(
    coeffs: DecouplingCoefficients,
    alpha: complex,
    beta: complex,
    init: InitialState,
    *,
    tau: float | None = None,
) -> MomentSet:
    """Assemble all eight moments of the evolved state.

    ``tau`` optionally cross-checks that the coefficients were evaluated at
    the intended time (mismatch raises ConsistencyError).
    """
    if tau is not None and abs(coeffs.tau - tau) > 1e-9 * max(1.0, abs(tau)):
        raise ConsistencyError(
            f"coefficients evaluated at tau={coeffs.tau:g}, moments requested at tau={tau:g}"
        )

    mu_c = complex(init.mu_c)
    mu_m = complex(init.mu_m)
    nc = abs(mu_c) ** 2

    drive_shift, photon_shift = displacement_amplitudes(alpha, beta, coeffs)
    overlap = kick_overlap(coeffs, mu_m)
    k_n = coeffs.number_displacement
    k_n_sq = abs(k_n) ** 2
    if abs(abs(overlap) ** 2 - np.exp(-k_n_sq)) > _OVERLAP_IDENTITY_TOL * max(
        1.0, np.exp(-k_n_sq)
    ):
        raise ValidationError("kick-overlap magnitude identity violated")

    theta = coeffs.kerr_phase
    phi = coeffs.coherent_phase
    eth = np.exp(-1j * theta)
    shift = drive_shift + photon_shift * nc

    a = np.exp(-1j * phi) * np.exp(nc * (eth - 1.0)) * overlap * mu_c
    b = alpha * mu_m + beta * np.conj(mu_m) + shift
    a2 = (
        np.exp(-2j * phi)
        * mu_c**2
        * eth
        * np.exp(nc * (np.exp(-2j * theta) - 1.0))
        * np.exp(-k_n_sq)
        * overlap**2
    )
    b2 = (
        alpha**2 * mu_m**2
        + alpha * beta * (2.0 * abs(mu_m) ** 2 + 1.0)
        + beta**2 * np.conj(mu_m) ** 2
        + 2.0 * (alpha * mu_m + beta * np.conj(mu_m)) * shift
        + drive_shift**2
        + 2.0 * drive_shift * photon_shift * nc
        + photon_shift**2 * nc * (1.0 + nc)
    )
    nb = (
        (abs(alpha) ** 2 + abs(beta) ** 2) * abs(mu_m) ** 2
        + np.conj(alpha) * beta * np.conj(mu_m) ** 2
        + alpha * np.conj(beta) * mu_m**2
        + (np.conj(alpha) * np.conj(mu_m) + np.conj(beta) * mu_m) * shift
        + (alpha * mu_m + beta * np.conj(mu_m)) * np.conj(shift)
        + 2.0 * np.real(np.conj(drive_shift) * photon_shift) * nc
        + abs(photon_shift) ** 2 * nc * (1.0 + nc)
        + abs(beta) ** 2
        + abs(drive_shift) ** 2
    )
    front = np.exp(-1j * phi) * np.exp(nc * (eth - 1.0)) * mu_c * overlap
    ab = front * (
        alpha * mu_m
        + beta * (np.conj(mu_m) - k_n)
        + drive_shift
        + (nc * eth + 1.0) * photon_shift
    )
    ab_dag = front * (
        np.conj(alpha) * (np.conj(mu_m) - k_n)
        + np.conj(beta) * mu_m
        + np.conj(drive_shift)
        + (nc * eth + 1.0) * np.conj(photon_shift)
    )

    return MomentSet(
        a=complex(a),
        b=complex(b),
        a2=complex(a2),
        b2=complex(b2),
        ab=complex(ab),
        ab_dag=complex(ab_dag),
        na=float(nc),
        nb=float(np.real(nb)),
        drive_shift=complex(drive_shift),
        photon_shift=complex(photon_shift),
        kick_overlap=complex(overlap),
        tau=float(coeffs.tau),
    )


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """4x4 Hermitian second-moment matrix in the basis (a, b, a^dag, b^dag),
    plus the first-moment vector; the vacuum gives the identity."""

    sigma: np.ndarray
    d: np.ndarray

    def optical_block(self) -> np.ndarray:
        return self.sigma[np.ix_([0, 2], [0, 2])]

    def mechanical_block(self) -> np.ndarray:
        return self.sigma[np.ix_([1, 3], [1, 3])]

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.sigma - self.sigma.conj().T)))


def covariance(m: MomentSet) -> CovarianceMatrix:
    """Covariance matrix from a moment set.

    Entries follow sigma_nm = <{X_n, X_m^dag}> - 2 <X_n><X_m^dag>; the
    remaining elements are filled by Hermitian symmetry.
    """
    a, b = m.a, m.b
    s11 = 1.0 + 2.0 * m.na - 2.0 * abs(a) ** 2
    s22 = 1.0 + 2.0 * m.nb - 2.0 * abs(b) ** 2
    s13 = 2.0 * m.a2 - 2.0 * a * a
    s24 = 2.0 * m.b2 - 2.0 * b * b
    s12 = 2.0 * m.ab_dag - 2.0 * a * np.conj(b)
    s14 = 2.0 * m.ab - 2.0 * a * b

    sigma = np.array(
        [
            [s11, s12, s13, s14],
            [np.conj(s12), s22, s14, s24],
            [np.conj(s13), np.conj(s14), s11, np.conj(s12)],
            [np.conj(s14), np.conj(s24), s12, s22],
        ],
        dtype=complex,
    )
    d = np.array([a, b, np.conj(a), np.conj(b)], dtype=complex)
    return CovarianceMatrix(sigma=sigma, d=d)
