"""End-to-end evaluation pipeline.

Given system parameters and an initial coherent state, produce the
decoupling coefficients, Bogoliubov pair, moments, covariance matrix and
non-Gaussianity report on a time grid.  Constant squeezing with a constant
coupling and no drive dispatches to the closed forms; everything else runs
through the adaptive solver and the quadrature tables.  All evaluation is
pure, so grid points may be computed concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decoupling import (
    DecouplingCoefficients,
    DecouplingTables,
    constant_coefficients,
)
from .moments import CovarianceMatrix, InitialState, MomentSet, covariance, moments
from .nongauss import NonGaussianityReport, non_gaussianity
from .profiles import ConstantSqueezing, SystemParams
from .squeezing import constant_bogoliubov, solve_quadratic


@dataclass(frozen=True)
class StateRecord:
    """Everything the pipeline knows about the state at one time."""

    tau: float
    coeffs: DecouplingCoefficients
    alpha: complex
    beta: complex
    moments: MomentSet
    covariance: CovarianceMatrix
    report: NonGaussianityReport


def _closed_form_applies(system: SystemParams) -> bool:
    return (
        isinstance(system.squeezing, ConstantSqueezing)
        and system.coupling.is_constant
        and system.coupling.drive_is_zero
    )


def evaluate_trajectory(
    system: SystemParams,
    init: InitialState,
    taus,
    *,
    resolution: float | None = None,
) -> list[StateRecord]:
    """Evaluate the full pipeline at each requested time."""
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    if taus.size == 0:
        return []
    if np.any(taus < 0.0):
        raise ValueError("times must be non-negative")

    if _closed_form_applies(system):
        d2 = system.squeezing.d2
        g0 = float(system.coupling.g)

        def point(tau: float):
            coeffs = constant_coefficients(g0, d2, tau)
            alpha, beta = constant_bogoliubov(d2, tau)
            return coeffs, complex(alpha), complex(beta)

    else:
        tau_max = float(np.max(taus))
        sol = solve_quadratic(system.squeezing, max(tau_max, 1e-6), resolution)
        tables = DecouplingTables(sol, system.coupling)

        def point(tau: float):
            coeffs = tables.at(tau)
            alpha, beta = sol.bogoliubov(tau)
            return coeffs, complex(alpha), complex(beta)

    records = []
    for tau in taus:
        coeffs, alpha, beta = point(float(tau))
        m = moments(coeffs, alpha, beta, init, tau=float(tau))
        cm = covariance(m)
        report = non_gaussianity(
            cm.optical_block(),
            cm.mechanical_block(),
            cm.sigma,
            number_displacement=coeffs.number_displacement,
            mu_c=init.mu_c,
        )
        records.append(
            StateRecord(
                tau=float(tau),
                coeffs=coeffs,
                alpha=alpha,
                beta=beta,
                moments=m,
                covariance=cm,
                report=report,
            )
        )
    return records


def evaluate_point(
    system: SystemParams,
    init: InitialState,
    tau: float,
    *,
    resolution: float | None = None,
) -> StateRecord:
    """Single-time convenience wrapper around :func:`evaluate_trajectory`."""
    return evaluate_trajectory(system, init, [tau], resolution=resolution)[0]


def quadrature_trajectory(
    system: SystemParams,
    init: InitialState,
    taus,
    *,
    lab_frame: bool = False,
    resolution: float | None = None,
) -> np.ndarray:
    """Optical quadrature expectation values (<x1>, <p1>) on a time grid.

    Rotating-frame by default; ``lab_frame`` restores the cavity rotation
    phase on the optical amplitude.
    """
    records = evaluate_trajectory(system, init, taus, resolution=resolution)
    out = np.empty((len(records), 2))
    for i, rec in enumerate(records):
        a = rec.moments.a
        if lab_frame:
            a *= np.exp(-1j * system.omega_c * rec.tau)
        out[i, 0] = np.sqrt(2.0) * a.real
        out[i, 1] = np.sqrt(2.0) * a.imag
    return out
