"""Scalar coefficients of the decoupled evolution operator.

The nonlinear part of the evolution factors into an ordered product of
exponentials of six fixed generators: the photon number operator N, its
square N^2, the mechanical position and momentum generators x = b + b^dag
and p = i(b^dag - b), and their photon-number-conditioned versions N*x and
N*p.  Each exponential carries a real scalar coefficient obtained from
definite integrals of the coupling profiles weighted by the complex mode
function of the quadratic sector.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from ._interp import hermite_eval
from .errors import ValidityWarning
from .profiles import Coupling
from .squeezing import QuadraticSolution, zeta


@dataclass(frozen=True)
class DecouplingCoefficients:
    """Coefficients of the six decoupling generators at a single time.

    ``num`` and ``num_sq`` multiply N and N^2; ``pos``/``mom`` multiply the
    bare position/momentum generators, and ``num_pos``/``num_mom`` their
    photon-number-conditioned counterparts.  All six vanish at tau = 0.
    """

    num: float
    num_sq: float
    pos: float
    mom: float
    num_pos: float
    num_mom: float
    tau: float

    @classmethod
    def zeros(cls, tau: float = 0.0) -> "DecouplingCoefficients":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, tau)

    @property
    def displacement(self) -> complex:
        """Mechanical displacement amplitude driven by the linear term."""
        return self.mom + 1j * self.pos

    @property
    def number_displacement(self) -> complex:
        """Mechanical displacement amplitude per cavity photon."""
        return self.num_mom + 1j * self.num_pos

    @property
    def kerr_phase(self) -> float:
        """Kerr-like phase advance of the optical amplitude per cavity photon."""
        return 2.0 * (self.num_sq + self.num_pos * self.num_mom)

    @property
    def coherent_phase(self) -> float:
        """Overall phase accumulated by the optical coherent amplitude."""
        return self.num + self.num_sq + 2.0 * self.num_pos * self.mom


class DecouplingTables:
    """Cumulative quadrature tables for the decoupling coefficients.

    The nested double integrals reuse one cumulative inner integral across the
    outer sweep, so building the tables costs O(grid) and evaluation at any
    tau is an interpolation.  The quadrature grid is the solution grid; the
    solver resolution is the single accuracy knob.
    """

    def __init__(self, sol: QuadraticSolution, coupling: Coupling):
        coupling.require_span(sol.tau_max)
        self._sol = sol
        self._step = sol.step

        grid = sol.tau
        g = np.asarray(coupling.g_at(grid), dtype=float)
        d1 = np.asarray(coupling.drive_at(grid), dtype=float)
        re = sol.cos_sol
        im = -sol.sin_sol  # imaginary part of the mode function

        g_re = g * re
        g_im = g * im
        d_re = d1 * re
        d_im = d1 * im

        def cum(y):
            return cumulative_simpson(y, dx=self._step, initial=0.0)

        cum_g_re = cum(g_re)
        cum_d_re = cum(d_re)

        num_sq_rate = 2.0 * g_im * cum_g_re
        num_rate = -2.0 * (d_im * cum_g_re + g_im * cum_d_re)

        # (values, derivative-on-grid) pairs for Hermite interpolation
        self._tables = {
            "num": (cum(num_rate), num_rate),
            "num_sq": (cum(num_sq_rate), num_sq_rate),
            "pos": (cum_d_re, d_re),
            "mom": (-cum(d_im), -d_im),
            "num_pos": (-cum_g_re, -g_re),
            "num_mom": (cum(g_im), g_im),
        }

    def at(self, tau: float) -> DecouplingCoefficients:
        self._sol._check_span(tau)
        vals = {
            name: float(hermite_eval(self._step, y, dy, float(tau)))
            for name, (y, dy) in self._tables.items()
        }
        return DecouplingCoefficients(tau=float(tau), **vals)


def decoupling_coefficients(
    sol: QuadraticSolution, coupling: Coupling, tau: float
) -> DecouplingCoefficients:
    """Coefficients at a single tau; build a DecouplingTables for sweeps."""
    return DecouplingTables(sol, coupling).at(tau)


def _sinc(x):
    # sin(x)/x with sinc(0) = 1
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def constant_coefficients(g0: float, d2: float, tau: float) -> DecouplingCoefficients:
    """Closed-form coefficients for constant squeezing and coupling, zero drive."""
    z = zeta(d2)
    t = float(tau)
    zt = z * t
    return DecouplingCoefficients(
        num=0.0,
        num_sq=-(g0**2 / z**2) * (1.0 - _sinc(2.0 * zt)) * t,
        pos=0.0,
        mom=0.0,
        num_pos=-(g0 / z) * np.sin(zt),
        num_mom=(g0 / z**2) * (np.cos(zt) - 1.0),
        tau=t,
    )


def number_displacement_sq_constant(g0: float, d2: float, tau: float) -> float:
    """Closed form of |per-photon displacement|^2 for constant squeezing."""
    z = zeta(d2)
    zt = z * float(tau)
    bracket = (z**2 + 1.0) * np.sin(zt) ** 2 + np.cos(2.0 * zt) - 2.0 * np.cos(zt) + 1.0
    return float(g0**2 / z**4 * bracket)


def _resonant_warn(d2: float, tau: float) -> None:
    stretch = abs(d2) * np.cosh(d2 * tau)
    if stretch > 0.1:
        warnings.warn(
            f"resonant closed forms stretched beyond their validity "
            f"(d2*cosh(d2*tau) = {stretch:.3g})",
            ValidityWarning,
            stacklevel=3,
        )


def resonant_coefficients(g0: float, d2: float, tau: float) -> DecouplingCoefficients:
    """Second-order-in-d2 coefficients for squeezing modulated at resonance.

    Polynomial-times-trigonometric forms; terms of order d2^3 are dropped.
    """
    _resonant_warn(d2, tau)
    t = float(tau)
    sin_t, cos_t = np.sin(t), np.cos(t)
    sin_2t, cos_2t = np.sin(2.0 * t), np.cos(2.0 * t)
    sin_half_sq = np.sin(0.5 * t) ** 2

    num_sq = g0**2 * t * (1.0 - d2) * (_sinc(2.0 * t) - 1.0) + 0.5 * g0**2 * d2**2 * (
        (2.0 * t**2 - 3.0) * sin_2t + 2.0 * t + 4.0 * t * cos_2t
    )
    num_pos = (
        -g0 * sin_t
        - g0 * d2 * (t * cos_t - sin_t)
        - 0.5 * g0 * d2**2 * ((t**2 - 2.0) * sin_t + 2.0 * t * cos_t)
    )
    num_mom = (
        -2.0 * g0 * sin_half_sq
        + g0 * d2 * (t * sin_t - 2.0 * sin_half_sq)
        + 0.5 * g0 * d2**2 * ((t**2 - 2.0) * cos_t - 2.0 * t * sin_t + 2.0)
    )
    return DecouplingCoefficients(
        num=0.0,
        num_sq=float(num_sq),
        pos=0.0,
        mom=0.0,
        num_pos=float(num_pos),
        num_mom=float(num_mom),
        tau=t,
    )


def number_displacement_sq_resonant(g0: float, d2: float, tau: float) -> float:
    """Closed form of |per-photon displacement|^2 at resonance, truncated at d2^2."""
    t = float(tau)
    sin_t, cos_t = np.sin(t), np.cos(t)
    sin_2t, cos_2t = np.sin(2.0 * t), np.cos(2.0 * t)
    sin_half_sq = np.sin(0.5 * t) ** 2
    value = (
        4.0 * g0**2 * sin_half_sq
        + g0**2 * d2**2 * (t**2 - 2.0 * (2.0 - t**2) * sin_half_sq)
        - 2.0
        * g0**2
        * d2
        * (t * (sin_t - sin_2t) + (cos_t - cos_2t) - 2.0 * sin_half_sq)
    )
    return float(value)
