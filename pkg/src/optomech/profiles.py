"""Time-dependence profiles and system parameters.

Everything is dimensionless: time is measured in units of the inverse
mechanical frequency (tau = omega_m * t) and all couplings in units of
omega_m.  Profile objects are immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

_SPAN_SLACK = 1e-9


def _check_table(tau: np.ndarray, values: np.ndarray) -> None:
    if tau.ndim != 1 or values.shape != tau.shape or tau.size < 2:
        raise DomainError("tabulated profile needs matching 1-d arrays with >= 2 samples")
    if not np.all(np.isfinite(tau)) or not np.all(np.isfinite(values)):
        raise DomainError("tabulated profile contains non-finite entries")
    if np.any(np.diff(tau) <= 0):
        raise DomainError("tabulated profile times must be strictly increasing")


@dataclass(frozen=True)
class ConstantSqueezing:
    """Constant squeezing strength D2(tau) = d2."""

    d2: float

    def d2_at(self, tau):
        return np.full(np.shape(np.asarray(tau, dtype=float)), float(self.d2))

    def max_abs(self, tau_max: float) -> float:
        return abs(self.d2)

    def require_span(self, tau_max: float) -> None:
        pass


@dataclass(frozen=True)
class ModulatedSqueezing:
    """Sinusoidally modulated squeezing D2(tau) = d2 * cos(omega0 * tau)."""

    d2: float
    omega0: float

    def d2_at(self, tau):
        return self.d2 * np.cos(self.omega0 * np.asarray(tau, dtype=float))

    def max_abs(self, tau_max: float) -> float:
        return abs(self.d2)

    def require_span(self, tau_max: float) -> None:
        pass


@dataclass(frozen=True, eq=False)
class TabulatedSqueezing:
    """Squeezing sampled on a strictly increasing time grid.

    Values between samples come from a monotone piecewise-cubic (PCHIP)
    interpolant, which does not overshoot the tabulated range.
    """

    tau: np.ndarray
    values: np.ndarray
    _interp: PchipInterpolator = field(init=False, repr=False)

    def __post_init__(self):
        tau = np.asarray(self.tau, dtype=float)
        values = np.asarray(self.values, dtype=float)
        _check_table(tau, values)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_interp", PchipInterpolator(tau, values, extrapolate=False))

    def d2_at(self, tau):
        t = np.asarray(tau, dtype=float)
        out = self._interp(np.clip(t, self.tau[0], self.tau[-1]))
        if np.any(t < self.tau[0] - _SPAN_SLACK) or np.any(t > self.tau[-1] + _SPAN_SLACK):
            raise DomainError("requested time outside the tabulated squeezing span")
        return out

    def max_abs(self, tau_max: float) -> float:
        return float(np.max(np.abs(self.values)))

    def require_span(self, tau_max: float) -> None:
        if self.tau[0] > _SPAN_SLACK or self.tau[-1] < tau_max - _SPAN_SLACK:
            raise DomainError(
                f"tabulated squeezing covers [{self.tau[0]:g}, {self.tau[-1]:g}], "
                f"needed [0, {tau_max:g}]"
            )


SqueezingProfile = Union[ConstantSqueezing, ModulatedSqueezing, TabulatedSqueezing]


@dataclass(frozen=True, eq=False)
class TabulatedSignal:
    """A generic real signal sampled on a strictly increasing time grid."""

    tau: np.ndarray
    values: np.ndarray
    _interp: PchipInterpolator = field(init=False, repr=False)

    def __post_init__(self):
        tau = np.asarray(self.tau, dtype=float)
        values = np.asarray(self.values, dtype=float)
        _check_table(tau, values)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_interp", PchipInterpolator(tau, values, extrapolate=False))

    def at(self, tau):
        t = np.asarray(tau, dtype=float)
        if np.any(t < self.tau[0] - _SPAN_SLACK) or np.any(t > self.tau[-1] + _SPAN_SLACK):
            raise DomainError("requested time outside the tabulated signal span")
        return self._interp(np.clip(t, self.tau[0], self.tau[-1]))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def require_span(self, tau_max: float) -> None:
        if self.tau[0] > _SPAN_SLACK or self.tau[-1] < tau_max - _SPAN_SLACK:
            raise DomainError(
                f"tabulated signal covers [{self.tau[0]:g}, {self.tau[-1]:g}], "
                f"needed [0, {tau_max:g}]"
            )


Signal = Union[float, TabulatedSignal]


def _signal_at(sig: Signal, tau):
    if isinstance(sig, TabulatedSignal):
        return sig.at(tau)
    return np.full(np.shape(np.asarray(tau, dtype=float)), float(sig))


@dataclass(frozen=True)
class Coupling:
    """Light-matter coupling g and linear mechanical drive, each either a
    constant or a :class:`TabulatedSignal`."""

    g: Signal = 0.0
    drive: Signal = 0.0

    def g_at(self, tau):
        return _signal_at(self.g, tau)

    def drive_at(self, tau):
        return _signal_at(self.drive, tau)

    @property
    def is_constant(self) -> bool:
        return not isinstance(self.g, TabulatedSignal) and not isinstance(
            self.drive, TabulatedSignal
        )

    @property
    def drive_is_zero(self) -> bool:
        return not isinstance(self.drive, TabulatedSignal) and float(self.drive) == 0.0

    def g_max(self, tau_max: float) -> float:
        if isinstance(self.g, TabulatedSignal):
            return self.g.max_abs()
        return abs(float(self.g))

    def require_span(self, tau_max: float) -> None:
        for sig in (self.g, self.drive):
            if isinstance(sig, TabulatedSignal):
                sig.require_span(tau_max)


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless parameters of the two-mode system.

    omega_c is the cavity frequency in units of the mechanical frequency;
    the interaction and drive live in ``coupling`` and the mechanical
    squeezing term in ``squeezing``.
    """

    omega_c: float = 1.0
    coupling: Coupling = Coupling()
    squeezing: SqueezingProfile = ConstantSqueezing(0.0)
