"""Closed-form solutions of the 2-D Helmholtz equation F_ss + F_yy + kappa^2 F = 0.

Three kinds of horizontal mode are provided:

* :class:`PlaneWave` ``A cos(kappa (s cos phi + y sin phi) + phase)``
* :class:`BesselVortex` ``A J_m(kappa rho) cos(m chi + phase)`` in polar
  coordinates ``(rho, chi)`` about a center
* :class:`Superposition` of modes sharing one ``kappa``

Every mode evaluates to a :class:`Jet2` holding the value and all partial
derivatives through second order, vectorized over numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial.polynomial import polyval

from ._numeric import real_array
from .bessel import bessel_j_table
from .errors import BadParameter, MixedWavenumbers

KAPPA_RTOL = 1e-12

# kappa*rho below this: evaluate vortices via the Cartesian power series
_VORTEX_SERIES_RADIUS = 1.0
_VORTEX_SERIES_TERMS = 16


@dataclass(frozen=True)
class Jet2:
    """Value and first/second partial derivatives of ``F`` at one or more points."""

    F: np.ndarray
    F_s: np.ndarray
    F_y: np.ndarray
    F_ss: np.ndarray
    F_sy: np.ndarray
    F_yy: np.ndarray

    def __add__(self, other: "Jet2") -> "Jet2":
        return Jet2(
            self.F + other.F,
            self.F_s + other.F_s,
            self.F_y + other.F_y,
            self.F_ss + other.F_ss,
            self.F_sy + other.F_sy,
            self.F_yy + other.F_yy,
        )

    def helmholtz_residual(self, kappa: float) -> np.ndarray:
        return self.F_ss + self.F_yy + kappa * kappa * self.F


def _check_kappa(kappa):
    kappa = float(kappa)
    if not (math.isfinite(kappa) and kappa > 0):
        raise BadParameter(f"Helmholtz wavenumber must be positive and finite, got {kappa}")
    return kappa


class HorizontalMode:
    """Common interface; concrete modes are frozen dataclasses."""

    kappa: float

    def jet(self, s, y) -> Jet2:
        raise NotImplementedError

    def value(self, s, y) -> np.ndarray:
        raise NotImplementedError

    @property
    def amplitude_total(self) -> float:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class PlaneWave(HorizontalMode):
    kappa: float
    amplitude: float = 1.0
    phase: float = 0.0
    direction: float = 0.0

    def _phase(self, s, y):
        return self.kappa * (s * math.cos(self.direction) + y * math.sin(self.direction)) + self.phase

    def value(self, s, y):
        s, y = np.broadcast_arrays(real_array(s), real_array(y))
        return self.amplitude * np.cos(self._phase(s, y))

    def jet(self, s, y):
        s, y = np.broadcast_arrays(real_array(s), real_array(y))
        theta = self._phase(s, y)
        c = self.amplitude * np.cos(theta)
        sn = self.amplitude * np.sin(theta)
        ks = self.kappa * math.cos(self.direction)
        ky = self.kappa * math.sin(self.direction)
        return Jet2(c, -ks * sn, -ky * sn, -ks * ks * c, -ks * ky * c, -ky * ky * c)

    @property
    def amplitude_total(self):
        return abs(self.amplitude)

    def describe(self):
        return {
            "type": "plane_wave",
            "kappa": self.kappa,
            "amplitude": self.amplitude,
            "phase": self.phase,
            "direction": self.direction,
        }


@dataclass(frozen=True)
class BesselVortex(HorizontalMode):
    kappa: float
    m: int = 0
    amplitude: float = 1.0
    phase: float = 0.0
    center: Tuple[float, float] = (0.0, 0.0)

    def value(self, s, y):
        s, y = np.broadcast_arrays(real_array(s), real_array(y))
        X = s - self.center[0]
        Y = y - self.center[1]
        rho = np.hypot(X, Y)
        chi = np.arctan2(Y, X)
        J = bessel_j_table(self.m, self.kappa * rho)[self.m]
        return self.amplitude * J * np.cos(self.m * chi + self.phase)

    def jet(self, s, y):
        s, y = np.broadcast_arrays(real_array(s), real_array(y))
        X = s - self.center[0]
        Y = y - self.center[1]
        rho = np.hypot(X, Y)
        near = self.kappa * rho < _VORTEX_SERIES_RADIUS
        out = [np.empty(s.shape, dtype=s.dtype) for _ in range(6)]
        if np.any(near):
            for dst, src in zip(out, self._series_jet(X[near], Y[near])):
                dst[near] = src
        far = ~near
        if np.any(far):
            for dst, src in zip(out, self._polar_jet(X[far], Y[far], rho[far])):
                dst[far] = src
        return Jet2(*out)

    def _polar_jet(self, X, Y, rho):
        m, k, A = self.m, self.kappa, self.amplitude
        x = k * rho
        table = bessel_j_table(m + 1, x)
        J = table[m]
        J1 = 0.5 * (table[m - 1] - table[m + 1]) if m > 0 else -table[1]
        # Bessel ODE instead of nested recurrences
        J2 = -J1 / x + (m * m / (x * x) - 1.0) * J
        c = X / rho
        sn = Y / rho
        chi = np.arctan2(Y, X)
        cos_m = np.cos(m * chi + self.phase)
        sin_m = np.sin(m * chi + self.phase)

        F = A * J * cos_m
        F_r = A * k * J1 * cos_m
        F_rr = A * k * k * J2 * cos_m
        F_c = -A * m * J * sin_m
        F_cc = -m * m * F
        F_rc = -A * m * k * J1 * sin_m

        inv_r = 1.0 / rho
        inv_r2 = inv_r * inv_r
        cs = c * sn
        F_s = c * F_r - sn * inv_r * F_c
        F_y = sn * F_r + c * inv_r * F_c
        F_ss = (
            c * c * F_rr
            + sn * sn * inv_r * F_r
            + sn * sn * inv_r2 * F_cc
            - 2 * cs * inv_r * F_rc
            + 2 * cs * inv_r2 * F_c
        )
        F_yy = (
            sn * sn * F_rr
            + c * c * inv_r * F_r
            + c * c * inv_r2 * F_cc
            + 2 * cs * inv_r * F_rc
            - 2 * cs * inv_r2 * F_c
        )
        F_sy = (
            cs * F_rr
            - cs * inv_r * F_r
            - cs * inv_r2 * F_cc
            + (c * c - sn * sn) * inv_r * F_rc
            - (c * c - sn * sn) * inv_r2 * F_c
        )
        return F, F_s, F_y, F_ss, F_sy, F_yy

    def _series_jet(self, X, Y):
        """Cartesian form ``A R(r2) Re(e^{i phase} w^m)``, smooth through the center.

        ``R(r2) = sum_k (-1)^k (kappa/2)^(m+2k) r2^k / (k! (m+k)!)`` with
        ``r2 = X^2 + Y^2`` and ``w = X + iY``.
        """
        m, k, A = self.m, self.kappa, self.amplitude
        r2 = X * X + Y * Y
        coef = np.empty(_VORTEX_SERIES_TERMS)
        coef[0] = (0.5 * k) ** m / math.factorial(m)
        for j in range(1, _VORTEX_SERIES_TERMS):
            coef[j] = -coef[j - 1] * (0.5 * k) ** 2 / (j * (j + m))
        j = np.arange(_VORTEX_SERIES_TERMS)
        R = polyval(r2, coef)
        dR = polyval(r2, (j * coef)[1:])
        ddR = polyval(r2, (j * (j - 1) * coef)[2:])

        w = X + 1j * Y
        rot = complex(math.cos(self.phase), math.sin(self.phase))
        h = (rot * w**m).real
        if m >= 1:
            wm1 = rot * w ** (m - 1)
            h_x = m * wm1.real
            h_y = -m * wm1.imag
        else:
            h_x = h_y = np.zeros_like(X)
        if m >= 2:
            wm2 = rot * w ** (m - 2)
            h_xx = m * (m - 1) * wm2.real
            h_xy = -m * (m - 1) * wm2.imag
        else:
            h_xx = h_xy = np.zeros_like(X)
        h_yy = -h_xx

        R_x = 2 * X * dR
        R_y = 2 * Y * dR
        R_xx = 2 * dR + 4 * X * X * ddR
        R_yy = 2 * dR + 4 * Y * Y * ddR
        R_xy = 4 * X * Y * ddR

        F = A * R * h
        F_s = A * (R_x * h + R * h_x)
        F_y = A * (R_y * h + R * h_y)
        F_ss = A * (R_xx * h + 2 * R_x * h_x + R * h_xx)
        F_yy = A * (R_yy * h + 2 * R_y * h_y + R * h_yy)
        F_sy = A * (R_xy * h + R_x * h_y + R_y * h_x + R * h_xy)
        return F, F_s, F_y, F_ss, F_sy, F_yy

    @property
    def amplitude_total(self):
        return abs(self.amplitude)

    def describe(self):
        return {
            "type": "bessel_vortex",
            "kappa": self.kappa,
            "m": self.m,
            "amplitude": self.amplitude,
            "phase": self.phase,
            "center": list(self.center),
        }


@dataclass(frozen=True)
class Superposition(HorizontalMode):
    kappa: float
    modes: Tuple[HorizontalMode, ...]

    def value(self, s, y):
        return sum(mode.value(s, y) for mode in self.modes)

    def jet(self, s, y):
        jets = [mode.jet(s, y) for mode in self.modes]
        total = jets[0]
        for j in jets[1:]:
            total = total + j
        return total

    @property
    def amplitude_total(self):
        return sum(mode.amplitude_total for mode in self.modes)

    def describe(self):
        return {
            "type": "superposition",
            "kappa": self.kappa,
            "modes": [mode.describe() for mode in self.modes],
        }


def plane_wave(kappa: float, amplitude: float = 1.0, phase: float = 0.0, direction: float = 0.0) -> PlaneWave:
    """Plane wave travelling along ``direction`` (radians from the s axis)."""
    return PlaneWave(_check_kappa(kappa), float(amplitude), float(phase), float(direction))


def bessel_vortex(
    kappa: float,
    m: int = 0,
    amplitude: float = 1.0,
    phase: float = 0.0,
    center: Tuple[float, float] = (0.0, 0.0),
) -> BesselVortex:
    """Bounded vortex ``A J_m(kappa rho) cos(m chi + phase)`` about ``center``."""
    kappa = _check_kappa(kappa)
    if isinstance(m, bool) or int(m) != m or not 0 <= m <= 50:
        raise BadParameter(f"azimuthal order m must be an integer in 0..50, got {m!r}")
    cs, cy = center
    return BesselVortex(kappa, int(m), float(amplitude), float(phase), (float(cs), float(cy)))


def superpose(modes) -> Superposition:
    """Sum of modes sharing one wavenumber (to 1e-12 relative)."""
    modes = tuple(modes)
    if not modes:
        raise BadParameter("superposition needs at least one mode")
    kappa = modes[0].kappa
    for mode in modes[1:]:
        if abs(mode.kappa - kappa) > KAPPA_RTOL * max(abs(kappa), abs(mode.kappa)):
            raise MixedWavenumbers(
                f"cannot superpose modes with kappa={kappa} and kappa={mode.kappa}"
            )
    return Superposition(kappa, modes)


def eval_jet(mode: HorizontalMode, s, y) -> Jet2:
    return mode.jet(s, y)
