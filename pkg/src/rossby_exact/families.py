"""The nine drifting solution families.

Every family has the form ``p = f(z) F(x - V t, y) + g(z) y`` where ``F``
solves a 2-D Helmholtz equation and ``g(z) = U(z; V)`` is the zonal
background flow. This module provides the vertical profiles ``f`` and ``g``
with their z-derivatives, the resonance constant ``M``, the assembled field,
and the closed-form boundary-condition operator of each family.

Profiles carry an *envelope* next to each value: a bound on the magnitude of
the terms that make up the value, including the sensitivity to rounding of
the trigonometric/hyperbolic arguments. Residual checks normalize by these
envelopes, so a quantity that vanishes by cancellation is still compared
against the size of what cancelled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._numeric import real_array
from .errors import DomainError, WavenumberMismatch
from .helmholtz import KAPPA_RTOL, HorizontalMode
from .model import (
    FamilySpec,
    PhysicalParams,
    ValidatedSpec,
    resonance_constant,
    validate,
)

FAMILY_SUMMARY = {
    1: {
        "profile": "1",
        "zonal": "P cos(pi n z / H) - beta H^2/(pi^2 n^2) - V",
        "parameters": "n (integer, n = 1, 2, 3, ...), P (real)",
        "constraints": "n >= 1 integer",
        "kappa": "pi n / H",
    },
    2: {
        "profile": "sin(k_z z)",
        "zonal": "beta (M sin(K z) + cos(K z) - 1)/K^2 - V",
        "parameters": "k_z, K_r (real)",
        "constraints": "K^2 = k_z^2 + K_r^2, K_r != 0",
        "kappa": "K_r",
        "M": "(k_z cos(k_z H)(cos(KH) - 1) + K sin(k_z H) sin(KH)) / (K sin(k_z H) cos(KH) - k_z cos(k_z H) sin(KH))",
    },
    3: {
        "profile": "cos(k_z z)",
        "zonal": "beta (M cos(K z) - 1)/K^2 - V",
        "parameters": "k_z, K_r (real)",
        "constraints": "K^2 = k_z^2 + K_r^2, K_r != 0",
        "kappa": "K_r",
        "M": "k_z sin(k_z H) / (k_z sin(k_z H) cos(KH) - K cos(k_z H) sin(KH))",
    },
    4: {
        "profile": "sinh(k_z z)",
        "zonal": "beta (M sin(K z) + cos(K z) - 1)/K^2 - V",
        "parameters": "k_z, K_r (real)",
        "constraints": "K^2 = K_r^2 - k_z^2, k_z < K_r",
        "kappa": "K_r",
        "M": "(k_z cosh(k_z H)(cos(KH) - 1) + K sinh(k_z H) sin(KH)) / (K sinh(k_z H) cos(KH) - k_z cosh(k_z H) sin(KH))",
    },
    5: {
        "profile": "sinh(k_z z)",
        "zonal": "beta (M sinh(K z) - cosh(K z) + 1)/K^2 - V",
        "parameters": "k_z, K_r (real)",
        "constraints": "K^2 = k_z^2 - K_r^2, k_z > K_r",
        "kappa": "K_r",
        "M": "(K sinh(k_z H) sinh(KH) - k_z cosh(k_z H)(cosh(KH) - 1)) / (K sinh(k_z H) cosh(KH) - k_z cosh(k_z H) sinh(KH))",
    },
    6: {
        "profile": "sinh(k_z z)",
        "zonal": "-beta z^2/2 + beta H M z/2 - V",
        "parameters": "k_z (real)",
        "constraints": "k_z != 0",
        "kappa": "k_z",
        "M": "(2 sinh(k_z H) - k_z H cosh(k_z H)) / (sinh(k_z H) - k_z H cosh(k_z H))",
    },
    7: {
        "profile": "cosh(k_z z)",
        "zonal": "beta (M cos(K z) - 1)/K^2 - V",
        "parameters": "k_z, K_r (real)",
        "constraints": "K^2 = K_r^2 - k_z^2, k_z < K_r",
        "kappa": "K_r",
        "M": "k_z sinh(k_z H) / (k_z sinh(k_z H) cos(KH) + K cosh(k_z H) sin(KH))",
    },
    8: {
        "profile": "cosh(k_z z)",
        "zonal": "beta (M cosh(K z) + 1)/K^2 - V",
        "parameters": "k_z, K_r (real)",
        "constraints": "K^2 = k_z^2 - K_r^2, k_z > K_r",
        "kappa": "K_r",
        "M": "k_z sinh(k_z H) / (K cosh(k_z H) sinh(KH) - k_z sinh(k_z H) cosh(KH))",
    },
    9: {
        "profile": "cosh(k_z z)",
        "zonal": "-beta z^2/2 + beta H^2 M/2 - V",
        "parameters": "k_z (real)",
        "constraints": "k_z != 0",
        "kappa": "k_z",
        "M": "1 - 2 cosh(k_z H) / (k_z H sinh(k_z H))",
    },
}


@dataclass(frozen=True)
class Profiles:
    """Vertical structure at an array of depths.

    ``gv`` is ``g + V`` (the zonal coefficient in the drifting frame),
    evaluated without the ``-V + V`` round trip. ``e_*`` are envelopes.
    """

    f: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    gv: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    e_f: Optional[np.ndarray]
    e_f1: Optional[np.ndarray]
    e_f2: Optional[np.ndarray]
    e_gv: Optional[np.ndarray]
    e_g1: Optional[np.ndarray]
    e_g2: Optional[np.ndarray]
    V: float

    @property
    def g(self):
        return self.gv - self.V


@dataclass(frozen=True)
class StreamSample:
    p: np.ndarray
    u: np.ndarray
    v: np.ndarray
    p_z: np.ndarray


# envelopes |h(a)| + |a h'(a)| of the elementary functions
def _env_sin(a):
    return np.abs(np.sin(a)) + np.abs(a * np.cos(a))


def _env_cos(a):
    return np.abs(np.cos(a)) + np.abs(a * np.sin(a))


def _env_sinh(a):
    return np.abs(np.sinh(a)) + np.abs(a) * np.cosh(a)


def _env_cosh(a):
    return np.cosh(a) + np.abs(a * np.sinh(a))


def _one_minus_cos(a):
    return 2.0 * np.sin(0.5 * a) ** 2


def _cosh_minus_one(a):
    return 2.0 * np.sinh(0.5 * a) ** 2


def _trig_f(k, z, kind, envelopes=True):
    a = k * z
    k2 = k * k
    if kind in ("sin", "cos"):
        s, c = np.sin(a), np.cos(a)
        vals = (s, k * c, -k2 * s) if kind == "sin" else (c, -k * s, -k2 * c)
        if not envelopes:
            return vals, None
        es, ec = _env_sin(a), _env_cos(a)
    else:
        s, c = np.sinh(a), np.cosh(a)
        vals = (s, k * c, k2 * s) if kind == "sinh" else (c, k * s, k2 * c)
        if not envelopes:
            return vals, None
        es, ec = _env_sinh(a), _env_cosh(a)
    if kind in ("sin", "sinh"):
        return vals, (es, abs(k) * ec, k2 * es)
    return vals, (ec, abs(k) * es, k2 * ec)


_F_KIND = {2: "sin", 3: "cos", 4: "sinh", 5: "sinh", 6: "sinh", 7: "cosh", 8: "cosh", 9: "cosh"}


def _zonal(spec: ValidatedSpec, phys: PhysicalParams, z, envelopes=True):
    """``(g + V, g', g'')`` and their envelopes (``None`` when not wanted)."""
    fam, beta, H, M, K = spec.family, phys.beta, phys.H, spec.M, spec.K
    ab = abs(beta)
    if fam == 1:
        kap = spec.kappa
        a = kap * z
        c, s = np.cos(a), np.sin(a)
        P = spec.P
        gv = P * c - beta / (kap * kap)
        g1 = -P * kap * s
        g2 = -P * kap * kap * c
        if not envelopes:
            return (gv, g1, g2), None
        env = (abs(P) * _env_cos(a) + ab / (kap * kap), abs(P) * kap * _env_sin(a), abs(P) * kap * kap * _env_cos(a))
        return (gv, g1, g2), env
    if fam in (6, 9):
        zz = real_array(z)
        if fam == 6:
            gv = -0.5 * beta * zz * zz + 0.5 * beta * H * M * zz
            g1 = -beta * zz + 0.5 * beta * H * M
            env = (0.5 * ab * zz * zz + 0.5 * ab * H * abs(M) * zz, ab * zz + 0.5 * ab * H * abs(M), ab)
        else:
            gv = -0.5 * beta * zz * zz + 0.5 * beta * H * H * M
            g1 = -beta * zz
            env = (0.5 * ab * zz * zz + 0.5 * ab * H * H * abs(M), ab * zz, ab)
        g2 = np.full_like(zz, -beta)
        if not envelopes:
            return (gv, g1, g2), None
        return (gv, g1, g2), (env[0], env[1], np.full_like(zz, env[2]))

    a = K * z
    K2 = K * K
    aM = abs(M)
    if fam in (2, 4, 3, 7):
        s, c = np.sin(a), np.cos(a)
    else:
        s, c = np.sinh(a), np.cosh(a)
    if fam in (2, 4):
        vals = (beta * (s * M - _one_minus_cos(a)) / K2, beta * (c * M - s) / K, -beta * (s * M + c))
    elif fam in (3, 7):
        vals = (beta * (c * M - 1.0) / K2, -beta * s * M / K, -beta * c * M)
    elif fam == 5:
        vals = (beta * (s * M - _cosh_minus_one(a)) / K2, beta * (c * M - s) / K, beta * (s * M - c))
    else:  # 8
        vals = (beta * (c * M + 1.0) / K2, beta * s * M / K, beta * c * M)
    if not envelopes:
        return vals, None

    if fam in (2, 4, 3, 7):
        es, ec = _env_sin(a), _env_cos(a)
    else:
        es, ec = _env_sinh(a), _env_cosh(a)
    if fam in (2, 4):
        e_1mc = _one_minus_cos(a) + np.abs(a * s)
        env = (ab * (es * aM + e_1mc) / K2, ab * (ec * aM + es) / K, ab * (es * aM + ec))
    elif fam in (3, 7):
        env = (ab * (ec * aM + 1.0) / K2, ab * es * aM / K, ab * ec * aM)
    elif fam == 5:
        e_cm1 = _cosh_minus_one(a) + np.abs(a * s)
        env = (ab * (es * aM + e_cm1) / K2, ab * (ec * aM + es) / K, ab * (es * aM + ec))
    else:
        env = (ab * (ec * aM + 1.0) / K2, ab * es * aM / K, ab * ec * aM)
    return vals, env


def _check_depth(z, H):
    z = real_array(z)
    if z.size and not (np.all(z >= 0.0) and np.all(z <= H)):
        bad = z[(z < 0.0) | (z > H) | ~np.isfinite(z)]
        raise DomainError(f"depth z={bad.flat[0]!r} outside the water column [0, {H}]")
    return z


def compute_M(spec, phys: PhysicalParams) -> float:
    """Resonance constant ``M`` of families 2-9.

    Raises ``ResonantDepth`` when the denominator is numerically zero.
    """
    if isinstance(spec, ValidatedSpec) and spec.M is not None:
        return spec.M
    v = validate(spec, phys)
    if v.M is None:
        return resonance_constant(v.family, v.k_z, v.K, phys.H)
    return v.M


def vertical_profile(spec: ValidatedSpec, z, phys: PhysicalParams | None = None):
    """``(f, f', f'')`` at depth(s) ``z``; ``phys`` enables the depth check."""
    if phys is not None:
        z = _check_depth(z, phys.H)
    z = real_array(z)
    if spec.family == 1:
        one = np.ones_like(z)
        return one, np.zeros_like(z), np.zeros_like(z)
    (f, f1, f2), _ = _trig_f(spec.k_z, z, _F_KIND[spec.family], envelopes=False)
    return f, f1, f2


def zonal_coefficient(spec: ValidatedSpec, phys: PhysicalParams, z):
    """``(g, g', g'')`` with ``g(z) = U(z; V)`` the y-coefficient of ``p``."""
    z = _check_depth(z, phys.H)
    (gv, g1, g2), _ = _zonal(spec, phys, z, envelopes=False)
    return gv - phys.V, g1, g2


@dataclass(frozen=True)
class Solution:
    phys: PhysicalParams
    spec: ValidatedSpec
    mode: HorizontalMode

    @property
    def family(self) -> int:
        return self.spec.family

    @property
    def kappa(self) -> float:
        return self.spec.kappa

    def vertical(self, z, envelopes: bool = True) -> Profiles:
        """Profiles at depth(s) ``z``; the ``e_*`` fields are ``None`` without envelopes."""
        z = _check_depth(z, self.phys.H)
        if self.spec.family == 1:
            one, zero = np.ones_like(z), np.zeros_like(z)
            fs, fe = (one, zero, zero), (one, zero, zero)
        else:
            fs, fe = _trig_f(self.spec.k_z, z, _F_KIND[self.spec.family], envelopes)
        gs, ge = _zonal(self.spec, self.phys, z, envelopes)
        if not envelopes:
            fe = ge = (None, None, None)
        return Profiles(*fs, *gs, *fe, *ge, V=self.phys.V)

    def stream(self, t, x, y, z):
        """Scalar field ``p(t, x, y, z)``."""
        t, x, y, z = np.broadcast_arrays(*(real_array(a) for a in (t, x, y, z)))
        pr = self.vertical(z, envelopes=False)
        return pr.f * self.mode.value(x - self.phys.V * t, y) + pr.g * y

    def eval(self, t, x, y, z) -> StreamSample:
        t, x, y, z = np.broadcast_arrays(*(real_array(a) for a in (t, x, y, z)))
        pr = self.vertical(z)
        jet = self.mode.jet(x - self.phys.V * t, y)
        g = pr.g
        return StreamSample(
            p=pr.f * jet.F + g * y,
            u=-(pr.f * jet.F_y + g),
            v=pr.f * jet.F_s,
            p_z=pr.f1 * jet.F + pr.g1 * y,
        )

    def bc_closed_form(self, t, x, y, z):
        """The family's closed-form value of the boundary-condition operator."""
        return bc_closed_form(self, t, x, y, z)


def build_solution(spec, phys: PhysicalParams, mode: HorizontalMode) -> Solution:
    """Assemble ``p = f(z) F(x - V t, y) + g(z) y``.

    An unvalidated :class:`FamilySpec` is validated first. A
    :class:`ValidatedSpec` is taken as is.
    """
    if isinstance(spec, FamilySpec):
        spec = validate(spec, phys)
    if abs(mode.kappa - spec.kappa) > KAPPA_RTOL * max(abs(spec.kappa), abs(mode.kappa)):
        raise WavenumberMismatch(
            f"mode kappa={mode.kappa} does not match family {spec.family} kappa={spec.kappa}"
        )
    return Solution(phys, spec, mode)


def bc_closed_form(solution: Solution, t, x, y, z):
    t, x, y, z = np.broadcast_arrays(*(real_array(a) for a in (t, x, y, z)))
    phys, spec = solution.phys, solution.spec
    z = _check_depth(z, phys.H)
    Fx = solution.mode.jet(x - phys.V * t, y).F_s
    beta, H, M, K, kz = phys.beta, phys.H, spec.M, spec.K, spec.k_z
    fam = spec.family
    if fam == 1:
        n = spec.n
        return -Fx * np.sin(math.pi * n * z / H) * math.pi * n * spec.P / H
    if fam == 6:
        ch, sh = np.cosh(kz * z), np.sinh(kz * z)
        return -0.5 * Fx * beta * (-ch * kz * z**2 + ch * kz * H * M * z + 2 * sh * z - sh * H * M)
    if fam == 9:
        ch, sh = np.cosh(kz * z), np.sinh(kz * z)
        return -0.5 * Fx * beta * (-sh * kz * z**2 + sh * kz * H**2 * M + 2 * ch * z)

    pre = Fx * beta / K**2
    if fam == 2:
        s, c = np.sin(kz * z), np.cos(kz * z)
        sK, cK = np.sin(K * z), np.cos(K * z)
        return pre * (M * (K * s * cK - kz * c * sK) - kz * c * cK + kz * c - K * s * sK)
    if fam == 3:
        s, c = np.sin(kz * z), np.cos(kz * z)
        sK, cK = np.sin(K * z), np.cos(K * z)
        return pre * (M * (kz * s * cK - K * c * sK) - kz * s)
    sh, ch = np.sinh(kz * z), np.cosh(kz * z)
    if fam == 4:
        sK, cK = np.sin(K * z), np.cos(K * z)
        return pre * (-ch * kz * sK * M + ch * kz - ch * kz * cK + sh * K * cK * M - sh * K * sK)
    if fam == 5:
        sK, cK = np.sinh(K * z), np.cosh(K * z)
        return pre * (-ch * kz * sK * M - ch * kz + ch * kz * cK + sh * K * cK * M - sh * K * sK)
    if fam == 7:
        sK, cK = np.sin(K * z), np.cos(K * z)
        return -pre * (sh * kz * cK * M - sh * kz + ch * K * sK * M)
    sK, cK = np.sinh(K * z), np.cosh(K * z)  # 8
    return pre * (-sh * kz * cK * M - sh * kz + ch * K * sK * M)


def eval_solution(solution: Solution, t, x, y, z) -> StreamSample:
    return solution.eval(t, x, y, z)
