"""Seeded generators of valid solution families and horizontal modes."""
import math

import numpy as np

from rossby_exact.errors import ResonantDepth
from rossby_exact.families import build_solution
from rossby_exact.helmholtz import bessel_vortex, plane_wave, superpose
from rossby_exact.model import FamilySpec, PhysicalParams, validate

# |M| above this marks a near-resonant draw; such parameters amplify
# rounding in M and are resampled
M_LIMIT = 10.0


def random_phys(rng, H=None):
    return PhysicalParams(
        beta=float(rng.uniform(0.1, 2.0)),
        H=float(rng.uniform(0.5, 2.0)) if H is None else H,
        V=float(rng.uniform(-1.0, 1.0)),
    )


def random_spec(family, rng):
    """A validated spec and its physical parameters, away from resonances."""
    while True:
        if family == 1:
            phys = random_phys(rng, H=float(rng.uniform(1.0, 3.0)))
            spec = FamilySpec(1, n=int(rng.integers(1, 3)), P=float(rng.uniform(-1, 1)))
        else:
            phys = random_phys(rng)
            a, b = sorted(rng.uniform(0.5, 2.5, size=2))
            if b - a < 0.05:
                continue
            if family in (4, 7):
                k_z, K_r = a, b
            elif family in (5, 8):
                k_z, K_r = b, a
            else:
                k_z, K_r = (a, b) if rng.random() < 0.5 else (b, a)
            spec = FamilySpec(family, k_z=float(k_z), K_r=float(K_r))
        try:
            v = validate(spec, phys)
        except ResonantDepth:
            continue
        if v.M is not None and abs(v.M) > M_LIMIT:
            continue
        return v, phys


def random_mode(kappa, rng, kind=None):
    kind = kind or rng.choice(["plane_wave", "bessel_vortex", "superposition"])
    span = 2 * math.pi / kappa
    if kind == "plane_wave":
        return plane_wave(kappa, rng.uniform(0.2, 2.0), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
    if kind == "bessel_vortex":
        return bessel_vortex(
            kappa,
            int(rng.integers(0, 4)),
            rng.uniform(0.2, 2.0),
            rng.uniform(0, 2 * math.pi),
            tuple(rng.uniform(-0.5 * span, 0.5 * span, size=2)),
        )
    parts = [random_mode(kappa, rng, str(rng.choice(["plane_wave", "bessel_vortex"]))) for _ in range(int(rng.integers(2, 4)))]
    return superpose(parts)


def random_solution(family, rng):
    v, phys = random_spec(family, rng)
    return build_solution(v, phys, random_mode(v.kappa, rng))
