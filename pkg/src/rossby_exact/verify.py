"""Numerical certification of solutions.

The PDE is checked by two independent routes:

* analytic -- in the frame drifting with speed ``V`` the equation reduces to
  the horizontal Jacobian ``J(p + V y, lap p + beta y) = 0``, assembled from
  the closed-form profiles and the first-derivative jet of ``F``;
* brute force -- all terms of the lab-frame equation are built from finite
  differences of the scalar field ``p(t, x, y, z)``.

The boundary operator ``p_zt - p_y p_zx + p_x p_zy`` is evaluated from
analytic jets at the bottom and the lid and compared with the family's
closed form in the interior.

All residuals are dimensionless: each is divided by the magnitudes of the
terms that make it up.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .errors import BadParameter, EvaluationError
from .families import Solution, bc_closed_form
from .helmholtz import BesselVortex, Superposition

TINY = 1e-300
FD_FLOOR = 1.0

DEFAULT_TOLERANCES = {
    "pde_analytic": 1e-10,
    "pde_fd": 1e-5,
    "bc": 1e-12,
    "bc_match": 1e-9,
    "helmholtz": 1e-10,
}

CHECKS = ("pde_analytic", "pde_fd", "bc_bottom", "bc_lid", "bc_interior_match", "helmholtz")
_CHECK_TOLERANCE = {
    "pde_analytic": "pde_analytic",
    "pde_fd": "pde_fd",
    "bc_bottom": "bc",
    "bc_lid": "bc",
    "bc_interior_match": "bc_match",
    "helmholtz": "helmholtz",
}


def _arrays(*args):
    return np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in args))


def _jacobian_parts(solution: Solution, t, x, y, z):
    t, x, y, z = _arrays(t, x, y, z)
    pr = solution.vertical(z)
    jet = solution.mode.jet(x - solution.phys.V * t, y)
    return pr, jet


def pde_residual_analytic(solution: Solution, t, x, y, z):
    """Normalized drift-frame residual ``J(A, B)`` with ``A = p + V y``,
    ``B = lap p + beta y = (f'' - kappa^2 f) F + (g'' + beta) y``."""
    pr, jet = _jacobian_parts(solution, t, x, y, z)
    k2 = solution.kappa**2
    beta = solution.phys.beta
    q = pr.f2 - k2 * pr.f
    r = pr.g2 + beta
    A_s = pr.f * jet.F_s
    A_y = pr.f * jet.F_y + pr.gv
    B_s = q * jet.F_s
    B_y = q * jet.F_y + r
    J = A_s * B_y - A_y * B_s

    e_q = pr.e_f2 + k2 * pr.e_f
    e_r = pr.e_g2 + abs(beta)
    aFs, aFy = np.abs(jet.F_s), np.abs(jet.F_y)
    scale = pr.e_f * aFs * (e_q * aFy + e_r) + (pr.e_f * aFy + pr.e_gv) * e_q * aFs
    return np.abs(J) / (scale + TINY)


# (offset, weight) pairs, offsets in units of h, keyed by accuracy then order
_CENTRAL = {
    2: {
        0: ((0, 1.0),),
        1: ((-1, -0.5), (1, 0.5)),
        2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
        3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    },
    4: {
        0: ((0, 1.0),),
        1: ((-2, 1 / 12), (-1, -2 / 3), (1, 2 / 3), (2, -1 / 12)),
        2: ((-2, -1 / 12), (-1, 4 / 3), (0, -5 / 2), (1, 4 / 3), (2, -1 / 12)),
        3: ((-3, 1 / 8), (-2, -1.0), (-1, 13 / 8), (1, -13 / 8), (2, 1.0), (3, -1 / 8)),
    },
}
# one-sided second derivative from the boundary inwards
_ONE_SIDED_2 = {
    2: ((0, 2.0), (1, -5.0), (2, 4.0), (3, -1.0)),
    # third order: the six-point fourth-order stencil doubles the roundoff
    4: ((0, 35 / 12), (1, -26 / 3), (2, 19 / 2), (3, -14 / 3), (4, 11 / 12)),
}

# PDE terms as derivative orders over (t, x, y, z)
_PDE_DERIVS = {
    "xxt": (1, 2, 0, 0),
    "yyt": (1, 0, 2, 0),
    "zzt": (1, 0, 0, 2),
    "x": (0, 1, 0, 0),
    "y": (0, 0, 1, 0),
    "xxy": (0, 2, 1, 0),
    "yyy": (0, 0, 3, 0),
    "zzy": (0, 0, 1, 2),
    "xxx": (0, 3, 0, 0),
    "xyy": (0, 1, 2, 0),
    "xzz": (0, 1, 0, 2),
}


def _contract(values, weights, h, order):
    """Apply one axis stencil to the leading axis of ``values``.

    Differences against the first stencil entry are taken before weighting:
    field components that do not vary along the axis cancel exactly.
    """
    if order == 0:
        return values[0]
    ref = values[0]
    acc = np.zeros_like(ref)
    for w, v in zip(weights, values):
        acc = acc + w * (v - ref)
    return acc / h**order


def fd_derivatives(field, t, x, y, z, H, step=1e-3, orders=None, accuracy=4, dtype=np.longdouble):
    """Finite-difference partial derivatives of a scalar field ``field(t, x, y, z)``.

    Step per axis is ``step * (1 + |coordinate|)``. Stencils are centered of
    order ``accuracy`` (2 or 4); z-derivatives switch to one-sided stencils
    within two steps of ``z = 0`` or ``z = H``. Mixed derivatives contract
    t, x, y and then z. Returns a dict keyed like ``orders`` (default: every
    term of the PDE), in float64.

    The field is evaluated in ``dtype``. Third differences at ``h ~ 1e-3``
    amplify rounding by ``~1/h^3``; in float64 that swamps the PDE terms
    wherever they are small next to ``|p|``. The default ``np.longdouble``
    is 80-bit on x86 and gains three digits; on platforms where it aliases
    float64 the oracle degrades to double precision.
    """
    orders = _PDE_DERIVS if orders is None else orders
    if accuracy not in _CENTRAL:
        raise BadParameter(f"accuracy must be 2 or 4, got {accuracy}")
    central = _CENTRAL[accuracy]
    t, x, y, z = _arrays(t, x, y, z)
    shape = t.shape
    t, x, y, z = (a.ravel().astype(dtype) for a in (t, x, y, z))
    coords = (t, x, y, z)
    h = [dtype(step) * (1 + np.abs(c)) for c in coords]
    n = t.size
    bottom = z - 2 * h[3] < 0.0
    lid = (z + 2 * h[3] > H) & ~bottom

    z_variants = {0: {"c": ((0, 1.0),)}}
    z_variants[2] = {
        "c": central[2],
        "f": _ONE_SIDED_2[accuracy],
        "b": tuple((-off, w) for off, w in _ONE_SIDED_2[accuracy]),
    }

    # collect every stencil point once and evaluate the field in one batch
    point_index: Dict[tuple, int] = {}
    plans = {}
    for name, order in orders.items():
        if order[3] not in z_variants:
            raise BadParameter("only z-orders 0 and 2 are supported")
        stencils = [central[o] for o in order[:3]]
        plans[name] = {}
        for kind, zst in z_variants[order[3]].items():
            axes = stencils + [zst]
            for combo in itertools.product(*axes):
                point_index.setdefault(tuple(off for off, _ in combo), len(point_index))
            plans[name][kind] = axes

    keys = list(point_index)
    offsets = np.array(keys, dtype=dtype)  # (n_keys, 4)
    stacked = [(coords[i][None, :] + offsets[:, i : i + 1] * h[i][None, :]).ravel() for i in range(4)]
    # z stencils that would leave the column are never selected; clip so
    # their evaluations stay in range
    stacked[3] = np.clip(stacked[3], 0.0, H)
    values = np.asarray(field(*stacked), dtype=dtype).reshape(len(keys), n)

    out = {}
    for name, order in orders.items():
        results = {}
        for kind, axes in plans[name].items():
            dims = [len(a) for a in axes]
            idx = np.array(
                [point_index[tuple(off for off, _ in combo)] for combo in itertools.product(*axes)]
            ).reshape(dims)
            block = values[idx]  # (nt, nx, ny, nz, n)
            for axis, (st, o) in enumerate(zip(axes, order)):
                # contract the leading axis each time
                block = _contract(block, [w for _, w in st], h[axis], o)
            results[kind] = block
        if order[3] == 0:
            d = results["c"]
        else:
            d = np.where(bottom, results["f"], np.where(lid, results["b"], results["c"]))
        out[name] = d.astype(float).reshape(shape)
    return out


def pde_terms_fd(solution: Solution, t, x, y, z, step=1e-3, accuracy=4):
    """Individual terms of the lab-frame PDE from finite differences of ``p``."""
    d = fd_derivatives(solution.stream, t, x, y, z, solution.phys.H, step, accuracy=accuracy)
    beta = solution.phys.beta
    return [
        d["xxt"],
        d["yyt"],
        d["zzt"],
        d["x"] * d["xxy"],
        d["x"] * d["yyy"],
        d["x"] * d["zzy"],
        -d["y"] * d["xxx"],
        -d["y"] * d["xyy"],
        -d["y"] * d["xzz"],
        beta * d["x"],
    ]


def pde_residual_fd(solution: Solution, t, x, y, z, step=1e-3, accuracy=4):
    """Normalized brute-force residual ``|sum of terms| / (sum |terms| + floor)``.

    Where every term vanishes identically (e.g. ``f(0) = 0`` and no zonal
    shear) the plain ratio is noise over noise, and where the terms are
    merely small it is dominated by the stencils' roundoff. ``floor`` is
    ``FD_FLOOR`` times the median term scale of the batch.
    """
    terms = pde_terms_fd(solution, t, x, y, z, step, accuracy)
    total = sum(terms)
    scale = sum(np.abs(T) for T in terms)
    floor = FD_FLOOR * float(np.median(scale)) if scale.size else 0.0
    return np.abs(total) / (scale + floor + TINY)


@dataclass(frozen=True)
class BCOperator:
    drift: np.ndarray
    lab: np.ndarray
    scale: np.ndarray


def bc_operator(solution: Solution, t, x, y, z) -> BCOperator:
    """Boundary operator from analytic jets, in both frames.

    ``drift``: ``J(p + V y, p_z)``; ``lab``: ``p_zt - p_y p_zx + p_x p_zy``
    with ``p_zt = -V p_zs``. ``scale`` bounds the magnitude of the terms.
    """
    pr, jet = _jacobian_parts(solution, t, x, y, z)
    V = solution.phys.V
    p_s = pr.f * jet.F_s
    p_zs = pr.f1 * jet.F_s
    p_zy = pr.f1 * jet.F_y + pr.g1
    drift = p_s * p_zy - (pr.f * jet.F_y + pr.gv) * p_zs
    p_y = pr.f * jet.F_y + pr.g
    lab = -V * p_zs - p_y * p_zs + p_s * p_zy

    aFs, aFy = np.abs(jet.F_s), np.abs(jet.F_y)
    scale = pr.e_f * aFs * (pr.e_f1 * aFy + pr.e_g1) + (pr.e_f * aFy + pr.e_gv + abs(V)) * pr.e_f1 * aFs
    return BCOperator(drift, lab, scale)


def bc_residual(solution: Solution, t, x, y, z):
    """Normalized magnitude of the boundary operator."""
    op = bc_operator(solution, t, x, y, z)
    return np.abs(op.drift) / (op.scale + TINY)


def bc_match_residual(solution: Solution, t, x, y, z):
    """``|numeric - closed form|`` relative to the operator's term scale."""
    op = bc_operator(solution, t, x, y, z)
    closed = bc_closed_form(solution, t, x, y, z)
    return np.abs(op.drift - closed) / (op.scale + TINY)


def helmholtz_residual(mode, s, y):
    """``|F_ss + F_yy + kappa^2 F| / (kappa^2 (|F| + total amplitude))``."""
    jet = mode.jet(s, y)
    k2 = mode.kappa**2
    return np.abs(jet.helmholtz_residual(mode.kappa)) / (k2 * (np.abs(jet.F) + mode.amplitude_total) + TINY)


@dataclass(frozen=True)
class SamplingPlan:
    """Where and how densely to probe a solution.

    ``bounds`` optionally overrides the default box as
    ``{"t": (lo, hi), "x": (lo, hi), "y": (lo, hi)}``.
    """

    n_points: int = 1000
    seed: int = 0
    fd_step: float = 1e-3
    bounds: Optional[dict] = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if isinstance(self.n_points, bool) or not isinstance(self.n_points, (int, np.integer)):
            raise BadParameter(f"n_points must be an integer, got {self.n_points!r}")
        if self.n_points < 1:
            raise BadParameter(f"n_points must be >= 1, got {self.n_points}")
        if not 0.0 < self.fd_step < 0.1:
            raise BadParameter(f"fd_step must lie in (0, 0.1), got {self.fd_step}")
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(self.tolerances or {})
        unknown = set(tol) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise BadParameter(f"unknown tolerance keys: {sorted(unknown)}")
        object.__setattr__(self, "tolerances", tol)


@dataclass(frozen=True)
class CheckResult:
    max: float
    mean: float
    count: int
    tolerance: float
    passed: bool
    residuals: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class VerificationReport:
    checks: Dict[str, CheckResult]
    spec: dict
    physical: dict
    mode: dict
    seed: int
    n_points: int
    fd_step: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failing(self):
        return [name for name, c in self.checks.items() if not c.passed]


def _vortices(mode):
    if isinstance(mode, BesselVortex):
        return [mode]
    if isinstance(mode, Superposition):
        return [v for m in mode.modes for v in _vortices(m)]
    return []


def sample_points(solution: Solution, plan: SamplingPlan):
    """Probe points ``(t, x, y, z)`` and the z-category of each.

    Category 0 is the bottom, 1 the lid, 2 the interior (25/25/50 %).
    """
    rng = np.random.default_rng(plan.seed)
    n = plan.n_points
    kappa = solution.kappa
    V = solution.phys.V
    H = solution.phys.H
    span = 2 * math.pi / kappa
    bounds = {
        "t": (0.0, 2 * math.pi / (abs(V) * kappa) if V != 0 else 1.0),
        "x": (-span, span),
        "y": (-span, span),
    }
    if plan.bounds:
        bounds.update({k: tuple(v) for k, v in plan.bounds.items()})
    t = rng.uniform(*bounds["t"], size=n)
    x = rng.uniform(*bounds["x"], size=n)
    y = rng.uniform(*bounds["y"], size=n)
    z = rng.uniform(0.0, H, size=n)
    category = np.arange(n) % 4
    category[category == 3] = 2
    z[category == 0] = 0.0
    z[category == 1] = H

    # probes within 1e-6 of each vortex center exercise the series branch
    vortices = _vortices(solution.mode)
    n_probe = max(1, n // 100) if n >= 8 else 0
    slot = 0
    for vortex in vortices:
        for _ in range(n_probe):
            if slot >= n:
                break
            radius = 10 ** rng.uniform(-9, -6)
            angle = rng.uniform(0, 2 * math.pi)
            x[slot] = vortex.center[0] + V * t[slot] + radius * math.cos(angle)
            y[slot] = vortex.center[1] + radius * math.sin(angle)
            slot += 1
    return t, x, y, z, category


def _check(values, tolerance):
    values = np.sort(np.asarray(values, dtype=float).ravel())
    if values.size == 0:
        return CheckResult(0.0, 0.0, 0, tolerance, True, values)
    vmax = float(values[-1])
    mean = math.fsum(values) / values.size
    return CheckResult(vmax, mean, int(values.size), tolerance, bool(vmax <= tolerance), values)


def _require_finite(name, values, t, x, y, z):
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise EvaluationError(
            f"{name} is not finite at (t, x, y, z) = ({t[i]!r}, {x[i]!r}, {y[i]!r}, {z[i]!r})"
        )


def verify_solution(solution: Solution, plan: SamplingPlan | None = None) -> VerificationReport:
    """Run every check over the plan's probe points."""
    plan = SamplingPlan() if plan is None else plan
    t, x, y, z, cat = sample_points(solution, plan)
    tol = plan.tolerances

    residuals = {
        "pde_analytic": pde_residual_analytic(solution, t, x, y, z),
        "pde_fd": pde_residual_fd(solution, t, x, y, z, plan.fd_step),
    }
    bc = bc_residual(solution, t, x, y, z)
    residuals["bc_bottom"] = bc[cat == 0]
    residuals["bc_lid"] = bc[cat == 1]
    interior = cat == 2
    residuals["bc_interior_match"] = bc_match_residual(
        solution, t[interior], x[interior], y[interior], z[interior]
    )
    residuals["helmholtz"] = helmholtz_residual(solution.mode, x - solution.phys.V * t, y)

    for name in ("pde_analytic", "pde_fd", "helmholtz"):
        _require_finite(name, residuals[name], t, x, y, z)
    _require_finite("bc", bc, t, x, y, z)

    checks = {name: _check(residuals[name], tol[_CHECK_TOLERANCE[name]]) for name in CHECKS}
    return VerificationReport(
        checks=checks,
        spec=solution.spec.as_dict(),
        physical={"beta": solution.phys.beta, "H": solution.phys.H, "V": solution.phys.V},
        mode=solution.mode.describe(),
        seed=plan.seed,
        n_points=plan.n_points,
        fd_step=plan.fd_step,
    )
